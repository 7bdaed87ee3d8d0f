"""
Landau-level calculus on polynomial-times-Gaussian functions.

Ladder operators follow the convention

    q_j   = 2 d/dzbar_j + z_j / 2
    q_j^* = -2 d/dz_j + zbar_j / 2

which annihilates the vacuum ``exp(-|z|^2/4)`` and gives
``[q_i, q_j^*] = 2 delta_ij``.  On ``p(z, zbar) exp(-|z|^2/4)`` they act on
the polynomial alone: ``q_j: p -> 2 dp/dzbar_j`` and
``q_j^*: p -> zbar_j p - 2 dp/dz_j``.

The same ``z_j / 2`` normalization fixes the cross term of the reproducing
kernel to ``exp(w . zbar / 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CapacityExceeded, DimensionMismatch, IndexOutOfRange
from .specfun import (
    DEGREE_CAP,
    GAUSSIAN_BASE,
    MultiIndex,
    graded_multi_indices,
    iter_level_indices,
    laguerre,
    multi_index,
    radial_gaussian_moment_exact,
    sphere_monomial_coefficient,
)

Monomial = tuple[MultiIndex, MultiIndex]


@dataclass(frozen=True)
class LevelSpec:
    """A particular Landau level ``k`` (tuple) or a full level ``ell`` (int)."""

    n: int
    level: MultiIndex | int

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch(f"n must be >= 1, got {self.n}")
        if isinstance(self.level, int):
            if self.level < 0:
                raise IndexOutOfRange(f"full level must be >= 0, got {self.level}")
        else:
            object.__setattr__(self, "level", multi_index(self.level, self.n))

    @property
    def is_full(self) -> bool:
        return isinstance(self.level, int)

    @property
    def height(self) -> int:
        return self.level if self.is_full else sum(self.level)

    def particular_levels(self) -> list[MultiIndex]:
        if self.is_full:
            return list(iter_level_indices(self.n, self.level))
        return [self.level]

    def energy(self) -> int:
        """Eigenvalue ``2 |k| + n`` of the Landau Hamiltonian."""
        return 2 * self.height + self.n


@dataclass(frozen=True, eq=False)
class PolyGaussian:
    """``poly(z, zbar) * exp(-|z|^2/4)`` with ``poly`` stored term-wise."""

    n: int
    terms: Mapping[Monomial, Number]

    def __post_init__(self):
        clean = {}
        for (alpha, beta), c in self.terms.items():
            if len(alpha) != self.n or len(beta) != self.n:
                raise DimensionMismatch(f"exponent length differs from n={self.n}")
            if c != 0:
                clean[(tuple(alpha), tuple(beta))] = c
        object.__setattr__(self, "terms", clean)

    def __add__(self, other):
        _same_n(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return PolyGaussian(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: Number) -> "PolyGaussian":
        return PolyGaussian(self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c: Number):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, PolyGaussian):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self.terms), default=0)

    def __call__(self, z) -> np.ndarray:
        """Evaluate at points ``z`` of shape ``(..., n)``."""
        z = np.asarray(z, dtype=complex)
        zb = z.conj()
        out = np.zeros(z.shape[:-1], dtype=complex)
        for (alpha, beta), c in self.terms.items():
            term = np.full(z.shape[:-1], complex(c))
            for j in range(self.n):
                if alpha[j]:
                    term = term * z[..., j] ** alpha[j]
                if beta[j]:
                    term = term * zb[..., j] ** beta[j]
            out += term
        return out * np.exp(-np.sum(np.abs(z) ** 2, axis=-1) / 4)


def _same_n(f: PolyGaussian, g: PolyGaussian) -> None:
    if f.n != g.n:
        raise DimensionMismatch(f"dimensions {f.n} and {g.n} differ")


def _check_index(j: int, n: int) -> None:
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"mode index {j} outside 1..{n}")


def _bump(e: MultiIndex, j: int, by: int) -> MultiIndex:
    return e[:j] + (e[j] + by,) + e[j + 1 :]


def vacuum(n: int) -> PolyGaussian:
    zero = (0,) * n
    return PolyGaussian(n, {(zero, zero): 1})


def monomial_state(m: Sequence[int]) -> PolyGaussian:
    """``z^m exp(-|z|^2/4)``, the unnormalized lowest-level basis vector."""
    m = tuple(m)
    return PolyGaussian(len(m), {(m, (0,) * len(m)): 1})


def annihilate(j: int, f: PolyGaussian) -> PolyGaussian:
    """``q_j f``: the polynomial map ``p -> 2 dp/dzbar_j`` (``j`` is 1-based)."""
    _check_index(j, f.n)
    i = j - 1
    out: dict[Monomial, Number] = {}
    for (alpha, beta), c in f.terms.items():
        if beta[i]:
            key = (alpha, _bump(beta, i, -1))
            out[key] = out.get(key, 0) + 2 * beta[i] * c
    return PolyGaussian(f.n, out)


def create(j: int, f: PolyGaussian) -> PolyGaussian:
    """``q_j^* f``: the polynomial map ``p -> zbar_j p - 2 dp/dz_j``."""
    _check_index(j, f.n)
    i = j - 1
    out: dict[Monomial, Number] = {}
    for (alpha, beta), c in f.terms.items():
        key = (alpha, _bump(beta, i, 1))
        out[key] = out.get(key, 0) + c
        if alpha[i]:
            key = (_bump(alpha, i, -1), beta)
            out[key] = out.get(key, 0) - 2 * alpha[i] * c
    return PolyGaussian(f.n, out)


def apply_creations(k: Sequence[int], f: PolyGaussian) -> PolyGaussian:
    """``q^{*k} f = (q_1^*)^{k_1} ... (q_n^*)^{k_n} f``."""
    for j, times in enumerate(k, start=1):
        for _ in range(times):
            f = create(j, f)
    return f


def hamiltonian_apply(f: PolyGaussian) -> PolyGaussian:
    """``sum_j q_j^* q_j f + n f``."""
    out = f.scale(f.n)
    for j in range(1, f.n + 1):
        out = out + create(j, annihilate(j, f))
    return out


@lru_cache(maxsize=None)
def raw_basis_vector(m: MultiIndex, k: MultiIndex) -> PolyGaussian:
    """``xi_{m,k} = q^{*k}(z^m exp(-|z|^2/4))`` with exact integer coefficients."""
    if len(m) != len(k):
        raise DimensionMismatch(f"{m} and {k} differ in length")
    if sum(m) + sum(k) > DEGREE_CAP:
        raise CapacityExceeded(f"degree {sum(m) + sum(k)} exceeds the cap {DEGREE_CAP}")
    return apply_creations(k, monomial_state(m))


# ---------------------------------------------------------------------------
# Exact Gaussian pairings


def gaussian_pairing_exact(
    f_terms: Iterable[tuple[Monomial, Number]],
    g_terms: Iterable[tuple[Monomial, Number]],
    n: int,
    insert: Monomial | None = None,
) -> tuple[Number, Number]:
    """Exact ``int conj(f) s g dV`` split by radial parity.

    ``s`` is the homogenized monomial ``z^a zbar^b |z|^-(|a|+|b|)`` given by
    ``insert`` (1 when None).  The result ``(even, odd)`` satisfies
    ``integral = pi^n * (even * sqrt(pi/2) + odd)``.
    """
    ins_a, ins_b = insert if insert is not None else ((0,) * n, (0,) * n)
    acc = [0, 0]
    g_list = list(g_terms)
    for (a1, b1), c1 in f_terms:
        c1c = c1.conjugate() if hasattr(c1, "conjugate") else c1
        d1 = sum(a1) + sum(b1)
        for (a2, b2), c2 in g_list:
            zpow = tuple(x + y + s for x, y, s in zip(b1, a2, ins_a))
            zbpow = tuple(x + y + s for x, y, s in zip(a1, b2, ins_b))
            if zpow != zbpow:
                continue
            radial, parity = radial_gaussian_moment_exact(d1 + sum(a2) + sum(b2) + 2 * n - 1)
            acc[parity] += c1c * c2 * radial * sphere_monomial_coefficient(zpow, zbpow)
    return acc[0], acc[1]


def _pairing_value(even: Number, odd: Number, n: int) -> complex:
    return math.pi**n * (complex(even) * GAUSSIAN_BASE[0] + complex(odd))


def inner_product(f: PolyGaussian, g: PolyGaussian) -> complex:
    """``<f, g>`` in ``L^2(C^n)``, conjugate-linear in ``f``."""
    _same_n(f, g)
    even, odd = gaussian_pairing_exact(f.terms.items(), g.terms.items(), f.n)
    return _pairing_value(even, odd, f.n)


@lru_cache(maxsize=None)
def raw_norm_squared(m: MultiIndex, k: MultiIndex) -> Fraction:
    """Rational ``r`` with ``||xi_{m,k}||^2 = r * pi^n``."""
    xi = raw_basis_vector(m, k)
    even, odd = gaussian_pairing_exact(xi.terms.items(), xi.terms.items(), len(m))
    assert even == 0
    return Fraction(odd)


def exact_element(
    row: tuple[MultiIndex, MultiIndex],
    col: tuple[MultiIndex, MultiIndex],
    insert: Monomial,
) -> float:
    """Real number ``<xihat_row, s xihat_col>`` for a homogenized monomial ``s``.

    ``row`` and ``col`` are ``(m, k)`` pairs.  The pairing is computed in
    exact rational arithmetic and rounded once at the end.
    """
    n = len(row[0])
    f = raw_basis_vector(*row)
    g = raw_basis_vector(*col)
    even, odd = gaussian_pairing_exact(f.terms.items(), g.terms.items(), n, insert)
    if even == 0 and odd == 0:
        return 0.0
    assert even == 0 or odd == 0, "mixed radial parity inside one element"
    num, base = (even, GAUSSIAN_BASE[0]) if even != 0 else (odd, 1.0)
    num = Fraction(num)
    denom = raw_norm_squared(*row) * raw_norm_squared(*col)
    ratio = num * num / denom
    return math.copysign(math.sqrt(ratio), num) * base


def particular_basis(spec: LevelSpec, max_degree: int) -> list[PolyGaussian]:
    """Orthonormal ``xihat_{m,k}`` for ``|m| <= max_degree``, graded order.

    The raw family is already orthogonal, so each vector is only divided
    by its exact norm.
    """
    if spec.is_full:
        raise DimensionMismatch("particular_basis needs a particular level")
    if max_degree > DEGREE_CAP:
        raise CapacityExceeded(f"max_degree {max_degree} exceeds the cap {DEGREE_CAP}")
    out = []
    for m in graded_multi_indices(spec.n, max_degree):
        xi = raw_basis_vector(m, spec.level)
        norm = math.sqrt(float(raw_norm_squared(m, spec.level)) * math.pi**spec.n)
        out.append(xi.scale(1.0 / norm))
    return out


# ---------------------------------------------------------------------------
# Reproducing kernels


def raw_landau_kernel(k: Sequence[int], z, w) -> np.ndarray:
    """``exp(w.zbar/2 - |z|^2/4 - |w|^2/4) * prod_j L_{k_j}(|z_j - w_j|^2 / 2)``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    cross = np.sum(w * z.conj(), axis=-1)
    sq = np.sum(np.abs(z) ** 2, axis=-1) + np.sum(np.abs(w) ** 2, axis=-1)
    out = np.exp(cross / 2 - sq / 4)
    for j, kj in enumerate(k):
        x = np.abs(z[..., j] - w[..., j]) ** 2 / 2
        out = out * np.vectorize(laguerre, otypes=[float])(kj, x)
    return out


def basis_kernel_sum(k: Sequence[int], z, w, max_degree: int) -> complex:
    """``sum_{|m| <= M} conj(xihat_m(z)) xihat_m(w)``: the kernel oracle."""
    spec = LevelSpec(len(k), tuple(k))
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    total = 0j
    for vec in particular_basis(spec, max_degree):
        total += np.conj(vec(z)) * vec(w)
    return total


@lru_cache(maxsize=None)
def kernel_normalization(k: MultiIndex, pairs: int = 20, max_degree: int = 40, seed: int = 7) -> complex:
    """Least-squares constant matching the raw kernel to the basis sum.

    Sample point pairs lie in ``|z|, |w| <= 2``.  Expected value is
    ``(2 pi)^-n``.
    """
    n = len(k)
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-1, 1, (2, pairs, n)) + 1j * rng.uniform(-1, 1, (2, pairs, n))
    pts *= 2 / np.sqrt(2 * n)
    raw = raw_landau_kernel(k, pts[0], pts[1])
    oracle = np.array([basis_kernel_sum(k, pts[0][i], pts[1][i], max_degree) for i in range(pairs)])
    return complex(np.vdot(raw, oracle) / np.vdot(raw, raw))


def landau_kernel(spec: LevelSpec, z, w) -> np.ndarray:
    """Integral kernel ``K_k(z, w)`` of the projection onto level ``k``.

    ``P_k f(z) = int f(w) conj(K_k(z, w)) dV(w)``.
    """
    if spec.is_full:
        raise DimensionMismatch("landau_kernel needs a particular level")
    return kernel_normalization(spec.level) * raw_landau_kernel(spec.level, z, w)
