"""
Bergman space of the unit ball and its comparison with the lowest Landau level.

The orthonormal basis of ``A^2(B_n)`` is
``mu_m = pi^(-n/2) sqrt((n+|m|)! / m!) z^m``.  Matrix elements of a
homogenized monomial ``z^a zbar^b |z|^-(|a|+|b|)`` factor into a ball
radial moment and a sphere monomial integral, both rational multiples of
known constants, so every element is computed exactly and rounded once.

On both spaces the compression of ``z_i/|z|`` is a weighted shift
``mu_m -> w mu_{m+e_i}``; the two weight families differ by ``O(1/|m|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange
from .specfun import (
    MultiIndex,
    add,
    graded_multi_indices,
    log_gamma,
    multi_factorial,
    radial_ball_moment,
    sphere_monomial_coefficient,
    unit,
)
from .symbols import BoundarySymbol, FullSymbol, format_symbol
from .toeplitz import GradedMatrix

SPACES = ("landau", "bergman")


@dataclass(frozen=True)
class BallMonomial:
    """Normalized monomial ``mu_m`` on ``B_n``."""

    n: int
    m: MultiIndex

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        if len(m) != self.n or min(m, default=0) < 0:
            raise DimensionMismatch(f"exponent {self.m} is not a multi-index of length {self.n}")
        object.__setattr__(self, "m", m)

    @property
    def degree(self) -> int:
        return sum(self.m)

    @property
    def norm_squared_factor(self) -> Fraction:
        """``(n+|m|)! / m!``; the constant is this times ``pi^-n``, square-rooted."""
        return Fraction(math.factorial(self.n + self.degree), multi_factorial(self.m))

    @property
    def constant(self) -> float:
        return math.pi ** (-self.n / 2) * math.sqrt(self.norm_squared_factor)

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return self.constant * np.prod(z ** np.array(self.m), axis=-1)


def _check_i(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"coordinate index {i} outside 1..{n}")


def _check_m(n: int, m: Sequence[int]) -> MultiIndex:
    m = tuple(int(x) for x in m)
    if len(m) != n:
        raise DimensionMismatch(f"multi-index {m} has length {len(m)}, expected {n}")
    if min(m, default=0) < 0:
        raise IndexOutOfRange(f"multi-index {m} has a negative entry")
    return m


def ball_pairing_squared(row: MultiIndex, col: MultiIndex, insert=None) -> Fraction:
    """Square of ``<mu_row, s mu_col>`` for ``s = z^a zbar^b |z|^-(|a|+|b|)``.

    In polar form the integrand is ``r^(|row|+|col|+2n-1)`` times a sphere
    monomial, so the value is
    ``c_row c_col * radial_ball_moment(|row|+|col|+2n-1) * q pi^n`` and the
    ``pi`` powers cancel against the normalizations.  The element itself is
    non-negative, so the square loses nothing.
    """
    n = len(row)
    a, b = insert if insert is not None else ((0,) * n, (0,) * n)
    q = sphere_monomial_coefficient(add(col, a), add(row, b))
    if q == 0:
        return Fraction(0)
    radial = radial_ball_moment(sum(row) + sum(col) + 2 * n - 1)
    norms = BallMonomial(n, row).norm_squared_factor * BallMonomial(n, col).norm_squared_factor
    return norms * (radial * q) ** 2


def ball_element(row: MultiIndex, col: MultiIndex, insert=None) -> float:
    return math.sqrt(ball_pairing_squared(row, col, insert))


def ball_gram(n: int, degree_cap: int) -> np.ndarray:
    """Gram matrix of ``mu_m`` for ``|m| <= degree_cap`` from exact ball integrals."""
    idx = graded_multi_indices(n, degree_cap)
    return np.array([[ball_element(r, c) for c in idx] for r in idx])


def bergman_coordinate_element(n: int, i: int, m: Sequence[int]) -> float:
    """``<mu_{m+e_i}, (z_i/|z|) mu_m>`` from the ball integral.

    Agrees with ``2 sqrt(m_i+1) sqrt(n+|m|+1) / (2|m|+2n+1)``.
    """
    _check_i(n, i)
    m = _check_m(n, m)
    e = unit(n, i)
    return ball_element(add(m, e), m, (e, (0,) * n))


def bergman_closed_form(n: int, i: int, m: Sequence[int]) -> float:
    _check_i(n, i)
    m = _check_m(n, m)
    d = sum(m)
    return 2 * math.sqrt(m[i - 1] + 1) * math.sqrt(n + d + 1) / (2 * d + 2 * n + 1)


def asymptotic_bergman_element(n: int, i: int, m: Sequence[int]) -> float:
    """Asymptotic form ``sqrt(m_i+1) / sqrt(n+|m|+1)`` of the Bergman weight.

    This is not the exact inner product: the exact value is larger by the
    factor ``2(n+|m|+1) / (2|m|+2n+1)``, which tends to 1.
    """
    _check_i(n, i)
    m = _check_m(n, m)
    return math.sqrt(m[i - 1] + 1) / math.sqrt(n + sum(m) + 1)


def landau_coordinate_element(n: int, i: int, m: Sequence[int]) -> float:
    """``<eta_{m+e_i}, Z_i eta_m> = Gamma(|m|+n+1/2) sqrt(m_i+1) / (|m|+n)!``."""
    _check_i(n, i)
    m = _check_m(n, m)
    d = sum(m) + n
    return math.exp(log_gamma(d + 0.5) - log_gamma(d + 1)) * math.sqrt(m[i - 1] + 1)


def shift_structure(n: int, i: int, m: Sequence[int], space: str = "landau") -> tuple[MultiIndex, float]:
    """Target index and weight of the compressed coordinate ``z_i/|z|``."""
    if space not in SPACES:
        raise ValueError(f"space must be one of {SPACES}, got {space!r}")
    weight = (landau_coordinate_element if space == "landau" else bergman_coordinate_element)(n, i, m)
    return add(_check_m(n, m), unit(n, i)), weight


def compare_weights(n: int, i: int, degree_cap: int) -> list[tuple[MultiIndex, float]]:
    """``(m, |lambda_eta - lambda_mu|)`` for ``|m| <= degree_cap`` in graded order."""
    _check_i(n, i)
    return [
        (m, abs(landau_coordinate_element(n, i, m) - bergman_coordinate_element(n, i, m)))
        for m in graded_multi_indices(n, degree_cap)
    ]


CSV_COLUMNS = ("absm", "m", "lambda_eta", "lambda_mu_exact", "lambda_mu_paper", "diff", "diff_times_absm")


def comparison_rows(n: int, i: int, degree_cap: int, min_degree: int = 0) -> list[dict]:
    """Rows of the weight comparison table, one per multi-index."""
    _check_i(n, i)
    rows = []
    for m in graded_multi_indices(n, degree_cap, min_degree):
        eta = landau_coordinate_element(n, i, m)
        mu = bergman_coordinate_element(n, i, m)
        diff = abs(eta - mu)
        rows.append({
            "absm": sum(m),
            "m": " ".join(str(x) for x in m),
            "lambda_eta": eta,
            "lambda_mu_exact": mu,
            "lambda_mu_paper": asymptotic_bergman_element(n, i, m),
            "diff": diff,
            "diff_times_absm": diff * sum(m),
        })
    return rows


def bergman_toeplitz(a, D: int) -> GradedMatrix:
    """Truncation of ``P_B a P_B`` on ``|m| <= D`` (rows up to ``D + deg a``).

    Labels follow the Landau layout with the level fixed at zero.
    """
    if isinstance(a, FullSymbol):
        a = a.limit()
    if not isinstance(a, BoundarySymbol):
        raise TypeError("expected a BoundarySymbol")
    n, d = a.n, a.degree
    zero = (0,) * n
    rows = [(zero, m, p) for m in graded_multi_indices(n, D + d) for p in range(a.N)]
    cols = [(zero, m, p) for m in graded_multi_indices(n, D) for p in range(a.N)]
    index = {r: j for j, r in enumerate(rows)}
    data = np.zeros((len(rows), len(cols)), dtype=complex)
    terms = list(a.terms())
    for j, (_, m, q) in enumerate(cols):
        for p, qt, alpha, beta, c in terms:
            if qt != q:
                continue
            target = tuple(x + y - z for x, y, z in zip(m, alpha, beta))
            if min(target) < 0 or (zero, target, p) not in index:
                continue
            data[index[(zero, target, p)], j] += c * ball_element(target, m, (alpha, beta))
    desc = {"symbol": format_symbol(a), "label": a.label, "n": n, "N": a.N, "kind": "bergman"}
    return GradedMatrix(tuple(rows), tuple(cols), data, d, D + d, D, desc)
