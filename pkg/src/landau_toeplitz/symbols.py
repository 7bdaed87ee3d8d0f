"""
Symbol algebra on the sphere ``S^{2n-1}`` and on ``C^n``.

A :class:`BoundarySymbol` is an ``N x N`` matrix whose entries are finite
sums of homogenized monomials ``c z^alpha zbar^beta |z|^-(|alpha|+|beta|)``.
The ``|z|`` power is implicit: it is always the one making the term
homogeneous of degree zero, so a term is stored as ``(alpha, beta) -> c``.

Entries are kept in a normal form modulo ``|z_1|^2 + ... + |z_n|^2 = 1``:
no stored monomial carries both ``z_n`` and ``zbar_n``.  Two symbols agree
as functions on the sphere iff their normal forms coincide, which makes
term-level identities such as ``u u^* = 1`` checkable exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import permutations
from numbers import Number
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidEpsilon,
    NotOnSphere,
    SymbolParseError,
)
from .specfun import MultiIndex, unit

Monomial = tuple[MultiIndex, MultiIndex]
Entry = dict[Monomial, Number]

SPHERE_TOL = 1e-12


def _prune(entry: Mapping[Monomial, Number]) -> Entry:
    return {k: v for k, v in entry.items() if v != 0}


def _accumulate(out: Entry, key: Monomial, c: Number) -> None:
    out[key] = out.get(key, 0) + c


def normal_form(entry: Mapping[Monomial, Number], n: int) -> Entry:
    """Reduce an entry modulo ``sum_j z_j zbar_j = 1``.

    Any monomial divisible by ``z_n zbar_n`` is rewritten using
    ``|z_n|^2 = 1 - sum_{j<n} |z_j|^2``; the result is the unique
    representative with no such monomial.
    """
    pending = dict(entry)
    out: Entry = {}
    last = n - 1
    while pending:
        (alpha, beta), c = pending.popitem()
        if c == 0:
            continue
        if alpha[last] and beta[last]:
            a0 = alpha[:last] + (alpha[last] - 1,)
            b0 = beta[:last] + (beta[last] - 1,)
            _accumulate(pending, (a0, b0), c)
            for j in range(last):
                e = unit(n, j + 1)
                key = (tuple(x + y for x, y in zip(a0, e)), tuple(x + y for x, y in zip(b0, e)))
                _accumulate(pending, key, -c)
        else:
            _accumulate(out, (alpha, beta), c)
    return _prune(out)


def _entry_product(a: Entry, b: Entry, n: int) -> Entry:
    out: Entry = {}
    for (a1, b1), c1 in a.items():
        for (a2, b2), c2 in b.items():
            key = (tuple(x + y for x, y in zip(a1, a2)), tuple(x + y for x, y in zip(b1, b2)))
            _accumulate(out, key, c1 * c2)
    return normal_form(out, n)


def _entry_sum(entries: Sequence[Entry], n: int, signs: Sequence[int] | None = None) -> Entry:
    out: Entry = {}
    for idx, e in enumerate(entries):
        s = 1 if signs is None else signs[idx]
        for k, c in e.items():
            _accumulate(out, k, s * c)
    return normal_form(out, n)


def _conj(c: Number) -> Number:
    return c.conjugate() if hasattr(c, "conjugate") else c


@dataclass(frozen=True, eq=False)
class BoundarySymbol:
    """Matrix-valued polynomial symbol on ``S^{2n-1}``.

    Attributes
    ----------
    n : int
        Complex dimension; the symbol lives on ``S^{2n-1}``.
    entries : tuple of tuple of dict
        ``entries[p][q]`` maps ``(alpha, beta)`` to the coefficient of
        ``z^alpha zbar^beta |z|^-(|alpha|+|beta|)``.
    label : str
        Free-form description carried into reports.
    """

    n: int
    entries: tuple[tuple[Entry, ...], ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch(f"n must be >= 1, got {self.n}")
        N = len(self.entries)
        if N == 0 or any(len(row) != N for row in self.entries):
            raise DimensionMismatch("symbol entries must form a square matrix")
        clean = []
        for row in self.entries:
            new_row = []
            for e in row:
                for alpha, beta in e:
                    if len(alpha) != self.n or len(beta) != self.n:
                        raise DimensionMismatch(f"exponent length differs from n={self.n}")
                new_row.append(normal_form(e, self.n))
            clean.append(tuple(new_row))
        object.__setattr__(self, "entries", tuple(clean))

    @property
    def N(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return max(
            (sum(a) + sum(b) for row in self.entries for e in row for a, b in e),
            default=0,
        )

    def terms(self):
        """Yield ``(p, q, alpha, beta, c)`` for every stored term."""
        for p, row in enumerate(self.entries):
            for q, e in enumerate(row):
                for (alpha, beta), c in sorted(e.items()):
                    yield p, q, alpha, beta, c

    def __eq__(self, other):
        if not isinstance(other, BoundarySymbol):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __mul__(self, other):
        return symbol_product(self, other)

    def __add__(self, other):
        _check_compatible(self, other)
        entries = tuple(
            tuple(_entry_sum([self.entries[p][q], other.entries[p][q]], self.n) for q in range(self.N))
            for p in range(self.N)
        )
        return BoundarySymbol(self.n, entries)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c: Number) -> "BoundarySymbol":
        entries = tuple(tuple({k: c * v for k, v in e.items()} for e in row) for row in self.entries)
        return BoundarySymbol(self.n, entries, self.label)

    def adjoint(self) -> "BoundarySymbol":
        return symbol_adjoint(self)

    def is_constant(self) -> bool:
        return self.degree == 0

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Evaluate at points already on the sphere, vectorized.

        ``z`` has shape ``(..., n)``; the result has shape ``(..., N, N)``.
        No normalization or sphere check is applied.
        """
        z = np.asarray(z, dtype=complex)
        zb = z.conj()
        out = np.zeros(z.shape[:-1] + (self.N, self.N), dtype=complex)
        for p, q, alpha, beta, c in self.terms():
            out[..., p, q] += c * _monomial(z, zb, alpha, beta)
        return out

    def evaluate_with_derivatives(self, z: np.ndarray, dz: Sequence[np.ndarray]):
        """Value and directional derivatives along a parametrized sphere.

        ``dz[i]`` holds ``d z / d t_i`` with the same shape as ``z``.  Since
        the parametrization stays on ``|z| = 1``, the implicit ``|z|``
        powers contribute nothing to the derivative.
        """
        z = np.asarray(z, dtype=complex)
        zb = z.conj()
        value = self.evaluate(z)
        derivs = []
        for dzi in dz:
            dzi = np.asarray(dzi, dtype=complex)
            dzbi = dzi.conj()
            out = np.zeros_like(value)
            for p, q, alpha, beta, c in self.terms():
                for j in range(self.n):
                    if alpha[j]:
                        a2 = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1 :]
                        out[..., p, q] += c * alpha[j] * _monomial(z, zb, a2, beta) * dzi[..., j]
                    if beta[j]:
                        b2 = beta[:j] + (beta[j] - 1,) + beta[j + 1 :]
                        out[..., p, q] += c * beta[j] * _monomial(z, zb, alpha, b2) * dzbi[..., j]
            derivs.append(out)
        return value, derivs

    def sup_norm_bound(self) -> float:
        """Frobenius bound on ``sup_v |a(v)|`` from coefficient magnitudes."""
        return math.sqrt(sum(sum(abs(c) for c in e.values()) ** 2 for row in self.entries for e in row))

    def __repr__(self):
        return f"BoundarySymbol(n={self.n}, N={self.N}, {format_symbol(self)!r})"


def _monomial(z, zb, alpha, beta):
    out = np.ones(z.shape[:-1], dtype=complex)
    for j, (a, b) in enumerate(zip(alpha, beta)):
        if a:
            out = out * z[..., j] ** a
        if b:
            out = out * zb[..., j] ** b
    return out


def _check_compatible(a: BoundarySymbol, b: BoundarySymbol) -> None:
    if a.n != b.n or a.N != b.N:
        raise DimensionMismatch(f"symbols of shape (n={a.n}, N={a.N}) and (n={b.n}, N={b.N})")


def eval_boundary(s: BoundarySymbol, v: Sequence[complex]) -> np.ndarray:
    """Evaluate ``s`` at a unit vector ``v`` in ``C^n``."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (s.n,):
        raise DimensionMismatch(f"expected a vector of length {s.n}, got shape {v.shape}")
    if abs(np.linalg.norm(v) - 1.0) > SPHERE_TOL:
        raise NotOnSphere(f"|v| = {np.linalg.norm(v)!r} is not 1")
    return s.evaluate(v)


def constant_symbol(n: int, value: Number | np.ndarray = 1, N: int = 1) -> BoundarySymbol:
    """Constant symbol; a scalar ``value`` gives ``value * identity``."""
    zero = (0,) * n
    if np.ndim(value) == 0:
        mat = [[value if p == q else 0 for q in range(N)] for p in range(N)]
    else:
        mat = np.asarray(value).tolist()
    entries = tuple(tuple({(zero, zero): c} if c != 0 else {} for c in row) for row in mat)
    return BoundarySymbol(n, entries, label="constant")


def identity_symbol(n: int, N: int = 1) -> BoundarySymbol:
    return constant_symbol(n, 1, N)


def coordinate_symbol(n: int, i: int) -> BoundarySymbol:
    """Scalar symbol ``z_i / |z|``."""
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"coordinate index {i} outside 1..{n}")
    return BoundarySymbol(n, (({(unit(n, i), (0,) * n): 1},),), label=f"coordinate:{i}")


def zpow_symbol(d: int, n: int = 1) -> BoundarySymbol:
    """``z_1^d / |z|^d``; negative ``d`` means ``zbar_1^|d| / |z|^|d|``."""
    e = tuple(abs(d) if j == 0 else 0 for j in range(n))
    zero = (0,) * n
    key = (e, zero) if d >= 0 else (zero, e)
    return BoundarySymbol(n, (({key: 1},),), label=f"zpow:{d}")


def su2_symbol() -> BoundarySymbol:
    """``u(z1, z2) = [[z1, z2], [-zbar2, zbar1]]`` on ``S^3``."""
    z1 = ((1, 0), (0, 0))
    z2 = ((0, 1), (0, 0))
    zb1 = ((0, 0), (1, 0))
    zb2 = ((0, 0), (0, 1))
    return BoundarySymbol(2, (({z1: 1}, {z2: 1}), ({zb2: -1}, {zb1: 1})), label="su2")


def symbol_product(a: BoundarySymbol, b: BoundarySymbol) -> BoundarySymbol:
    _check_compatible(a, b)
    N, n = a.N, a.n
    entries = []
    for p in range(N):
        row = []
        for q in range(N):
            acc: Entry = {}
            for r in range(N):
                for k, c in _entry_product(a.entries[p][r], b.entries[r][q], n).items():
                    _accumulate(acc, k, c)
            row.append(acc)
        entries.append(tuple(row))
    return BoundarySymbol(n, tuple(entries))


def symbol_adjoint(a: BoundarySymbol) -> BoundarySymbol:
    entries = tuple(
        tuple({(beta, alpha): _conj(c) for (alpha, beta), c in a.entries[q][p].items()} for q in range(a.N))
        for p in range(a.N)
    )
    return BoundarySymbol(a.n, entries, label=f"adjoint({a.label})" if a.label else "")


def symbol_det(a: BoundarySymbol) -> BoundarySymbol:
    """Determinant by the Leibniz formula (``N <= 3``)."""
    if a.N > 3:
        raise DimensionMismatch(f"symbol_det supports N <= 3, got N={a.N}")
    n = a.n
    zero = (0,) * n
    terms: list[Entry] = []
    signs: list[int] = []
    for perm in permutations(range(a.N)):
        prod: Entry = {(zero, zero): 1}
        for p, q in enumerate(perm):
            prod = _entry_product(prod, a.entries[p][q], n)
        terms.append(prod)
        signs.append(_perm_sign(perm))
    return BoundarySymbol(n, ((_entry_sum(terms, n, signs),),), label=f"det({a.label})")


def _perm_sign(perm) -> int:
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def is_unitary(a: BoundarySymbol) -> bool:
    """Term-level check ``a a^* = 1``."""
    return symbol_product(a, symbol_adjoint(a)) == identity_symbol(a.n, a.N)


# ---------------------------------------------------------------------------
# Full symbols on C^n


def ramp(r, radius: float):
    """Piecewise-linear radial cutoff: 0 below ``radius``, 1 above ``2 radius``."""
    r = np.asarray(r, dtype=float)
    if radius <= 0:
        return np.ones_like(r)
    return np.clip(r / radius - 1.0, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class FullSymbol:
    """A function on ``C^n`` in the algebra with radial limits.

    The represented function is
    ``sum_j w_j * ramp(|z|, R_j) * boundary(z/|z|) + decay(z)`` where the
    decay part is a matrix of sums ``c z^alpha zbar^beta exp(-s |z|^2)``
    keyed by ``(alpha, beta, s)``.  A single cutoff ``((R, 1.0),)`` is the
    usual case; signed combinations appear only in the remainder of a
    :func:`lipschitz_split`.
    """

    boundary: BoundarySymbol
    cutoffs: tuple[tuple[float, float], ...] = ((1.0, 1.0),)
    decay_part: tuple[tuple[dict, ...], ...] | None = None

    def __post_init__(self):
        merged: dict[float, float] = {}
        for radius, w in self.cutoffs:
            if radius < 0:
                raise InvalidEpsilon(f"cutoff radius must be >= 0, got {radius}")
            merged[float(radius)] = merged.get(float(radius), 0.0) + w
        object.__setattr__(self, "cutoffs", tuple(sorted((r, w) for r, w in merged.items() if w != 0)))
        N = self.boundary.N
        decay = self.decay_part
        if decay is None:
            decay = tuple(tuple({} for _ in range(N)) for _ in range(N))
        clean = []
        for row in decay:
            new_row = []
            for e in row:
                for (alpha, beta, s) in e:
                    if s <= 0:
                        raise InvalidEpsilon(f"decay rate must be > 0, got {s}")
                new_row.append({k: v for k, v in e.items() if v != 0})
            clean.append(tuple(new_row))
        object.__setattr__(self, "decay_part", tuple(clean))

    @property
    def interior_cutoff_radius(self) -> float:
        return min((r for r, _ in self.cutoffs), default=0.0)

    @property
    def boundary_weight(self) -> float:
        return sum(w for _, w in self.cutoffs)

    def limit(self) -> BoundarySymbol:
        """The boundary map: the radial limit as a :class:`BoundarySymbol`."""
        return self.boundary.scale(self.boundary_weight)

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        r = np.linalg.norm(z, axis=-1)
        safe = np.where(r > 0, r, 1.0)[..., None]
        a = self.boundary.evaluate(z / safe)
        chi = sum(w * ramp(r, radius) for radius, w in self.cutoffs)
        out = np.asarray(chi)[..., None, None] * a
        zb = z.conj()
        for p, row in enumerate(self.decay_part):
            for q, e in enumerate(row):
                for (alpha, beta, s), c in e.items():
                    out[..., p, q] += c * _monomial(z, zb, alpha, beta) * np.exp(-s * r**2)
        return out

    def __add__(self, other: "FullSymbol") -> "FullSymbol":
        if self.boundary != other.boundary:
            raise DimensionMismatch("FullSymbol addition requires a shared boundary symbol")
        N = self.boundary.N
        decay = []
        for p in range(N):
            row = []
            for q in range(N):
                acc = dict(self.decay_part[p][q])
                for k, c in other.decay_part[p][q].items():
                    acc[k] = acc.get(k, 0) + c
                row.append(acc)
            decay.append(tuple(row))
        return FullSymbol(self.boundary, self.cutoffs + other.cutoffs, tuple(decay))

    def __eq__(self, other):
        if not isinstance(other, FullSymbol):
            return NotImplemented
        return (
            self.boundary == other.boundary
            and self.cutoffs == other.cutoffs
            and self.decay_part == other.decay_part
        )


def estimate_lipschitz(a: BoundarySymbol, samples: int = 20000, seed: int = 0, safety: float = 1.5) -> float:
    """Sampled Lipschitz constant of ``a`` on the sphere, times ``safety``."""
    rng = np.random.default_rng(seed)
    n = a.n
    x = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    x /= np.linalg.norm(x, axis=-1, keepdims=True)
    # Near pairs dominate the quotient for smooth symbols.
    step = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    step *= (10.0 ** rng.uniform(-4, 0, samples))[:, None] / np.linalg.norm(step, axis=-1, keepdims=True)
    y = x + step
    y /= np.linalg.norm(y, axis=-1, keepdims=True)
    dist = np.linalg.norm(x - y, axis=-1)
    keep = dist > 0
    diff = np.linalg.norm(a.evaluate(x) - a.evaluate(y), axis=(-2, -1))
    return safety * float(np.max(diff[keep] / dist[keep]))


def lipschitz_split(a: FullSymbol, eps: float, C: float | None = None):
    """Split ``a = g + h`` with ``g`` globally ``eps``-Lipschitz, ``h`` in ``C_0``.

    ``g(z) = ramp(|z|, R) * a_boundary(z/|z|)`` and ``h = a - g``.  The
    radius obeys ``R = 1.1 * (2 C + sup|a_boundary|) / eps``; the ``sup``
    term pays for the ramp's own slope ``1/R``.

    Returns
    -------
    g, h : FullSymbol
    """
    if not eps > 0:
        raise InvalidEpsilon(f"eps must be > 0, got {eps}")
    limit = a.limit()
    if C is None:
        C = estimate_lipschitz(limit)
    radius = 1.1 * (2.0 * C + limit.sup_norm_bound()) / eps
    w = a.boundary_weight
    g = FullSymbol(a.boundary, ((radius, w),))
    h = FullSymbol(a.boundary, a.cutoffs + ((radius, -w),), a.decay_part)
    return g, h


# ---------------------------------------------------------------------------
# Plain-text symbol literals

_TERM_FACTOR = re.compile(
    r"""^(?:
        (?P<zabs>\|z\|\^\(?(?P<zexp>-?\d+)\)?) |
        (?P<var>zbar|z)(?P<idx>\d+)(?:\^(?P<pow>\d+))?
    )$""",
    re.VERBOSE,
)


def _split_top(text: str, seps: str) -> list[tuple[str, str]]:
    """Split at separators outside brackets/parentheses/exponents."""
    parts, depth, start, sign = [], 0, 0, "+"
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and ch in seps and i > 0 and text[i - 1] not in "^eE*" and text[start:i].strip():
            parts.append((sign, text[start:i]))
            sign = ch if ch in "+-" else "+"
            start = i + 1
        i += 1
    parts.append((sign, text[start:]))
    return parts


def _parse_number(tok: str) -> complex:
    t = tok.strip().replace(" ", "")
    if t in ("i", "j", "+i", "+j"):
        return 1j
    if t in ("-i", "-j"):
        return -1j
    t = t.replace("i", "j")
    try:
        val = complex(t)
    except ValueError as exc:
        raise SymbolParseError(f"cannot parse coefficient {tok!r}") from exc
    return val.real if val.imag == 0 and "j" not in t else val


def _parse_entry(text: str, n: int) -> Entry:
    text = text.strip()
    if not text:
        raise SymbolParseError("empty symbol entry")
    out: Entry = {}
    lead = "+"
    if text[0] in "+-":
        lead, text = text[0], text[1:]
    for pos, (sign, term) in enumerate(_split_top(text, "+-")):
        if pos == 0:
            sign = lead
        term = term.strip()
        if not term:
            raise SymbolParseError(f"dangling sign in {text!r}")
        coeff: complex = 1
        alpha, beta = [0] * n, [0] * n
        zexp = None
        for factor in (f.strip() for f in term.split("*")):
            m = _TERM_FACTOR.match(factor)
            if m is None:
                coeff *= _parse_number(factor)
            elif m.group("zabs"):
                zexp = int(m.group("zexp"))
            else:
                j = int(m.group("idx"))
                if not 1 <= j <= n:
                    raise SymbolParseError(f"variable index {j} outside 1..{n}")
                power = int(m.group("pow") or 1)
                target = beta if m.group("var") == "zbar" else alpha
                target[j - 1] += power
        d = sum(alpha) + sum(beta)
        if zexp is not None and zexp != -d:
            raise SymbolParseError(f"term {term!r} is not homogeneous of degree 0 (|z|^{zexp}, degree {d})")
        if sign == "-":
            coeff = -coeff
        _accumulate(out, (tuple(alpha), tuple(beta)), coeff)
    return _prune(out)


def parse_symbol(text: str, n: int) -> BoundarySymbol:
    """Parse a symbol literal.

    Terms look like ``c * z1^a1 * zbar1^b1 * ... * |z|^-k`` joined by
    ``+``/``-``; the ``|z|`` factor may be omitted.  Matrices use row-major
    brackets, e.g. ``[[z1*|z|^-1, z2*|z|^-1], [-zbar2*|z|^-1, zbar1*|z|^-1]]``.
    """
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise SymbolParseError("unbalanced matrix brackets")
        rows = [r for _, r in _split_top(text[1:-1], ",")]
        matrix = []
        for row in rows:
            row = row.strip()
            if not (row.startswith("[") and row.endswith("]")):
                raise SymbolParseError(f"matrix row must be bracketed: {row!r}")
            matrix.append(tuple(_parse_entry(c, n) for _, c in _split_top(row[1:-1], ",")))
        try:
            return BoundarySymbol(n, tuple(matrix), label=text)
        except DimensionMismatch as exc:
            raise SymbolParseError(str(exc)) from exc
    return BoundarySymbol(n, ((_parse_entry(text, n),),), label=text)


def _format_coeff(c) -> str:
    c = complex(c)
    if c.imag == 0:
        v = c.real
        return repr(int(v)) if v == int(v) else repr(v)
    sign = "-" if c.imag < 0 else "+"
    return f"({c.real!r}{sign}{abs(c.imag)!r}j)"


def _format_entry(e: Entry) -> str:
    if not e:
        return "0"
    parts = []
    for (alpha, beta), c in sorted(e.items()):
        factors = [_format_coeff(c)]
        for j, a in enumerate(alpha):
            if a:
                factors.append(f"z{j + 1}" + (f"^{a}" if a > 1 else ""))
        for j, b in enumerate(beta):
            if b:
                factors.append(f"zbar{j + 1}" + (f"^{b}" if b > 1 else ""))
        d = sum(alpha) + sum(beta)
        if d:
            factors.append(f"|z|^-{d}")
        parts.append(" * ".join(factors))
    return " + ".join(parts)


def format_symbol(s: BoundarySymbol) -> str:
    """Inverse of :func:`parse_symbol`."""
    if s.N == 1:
        return _format_entry(s.entries[0][0])
    return "[" + ", ".join("[" + ", ".join(_format_entry(e) for e in row) + "]" for row in s.entries) + "]"


def builtin_symbol(name: str, n: int) -> BoundarySymbol:
    """Resolve ``coordinate:i``, ``su2``, ``zpow:d`` or ``constant``."""
    head, _, arg = name.partition(":")
    try:
        if head == "coordinate":
            return coordinate_symbol(n, int(arg))
        if head == "zpow":
            return zpow_symbol(int(arg), n)
        if head == "constant":
            return constant_symbol(n, 1 if not arg else _parse_number(arg))
        if head == "su2" and not arg:
            if n != 2:
                raise DimensionMismatch(f"su2 lives on S^3 (n=2), got n={n}")
            return su2_symbol()
    except ValueError as exc:
        if isinstance(exc, (DimensionMismatch, IndexOutOfRange)):
            raise
        raise SymbolParseError(f"bad builtin symbol {name!r}") from exc
    raise SymbolParseError(f"unknown builtin symbol {name!r}")


def resolve_symbol(descriptor: str, n: int) -> BoundarySymbol:
    """Builtin name or literal, as accepted on the command line."""
    head = descriptor.partition(":")[0]
    if head in ("coordinate", "zpow", "constant", "su2"):
        return builtin_symbol(descriptor, n)
    return parse_symbol(descriptor, n)
