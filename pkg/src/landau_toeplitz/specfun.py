"""
Special functions and closed-form integrals.

Every Toeplitz matrix element in this package reduces to a product of a
Gaussian (or ball) radial moment and a monomial integral over the unit
sphere ``S^{2n-1}``.  Both factors are available in closed form, so no
high-dimensional quadrature enters matrix assembly.

Multi-indices are plain tuples of non-negative ints.  The canonical
ordering used everywhere is graded: total degree first, then descending
lexicographic order, so ``(1, 0)`` precedes ``(0, 1)``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .errors import CapacityExceeded, DimensionMismatch, DomainError

MultiIndex = tuple[int, ...]

#: Largest total degree accepted by the exact factorial helpers.
DEGREE_CAP = 512


def multi_index(entries: Sequence[int], n: int | None = None) -> MultiIndex:
    """Validate ``entries`` and return them as a tuple."""
    m = tuple(int(e) for e in entries)
    if any(e < 0 for e in m):
        raise DomainError(f"multi-index entries must be >= 0, got {m}")
    if n is not None and len(m) != n:
        raise DimensionMismatch(f"multi-index {m} has length {len(m)}, expected {n}")
    if not m:
        raise DimensionMismatch("multi-index must have length >= 1")
    return m


def unit(n: int, i: int) -> MultiIndex:
    """The unit multi-index ``e_i`` (``i`` is 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(n))


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    if len(a) != len(b):
        raise DimensionMismatch(f"{a} and {b} differ in length")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: MultiIndex, b: MultiIndex) -> MultiIndex | None:
    """``a - b``, or None when some entry would be negative."""
    if len(a) != len(b):
        raise DimensionMismatch(f"{a} and {b} differ in length")
    out = tuple(x - y for x, y in zip(a, b))
    return None if any(e < 0 for e in out) else out


def degree_slice(n: int, d: int) -> list[MultiIndex]:
    """All multi-indices of length ``n`` and total degree ``d``, descending lex."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for j in combo:
            m[j] += 1
        out.append(tuple(m))
    return sorted(out, reverse=True)


def graded_multi_indices(n: int, max_degree: int, min_degree: int = 0) -> list[MultiIndex]:
    """Multi-indices with ``min_degree <= |m| <= max_degree`` in graded order."""
    out: list[MultiIndex] = []
    for d in range(min_degree, max_degree + 1):
        out.extend(degree_slice(n, d))
    return out


def iter_level_indices(n: int, ell: int) -> Iterator[MultiIndex]:
    """Particular levels ``k`` with ``|k| = ell``."""
    yield from degree_slice(n, ell)


def multi_factorial(m: Sequence[int]) -> int:
    """``prod(m_i!)`` as an exact integer.

    >>> multi_factorial((2, 3))
    12
    """
    if sum(m) > DEGREE_CAP:
        raise CapacityExceeded(f"|m| = {sum(m)} exceeds the degree cap {DEGREE_CAP}")
    if any(e < 0 for e in m):
        raise DomainError(f"negative entry in {tuple(m)}")
    out = 1
    for e in m:
        out *= math.factorial(e)
    return out


def log_gamma(x: float) -> float:
    """Natural log of ``Gamma(x)`` for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def gamma_ratio_deviation(x: float, a: float) -> float:
    """``Gamma(x + a) / Gamma(x) - x**a``.

    Evaluated as ``x**a * expm1(lnG(x+a) - lnG(x) - a ln x)`` so the
    small remainder is not lost to cancellation.
    """
    if not x > abs(a) + 1:
        raise DomainError(f"need x > |a| + 1, got x={x}, a={a}")
    if a == 0:
        return 0.0
    excess = log_gamma(x + a) - log_gamma(x) - a * math.log(x)
    return x**a * math.expm1(excess)


def laguerre(k: int, x: float) -> float:
    """Laguerre polynomial ``L_k(x)`` by the three-term recurrence."""
    if k < 0:
        raise DomainError(f"order must be >= 0, got {k}")
    prev, cur = 1.0, 1.0 - x
    if k == 0:
        return prev
    for j in range(1, k):
        prev, cur = cur, ((2 * j + 1 - x) * cur - j * prev) / (j + 1)
    return cur


@lru_cache(maxsize=None)
def sphere_monomial_coefficient(alpha: MultiIndex, beta: MultiIndex) -> Fraction:
    """Rational ``q`` with ``int_{S^{2n-1}} z^alpha zbar^beta dS = q * pi^n``."""
    if len(alpha) != len(beta):
        raise DimensionMismatch(f"{alpha} and {beta} differ in length")
    if alpha != beta:
        return Fraction(0)
    n = len(alpha)
    return Fraction(2 * multi_factorial(alpha), math.factorial(n - 1 + sum(alpha)))


def sphere_monomial_integral(alpha: Sequence[int], beta: Sequence[int]) -> float:
    """``int_{S^{2n-1}} z^alpha zbar^beta dS`` (zero unless ``alpha == beta``)."""
    alpha, beta = tuple(alpha), tuple(beta)
    q = sphere_monomial_coefficient(alpha, beta)
    return float(q) * math.pi ** len(alpha)


def sphere_volume(n: int) -> float:
    """Surface measure of ``S^{2n-1}``: ``2 pi^n / (n-1)!``."""
    return 2 * math.pi**n / math.factorial(n - 1)


@lru_cache(maxsize=None)
def radial_gaussian_moment_exact(p: int) -> tuple[int, int]:
    """Split ``int_0^inf r^p exp(-r^2/2) dr`` as ``(integer, parity)``.

    The moment equals ``integer * GAUSSIAN_BASE[parity]`` where the base is 1
    for odd ``p`` and ``sqrt(pi/2)`` for even ``p``.
    """
    if p < 0:
        raise DomainError(f"moment order must be >= 0, got {p}")
    if p % 2:
        q = (p - 1) // 2
        return 2**q * math.factorial(q), 1
    # (p - 1)!! with (-1)!! = 1
    out = 1
    for j in range(p - 1, 0, -2):
        out *= j
    return out, 0


GAUSSIAN_BASE = (math.sqrt(math.pi / 2), 1.0)


def radial_gaussian_moment(p: int) -> float:
    """``int_0^inf r^p exp(-r^2/2) dr = 2^((p-1)/2) Gamma((p+1)/2)``."""
    value, parity = radial_gaussian_moment_exact(p)
    return value * GAUSSIAN_BASE[parity]


def radial_ball_moment(p: int) -> Fraction:
    """``int_0^1 r^p dr = 1/(p+1)``, exact."""
    if p < 0:
        raise DomainError(f"moment order must be >= 0, got {p}")
    return Fraction(1, p + 1)
