"""
Topological side: winding numbers and the odd Chern character integral.

The pairing computed is

    -(n-1)! / ((2n-1)! (2 pi i)^n) * int_{S^{2n-1}} tr((u^-1 du)^{2n-1})

with ``S^{2n-1}`` oriented as the boundary of the unit ball (outward
normal first).  For ``n = 2`` the chart
``z1 = cos(t) e^{i p1}, z2 = sin(t) e^{i p2}`` with coordinates
``(t, p1, p2)`` is negatively oriented against that convention, which
:data:`CHART_ORIENTATION` records.  With it the SU(2) symbol pairs to -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    MismatchExceedsTolerance,
    NotConverged,
    NotInvertibleOnCircle,
    NotUnitarySymbol,
    QuadratureNotConverged,
)
from .symbols import BoundarySymbol, FullSymbol, symbol_det

#: Sign of det[outward normal, d/dt, d/dp1, d/dp2] for the n=2 chart.
CHART_ORIENTATION = {1: 1, 2: -1}

UNITARY_TOL = 1e-8
CONVERGENCE_TOL = 1e-6
FD_STEP = 1e-5


@dataclass(frozen=True)
class SphereQuadrature:
    """Tensor rule on ``S^{2n-1}`` in the chart described by ``descriptor``.

    ``theta_*`` is a Gauss-Legendre rule on ``[0, pi/2]`` (unused for
    ``n = 1``); ``phi_*`` is the uniform trapezoid rule on ``[0, 2 pi)``
    used for every phase.  ``surface_density`` gives the ``dS`` Jacobian
    ``cos(t) sin(t)`` at each theta node.
    """

    n: int
    theta_nodes: np.ndarray
    theta_weights: np.ndarray
    phi_nodes: np.ndarray
    phi_weights: np.ndarray
    descriptor: str

    @property
    def node_count(self) -> int:
        return len(self.phi_nodes) ** self.n * (len(self.theta_nodes) if self.n == 2 else 1)

    @property
    def surface_density(self) -> np.ndarray:
        return np.cos(self.theta_nodes) * np.sin(self.theta_nodes)

    def total_weight(self) -> float:
        """Sum of the ``dS`` weights; equals the sphere volume."""
        phi_total = self.phi_weights.sum()
        if self.n == 1:
            return float(phi_total)
        return float(np.sum(self.theta_weights * self.surface_density) * phi_total**2)

    def blocks(self):
        """Yield ``(z, dz, param_weight, surface_weight)`` one theta node at a time.

        ``z`` has shape ``(P, n)`` with ``P`` the number of phase nodes;
        ``dz`` lists ``dz/dt_i`` for each chart coordinate.
        """
        p = self.phi_nodes
        if self.n == 1:
            z = np.exp(1j * p)[:, None]
            yield z, [1j * z], self.phi_weights, self.phi_weights
            return
        p1, p2 = np.meshgrid(p, p, indexing="ij")
        p1, p2 = p1.ravel(), p2.ravel()
        e1, e2 = np.exp(1j * p1), np.exp(1j * p2)
        w_phase = np.outer(self.phi_weights, self.phi_weights).ravel()
        zero = np.zeros_like(e1)
        for t, wt, dens in zip(self.theta_nodes, self.theta_weights, self.surface_density):
            c, s = math.cos(t), math.sin(t)
            z = np.stack([c * e1, s * e2], axis=-1)
            dt = np.stack([-s * e1, c * e2], axis=-1)
            dp1 = np.stack([1j * c * e1, zero], axis=-1)
            dp2 = np.stack([zero, 1j * s * e2], axis=-1)
            yield z, [dt, dp1, dp2], wt * w_phase, wt * dens * w_phase

    def integrate(self, f) -> complex:
        """``int f dS`` for ``f`` mapping points ``(P, n)`` to values ``(P,)``."""
        return complex(sum(np.sum(sw * f(z)) for z, _, _, sw in self.blocks()))


def sphere_quadrature(n: int, n_theta: int = 64, n_phi: int = 128) -> SphereQuadrature:
    if n not in (1, 2):
        raise NotImplementedError("sphere quadrature is provided for n = 1 and n = 2 only")
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = (x + 1) * math.pi / 4
    theta_w = w * math.pi / 4
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    phi_w = np.full(n_phi, 2 * math.pi / n_phi)
    desc = "z = e^{i p}" if n == 1 else "z1 = cos(t) e^{i p1}, z2 = sin(t) e^{i p2}, t in [0, pi/2]"
    if n == 1:
        theta, theta_w = np.zeros(0), np.zeros(0)
    return SphereQuadrature(n, theta, theta_w, phi, phi_w, desc)


def chern_normalization(n: int) -> complex:
    """``-(n-1)! / ((2n-1)! (2 pi i)^n)``."""
    return -math.factorial(n - 1) / (math.factorial(2 * n - 1) * (2j * math.pi) ** n)


def _boundary(u) -> BoundarySymbol:
    return u.limit() if isinstance(u, FullSymbol) else u


# ---------------------------------------------------------------------------
# Winding number on the circle


def winding_number(a, nodes: int = 512, tolerance: float = 1e-6) -> int:
    """``(1 / 2 pi i) int_T a^-1 da`` by the trapezoid rule.

    Matrix symbols are reduced to their determinant first.  For ``n > 1``
    the loop is the coordinate circle ``(e^{i p}, 0, ..., 0)``.  The
    derivative comes from the term structure, not from differencing.
    """
    a = _boundary(a)
    if a.N > 1:
        a = symbol_det(a)
    phi = 2 * np.pi * np.arange(nodes) / nodes
    z = np.zeros((nodes, a.n), dtype=complex)
    z[:, 0] = np.exp(1j * phi)
    val, (dval,) = a.evaluate_with_derivatives(z, [1j * z])
    val, dval = val[:, 0, 0], dval[:, 0, 0]
    if np.min(np.abs(val)) < 1e-8:
        raise NotInvertibleOnCircle(f"|a| drops to {np.min(np.abs(val)):.3g} on the circle")
    value = np.mean(dval / val) / 1j
    nearest = int(round(value.real))
    if abs(value - nearest) > tolerance:
        raise NotConverged(f"winding integral {value} is not within {tolerance} of an integer")
    return nearest


# ---------------------------------------------------------------------------
# Odd Chern character


@dataclass(frozen=True)
class ChernResult:
    n: int
    value: complex
    nearest_integer: int
    quadrature_nodes: int
    converged: bool
    refinement_change: float


def _fd_derivatives(u: BoundarySymbol, quad_block):
    """Central differences in the chart coordinates with a Richardson check."""
    z, dz, _, _ = quad_block
    value = u.evaluate(z)
    out = []
    for d in dz:
        # move along the chart by stepping z with its tangent, then renormalize
        def at(h):
            zz = z + h * d
            return u.evaluate(zz / np.linalg.norm(zz, axis=-1, keepdims=True))

        coarse = (at(FD_STEP) - at(-FD_STEP)) / (2 * FD_STEP)
        fine = (at(FD_STEP / 2) - at(-FD_STEP / 2)) / FD_STEP
        if np.max(np.abs(coarse - fine)) > 1e-4 * max(1.0, np.max(np.abs(fine))):
            raise NotConverged("finite-difference derivative failed the Richardson check")
        out.append((4 * fine - coarse) / 3)
    return value, out


def _chern_density(u: BoundarySymbol, block, derivative: str) -> np.ndarray:
    z, dz, _, _ = block
    if derivative == "analytic":
        val, ders = u.evaluate_with_derivatives(z, dz)
    elif derivative == "fd":
        val, ders = _fd_derivatives(u, block)
    else:
        raise ValueError(f"unknown derivative mode {derivative!r}")
    eye = np.eye(u.N)
    defect = np.max(np.abs(val @ np.conj(np.swapaxes(val, -1, -2)) - eye))
    if defect > UNITARY_TOL:
        raise NotUnitarySymbol(f"|u u^* - 1| reaches {defect:.3g} at quadrature nodes")
    inv = np.conj(np.swapaxes(val, -1, -2))
    A = [inv @ d for d in ders]
    if u.n == 1:
        return np.trace(A[0], axis1=-2, axis2=-1)
    # sum over S_3 collapses to 3 (tr A1A2A3 - tr A1A3A2) by cyclicity
    t123 = np.trace(A[0] @ A[1] @ A[2], axis1=-2, axis2=-1)
    t132 = np.trace(A[0] @ A[2] @ A[1], axis1=-2, axis2=-1)
    return 3 * (t123 - t132)


def _chern_at(u: BoundarySymbol, quad: SphereQuadrature, derivative: str) -> complex:
    total = 0j
    for block in quad.blocks():
        total += np.sum(block[2] * _chern_density(u, block, derivative))
    return chern_normalization(u.n) * CHART_ORIENTATION[u.n] * total


def odd_chern(u, n: int | None = None, n_theta: int = 64, n_phi: int = 128,
              derivative: str = "analytic", check_convergence: bool = True) -> ChernResult:
    """Odd Chern character pairing of a unitary symbol, with diagnostics.

    Raises
    ------
    NotUnitarySymbol
        If ``u u^*`` deviates from the identity by more than 1e-8 at a node.
    QuadratureNotConverged
        If doubling every node count moves the value by more than 1e-6.
    """
    u = _boundary(u)
    if n is not None and n != u.n:
        raise DimensionMismatch(f"symbol lives in n={u.n}, asked for n={n}")
    quad = sphere_quadrature(u.n, n_theta, n_phi)
    value = _chern_at(u, quad, derivative)
    change = 0.0
    if check_convergence:
        finer = sphere_quadrature(u.n, 2 * n_theta, 2 * n_phi)
        change = abs(_chern_at(u, finer, derivative) - value)
        if change > CONVERGENCE_TOL:
            raise QuadratureNotConverged(f"doubling the nodes moved the value by {change:.3g}")
    nearest = int(round(value.real))
    return ChernResult(u.n, complex(value), nearest, quad.node_count, bool(change <= CONVERGENCE_TOL), float(change))


def odd_chern_integral(u, n: int | None = None, **kwargs) -> complex:
    """The pairing value itself; see :func:`odd_chern`."""
    return odd_chern(u, n, **kwargs).value


def chern_form_trace(u: BoundarySymbol, nodes, tolerance: float = 1e-9):
    """``tr((u^* du)^3)`` against the closed form, at chart nodes ``(t, p1, p2)``.

    The closed form for the SU(2) symbol is
    ``3 (z1 dzbar1 - zbar1 dz1) ^ dz2 ^ dzbar2 + 3 (z2 dzbar2 - zbar2 dz2) ^ dz1 ^ dzbar1``.
    Both sides are returned as coefficients of ``dt ^ dp1 ^ dp2``.

    Raises
    ------
    MismatchExceedsTolerance
        If the two sides differ by more than ``tolerance`` at any node.
    """
    if u.n != 2:
        raise DimensionMismatch("chern_form_trace is defined for n = 2")
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    t, p1, p2 = nodes[:, 0], nodes[:, 1], nodes[:, 2]
    c, s = np.cos(t), np.sin(t)
    e1, e2 = np.exp(1j * p1), np.exp(1j * p2)
    zero = np.zeros_like(e1)
    z = np.stack([c * e1, s * e2], axis=-1)
    dz = [np.stack([-s * e1, c * e2], -1), np.stack([1j * c * e1, zero], -1), np.stack([zero, 1j * s * e2], -1)]
    computed = _chern_density(u, (z, dz, None, None), "analytic")

    # one-forms as component vectors along (dt, dp1, dp2)
    dz1 = np.stack([d[:, 0] for d in dz], -1)
    dz2 = np.stack([d[:, 1] for d in dz], -1)
    z1, z2 = z[:, 0, None], z[:, 1, None]

    def wedge3(a, b, c_):
        return np.linalg.det(np.stack([a, b, c_], axis=-2))

    closed = 3 * wedge3(z1 * dz1.conj() - z1.conj() * dz1, dz2, dz2.conj()) + 3 * wedge3(
        z2 * dz2.conj() - z2.conj() * dz2, dz1, dz1.conj()
    )
    mismatch = float(np.max(np.abs(computed - closed)))
    if mismatch > tolerance:
        raise MismatchExceedsTolerance(f"trace form and closed form differ by {mismatch:.3g}")
    return computed, closed


def multiplicity(ell: int, n: int) -> int:
    """Number of particular levels in the full level ``ell``: ``C(ell+n-1, n-1)``."""
    return math.comb(ell + n - 1, n - 1)


def landau_prediction(ell: int, n: int, u, tolerance: float = 1e-6, **kwargs) -> int:
    """Predicted index on the full level ``ell``: multiplicity times the pairing."""
    value = multiplicity(ell, n) * odd_chern_integral(u, n, **kwargs)
    nearest = int(round(value.real))
    if abs(value - nearest) > tolerance:
        raise NotConverged(f"predicted index {value} is not within {tolerance} of an integer")
    return nearest
