"""
Fredholm indices from graded truncations.

Because every column of a truncation is the exact image of a basis vector
(row windows are padded by the symbol degree), the truncation at cap ``D``
is the operator restricted to ``span{|m| <= D}``.  Its nullity is
``dim(ker T intersected with that span)``, which equals ``dim ker T`` once
``D`` exceeds the degree of every kernel vector.  The cokernel is the
kernel of the truncated adjoint symbol.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from .errors import NotConverged, NotFredholm, NotStabilized, NotUnitarySymbol
from .landau import LevelSpec
from .symbols import BoundarySymbol, FullSymbol, is_unitary, symbol_adjoint
from .toeplitz import assemble_toeplitz, compose

RANK_TOLERANCE = 1e-8
FREDHOLM_THRESHOLD = 1e-6
FREDHOLM_SAMPLES = 1 << 14
STABLE_RUN = 3


@dataclass(frozen=True)
class IndexReport:
    """Outcome of one graded index computation.

    ``history`` holds ``(D, kernel_dim, cokernel_dim)`` per degree cap.
    """

    kernel_dim: int
    cokernel_dim: int
    index: int
    stabilized: bool
    history: tuple[tuple[int, int, int], ...]
    rank_tolerance: float = RANK_TOLERANCE
    kernel_vectors: np.ndarray | None = field(default=None, compare=False, repr=False)
    cokernel_vectors: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.index != self.kernel_dim - self.cokernel_dim:
            raise ValueError("index must equal kernel_dim - cokernel_dim")
        if self.stabilized and not _agrees(self.history):
            raise ValueError("stabilized requires the last three history entries to agree")

    def to_dict(self) -> dict:
        return {
            "kernel_dim": self.kernel_dim,
            "cokernel_dim": self.cokernel_dim,
            "index": self.index,
            "stabilized": self.stabilized,
            "rank_tolerance": self.rank_tolerance,
            "history": [{"D": D, "ker": k, "coker": c} for D, k, c in self.history],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "IndexReport":
        return cls(
            kernel_dim=data["kernel_dim"],
            cokernel_dim=data["cokernel_dim"],
            index=data["index"],
            stabilized=data["stabilized"],
            history=tuple((h["D"], h["ker"], h["coker"]) for h in data["history"]),
            rank_tolerance=data["rank_tolerance"],
        )


def _agrees(history: Sequence[tuple[int, int, int]]) -> bool:
    if len(history) < STABLE_RUN:
        return False
    tail = history[-STABLE_RUN:]
    return all(h[1:] == tail[0][1:] for h in tail)


# ---------------------------------------------------------------------------
# Fredholm check


@dataclass(frozen=True)
class FredholmCheck:
    fredholm: bool
    min_abs_det: float
    witness: np.ndarray

    def __bool__(self):
        return self.fredholm


def sphere_points(n: int, count: int = FREDHOLM_SAMPLES, seed: int = 0) -> np.ndarray:
    """Deterministic low-discrepancy points on ``S^{2n-1}``.

    Scrambled Sobol points mapped through the Hopf-type chart
    ``|z_j|^2`` uniform on the simplex, phases uniform.  For ``n = 2`` the
    chart's poles (``z_1 = 0`` or ``z_2 = 0``) are appended on a phase grid
    so symbols vanishing on a coordinate circle are hit exactly.
    """
    if n == 1:
        phi = 2 * np.pi * np.arange(count) / count
        return np.exp(1j * phi)[:, None]
    sob = qmc.Sobol(d=2 * n - 1, scramble=True, seed=seed).random(count)
    # uniform point on the simplex of squared moduli via sorted uniforms
    cuts = np.sort(sob[:, : n - 1], axis=1)
    edges = np.concatenate([np.zeros((count, 1)), cuts, np.ones((count, 1))], axis=1)
    moduli = np.sqrt(np.diff(edges, axis=1))
    phases = np.exp(2j * np.pi * sob[:, n - 1 :])
    pts = moduli * phases
    extra = []
    grid = np.exp(2j * np.pi * np.arange(64) / 64)
    for j in range(n):
        e = np.zeros((64, n), dtype=complex)
        e[:, j] = grid
        extra.append(e)
    return np.concatenate([pts] + extra, axis=0)


def _det_abs(a: BoundarySymbol, z: np.ndarray) -> np.ndarray:
    return np.abs(np.linalg.det(a.evaluate(z)))


def check_fredholm(a, samples: int = FREDHOLM_SAMPLES, threshold: float = FREDHOLM_THRESHOLD) -> FredholmCheck:
    """Sample ``min |det a(v)|`` over the sphere and polish the minimizer.

    The sampled minimizer seeds a Nelder-Mead search in real coordinates;
    the symbol counts as invertible if the polished minimum stays above
    ``threshold``.
    """
    if isinstance(a, FullSymbol):
        a = a.limit()
    pts = sphere_points(a.n, samples)
    vals = _det_abs(a, pts)
    best = int(np.argmin(vals))
    v0 = pts[best]

    def objective(x):
        z = x[: a.n] + 1j * x[a.n :]
        norm = np.linalg.norm(z)
        if norm == 0:
            return np.inf
        return float(_det_abs(a, (z / norm)[None, :])[0])

    x0 = np.concatenate([v0.real, v0.imag])
    res = minimize(objective, x0, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
    if res.fun < vals[best]:
        z = res.x[: a.n] + 1j * res.x[a.n :]
        witness, value = z / np.linalg.norm(z), float(res.fun)
    else:
        witness, value = v0, float(vals[best])
    return FredholmCheck(value >= threshold, value, witness)


# ---------------------------------------------------------------------------
# Graded index


def _nullspace(data: np.ndarray, tol: float):
    """Nullity and null vectors at relative tolerance ``tol``."""
    ncols = data.shape[1]
    if ncols == 0:
        return 0, np.zeros((0, 0))
    if data.shape[0] == 0:
        return ncols, np.eye(ncols)
    _, s, vh = np.linalg.svd(data)
    scale = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol * scale)) if scale > 0 else 0
    return ncols - rank, vh[rank:].conj().T


def _degree_caps(D_max: int) -> list[int]:
    lo = max(1, D_max // 2)
    span = D_max - lo
    step = max(1, span // 3) if span >= 3 else 1
    caps = list(range(D_max, lo - 1, -step))[::-1]
    if len(caps) < 4:
        caps = list(range(max(0, D_max - 3), D_max + 1))
    return caps


def graded_index(spec: LevelSpec, a, D_max: int, rank_tolerance: float = RANK_TOLERANCE, strict: bool = False) -> IndexReport:
    """Kernel and cokernel dimensions of the truncated Toeplitz operator.

    Degree caps run from ``D_max/2`` to ``D_max`` with at least four
    samples.  The operator and its adjoint are assembled once at ``D_max``
    and sliced.

    Raises
    ------
    NotFredholm
        If :func:`check_fredholm` fails.
    NotStabilized
        Only when ``strict``; otherwise the report carries ``stabilized=False``.
    """
    if isinstance(a, FullSymbol):
        a = a.limit()
    check = check_fredholm(a)
    if not check:
        raise NotFredholm(f"min |det| = {check.min_abs_det:.3g} on the sphere", witness=check.witness)
    op = assemble_toeplitz(spec, a, D_max)
    adj = assemble_toeplitz(spec, symbol_adjoint(a), D_max)
    history = []
    ker_vecs = coker_vecs = None
    for D in _degree_caps(D_max):
        t = op.truncate(D)
        s = adj.truncate(D)
        ker, ker_vecs = _nullspace(t.data, rank_tolerance)
        coker, coker_vecs = _nullspace(s.data, rank_tolerance)
        history.append((D, ker, coker))
    ker, coker = history[-1][1:]
    report = IndexReport(ker, coker, ker - coker, _agrees(history), tuple(history), rank_tolerance, ker_vecs, coker_vecs)
    if strict and not report.stabilized:
        raise NotStabilized(f"kernel/cokernel not stable: {history}", report=report)
    return report


def index_vs_level(a, levels: Iterable[LevelSpec], D_max: int) -> list[dict]:
    """``graded_index`` per level; the stabilized indices should all agree."""
    rows = []
    for spec in levels:
        rep = graded_index(spec, a, D_max)
        level = spec.level if spec.is_full else list(spec.level)
        rows.append({"level": level, "index": rep.index, "kernel_dim": rep.kernel_dim,
                     "cokernel_dim": rep.cokernel_dim, "stabilized": rep.stabilized})
    return rows


# ---------------------------------------------------------------------------
# Trace-formula cross-check


@dataclass(frozen=True)
class FedosovResult:
    value: float
    nearest: int
    distance: float
    D: int
    power: int


def _square_product(spec: LevelSpec, left: BoundarySymbol, right: BoundarySymbol, D: int) -> np.ndarray:
    """Compression of ``T(left) T(right)`` to ``|m| <= D``, exact."""
    tr = assemble_toeplitz(spec, right, D)
    tl = assemble_toeplitz(spec, left, D + right.degree, row_window=D)
    return compose(tl, tr)


def fedosov_index(spec: LevelSpec, a, power: int, D: int, tolerance: float = 0.1) -> FedosovResult:
    """``tr (1 - T(a*)T(a))^p - tr (1 - T(a)T(a*))^p`` on ``|m| <= D``.

    ``T(a*)`` serves as parametrix for a unitary-valued symbol, so both
    defects are compact and the difference tends to the index.
    """
    if isinstance(a, FullSymbol):
        a = a.limit()
    if not is_unitary(a):
        raise NotUnitarySymbol("fedosov_index needs a a^* = 1 on the sphere")
    adj = symbol_adjoint(a)
    left = _square_product(spec, adj, a, D)
    right = _square_product(spec, a, adj, D)
    eye = np.eye(left.shape[0])
    value = np.trace(np.linalg.matrix_power(eye - left, power)) - np.trace(np.linalg.matrix_power(eye - right, power))
    value = float(value.real)
    nearest = int(round(value))
    distance = abs(value - nearest)
    if distance > tolerance:
        raise NotConverged(f"trace formula gave {value:.6f}, {distance:.3g} from an integer")
    return FedosovResult(value, nearest, distance, D, power)

