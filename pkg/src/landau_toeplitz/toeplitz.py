"""
Truncated Toeplitz operators in the graded Landau bases.

Rows and columns are labelled ``(k, m, p)``: particular level ``k``,
basis exponent ``m`` of ``xihat_{m,k}`` and vector component ``p``.  Within
a level the order is graded in ``|m|``, then descending lex in ``m``, then
``p``; levels are concatenated in the order supplied.

A homogenized monomial ``z^a zbar^b |z|^-(|a|+|b|)`` sends ``xihat_{m,k'}``
into the span of the ``xihat_{m',k}`` with ``m' - k = m - k' + a - b``
(the sphere integral forces this charge balance), so each column has at
most one nonzero entry per symbol term and level.  Row windows are padded
by the symbol degree so that degree-raising images are captured exactly.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch
from .landau import LevelSpec, exact_element
from .specfun import MultiIndex, graded_multi_indices, iter_level_indices
from .symbols import BoundarySymbol, FullSymbol, format_symbol

Label = tuple[MultiIndex, MultiIndex, int]


@dataclass(frozen=True, eq=False)
class GradedMatrix:
    """Dense truncated operator with labelled, degree-graded index sets.

    Attributes
    ----------
    rows, cols : tuple of (k, m, p)
    data : ndarray, complex, read-only
    symbol_degree : int
        Bandwidth in total degree; entries further off are exactly zero.
    row_window, col_window : int
        Largest ``|m|`` present among rows / columns.
    description : dict
        Free-form provenance carried into exports.
    """

    rows: tuple[Label, ...]
    cols: tuple[Label, ...]
    data: np.ndarray
    symbol_degree: int
    row_window: int
    col_window: int
    description: dict = field(default_factory=dict)

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        if data.shape != (len(self.rows), len(self.cols)):
            raise DimensionMismatch(f"data shape {data.shape} vs labels {(len(self.rows), len(self.cols))}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        if data.size:
            rdeg = np.array([sum(r[1]) for r in self.rows])
            cdeg = np.array([sum(c[1]) for c in self.cols])
            far = np.abs(rdeg[:, None] - cdeg[None, :]) > self.band
            if np.any(data[far] != 0):
                raise AssertionError("entry outside the degree band")

    @property
    def band(self) -> int:
        """Degree band: symbol degree plus the spread of levels involved."""
        levels = {sum(r[0]) for r in self.rows} | {sum(c[0]) for c in self.cols}
        return self.symbol_degree + (max(levels) - min(levels) if levels else 0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def truncate(self, col_window: int, row_window: int | None = None) -> "GradedMatrix":
        """Restrict to columns with ``|m| <= col_window`` and rows within
        ``row_window`` (default ``col_window + symbol_degree``)."""
        if row_window is None:
            row_window = col_window + self.symbol_degree
        ri = [i for i, r in enumerate(self.rows) if sum(r[1]) <= row_window]
        ci = [j for j, c in enumerate(self.cols) if sum(c[1]) <= col_window]
        return GradedMatrix(
            tuple(self.rows[i] for i in ri),
            tuple(self.cols[j] for j in ci),
            self.data[np.ix_(ri, ci)],
            self.symbol_degree,
            min(row_window, self.row_window),
            min(col_window, self.col_window),
            dict(self.description),
        )

    def select(self, row_mask=None, col_mask=None) -> np.ndarray:
        """Plain submatrix for boolean predicates on row / column labels."""
        ri = [i for i, r in enumerate(self.rows) if row_mask is None or row_mask(r)]
        ci = [j for j, c in enumerate(self.cols) if col_mask is None or col_mask(c)]
        return self.data[np.ix_(ri, ci)]

    def singular_values(self) -> np.ndarray:
        if not self.data.size:
            return np.zeros(0)
        return np.linalg.svd(self.data, compute_uv=False)

    def header(self) -> dict:
        return {
            "shape": list(self.shape),
            "symbol_degree": self.symbol_degree,
            "row_window": self.row_window,
            "col_window": self.col_window,
            "rows": [_label_json(r) for r in self.rows],
            "cols": [_label_json(c) for c in self.cols],
            "description": self.description,
        }

    def write_csv(self, path) -> None:
        """Nonzero entries as ``row, col, re, im``."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["row", "col", "re", "im"])
            for i, j in zip(*np.nonzero(self.data)):
                v = self.data[i, j]
                writer.writerow([int(i), int(j), repr(float(v.real)), repr(float(v.imag))])

    def write_header(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.header(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def _label_json(label: Label) -> dict:
    k, m, p = label
    return {"level": list(k), "m": list(m), "component": p}


def read_csv(path, shape: tuple[int, int]) -> np.ndarray:
    """Load the CSV written by :meth:`GradedMatrix.write_csv` into a dense array."""
    out = np.zeros(shape, dtype=complex)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            out[int(row["row"]), int(row["col"])] = complex(float(row["re"]), float(row["im"]))
    return out


def _labels(levels: Sequence[MultiIndex], n: int, window: int, N: int) -> list[Label]:
    return [(k, m, p) for k in levels for m in graded_multi_indices(n, window) for p in range(N)]


def _as_boundary(a) -> BoundarySymbol:
    return a.limit() if isinstance(a, FullSymbol) else a


def _fill(a: BoundarySymbol, rows: list[Label], cols: list[Label], same_level_only: bool) -> np.ndarray:
    index = {r: i for i, r in enumerate(rows)}
    row_levels = sorted({r[0] for r in rows})
    data = np.zeros((len(rows), len(cols)), dtype=complex)
    terms = list(a.terms())
    for j, (kc, m, q) in enumerate(cols):
        for p, q_term, alpha, beta, c in terms:
            if q_term != q:
                continue
            for kr in row_levels:
                if same_level_only and kr != kc:
                    continue
                target = tuple(mi + ai - bi + kri - kci for mi, ai, bi, kri, kci in zip(m, alpha, beta, kr, kc))
                if min(target) < 0:
                    continue
                i = index.get((kr, target, p))
                if i is None:
                    continue
                value = exact_element((target, kr), (m, kc), (alpha, beta))
                if value:
                    data[i, j] += c * value
    return data


def _describe(a: BoundarySymbol, **extra) -> dict:
    out = {"symbol": format_symbol(a), "label": a.label, "n": a.n, "N": a.N}
    out.update(extra)
    return out


def assemble_toeplitz(spec: LevelSpec, a, D: int, row_window: int | None = None) -> GradedMatrix:
    """Truncation of ``P_k lambda(a) P_k`` on a particular or full level.

    Columns carry ``|m| <= D``, rows ``|m| <= D + deg(a)`` unless
    ``row_window`` is given.  A full level yields the block-diagonal sum
    over ``|k| = ell``.
    """
    a = _as_boundary(a)
    if a.n != spec.n:
        raise DimensionMismatch(f"symbol lives in n={a.n}, level in n={spec.n}")
    d = a.degree
    rw = D + d if row_window is None else row_window
    levels = spec.particular_levels()
    rows = _labels(levels, spec.n, rw, a.N)
    cols = _labels(levels, spec.n, D, a.N)
    data = _fill(a, rows, cols, same_level_only=True)
    desc = _describe(a, level=spec.level if spec.is_full else list(spec.level), kind="toeplitz")
    return GradedMatrix(tuple(rows), tuple(cols), data, d, rw, D, desc)


def direct_sum_level(ell: int, a, D: int, include_offdiagonal: bool = False) -> GradedMatrix:
    """Truncated ``P_ell lambda(a) P_ell`` on the full level ``ell``.

    Off-diagonal blocks ``P_k lambda(a) P_k'`` are compact and left out
    unless ``include_offdiagonal`` is set.
    """
    a = _as_boundary(a)
    spec = LevelSpec(a.n, ell)
    if not include_offdiagonal:
        return assemble_toeplitz(spec, a, D)
    levels = spec.particular_levels()
    rw = D + a.degree + ell
    rows = _labels(levels, a.n, rw, a.N)
    cols = _labels(levels, a.n, D, a.N)
    data = _fill(a, rows, cols, same_level_only=False)
    desc = _describe(a, level=ell, kind="direct_sum", offdiagonal=True)
    return GradedMatrix(tuple(rows), tuple(cols), data, a.degree, rw, D, desc)


def cross_level_block(a, k_row: Sequence[int], k_col: Sequence[int], D: int) -> GradedMatrix:
    """Truncation of ``P_k lambda(a) P_k'`` between two particular levels."""
    a = _as_boundary(a)
    k_row, k_col = tuple(k_row), tuple(k_col)
    rw = D + a.degree + sum(k_row) + sum(k_col)
    rows = _labels([k_row], a.n, rw, a.N)
    cols = _labels([k_col], a.n, D, a.N)
    data = _fill(a, rows, cols, same_level_only=False)
    desc = _describe(a, kind="cross_level", level_row=list(k_row), level_col=list(k_col))
    return GradedMatrix(tuple(rows), tuple(cols), data, a.degree, rw, D, desc)


def ambient_levels(n: int, K: int) -> list[MultiIndex]:
    """All particular levels with ``|k| <= K``, graded order."""
    return [k for ell in range(K + 1) for k in iter_level_indices(n, ell)]


def assemble_commutator(k: Sequence[int], a, D: int, K: int) -> GradedMatrix:
    """Truncation of ``[P_k, pi(a)]`` on ``span{xihat_{m,k'}: |m| <= D, |k'| <= K}``.

    Only the blocks coupling level ``k`` to the other ambient levels
    survive: ``P_k pi(a) (1 - P_k) - (1 - P_k) pi(a) P_k``.  Rows extend to
    ``D + deg(a) + K`` so every image inside the ambient levels is exact.
    """
    a = _as_boundary(a)
    k = tuple(k)
    levels = ambient_levels(a.n, K)
    if k not in levels:
        raise DimensionMismatch(f"level {k} is not among the ambient levels |k'| <= {K}")
    rw = D + a.degree + K
    rows = _labels(levels, a.n, rw, a.N)
    cols = _labels(levels, a.n, D, a.N)
    full = _fill(a, rows, cols, same_level_only=False)
    in_row = np.array([r[0] == k for r in rows])
    in_col = np.array([c[0] == k for c in cols])
    data = np.where(in_row[:, None] & ~in_col[None, :], full, 0) - np.where(
        ~in_row[:, None] & in_col[None, :], full, 0
    )
    desc = _describe(a, kind="commutator", level=list(k), ambient_K=K)
    return GradedMatrix(tuple(rows), tuple(cols), data, a.degree, rw, D, desc)


def tail_norm(matrix: GradedMatrix, low: int, high: int | None = None) -> float:
    """Largest singular value on columns with ``low <= |m| <= high``.

    The norm of a compact operator restricted to high-degree columns tends
    to zero; this is the quantity recorded in the decay tables.
    """
    high = matrix.col_window if high is None else high
    block = matrix.select(col_mask=lambda c: low <= sum(c[1]) <= high)
    if not block.size:
        return 0.0
    return float(np.linalg.svd(block, compute_uv=False)[0])


def commutator_decay(k: Sequence[int], a, degrees: Sequence[int], K: int) -> list[dict]:
    """Decay table for ``[P_k, pi(a)]``.

    For each ``D`` the commutator is truncated at ``D`` and its norm on the
    columns of degree ``D`` (the outermost shell) is recorded, together with
    the norm of the whole truncation.
    """
    rows = []
    for D in degrees:
        c = assemble_commutator(k, a, D, K)
        rows.append({"D": D, "K": K, "shell_norm": tail_norm(c, D, D), "full_norm": tail_norm(c, 0, D)})
    return rows


def multiplicativity_defect(spec: LevelSpec, a: BoundarySymbol, b: BoundarySymbol, D: int) -> float:
    """Norm of ``T(ab) - T(a) T(b)`` on columns with ``D/2 <= |m| <= D``.

    Products are formed from exact rectangular truncations, so the result
    is the compression of the true defect, not a truncation artefact.
    """
    rw = D + a.degree + b.degree
    tb = assemble_toeplitz(spec, b, D)
    ta = assemble_toeplitz(spec, a, D + b.degree, row_window=rw)
    tab = assemble_toeplitz(spec, a * b, D, row_window=rw)
    diff = tab.data - compose(ta, tb)
    mask = [math.ceil(D / 2) <= sum(c[1]) <= D for c in tb.cols]
    block = diff[:, mask]
    return float(np.linalg.svd(block, compute_uv=False)[0]) if block.size else 0.0


def compose(left: GradedMatrix, right: GradedMatrix) -> np.ndarray:
    """``left @ right`` matching ``left`` columns to ``right`` rows by label.

    Row labels of ``right`` absent from ``left``'s columns must carry
    zero rows, otherwise the product would silently drop mass.
    """
    col_pos = {lab: j for j, lab in enumerate(left.cols)}
    out = np.zeros((left.shape[0], right.shape[1]), dtype=complex)
    for i, lab in enumerate(right.rows):
        j = col_pos.get(lab)
        if j is None:
            if np.any(right.data[i] != 0):
                raise DimensionMismatch(f"row {lab} of the right factor has no partner column")
            continue
        out += np.outer(left.data[:, j], right.data[i])
    return out
