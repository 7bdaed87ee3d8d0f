import math

import numpy as np
import pytest
from scipy import integrate

from landau_toeplitz.errors import DimensionMismatch
from landau_toeplitz.landau import LevelSpec
from landau_toeplitz.symbols import (
    constant_symbol,
    coordinate_symbol,
    identity_symbol,
    su2_symbol,
    symbol_adjoint,
    zpow_symbol,
)
from landau_toeplitz.toeplitz import (
    GradedMatrix,
    assemble_commutator,
    assemble_toeplitz,
    commutator_decay,
    cross_level_block,
    direct_sum_level,
    multiplicativity_defect,
    read_csv,
    tail_norm,
)


def test_weighted_shift_n1():
    t = assemble_toeplitz(LevelSpec(1, (0,)), coordinate_symbol(1, 1), 5)
    assert t.shape == (7, 6)
    expected = np.zeros((7, 6))
    for m in range(6):
        expected[m + 1, m] = math.gamma(m + 1.5) * math.sqrt(m + 1) / math.factorial(m + 1)
    np.testing.assert_allclose(t.data, expected, rtol=1e-13, atol=0)


def test_identity_symbol_block():
    t = assemble_toeplitz(LevelSpec(2, (1, 0)), identity_symbol(2, 2), 4)
    np.testing.assert_allclose(t.data, np.eye(t.shape[0]), atol=1e-14)


def _s3_rule(nt=24, nphi=16):
    x, w = np.polynomial.legendre.leggauss(nt)
    t, wt = (x + 1) * np.pi / 4, w * np.pi / 4
    p = 2 * np.pi * np.arange(nphi) / nphi
    T, P1, P2 = np.meshgrid(t, p, p, indexing="ij")
    v = np.stack([np.cos(T) * np.exp(1j * P1), np.sin(T) * np.exp(1j * P2)], axis=-1)
    dS = wt[:, None, None] * np.cos(T) * np.sin(T) * (2 * np.pi / nphi) ** 2
    return v, dS


def test_su2_pattern_and_entry():
    t = assemble_toeplitz(LevelSpec(2, (0, 0)), su2_symbol(), 3)
    for i, j in zip(*np.nonzero(t.data)):
        (_, mr, _), (_, mc, _) = t.rows[i], t.cols[j]
        step = np.subtract(mr, mc)
        assert sorted(np.abs(step)) == [0, 1]
    r = t.rows.index(((0, 0), (1, 0), 0))
    c = t.cols.index(((0, 0), (0, 0), 0))
    entry = t.data[r, c]
    assert entry == pytest.approx(3 * math.sqrt(math.pi) / 8, rel=1e-14)

    # independent oracle: radial quadrature times a tensor rule on S^3
    # eta_0 = exp(-|z|^2/4)/(2 pi), eta_{e1} = z1 exp(-|z|^2/4)/(2 sqrt(2) pi)
    v, dS = _s3_rule()
    angular = np.sum(dS * np.abs(v[..., 0]) ** 2)
    radial, _ = integrate.quad(lambda s: s**4 * math.exp(-s * s / 2), 0, np.inf, epsabs=0, epsrel=1e-13)
    oracle = angular * radial / (4 * math.sqrt(2) * math.pi**2)
    assert abs(entry - oracle) < 1e-6


def test_adjoint_compatibility():
    cases = [(LevelSpec(1, (2,)), zpow_symbol(2)), (LevelSpec(2, (0, 1)), su2_symbol()),
             (LevelSpec(2, 1), su2_symbol().scale(1 - 2j) + identity_symbol(2, 2))]
    for spec, a in cases:
        D = 6
        t = assemble_toeplitz(spec, a, D)
        s = assemble_toeplitz(spec, symbol_adjoint(a), D)
        sq_t = t.select(lambda r: sum(r[1]) <= D, None)
        sq_s = s.select(lambda r: sum(r[1]) <= D, None)
        np.testing.assert_allclose(sq_s, sq_t.conj().T, atol=1e-15)


def test_band_invariant_enforced():
    rows = (((0,), (0,), 0), ((0,), (3,), 0))
    cols = (((0,), (0,), 0),)
    with pytest.raises(AssertionError):
        GradedMatrix(rows, cols, np.array([[0.0], [1.0]]), 1, 3, 0)
    with pytest.raises(DimensionMismatch):
        GradedMatrix(rows, cols, np.zeros((1, 1)), 1, 3, 0)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        assemble_toeplitz(LevelSpec(1, (0,)), su2_symbol(), 3)


def test_commutator_constant_is_zero():
    c = assemble_commutator((0,), constant_symbol(1, 2.5), 6, 3)
    assert not np.any(c.data)


def test_commutator_decay_table():
    for K in (2, 4):
        rows = commutator_decay((0,), coordinate_symbol(1, 1), [5, 10, 20], K)
        shell = [r["shell_norm"] for r in rows]
        assert shell[0] > shell[1] > shell[2]
        assert shell[2] < 0.2
        np.testing.assert_allclose(shell, [0.218, 0.156, 0.111], atol=2e-3)


def test_commutator_level_must_be_ambient():
    with pytest.raises(DimensionMismatch):
        assemble_commutator((5,), coordinate_symbol(1, 1), 4, 2)


def test_cross_level_decay():
    u = su2_symbol()
    norms = []
    for D in (4, 8, 12):
        b = cross_level_block(u, (1, 0), (0, 1), D)
        norms.append(tail_norm(b, D, D))
    assert norms[0] > norms[1] > norms[2]
    assert norms[-1] < 0.05


def test_direct_sum_level():
    a = su2_symbol()
    d0 = direct_sum_level(0, a, 4)
    t0 = assemble_toeplitz(LevelSpec(2, (0, 0)), a, 4)
    np.testing.assert_array_equal(d0.data, t0.data)
    assert d0.rows == t0.rows
    for ell in (1, 2):
        d = direct_sum_level(ell, a, 3)
        levels = sorted({c[0] for c in d.cols})
        assert len(levels) == math.factorial(ell + 1) // math.factorial(ell)
    d1 = direct_sum_level(1, a, 3)
    assert {c[0] for c in d1.cols} == {(1, 0), (0, 1)}
    off = direct_sum_level(1, a, 3, include_offdiagonal=True)
    assert any(r[0] != c[0] for i, j in zip(*np.nonzero(off.data)) for r, c in [(off.rows[i], off.cols[j])])


@pytest.mark.parametrize("n, k", [(1, (0,)), (2, (0, 0))])
def test_multiplicativity_defect_decreases(n, k):
    z = coordinate_symbol(n, 1)
    defects = [multiplicativity_defect(LevelSpec(n, k), z, z, D) for D in (4, 8, 16)]
    assert defects[0] > defects[1] > defects[2]


def test_su2_near_isometry():
    u = su2_symbol()
    deltas = []
    for D in (4, 8, 12):
        t = assemble_toeplitz(LevelSpec(2, (0, 0)), u, D)
        s = t.singular_values()
        assert s.max() <= 1 + 1e-12
        shell = np.linalg.svd(t.select(col_mask=lambda c: sum(c[1]) >= D // 2), compute_uv=False)
        deltas.append(1 - shell.min())
    assert deltas[0] > deltas[1] > deltas[2]


def test_export_roundtrip(tmp_path):
    t = assemble_toeplitz(LevelSpec(2, (0, 0)), su2_symbol(), 2)
    t.write_csv(tmp_path / "m.csv")
    t.write_header(tmp_path / "m.json")
    back = read_csv(tmp_path / "m.csv", t.shape)
    np.testing.assert_array_equal(back, t.data)
    import json

    header = json.loads((tmp_path / "m.json").read_text())
    assert header["shape"] == list(t.shape)
    assert header["col_window"] == 2 and header["row_window"] == 3
    assert len(header["rows"]) == t.shape[0]


def test_truncate_default_row_window():
    t = assemble_toeplitz(LevelSpec(1, (0,)), zpow_symbol(2), 10)
    s = t.truncate(4)
    assert s.shape == (7, 5)
    np.testing.assert_array_equal(s.data, t.data[:7, :5])
