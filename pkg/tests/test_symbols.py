import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_sphere
from landau_toeplitz.errors import DimensionMismatch, IndexOutOfRange, InvalidEpsilon, NotOnSphere, SymbolParseError
from landau_toeplitz.symbols import (
    BoundarySymbol,
    FullSymbol,
    builtin_symbol,
    constant_symbol,
    coordinate_symbol,
    estimate_lipschitz,
    eval_boundary,
    format_symbol,
    identity_symbol,
    is_unitary,
    lipschitz_split,
    parse_symbol,
    resolve_symbol,
    su2_symbol,
    symbol_adjoint,
    symbol_det,
    symbol_product,
    zpow_symbol,
)


def test_eval_boundary_examples():
    assert eval_boundary(coordinate_symbol(2, 1), [1, 0])[0, 0] == 1
    np.testing.assert_array_equal(eval_boundary(su2_symbol(), [0, 1]), [[0, 1], [-1, 0]])
    np.testing.assert_array_equal(eval_boundary(identity_symbol(2, 3), [0.6, 0.8j]), np.eye(3))


def test_eval_boundary_rejects_off_sphere():
    with pytest.raises(NotOnSphere):
        eval_boundary(coordinate_symbol(2, 1), [1.0, 1e-5])


def test_su2_examples(rng):
    u = su2_symbol()
    np.testing.assert_array_equal(eval_boundary(u, [1, 0]), np.eye(2))
    vals = u.evaluate(random_sphere(rng, 2, 100))
    np.testing.assert_allclose(np.linalg.det(vals), 1, atol=1e-14)
    np.testing.assert_allclose(vals @ np.conj(np.swapaxes(vals, 1, 2)), np.broadcast_to(np.eye(2), vals.shape), atol=1e-14)
    assert (u.n, u.N, u.degree) == (2, 2, 1)


def test_coordinate_symbol():
    theta = 0.7
    assert eval_boundary(coordinate_symbol(1, 1), [np.exp(1j * theta)])[0, 0] == pytest.approx(np.exp(1j * theta))
    assert eval_boundary(coordinate_symbol(2, 2), [0, 1])[0, 0] == 1
    with pytest.raises(IndexOutOfRange):
        coordinate_symbol(2, 3)
    zbar = BoundarySymbol(2, (({((0, 0), (1, 0)): 1},),))
    assert symbol_adjoint(coordinate_symbol(2, 1)) == zbar


def test_term_level_algebra():
    u = su2_symbol()
    assert symbol_product(u, symbol_adjoint(u)) == identity_symbol(2, 2)
    assert symbol_det(u) == constant_symbol(2, 1)
    z1, z2 = coordinate_symbol(2, 1), coordinate_symbol(2, 2)
    total = symbol_product(symbol_adjoint(z1), z1) + symbol_product(symbol_adjoint(z2), z2)
    assert total == constant_symbol(2, 1)
    assert is_unitary(u) and not is_unitary(z1)


def test_det_against_evaluation(rng):
    u = su2_symbol()
    a = u.scale(2) + identity_symbol(2, 2)
    pts = random_sphere(rng, 2, 100)
    np.testing.assert_allclose(symbol_det(a).evaluate(pts)[:, 0, 0], np.linalg.det(a.evaluate(pts)), atol=1e-12)


def test_product_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        symbol_product(coordinate_symbol(1, 1), coordinate_symbol(2, 1))
    with pytest.raises(DimensionMismatch):
        symbol_product(su2_symbol(), coordinate_symbol(2, 1))


_generators = [coordinate_symbol(2, 1), coordinate_symbol(2, 2), symbol_adjoint(coordinate_symbol(2, 1)),
               symbol_adjoint(coordinate_symbol(2, 2)), constant_symbol(2, 2 - 1j)]


@st.composite
def scalar_symbols(draw):
    # Gaussian-integer coefficients keep the term-level comparison exact
    out = constant_symbol(2, complex(draw(st.integers(-3, 3)), draw(st.integers(-3, 3))))
    for _ in range(draw(st.integers(0, 3))):
        g = draw(st.sampled_from(_generators))
        out = symbol_product(out, g) + g.scale(draw(st.integers(-2, 2)))
    return out


@settings(max_examples=40, deadline=None)
@given(scalar_symbols(), scalar_symbols(), scalar_symbols())
def test_product_associative(a, b, c):
    assert symbol_product(symbol_product(a, b), c) == symbol_product(a, symbol_product(b, c))


@settings(max_examples=40, deadline=None)
@given(scalar_symbols(), scalar_symbols())
def test_product_matches_pointwise(a, b):
    pts = random_sphere(np.random.default_rng(3), 2, 16)
    np.testing.assert_allclose(symbol_product(a, b).evaluate(pts), a.evaluate(pts) @ b.evaluate(pts), atol=1e-9)


@settings(max_examples=40, deadline=None)
@given(scalar_symbols())
def test_format_parse_roundtrip(a):
    assert parse_symbol(format_symbol(a), 2) == a


def test_parse_literal_examples():
    s = parse_symbol("2 * z1^2 * zbar2 * |z|^-3 - 1j", 2)
    pts = random_sphere(np.random.default_rng(0), 2, 5)
    expected = 2 * pts[:, 0] ** 2 * np.conj(pts[:, 1]) - 1j
    np.testing.assert_allclose(s.evaluate(pts)[:, 0, 0], expected)
    m = parse_symbol("[[z1 * |z|^-1, z2 * |z|^-1], [-zbar2 * |z|^-1, zbar1 * |z|^-1]]", 2)
    assert m == su2_symbol()


def test_parse_fills_in_missing_modulus():
    assert parse_symbol("z1^2", 2) == parse_symbol("z1^2 * |z|^-2", 2)


@pytest.mark.parametrize("bad", ["z1^2 * |z|^-1", "z3 * |z|^-1", "[[1, 0]]", "foo", "z1 * |z|^-1 +"])
def test_parse_rejects(bad):
    with pytest.raises((SymbolParseError, DimensionMismatch, IndexOutOfRange)):
        parse_symbol(bad, 2)


def test_builtins():
    assert builtin_symbol("coordinate:2", 2) == coordinate_symbol(2, 2)
    assert builtin_symbol("zpow:-2", 1) == symbol_adjoint(zpow_symbol(2))
    assert builtin_symbol("constant", 2) == constant_symbol(2, 1)
    assert resolve_symbol("su2", 2) == su2_symbol()
    with pytest.raises(DimensionMismatch):
        builtin_symbol("su2", 1)
    with pytest.raises(SymbolParseError):
        builtin_symbol("nope", 1)


def test_full_symbol_radial_limit(rng):
    u = su2_symbol()
    pts = random_sphere(rng, 2, 20)
    decay = (({((1, 0), (0, 0), 0.5): 1.0}, {}), ({}, {}))
    a = FullSymbol(u, ((1.0, 1.0),), decay)
    assert a.limit() == u
    for r, tol in ((10, 1e-9), (100, 1e-12)):
        np.testing.assert_allclose(a(r * pts), u.evaluate(pts), atol=tol)
    # zero-homogeneity: the same ray gives the same boundary value
    np.testing.assert_allclose(u.evaluate(pts * np.exp(0.3j)), u.evaluate(pts * np.exp(0.3j) * 7 / 7))


def test_lipschitz_split_coordinate():
    a = FullSymbol(coordinate_symbol(1, 1))
    eps = 0.1
    g, h = lipschitz_split(a, eps, C=2.0)
    assert g.interior_cutoff_radius > 2 * 2.0 / eps
    assert g + h == a
    rng = np.random.default_rng(1)
    z = (rng.uniform(-100, 100, (10000, 1)) + 1j * rng.uniform(-100, 100, (10000, 1)))
    w = z + (rng.standard_normal((10000, 1)) + 1j * rng.standard_normal((10000, 1))) * 10.0 ** rng.uniform(-3, 1, (10000, 1))
    quotient = np.abs(g(z) - g(w))[:, 0, 0] / np.abs(z - w)[:, 0]
    assert quotient.max() <= eps
    # h vanishes beyond twice the largest radius
    far = 5 * g.interior_cutoff_radius * np.exp(1j * np.linspace(0, 6, 7))[:, None]
    np.testing.assert_allclose(h(far), 0, atol=1e-15)


def test_lipschitz_split_constant_and_errors():
    a = FullSymbol(constant_symbol(1, 3.0))
    g, h = lipschitz_split(a, 0.5)
    R = g.interior_cutoff_radius
    assert g(np.array([[3 * R]]))[0, 0, 0] == 3.0
    assert h(np.array([[2 * R + 1]]))[0, 0, 0] == 0.0
    with pytest.raises(InvalidEpsilon):
        lipschitz_split(a, 0.0)


def test_lipschitz_estimate_coordinate():
    C = estimate_lipschitz(coordinate_symbol(2, 1), safety=1.0)
    assert 0.9 <= C <= 1.0 + 1e-12
