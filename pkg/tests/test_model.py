import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sixvertex.model import (
    ConsistencyError,
    Rational,
    SpectralParams,
    TrigAlgebraic,
    TrigComplex,
    algebraic_image_weights,
    model_from_json,
    params_from_json,
    to_algebraic,
    vacuum_eigenvalues,
    vandermonde,
    vertex_weights,
)
from strategies import fractions, nonzero_fractions

F = Fraction


def test_rational_weights():
    assert vertex_weights(Rational(), F(2), F(0)) == (3, 2, 1)
    assert vertex_weights(Rational(), F(5), F(5)) == (1, 0, 1)


def test_algebraic_weights_example():
    a, b, c = vertex_weights(TrigAlgebraic(F(2)), F(4), F(1), F(2), F(1))
    assert (a, b, c) == (F(15, 2), F(3), F(3))


def test_algebraic_weights_need_consistent_roots():
    with pytest.raises(ConsistencyError):
        vertex_weights(TrigAlgebraic(F(2)), F(4), F(1), F(3), F(1))
    with pytest.raises(ConsistencyError):
        SpectralParams([F(4)], [F(1)], [F(2)], [F(0)])


@pytest.mark.parametrize("q", [F(0), F(1), F(-1)])
def test_bad_q(q):
    with pytest.raises(ValueError):
        TrigAlgebraic(q)


def test_bad_gamma():
    with pytest.raises(ValueError):
        TrigComplex(math.pi)


@given(fractions, fractions)
def test_rational_a_minus_b_is_c(lam, nu):
    a, b, c = Rational().weights(lam, nu)
    assert a - b == c == 1


@given(nonzero_fractions.filter(lambda q: q * q != 1), nonzero_fractions, nonzero_fractions)
def test_algebraic_a_relation(q, u, v):
    a, b, _ = TrigAlgebraic(q).weights(u, v)
    assert a == q * b + (q - 1 / q) * v * v


def test_vacuum_eigenvalues_examples():
    params = SpectralParams([F(2), F(3)], [F(0), F(1)])
    assert vacuum_eigenvalues(Rational(), F(2), params) == (6, 2)
    assert vacuum_eigenvalues(Rational(), F(-1), params)[0] == 0
    alg = SpectralParams.from_roots([F(1)], [F(1)])
    assert vacuum_eigenvalues(TrigAlgebraic(F(2)), F(1), alg) == (F(3, 2), 0)


@given(st.lists(fractions, min_size=1, max_size=4))
def test_vacuum_zeros_rational(nus):
    params = SpectralParams(nus, nus)
    for nu in nus:
        assert vacuum_eigenvalues(Rational(), nu, params)[1] == 0
        assert vacuum_eigenvalues(Rational(), nu - 1, params)[0] == 0


@given(nonzero_fractions.filter(lambda q: q * q != 1), st.lists(nonzero_fractions, min_size=1, max_size=4))
def test_vacuum_zeros_algebraic(q, vs):
    model = TrigAlgebraic(q)
    params = SpectralParams.from_roots(vs, vs)
    for y in params.nus:
        assert vacuum_eigenvalues(model, y, params)[1] == 0
        assert vacuum_eigenvalues(model, y / (q * q), params)[0] == 0


def test_vandermonde_examples():
    assert vandermonde(Rational(), [F(2), F(5)]) == 3
    assert vandermonde(Rational(), [F(7)]) == 1
    assert vandermonde(Rational(), [F(0), F(1), F(3)]) == 6
    g = 0.4
    assert vandermonde(TrigComplex(g), [0.0, 1.0]) == pytest.approx(math.sin(g))


def test_to_algebraic_examples():
    img = to_algebraic([0.0], [0.3], 0.9)
    assert img.xs[0] == pytest.approx(1)
    assert img.prefactor == pytest.approx(2j)
    img = to_algebraic([0.5], [0.0], math.pi / 2)
    assert img.xs[0] == pytest.approx(1j)


@given(
    st.floats(0.1, 1.5),
    st.lists(st.floats(-5, 5), min_size=1, max_size=4),
    st.lists(st.floats(-5, 5), min_size=1, max_size=4),
)
def test_algebraic_image_reproduces_trig_weights(gamma, lams, nus):
    n = min(len(lams), len(nus))
    lams, nus = lams[:n], nus[:n]
    img = to_algebraic(lams, nus, gamma)
    model = TrigComplex(gamma)
    for j, lam in enumerate(lams):
        for k, nu in enumerate(nus):
            got = algebraic_image_weights(img.q, img.xs[j], img.ys[k], img.us[j], img.vs[k])
            want = model.weights(lam, nu)
            for g, w in zip(got, want):
                assert abs(g - w) <= 1e-12 * max(1.0, abs(w))


def test_prefactor_phase_convention():
    lams, nus, g = [0.3, -1.2, 0.7], [0.1, 0.4, -0.5], 0.8
    img = to_algebraic(lams, nus, g)
    n = 3
    want = (2j) ** (n * n)
    for lam, nu in zip(lams, nus):
        want *= cmath.exp(1j * g * (lam + nu)) ** (n - 1)
    assert img.prefactor == pytest.approx(want)


def test_json_blocks():
    model = model_from_json({"model": "trig-algebraic", "q": "3/2"})
    assert model.q == F(3, 2)
    params = params_from_json(model, {"u": ["1", "2"], "v": ["1/2", "3"]})
    assert params.lambdas == (1, 4) and params.nus == (F(1, 4), 9)
    assert model_from_json(model.to_json()) == model
    with pytest.raises(ValueError):
        model_from_json({"model": "bogus"})
    with pytest.raises(ValueError):
        model_from_json({"model": "trig-complex"})
    rp = params_from_json(Rational(), {"lambda": ["2", "5"], "nu": ["0", "1"]})
    assert rp.to_json() == {"lambda": ["2", "5"], "nu": ["0", "1"]}


def test_params_validation():
    with pytest.raises(ValueError):
        SpectralParams([F(1)], [F(1), F(2)])
    with pytest.raises(ValueError):
        SpectralParams([], [])
