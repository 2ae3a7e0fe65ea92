import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sixvertex.enumeration import z_enum
from sixvertex.model import Rational, SpectralParams, TrigAlgebraic, TrigComplex, point_vacuum
from sixvertex.numerics import ResourceLimitError
from sixvertex.qism import (
    QuantumState,
    ab_relation_sides,
    b_chain,
    bethe_eigenvalue,
    bethe_vector,
    check_full_flip,
    check_null_vector,
    check_spin_flip,
    commutator_bb,
    monodromy_apply,
    null_vector,
    qdet_apply,
    qdet_scalar,
    random_state,
    spin_flip_sides,
    vacuum,
    z_qism,
)
from sixvertex.sampling import draw_params, draw_point, draw_q

F = Fraction
R = Rational()
NU02 = SpectralParams([F(0), F(0)], [F(0), F(2)])


def models(rng):
    return [R, TrigAlgebraic(draw_q(rng))]


def test_vacuum_actions():
    p = SpectralParams([F(1), F(3)], [F(0), F(2)])
    lam = F(5, 2)
    assert monodromy_apply("C", R, p, lam, vacuum(R, p)).is_zero()
    a, d = point_vacuum(R, lam, p)
    assert monodromy_apply("A", R, p, lam, vacuum(R, p)).equals(vacuum(R, p).scaled(a))
    assert monodromy_apply("D", R, p, lam, vacuum(R, p)).equals(vacuum(R, p).scaled(d))


def test_spin_flip_example():
    out = monodromy_apply("B", R, NU02, F(0), vacuum(R, NU02))
    assert out.amps == {0b01: -1}
    lhs, rhs = spin_flip_sides(R, NU02, 1)
    assert lhs.equals(rhs) and rhs.amps == {0b01: -1}


def test_z_qism_examples():
    assert z_qism(R, SpectralParams([F(2), F(5)], [F(0), F(1)])) == 20
    assert z_qism(R, SpectralParams([F(3)], [F(7)])) == 1
    assert z_qism(R, SpectralParams([F(0), F(2)], [F(0), F(2)])) == -3


def test_qdet_example():
    out = qdet_apply(R, NU02, F(0), vacuum(R, NU02))
    assert out.amps == {0: -3}
    assert qdet_scalar(R, NU02, F(0)) == -3


def test_cap():
    with pytest.raises(ResourceLimitError):
        z_qism(R, SpectralParams([F(i) for i in range(15)], [F(0)] * 15))


def test_dump_format():
    state = b_chain(R, SpectralParams([F(2), F(5)], [F(0), F(1)]))
    assert state.dump() == "11 20"
    one = monodromy_apply("B", R, NU02, F(0), vacuum(R, NU02))
    assert one.dump() == "01 -1"


def test_empty_bethe_vector_is_vacuum():
    assert bethe_vector(R, NU02, []).equals(vacuum(R, NU02))


@given(st.integers(1, 5), st.integers(0, 10**6))
def test_qism_matches_enum(n, seed):
    rng = random.Random(seed)
    for model in models(rng):
        p = draw_params(model, n, rng, rows_generic=False)
        assert z_qism(model, p) == z_enum(model, p)


def test_qism_complex_matches_enum():
    rng = random.Random(4)
    model = TrigComplex(0.9)
    for n in range(1, 6):
        p = draw_params(model, n, rng)
        z, ref = z_qism(model, p), z_enum(model, p)
        assert abs(z - ref) <= 1e-9 * abs(ref)


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_b_operators_commute(n, seed):
    rng = random.Random(seed)
    for model in models(rng):
        p = draw_params(model, n, rng)
        state = random_state(model, n, rng)
        lam, mu = draw_point(model, rng), draw_point(model, rng)
        assert commutator_bb(model, p, lam, mu, state).is_zero()


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_ab_exchange_relation(n, seed):
    rng = random.Random(seed)
    for model in models(rng):
        p = draw_params(model, n, rng)
        lam = draw_point(model, rng)
        mu = draw_point(model, rng)
        if model.weights(lam, mu)[1] == 0 or model.weights(mu, lam)[1] == 0:
            return
        lhs, rhs = ab_relation_sides(model, p, lam, mu, random_state(model, n, rng))
        assert lhs.equals(rhs)


@given(st.integers(1, 3), st.integers(0, 10**6), st.sampled_from([1, 2]))
def test_quantum_determinant_is_scalar(n, seed, form):
    rng = random.Random(seed)
    for model in models(rng):
        p = draw_params(model, n, rng)
        lam = draw_point(model, rng)
        state = random_state(model, n, rng)
        out = qdet_apply(model, p, lam, state, form)
        assert out.equals(state.scaled(qdet_scalar(model, p, lam)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bethe_vectors(n):
    rng = random.Random(n)
    for model in models(rng):
        p = draw_params(model, n, rng)
        mu = draw_point(model, rng)
        for size in range(n + 1):
            for subset in itertools.combinations(range(1, n + 1), size):
                vec = bethe_vector(model, p, subset)
                assert not vec.is_zero()
                out = monodromy_apply("A", model, p, mu, vec)
                assert out.equals(vec.scaled(bethe_eigenvalue(model, p, subset, mu)))


@pytest.mark.parametrize("n", range(1, 7))
def test_null_vectors_and_spin_flips(n):
    rng = random.Random(10 + n)
    for model in models(rng):
        p = draw_params(model, n, rng)
        for j in range(1, n + 1):
            assert check_null_vector(model, p, j)
            assert check_spin_flip(model, p, j)
        assert check_full_flip(model, p)


def test_mismatched_null_vector_is_nonzero():
    p = draw_params(R, 3, random.Random(0))
    assert not null_vector(R, p, 1, 2).is_zero()


def test_state_arithmetic():
    s = QuantumState(2, {0: F(1), 3: F(2)}, 2)
    assert (s - s).is_zero()
    assert (s + s).equals(s.scaled(F(2)))
    assert s.sector() == {0, 2}
    with pytest.raises(ValueError):
        QuantumState.basis(2, 4)
