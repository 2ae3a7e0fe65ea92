import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sixvertex.enumeration import asm_count, enumerate_configs, z_enum
from sixvertex.model import Rational, SpectralParams, TrigAlgebraic
from sixvertex.numerics import ResourceLimitError
from sixvertex.sampling import draw_params
from strategies import fractions

F = Fraction
R = Rational()

# (left, right, bottom, top) with 0 = up/right and 1 = down/left
EDGES = {1: (0, 0, 0, 0), 2: (1, 1, 1, 1), 3: (0, 0, 1, 1), 4: (1, 1, 0, 0), 5: (0, 1, 1, 0), 6: (1, 0, 0, 1)}


def assert_valid(cfg):
    n = cfg.n
    for k in range(1, n + 1):
        for j in range(1, n + 1):
            left, right, bottom, top = EDGES[cfg.vertex_type(j, k)]
            # two in, two out: arrows entering = right-pointing left edge, left-pointing right edge, ...
            if j < n:
                assert left == EDGES[cfg.vertex_type(j + 1, k)][1]
            else:
                assert left == 1
            if j == 1:
                assert right == 0
            if k < n:
                assert bottom == EDGES[cfg.vertex_type(j, k + 1)][3]
            else:
                assert bottom == 0
            if k == 1:
                assert top == 1


def asm_of(cfg):
    sign = {5: -1, 6: 1}
    return [[sign.get(cfg.vertex_type(j, k), 0) for j in range(cfg.n, 0, -1)] for k in range(1, cfg.n + 1)]


def is_asm(m):
    for line in list(m) + [list(col) for col in zip(*m)]:
        partial = list(itertools.accumulate(line))
        if partial[-1] != 1 or any(p not in (0, 1) for p in partial):
            return False
    return True


def test_n1_single_c_vertex():
    configs = list(enumerate_configs(1))
    assert len(configs) == 1
    assert configs[0].vertex_type(1, 1) == 6


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 7), (4, 42)])
def test_counts(n, count):
    assert asm_count(n) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_configuration_invariants(n):
    seen = set()
    for cfg in enumerate_configs(n):
        assert_valid(cfg)
        c = cfg.counts()
        assert c[1] == c[2] and c[3] == c[4] and c[5] + n == c[6]
        for k in range(1, n + 1):
            assert sum(cfg.vertex_type(j, k) in (5, 6) for j in range(1, n + 1)) % 2 == 1
        for j in range(1, n + 1):
            assert sum(cfg.vertex_type(j, k) in (5, 6) for k in range(1, n + 1)) % 2 == 1
        assert is_asm(asm_of(cfg))
        seen.add(cfg.types)
    assert len(seen) == asm_count(n)


def test_enumeration_is_restartable():
    assert [c.types for c in enumerate_configs(4)] == [c.types for c in enumerate_configs(4)]


def test_cap():
    with pytest.raises(ResourceLimitError):
        asm_count(8)
    with pytest.raises(ResourceLimitError):
        z_enum(R, SpectralParams([F(i) for i in range(8)], [F(0)] * 8))


def test_grid():
    cfg = next(iter(enumerate_configs(1)))
    assert cfg.grid() == "6"
    assert all(len(c.grid().splitlines()) == 3 for c in enumerate_configs(3))


def test_values():
    assert z_enum(R, SpectralParams([F(2), F(5)], [F(0), F(1)])) == 20
    assert z_enum(R, SpectralParams([F(0), F(-1)], [F(0), F(2)])) == 0
    assert z_enum(R, SpectralParams([F(0), F(5)], [F(0), F(2)])) == -6


@given(st.integers(-7, 7).filter(lambda n: n not in (0, 1, -1)), st.integers(1, 4), fractions.filter(bool),
       fractions.filter(bool))
def test_algebraic_n1(qn, qd, u, v):
    q = F(qn, qd)
    if q * q == 1:
        return
    assert z_enum(TrigAlgebraic(q), SpectralParams.from_roots([u], [v])) == q - 1 / q


@given(st.integers(2, 4), st.integers(0, 10**6))
def test_symmetric_in_both_sets(n, seed):
    rng = random.Random(seed)
    p = draw_params(R, n, rng, rows_generic=False)
    ref = z_enum(R, p)
    perm = list(range(n))
    rng.shuffle(perm)
    assert z_enum(R, SpectralParams([p.lambdas[i] for i in perm], p.nus)) == ref
    assert z_enum(R, SpectralParams(p.lambdas, [p.nus[i] for i in perm])) == ref


@given(st.integers(2, 5), st.data())
def test_corner_reduction(n, data):
    nus = data.draw(st.lists(fractions, min_size=n, max_size=n))
    rest = data.draw(st.lists(fractions, min_size=n - 1, max_size=n - 1))
    full = z_enum(R, SpectralParams([nus[0]] + rest, nus))
    factor = F(1)
    for k in range(1, n):
        factor *= nus[0] - nus[k] + 1
    for lam in rest:
        factor *= lam - nus[0] + 1
    assert full == factor * z_enum(R, SpectralParams(rest, nus[1:]))


def test_parallel_matches_serial():
    p = draw_params(R, 5, random.Random(3))
    assert z_enum(R, p, parallel=True) == z_enum(R, p)
