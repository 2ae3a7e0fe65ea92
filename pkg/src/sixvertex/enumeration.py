"""Exhaustive enumeration of DWBC configurations.

Edge states are encoded as bits: 0 for an arrow pointing up or right, 1 for
down or left. Columns are numbered j = 1..N from the right, rows k = 1..N from
the top. Rows are swept top to bottom; inside a row the horizontal arrow is
propagated from the right boundary (pointing right, bit 0) to the left
boundary, which must point left (bit 1). The vertical edges between rows are
carried as a bitmask, bit j-1 for column j; the top boundary is all 1 (arrows
pointing down into the lattice), the bottom one all 0.

Vertex types, as (left, right, bottom, top) bits:

    1: 0000   2: 1111   3: 0011   4: 1100   5: 0110   6: 1001

Types 1, 2 carry weight a, types 3, 4 weight b and types 5, 6 weight c.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .numerics import ResourceLimitError, Scalar

#: largest lattice the enumerator accepts (A(7) = 218348 configurations)
ENUM_CAP = 7

# (top, right) -> [(bottom, left, type)]
_TRANSITIONS = {
    (0, 0): [(0, 0, 1)],
    (1, 1): [(1, 1, 2)],
    (1, 0): [(1, 0, 3), (0, 1, 6)],
    (0, 1): [(0, 1, 4), (1, 0, 5)],
}

# type -> index into the (a, b, c) weight triple
_WEIGHT_INDEX = {1: 0, 2: 0, 3: 1, 4: 1, 5: 2, 6: 2}


@dataclass(frozen=True)
class LatticeConfig:
    """Vertex types of one configuration; ``types[k-1][j-1]`` is the vertex at row k, column j."""

    types: tuple

    @property
    def n(self) -> int:
        return len(self.types)

    def vertex_type(self, j: int, k: int) -> int:
        return self.types[k - 1][j - 1]

    def counts(self) -> dict:
        out = {t: 0 for t in range(1, 7)}
        for row in self.types:
            for t in row:
                out[t] += 1
        return out

    def grid(self) -> str:
        """Rows top to bottom, columns drawn left to right (j = N first)."""
        return "\n".join("".join(str(t) for t in reversed(row)) for row in self.types)


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("lattice size must be positive")
    if n > cap:
        raise ResourceLimitError(f"N={n} exceeds the enumeration cap {cap}")


def _row_choices(n: int, above: int) -> Iterator[tuple[int, tuple]]:
    """All ways to fill one row given the vertical bits above it.

    Yields (vertical bits below, vertex types by column).
    """

    def rec(j, right, below, types):
        if j == n:
            if right == 1:
                yield below, tuple(types)
            return
        top = (above >> j) & 1
        for bottom, left, t in _TRANSITIONS[(top, right)]:
            types.append(t)
            yield from rec(j + 1, left, below | (bottom << j), types)
            types.pop()

    yield from rec(0, 0, 0, [])


def enumerate_configs(n: int, cap: int = ENUM_CAP) -> Iterator[LatticeConfig]:
    """Every DWBC configuration of the N×N lattice exactly once, in a fixed order."""
    _check_cap(n, cap)
    full = (1 << n) - 1

    def rec(k, above, rows):
        if k == n:
            if above == 0:
                yield LatticeConfig(tuple(rows))
            return
        for below, types in _row_choices(n, above):
            rows.append(types)
            yield from rec(k + 1, below, rows)
            rows.pop()

    yield from rec(0, full, [])


def asm_count(n: int, cap: int = ENUM_CAP) -> int:
    """Number of DWBC configurations (the alternating-sign-matrix count)."""
    return sum(1 for _ in enumerate_configs(n, cap))


def _weight_table(model, params):
    cols, rows = params.cols, params.rows
    # table[k][j] = (a, b, c) at column j, row k
    return [[model.weights(p, r) for p in cols] for r in rows]


def _partial_sum(n: int, table, k: int, above: int, acc) -> Scalar:
    """Σ over completions of rows k.. of the weights, times ``acc``."""
    if k == n:
        return acc if above == 0 else 0
    total = 0
    wrow = table[k]

    def rec(j, right, below, w):
        nonlocal total
        if j == n:
            if right == 1:
                total += _partial_sum(n, table, k + 1, below, w)
            return
        top = (above >> j) & 1
        for bottom, left, t in _TRANSITIONS[(top, right)]:
            rec(j + 1, left, below | (bottom << j), w * wrow[j][_WEIGHT_INDEX[t]])

    rec(0, 0, 0, acc)
    return total


def _first_row_states(n: int):
    return list(_row_choices(n, (1 << n) - 1))


def _branch(args):
    n, table, below, types = args
    w = 1
    for j, t in enumerate(types):
        w = w * table[0][j][_WEIGHT_INDEX[t]]
    return _partial_sum(n, table, 1, below, w)


def raw_sum(model, params, cap: int = ENUM_CAP, parallel: bool = False) -> Scalar:
    """Σ_configs ∏ weights with the model's own weights (stripped ones in the algebraic model)."""
    n = params.n
    _check_cap(n, cap)
    table = _weight_table(model, params)
    branches = [(n, table, below, types) for below, types in _first_row_states(n)]
    if parallel and len(branches) > 1:
        with ProcessPoolExecutor() as pool:
            parts = list(pool.map(_branch, branches))
    else:
        parts = [_branch(b) for b in branches]
    # fixed summation order regardless of how the branches were computed
    total = Fraction(0) if model.exact else complex(0.0)
    for p in parts:
        total += p
    return total


def z_enum(model, params, cap: int = ENUM_CAP, parallel: bool = False) -> Scalar:
    """Partition function by direct summation over configurations.

    Returns Z_N, or Z̃_N for the algebraic model.
    """
    total = raw_sum(model, params, cap, parallel)
    if params.algebraic:
        for u, v in zip(params.us, params.vs):
            total /= u * v
    return total
