"""Seeded random parameter draws in generic position."""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

from .model import Rational, SpectralParams, TrigAlgebraic, TrigComplex

MAX_REDRAWS = 10_000

#: largest separation of real parameters in complex draws; shrinks with N (see separation)
COMPLEX_SEPARATION = 0.1


def draw_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    """Numerator in [-20, 20], denominator in [1, 5]."""
    while True:
        z = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        if z or not nonzero:
            return z


def draw_q(rng: random.Random) -> Fraction:
    while True:
        q = draw_rational(rng, nonzero=True)
        if q * q != 1:
            return q


def draw_gamma(rng: random.Random, lo: float = 0.1, hi: float = 1.4) -> float:
    return rng.uniform(lo, hi)


def separation(model, n: int) -> float:
    """Minimal distance of complex-mode points modulo the period π/γ.

    The trigonometric weights are π/γ-periodic, so N points share a circle of
    that length; the separation shrinks once 0.1 would no longer fit.
    """
    period = math.pi / abs(model.gamma)
    return min(COMPLEX_SEPARATION, period / (10 * n))


def _small(model, z, n: int = 1) -> bool:
    if model.exact:
        return z == 0
    # |sin θ| below sin(γ·sep) means θ is within γ·sep of a zero
    return abs(z) < math.sin(abs(model.gamma) * separation(model, n)) * 0.999


def _separated(model, p, r, n: int = 1) -> bool:
    """The variables of two points differ (complex: by the separation, modulo the period)."""
    if model.exact:
        return model.variable(p) != model.variable(r)
    return not _small(model, cmath.sin(model.gamma * (p - r)), n)


def is_generic(model, params: SpectralParams, rows_generic: bool = True) -> bool:
    """Distinct columns and rows, nonvanishing a and b at every vertex.

    With ``rows_generic`` the rows also satisfy a(ν_j, ν_k) ≠ 0 for j ≠ k,
    i.e. no two row parameters differ by exactly one shift unit.
    """
    cols, rows = params.cols, params.rows
    n = params.n
    for seq in (cols, rows):
        for k in range(n):
            for j in range(k):
                if not _separated(model, seq[j], seq[k], n):
                    return False
    for p in cols:
        for r in rows:
            a, b, _ = model.weights(p, r)
            if _small(model, a, n) or _small(model, b, n):
                return False
    if rows_generic:
        for j in range(n):
            for k in range(n):
                if j != k and _small(model, model.weights(rows[j], rows[k])[0], n):
                    return False
    return True


def complex_halfwidth(model, n: int) -> float:
    """Points come from (-w, w): w = 2 up to N = 8, at least half a period beyond."""
    if n <= 8:
        return 2.0
    return max(2.0, math.pi / abs(model.gamma) / 2)


def draw_point(model, rng: random.Random, n: int = 1):
    if model.name == "trig-complex":
        w = complex_halfwidth(model, n)
        return rng.uniform(-w, w)
    if model.name == "trig-algebraic":
        return draw_rational(rng, nonzero=True)
    return draw_rational(rng)


def _fits_col(model, p, cols, rows, n) -> bool:
    if any(not _separated(model, p, c, n) for c in cols):
        return False
    return all(not _small(model, w, n) for r in rows for w in model.weights(p, r)[:2])


def _fits_row(model, r, cols, rows, rows_generic, n) -> bool:
    if any(not _separated(model, r, s, n) for s in rows):
        return False
    if any(_small(model, w, n) for p in cols for w in model.weights(p, r)[:2]):
        return False
    if rows_generic:
        for s in rows:
            if _small(model, model.weights(r, s)[0], n) or _small(model, model.weights(s, r)[0], n):
                return False
    return True


def draw_params(model, n: int, rng: random.Random, rows_generic: bool = True) -> SpectralParams:
    """Generic parameters for ``model`` (see :func:`is_generic`), drawn point by point."""
    rows, cols = [], []
    for k in range(n):
        for _ in range(MAX_REDRAWS):
            r = draw_point(model, rng, n)
            if _fits_row(model, r, cols, rows, rows_generic, n):
                rows.append(r)
                break
        else:
            raise RuntimeError(f"no generic parameters found for N={n}")
    for j in range(n):
        for _ in range(MAX_REDRAWS):
            p = draw_point(model, rng, n)
            if _fits_col(model, p, cols, rows, n):
                cols.append(p)
                break
        else:
            raise RuntimeError(f"no generic parameters found for N={n}")
    params = make_params(model, cols, rows)
    assert is_generic(model, params, rows_generic)
    return params


def make_params(model, cols, rows) -> SpectralParams:
    """Parameters from points (square roots in the algebraic model)."""
    if model.name == "trig-algebraic":
        return SpectralParams.from_roots(cols, rows)
    return SpectralParams(cols, rows)


def draw_model(kind: str, rng: random.Random):
    if kind == "rational":
        return Rational()
    if kind == "trig-algebraic":
        return TrigAlgebraic(draw_q(rng))
    if kind == "trig-complex":
        return TrigComplex(draw_gamma(rng))
    raise ValueError(f"unknown model kind {kind!r}")


def draw_fresh_point(model, params: SpectralParams, index: int, rng: random.Random, avoid=()):
    """A point for column ``index`` keeping the parameters generic and avoiding ``avoid`` variables."""
    avoid = set(avoid)
    for _ in range(MAX_REDRAWS):
        p = draw_point(model, rng, params.n)
        if model.exact and model.variable(p) in avoid:
            continue
        cols = list(params.cols)
        cols[index] = p
        if is_generic(model, make_params(model, cols, params.rows), rows_generic=False):
            return p
    raise RuntimeError("no generic replacement point found")
