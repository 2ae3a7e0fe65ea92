"""Weight models, vertex weights and spectral parameters.

Three parametrisations are supported:

``Rational``
    a = λ - ν + 1, b = λ - ν, c = 1, exact over the rationals.
``TrigComplex(gamma)``
    a = sin γ(λ - ν + 1), b = sin γ(λ - ν), c = sin γ, in complex doubles.
``TrigAlgebraic(q)``
    the trigonometric model after the substitution x = q^{2λ}, y = q^{2ν}
    with an exact rational ``q``. Every vertex weight is multiplied by the
    gauge factor 2i·u·v where u² = x, v² = y, which leaves the polynomial
    ("stripped") weights

        â = q x - y/q,   b̂ = x - y,   ĉ = (q - 1/q) u v.

    Summing products of stripped weights over all configurations gives
    Z̃_N · ∏_j u_j v_j, where Z̃_N is the polynomial partition function.

Functions in the QISM and enumeration modules do not work with λ directly
but with a *point*: λ itself for the rational and complex models, and the
square root u for the algebraic model. ``model.weights(p, r)`` maps a pair
of points to a weight triple and ``model.shift(p)`` realises λ → λ - 1
(u → u/q in the algebraic model).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .numerics import Scalar, phase, product, scalar_pow, to_scalar


class ConsistencyError(ValueError):
    """Algebraic parameters whose square roots do not match."""


@dataclass(frozen=True)
class Rational:
    name = "rational"
    exact = True

    def weights(self, p, r):
        return (p - r + 1, p - r, Fraction(1))

    def shift(self, p):
        return p - 1

    def variable(self, p):
        return p

    def c(self):
        return Fraction(1)

    def coerce(self, value) -> Scalar:
        return to_scalar(value, exact=True)

    def to_json(self) -> dict:
        return {"model": self.name}


@dataclass(frozen=True)
class TrigComplex:
    gamma: float
    name = "trig-complex"
    exact = False

    def __post_init__(self):
        if abs(math.sin(self.gamma)) < 1e-12:
            raise ValueError(f"gamma={self.gamma} is a multiple of pi")

    def weights(self, p, r):
        g = self.gamma
        return (cmath.sin(g * (p - r + 1)), cmath.sin(g * (p - r)), complex(math.sin(g)))

    def shift(self, p):
        return p - 1

    def variable(self, p):
        return p

    def c(self):
        return complex(math.sin(self.gamma))

    def coerce(self, value) -> Scalar:
        return to_scalar(value, exact=False)

    def to_json(self) -> dict:
        return {"model": self.name, "gamma": self.gamma}


@dataclass(frozen=True)
class TrigAlgebraic:
    q: Fraction
    name = "trig-algebraic"
    exact = True

    def __post_init__(self):
        q = Fraction(self.q)
        object.__setattr__(self, "q", q)
        if q == 0 or q * q == 1:
            raise ValueError(f"q={q} must be invertible and differ from its inverse")

    def weights(self, p, r):
        q = self.q
        x, y = p * p, r * r
        return (q * x - y / q, x - y, (q - 1 / q) * p * r)

    def shift(self, p):
        return p / self.q

    def variable(self, p):
        return p * p

    def c(self):
        return self.q - 1 / self.q

    def coerce(self, value) -> Scalar:
        return to_scalar(value, exact=True)

    def to_json(self) -> dict:
        q = self.q
        return {"model": self.name, "q": str(q)}


@dataclass(frozen=True)
class SignFlipped:
    """Debug wrapper: the c weight of ``base`` with its sign flipped.

    Used to check that the verification harness notices a corrupted model.
    """

    base: object

    @property
    def name(self):
        return self.base.name

    @property
    def exact(self):
        return self.base.exact

    def weights(self, p, r):
        a, b, c = self.base.weights(p, r)
        return a, b, -c

    def c(self):
        return -self.base.c()

    def __getattr__(self, attr):
        if attr == "base":
            raise AttributeError(attr)
        return getattr(self.base, attr)


@dataclass(frozen=True)
class SpectralParams:
    """Column parameters λ_1..λ_N and row parameters ν_1..ν_N.

    In the algebraic model ``lambdas``/``nus`` hold x_j, y_k and ``us``/``vs``
    their square roots.
    """

    lambdas: tuple
    nus: tuple
    us: Optional[tuple] = None
    vs: Optional[tuple] = None
    n: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        object.__setattr__(self, "nus", tuple(self.nus))
        n = len(self.lambdas)
        if n < 1 or len(self.nus) != n:
            raise ValueError("need equally many (>= 1) lambdas and nus")
        if (self.us is None) != (self.vs is None):
            raise ValueError("us and vs must be given together")
        if self.us is not None:
            object.__setattr__(self, "us", tuple(self.us))
            object.__setattr__(self, "vs", tuple(self.vs))
            if len(self.us) != n or len(self.vs) != n:
                raise ValueError("square roots must match the parameter count")
            for x, u in zip(self.lambdas, self.us):
                if u == 0 or u * u != x:
                    raise ConsistencyError(f"u={u} is not a nonzero square root of x={x}")
            for y, v in zip(self.nus, self.vs):
                if v == 0 or v * v != y:
                    raise ConsistencyError(f"v={v} is not a nonzero square root of y={y}")
        object.__setattr__(self, "n", n)

    @classmethod
    def from_roots(cls, us: Sequence, vs: Sequence) -> "SpectralParams":
        us = [Fraction(u) for u in us]
        vs = [Fraction(v) for v in vs]
        return cls([u * u for u in us], [v * v for v in vs], us, vs)

    @property
    def algebraic(self) -> bool:
        return self.us is not None

    @property
    def cols(self) -> tuple:
        """Points attached to the vertical lines."""
        return self.us if self.us is not None else self.lambdas

    @property
    def rows(self) -> tuple:
        """Points attached to the horizontal lines."""
        return self.vs if self.vs is not None else self.nus

    def with_cols(self, cols: Sequence) -> "SpectralParams":
        if self.algebraic:
            return SpectralParams.from_roots(cols, self.vs)
        return SpectralParams(cols, self.nus)

    def with_rows(self, rows: Sequence) -> "SpectralParams":
        if self.algebraic:
            return SpectralParams.from_roots(self.us, rows)
        return SpectralParams(self.lambdas, rows)

    def to_json(self) -> dict:
        from .numerics import serialize

        out = {"lambda": [serialize(z) for z in self.lambdas], "nu": [serialize(z) for z in self.nus]}
        if self.algebraic:
            out["u"] = [serialize(z) for z in self.us]
            out["v"] = [serialize(z) for z in self.vs]
        return out


def check_params(model, params: SpectralParams) -> None:
    if model.name == "trig-algebraic":
        if not params.algebraic:
            raise ValueError("the algebraic model needs square roots u, v")
    elif params.algebraic:
        raise ValueError(f"square roots given for the {model.name} model")


def vertex_weights(model, lam, nu, u=None, v=None):
    """The weight triple ``(a, b, c)`` at spectral parameters ``lam``, ``nu``.

    For the algebraic model ``lam``, ``nu`` are x and y and the square roots
    ``u``, ``v`` are required; the stripped weights are returned.
    """
    if model.name == "trig-algebraic":
        if u is None or v is None:
            raise ConsistencyError("algebraic weights need the square roots u, v")
        if u * u != lam or v * v != nu:
            raise ConsistencyError(f"u^2={u * u} != x={lam} or v^2={v * v} != y={nu}")
        return model.weights(u, v)
    return model.weights(lam, nu)


def vacuum_eigenvalues(model, lam, params: SpectralParams):
    """Vacuum eigenvalues of A and D at ``lam``.

    Returns (a(λ), d(λ)) = (∏ a(λ, ν_k), ∏ b(λ, ν_k)); for the algebraic
    model ``lam`` is x and (ã(x), d̃(x)) = (∏ (q x - y_k/q), ∏ (x - y_k)).
    """
    if model.name == "trig-algebraic":
        q = model.q
        a = product((q * lam - y / q for y in params.nus), Fraction(1))
        d = product((lam - y for y in params.nus), Fraction(1))
        return a, d
    a = d = None
    for nu in params.nus:
        wa, wb, _ = model.weights(lam, nu)
        a = wa if a is None else a * wa
        d = wb if d is None else d * wb
    return a, d


def point_vacuum(model, p, params: SpectralParams):
    """Vacuum eigenvalues evaluated at a point (u in the algebraic model)."""
    return vacuum_eigenvalues(model, model.variable(p), params)


def vandermonde(model, zs: Sequence) -> Scalar:
    """∏_{j<k} (z_k - z_j); sin γ(z_k - z_j) in the complex trigonometric model.

    In the algebraic model ``zs`` are x variables and plain differences are used.
    """
    zs = list(zs)
    if not zs:
        raise ValueError("vandermonde of an empty list")
    trig = model.name == "trig-complex"
    acc = Fraction(1) if model.exact else complex(1.0)
    for k in range(len(zs)):
        for j in range(k):
            diff = zs[k] - zs[j]
            acc *= cmath.sin(model.gamma * diff) if trig else diff
    return acc


@dataclass(frozen=True)
class AlgebraicImage:
    xs: tuple
    ys: tuple
    q: complex
    prefactor: complex
    us: tuple
    vs: tuple


def to_algebraic(lambdas: Sequence[float], nus: Sequence[float], gamma: float) -> AlgebraicImage:
    """Complex images x_j = q^{2λ_j}, y_k = q^{2ν_k} of real parameters, q = e^{iγ}.

    ``prefactor`` is (2i)^{N²} ∏_j (x_j y_j)^{(N-1)/2} with the square roots
    taken as (x_j y_j)^{1/2} = e^{iγ(λ_j + ν_j)}, so that Z̃_N = Z_N · prefactor.
    ``us``/``vs`` are the matching square roots e^{iγλ_j}, e^{iγν_k}.
    """
    n = len(lambdas)
    if len(nus) != n:
        raise ValueError("need equally many lambdas and nus")
    if abs(math.sin(gamma)) < 1e-12:
        raise ValueError(f"gamma={gamma} is a multiple of pi")
    lambdas = [complex(z) for z in lambdas]
    nus = [complex(z) for z in nus]
    us = tuple(cmath.exp(1j * gamma * lam) for lam in lambdas)
    vs = tuple(cmath.exp(1j * gamma * nu) for nu in nus)
    xs = tuple(u * u for u in us)
    ys = tuple(v * v for v in vs)
    pref = scalar_pow(complex(0.0, 2.0), n * n)
    for lam, nu in zip(lambdas, nus):
        pref *= cmath.exp(1j * gamma * (lam + nu) * (n - 1))
    return AlgebraicImage(xs, ys, phase(gamma), pref, us, vs)


def algebraic_image_weights(q: complex, x, y, u, v):
    """Complex evaluation of the trigonometric weights through x, y, q.

    The square root (x y)^{1/2} is taken as u·v.
    """
    g = 2j * u * v
    return ((q * x - y / q) / g, (x - y) / g, (q - 1 / q) / 2j)


def model_from_json(block: dict):
    kind = block.get("model", "rational")
    if kind == "rational":
        return Rational()
    if kind == "trig-complex":
        if "gamma" not in block:
            raise ValueError("trig-complex model needs 'gamma'")
        return TrigComplex(float(block["gamma"]))
    if kind == "trig-algebraic":
        if "q" not in block:
            raise ValueError("trig-algebraic model needs 'q'")
        return TrigAlgebraic(to_scalar(block["q"], exact=True))
    raise ValueError(f"unknown model {kind!r}")


def params_from_json(model, block: dict) -> SpectralParams:
    """Build parameters from a JSON block.

    The algebraic model accepts either ``u``/``v`` alone or ``lambda``/``nu``
    (as x, y) together with ``u``/``v``.
    """
    if model.name == "trig-algebraic":
        if "u" not in block or "v" not in block:
            raise ValueError("trig-algebraic parameters need 'u' and 'v'")
        us = [to_scalar(z) for z in block["u"]]
        vs = [to_scalar(z) for z in block["v"]]
        if "lambda" in block or "nu" in block:
            xs = [to_scalar(z) for z in block.get("lambda", [u * u for u in us])]
            ys = [to_scalar(z) for z in block.get("nu", [v * v for v in vs])]
            return SpectralParams(xs, ys, us, vs)
        return SpectralParams.from_roots(us, vs)
    lams = [model.coerce(z) for z in block["lambda"]]
    nus = [model.coerce(z) for z in block["nu"]]
    return SpectralParams(lams, nus)
