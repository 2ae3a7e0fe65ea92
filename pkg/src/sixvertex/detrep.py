"""Closed-form determinant representations of the DWBC partition function.

Rational and complex-trigonometric functions return Z_N. Functions working in
the algebraic variables x, y (``z_basis_trig`` and ``z_ik`` for the algebraic
model) return the polynomial partition function Z̃_N.

Every representation checks its own preconditions and raises
:class:`SingularConfigurationError` where its formula would divide by zero;
limits at coinciding parameters are left to the brute-force oracles.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import TrigAlgebraic, TrigComplex, to_algebraic, vacuum_eigenvalues, vandermonde
from .numerics import ScaledProduct, det, det_scaled, scalar_pow
from .polybasis import PolyBasis, eval_basis_matrix

#: complex weights smaller than this are treated as vanishing
COMPLEX_ZERO = 1e-14

REPRESENTATIONS = ("ik", "kostov", "fw1", "fw2", "basis-rat", "basis-trig1", "basis-trig2")
ORACLES = ("enum", "qism")

_COMPATIBLE = {
    "ik": {"rational", "trig-complex", "trig-algebraic"},
    "kostov": {"rational"},
    "fw1": {"trig-complex"},
    "fw2": {"trig-complex"},
    "basis-rat": {"rational"},
    "basis-trig1": {"trig-complex", "trig-algebraic"},
    "basis-trig2": {"trig-complex", "trig-algebraic"},
    "enum": {"rational", "trig-complex", "trig-algebraic"},
    "qism": {"rational", "trig-complex", "trig-algebraic"},
}


class SingularConfigurationError(ValueError):
    """Parameters at which a representation's formula is 0/0."""


class IncompatibleRepresentationError(ValueError):
    """Representation requested for a weight model it does not cover."""


def is_compatible(tag: str, model) -> bool:
    return model.name in _COMPATIBLE.get(tag, ())


def check_compatible(tag: str, model) -> None:
    if tag not in _COMPATIBLE:
        raise IncompatibleRepresentationError(f"unknown representation {tag!r}")
    if model.name not in _COMPATIBLE[tag]:
        raise IncompatibleRepresentationError(
            f"representation {tag!r} is not defined for the {model.name} model"
        )


def _is_zero(z) -> bool:
    if isinstance(z, Fraction):
        return z == 0
    return abs(z) < COMPLEX_ZERO


def _require_distinct(values: Sequence, what: str) -> None:
    for k in range(len(values)):
        for j in range(k):
            if _is_zero(values[k] - values[j]):
                raise SingularConfigurationError(f"coinciding {what}: positions {j + 1} and {k + 1}")


def _cleared_row(pairs) -> list:
    """Row of c_k / w_k multiplied through by ∏ w: entries c_k ∏_{l≠k} w_l."""
    out = []
    for k, (_, c) in enumerate(pairs):
        entry = c
        for l, (w, _) in enumerate(pairs):
            if l != k:
                entry *= w
        out.append(entry)
    return out


def _sign(n: int) -> int:
    return -1 if (n * (n - 1) // 2) % 2 else 1


def z_ik(model, params) -> object:
    """Determinant of c/(a b) with Vandermonde prefactors.

    For the algebraic model this is the x-variable version with entries
    (q - 1/q) / ((x_j - y_k)(q x_j - y_k / q)), returning Z̃_N.
    """
    if model.name == "trig-algebraic":
        return _z_ik_algebraic(model.q, params.lambdas, params.nus)
    check_compatible("ik", model)
    lams, nus = params.lambdas, params.nus
    n = params.n
    _require_distinct(lams, "lambdas")
    _require_distinct(nus, "nus")
    ws = [[model.weights(lam, nu) for nu in nus] for lam in lams]
    if model.exact:
        # rows scaled by ∏_k a b: polynomial entries, valid where a weight vanishes
        matrix = [_cleared_row([(a * b, c) for a, b, c in row]) for row in ws]
        return _sign(n) * det(matrix) / (vandermonde(model, lams) * vandermonde(model, nus))
    return _z_ik_complex(model, lams, nus, ws).value()


def z_ik_scaled(model, params) -> tuple[complex, int]:
    """Complex z_ik as ``(mantissa, exponent)``, value ``mantissa * 2**exponent``.

    At large N the partition function leaves the double range; this form
    keeps it representable.
    """
    if model.exact:
        raise ValueError("z_ik_scaled is for the complex trigonometric model")
    check_compatible("ik", model)
    lams, nus = params.lambdas, params.nus
    _require_distinct(lams, "lambdas")
    _require_distinct(nus, "nus")
    ws = [[model.weights(lam, nu) for nu in nus] for lam in lams]
    acc = _z_ik_complex(model, lams, nus, ws)
    return acc.mant, acc.exp


def _z_ik_complex(model, lams, nus, ws) -> ScaledProduct:
    n = len(lams)
    for j in range(n):
        for k in range(n):
            a, b, _ = ws[j][k]
            if _is_zero(a) or _is_zero(b):
                raise SingularConfigurationError(
                    f"vanishing weight a or b at lambda_{j + 1}, nu_{k + 1}"
                )
    matrix = [[c / (a * b) for a, b, c in row] for row in ws]
    acc = ScaledProduct(_sign(n))
    for row in ws:
        for a, b, _ in row:
            acc.mul(a * b)
    _div_vandermonde(acc, model, lams)
    _div_vandermonde(acc, model, nus)
    acc.mul_scaled(*det_scaled(matrix))
    return acc


def _div_vandermonde(acc: ScaledProduct, model, zs) -> None:
    for k in range(len(zs)):
        for j in range(k):
            acc.div(cmath.sin(model.gamma * (zs[k] - zs[j])))


def _z_ik_algebraic(q, xs, ys):
    n = len(xs)
    exact = isinstance(q, Fraction)
    _require_distinct(xs, "x variables")
    _require_distinct(ys, "y variables")
    if exact:
        c = q - 1 / q
        matrix = [_cleared_row([((q * x - y / q) * (x - y), c) for y in ys]) for x in xs]
        den = Fraction(1)
        for k in range(n):
            for j in range(k):
                den *= (xs[k] - xs[j]) * (ys[j] - ys[k])
        return det(matrix) / den
    for j, x in enumerate(xs):
        for k, y in enumerate(ys):
            if _is_zero(x - y) or _is_zero(q * x - y / q):
                raise SingularConfigurationError(f"vanishing weight at x_{j + 1}, y_{k + 1}")
    matrix = [[(q - 1 / q) / ((x - y) * (q * x - y / q)) for y in ys] for x in xs]
    acc = ScaledProduct(1.0)
    for x in xs:
        for y in ys:
            acc.mul((q * x - y / q) * (x - y))
    for k in range(n):
        for j in range(k):
            acc.div((xs[k] - xs[j]) * (ys[j] - ys[k]))
    acc.mul_scaled(*det_scaled(matrix))
    return acc.value()


def z_kostov(params) -> Fraction:
    """Monomial determinant with the ratio ∏_l b/a, rational weights."""
    lams, nus = params.lambdas, params.nus
    n = params.n
    _require_distinct(lams, "lambdas")
    pref = Fraction(1)
    rows = []
    for j, lam in enumerate(lams):
        ratio = Fraction(1)
        for l, nu in enumerate(nus):
            a = lam - nu + 1
            if a == 0:
                raise SingularConfigurationError(f"a(lambda_{j + 1}, nu_{l + 1}) vanishes")
            ratio *= (lam - nu) / a
            pref *= a
        rows.append([lam**k - (lam + 1) ** k * ratio for k in range(n)])
    return pref / vandermonde_rational(lams) * det(rows)


def vandermonde_rational(zs):
    acc = Fraction(1)
    for k in range(len(zs)):
        for j in range(k):
            acc *= zs[k] - zs[j]
    return acc


def z_fw(variant: int, params, gamma: float) -> complex:
    """Monomial-type trigonometric determinant, variant 1 or 2.

    Variant 1 uses phases e^{iγ(2k-N)} and the prefactor
    ∏_j e^{-(N-2)iγλ_j - iγν_j}; variant 2 uses e^{iγ(2k-2-N)} and
    ∏_j e^{-Niγλ_j + iγν_j}.
    """
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    model = TrigComplex(gamma)
    lams = [complex(z) for z in params.lambdas]
    nus = [complex(z) for z in params.nus]
    n = len(lams)
    _require_distinct(lams, "lambdas")
    acc = ScaledProduct(1.0)
    ratios = []
    for j, lam in enumerate(lams):
        ratio = complex(1.0)
        for l, nu in enumerate(nus):
            a, b, _ = model.weights(lam, nu)
            if _is_zero(a):
                raise SingularConfigurationError(f"a(lambda_{j + 1}, nu_{l + 1}) vanishes")
            ratio *= b / a
            acc.mul(a)
        ratios.append(ratio)
    # Column k of the printed matrix is z^{k-1} - w ρ (ω z)^{k-1} with z = e^{2iγλ},
    # ω = e^{2iγ} and w the first column's phase. Unit-triangular column operations
    # turn the monomials into Newton polynomials ∏_{i<k} (x - z_i), leaving the
    # determinant unchanged; each factor is then an exact-phase sine, which avoids
    # the cancellation of a near-Vandermonde matrix at small γ.
    w = cmath.exp(1j * gamma * ((2 - n) if variant == 1 else -n))

    def node_diff(lam_x, lam_i):
        # e^{2iγ lam_x} - e^{2iγ lam_i}
        return 2j * cmath.exp(1j * gamma * (lam_x + lam_i)) * cmath.sin(gamma * (lam_x - lam_i))

    rows = []
    for j, lam in enumerate(lams):
        row = []
        plain = shifted = complex(1.0)
        for k in range(n):
            row.append(plain - w * ratios[j] * shifted)
            plain *= node_diff(lam, lams[k])
            shifted *= node_diff(lam + 1, lams[k])
        rows.append(row)
    acc.div(scalar_pow(complex(0.0, 2.0), n * (n - 1) // 2))
    _div_vandermonde(acc, model, lams)
    for lam, nu in zip(lams, nus):
        if variant == 1:
            acc.mul(cmath.exp(-(n - 2) * 1j * gamma * lam - 1j * gamma * nu))
        else:
            acc.mul(cmath.exp(-n * 1j * gamma * lam + 1j * gamma * nu))
    acc.mul_scaled(*det_scaled(rows))
    return acc.value()


def z_basis_rat(params, basis: PolyBasis) -> Fraction:
    """det[p_k(λ_j) a(λ_j) - p_k(λ_j + 1) d(λ_j)] / det[p_k(λ_j)], rational weights."""
    from .model import Rational

    lams = params.lambdas
    if basis.n != params.n:
        raise ValueError("basis size does not match N")
    _require_distinct(lams, "lambdas")
    model = Rational()
    num = []
    for lam in lams:
        a, d = vacuum_eigenvalues(model, lam, params)
        num.append([basis.evaluate(k, lam) * a - basis.evaluate(k, lam + 1) * d for k in range(basis.n)])
    return det(num) / det(eval_basis_matrix(basis, lams))


def z_basis_trig(variant: int, model, params, basis: PolyBasis):
    """Basis determinant in the variables x, y; returns Z̃_N.

    Variant 1: det[p_k(x_j) ã(x_j) - q^{2-N} p_k(q² x_j) d̃(x_j)] / (∏ y_k · det[p_k(x_j)]).
    Variant 2: q^{-N} in the numerator and ∏ x_j in the denominator.
    In the complex model the x, y, q are the images of λ, ν, γ.
    """
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    check_compatible(f"basis-trig{variant}", model)
    if basis.n != params.n:
        raise ValueError("basis size does not match N")
    if isinstance(model, TrigAlgebraic) or model.name == "trig-algebraic":
        q, xs, ys = model.q, params.lambdas, params.nus
    else:
        img = to_algebraic(params.lambdas, params.nus, model.gamma)
        q, xs, ys = img.q, img.xs, img.ys
    return basis_trig_xy(variant, q, xs, ys, basis)


def basis_trig_xy(variant: int, q, xs: Sequence, ys: Sequence, basis: PolyBasis):
    n = len(xs)
    _require_distinct(xs, "x variables")
    if variant == 1 and any(_is_zero(y) for y in ys):
        raise SingularConfigurationError("a y variable vanishes")
    if variant == 2 and any(_is_zero(x) for x in xs):
        raise SingularConfigurationError("an x variable vanishes")
    q2 = q * q
    qpow = scalar_pow(q, 2 - n) if variant == 1 else scalar_pow(q, -n)
    num = []
    for x in xs:
        at = dt = 1
        for y in ys:
            at *= q * x - y / q
            dt *= x - y
        num.append([basis.evaluate(k, x) * at - qpow * basis.evaluate(k, q2 * x) * dt for k in range(n)])
    norm = 1
    for z in ys if variant == 1 else xs:
        norm *= z
    return det(num) / (norm * det(eval_basis_matrix(basis, xs)))


def z_tilde_to_z(ztilde: complex, params, gamma: float) -> complex:
    """Z_N from Z̃_N for real (or complex) λ, ν at angle ``gamma``."""
    return ztilde / to_algebraic(params.lambdas, params.nus, gamma).prefactor


@dataclass(frozen=True)
class Representation:
    tag: str
    basis: Optional[PolyBasis] = None

    def __post_init__(self):
        if self.tag not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {self.tag!r}")
        if self.tag.startswith("basis") and self.basis is None:
            raise ValueError(f"representation {self.tag!r} needs a polynomial basis")

    def evaluate(self, model, params):
        check_compatible(self.tag, model)
        if self.tag == "ik":
            return z_ik(model, params)
        if self.tag == "kostov":
            return z_kostov(params)
        if self.tag in ("fw1", "fw2"):
            return z_fw(int(self.tag[-1]), params, model.gamma)
        if self.tag == "basis-rat":
            return z_basis_rat(params, self.basis)
        return z_basis_trig(int(self.tag[-1]), model, params, self.basis)
