"""Property checks for partition-function implementations.

A *Z-implementation* is any callable ``zfn(model, params) -> scalar``. Rational
and complex implementations return Z_N; algebraic ones return Z̃_N. Every
check draws its inputs from a seeded PRNG, so a failure can be replayed from
``(id, model, n, seed)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import detrep, qism
from .enumeration import z_enum
from .model import SpectralParams, to_algebraic
from .numerics import close, serialize
from .polybasis import lagrange_basis, monomial_basis, random_basis
from .sampling import (
    draw_fresh_point,
    draw_params,
    draw_point,
    make_params,
)

ZFn = Callable[[object, SpectralParams], object]

#: number of random permutations tried by the symmetry check
PERMUTATIONS = 5

#: number of random points at which the uniqueness reconstruction is compared
UNIQUENESS_POINTS = 5

#: random states per [B, B] = 0 check
BB_STATES = 20


@dataclass
class PropertyReport:
    id: str
    model: str
    n: int
    seed: Optional[int]
    passed: bool
    witness: dict = field(default_factory=dict)
    impl: Optional[str] = None

    def to_json(self) -> dict:
        out = asdict(self)
        out["pass"] = out.pop("passed")
        return out


def _ser(z):
    if isinstance(z, (Fraction, complex, float)):
        return serialize(z)
    if isinstance(z, (list, tuple)):
        return [_ser(v) for v in z]
    return z


def _witness(params, **values) -> dict:
    out = {"params": params.to_json()}
    out.update({k: _ser(v) for k, v in values.items()})
    return out


def _report(check, model, n, seed, passed, witness=None, impl=None):
    return PropertyReport(check, model.name, n, seed, bool(passed), witness or {}, impl)


def _rng(seed, salt: str) -> random.Random:
    return random.Random(f"{salt}:{seed}")


# ---------------------------------------------------------------------------
# implementations

def _basis_trig_as_z(variant, basis_fn):
    """basis-trig in the complex model, converted back from Z̃_N to Z_N."""

    def zfn(model, params):
        basis = basis_fn(model, params)
        zt = detrep.z_basis_trig(variant, model, params, basis)
        if model.name == "trig-complex":
            return detrep.z_tilde_to_z(zt, params, model.gamma)
        return zt

    return zfn


def _lagrange_rows(model, params):
    if model.name == "trig-complex":
        return lagrange_basis(to_algebraic(params.lambdas, params.nus, model.gamma).ys)
    return lagrange_basis(params.nus)


def implementations(model, seed: int = 0) -> dict:
    """All Z-implementations that accept ``model``, keyed by name."""
    exact = model.exact
    out = {
        "enum": z_enum,
        "qism": qism.z_qism,
        "ik": detrep.z_ik,
    }
    if model.name == "rational":
        out["kostov"] = lambda m, p: detrep.z_kostov(p)
        out["basis-rat/monomial"] = lambda m, p: detrep.z_basis_rat(p, monomial_basis(p.n))
        out["basis-rat/lagrange"] = lambda m, p: detrep.z_basis_rat(p, lagrange_basis(p.nus))
        out["basis-rat/random"] = lambda m, p: detrep.z_basis_rat(p, random_basis(p.n, seed))
    if model.name == "trig-complex":
        out["fw1"] = lambda m, p: detrep.z_fw(1, p, m.gamma)
        out["fw2"] = lambda m, p: detrep.z_fw(2, p, m.gamma)
    if model.name in ("trig-complex", "trig-algebraic"):
        for variant in (1, 2):
            out[f"basis-trig{variant}/monomial"] = _basis_trig_as_z(
                variant, lambda m, p: monomial_basis(p.n, exact)
            )
            out[f"basis-trig{variant}/lagrange"] = _basis_trig_as_z(variant, _lagrange_rows)
            out[f"basis-trig{variant}/random"] = _basis_trig_as_z(
                variant, lambda m, p: random_basis(p.n, seed, exact)
            )
    return out


# names whose formulas are valid at the substituted points of each check
_TOLERANT = {
    "vanishing": ("enum", "qism", "basis-rat", "basis-trig"),
    "specialization": ("enum", "qism", "kostov", "fw", "basis-rat", "basis-trig"),
}


def applicable(check: str, impl: str, model) -> bool:
    if check == "degree" and not model.exact:
        return False
    if check in _TOLERANT:
        # the exact ik path clears denominators, so vanishing weights are harmless
        if impl == "ik" and model.exact:
            return True
        return impl.startswith(_TOLERANT[check])
    return True


# ---------------------------------------------------------------------------
# defining properties

def check_symmetry(zfn: ZFn, model, n: int, seed: int) -> PropertyReport:
    """Z at a random draw against random permutations of the column parameters."""
    rng = _rng(seed, "symmetry")
    params = draw_params(model, n, rng)
    z0 = zfn(model, params)
    cols = list(params.cols)
    for _ in range(PERMUTATIONS):
        perm = cols[:]
        rng.shuffle(perm)
        permuted = make_params(model, perm, params.rows)
        z1 = zfn(model, permuted)
        if not close(z0, z1):
            return _report("symmetry", model, n, seed, False, _witness(permuted, original=z0, permuted=z1))
    return _report("symmetry", model, n, seed, True)


def divided_differences(xs, ys):
    """Newton coefficients c_0..c_m of the interpolant through (xs, ys)."""
    coef = list(ys)
    m = len(xs)
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    return coef


def newton_eval(xs, coef, t):
    acc = coef[-1]
    for i in range(len(coef) - 2, -1, -1):
        acc = acc * (t - xs[i]) + coef[i]
    return acc


def check_degree(zfn: ZFn, model, n: int, seed: int) -> PropertyReport:
    """Degree of Z in the first column variable is exactly N-1.

    Z is sampled at N+1 values of λ_1 (x_1 in the algebraic model). The top
    divided difference must vanish, the next must not, and the interpolant
    through N of the samples must reproduce Z at a further point.
    """
    if not model.exact:
        raise ValueError("the degree check needs an exact model")
    rng = _rng(seed, "degree")
    params = draw_params(model, n, rng)
    points, used = [], set()
    for _ in range(n + 2):
        p = draw_fresh_point(model, params, 0, rng, avoid=used)
        used.add(model.variable(p))
        points.append(p)
    vals = []
    for p in points:
        cols = list(params.cols)
        cols[0] = p
        vals.append(zfn(model, make_params(model, cols, params.rows)))
    xs = [model.variable(p) for p in points]
    coef = divided_differences(xs[: n + 1], vals[: n + 1])
    top, lead = coef[n], coef[n - 1]
    predicted = newton_eval(xs[:n], coef[:n], xs[n + 1])
    ok = top == 0 and lead != 0 and predicted == vals[n + 1]
    witness = {} if ok else _witness(params, degree_n_coeff=top, degree_n_minus_1_coeff=lead,
                                      predicted=predicted, actual=vals[n + 1])
    return _report("degree", model, n, seed, ok, witness)


def check_vanishing(zfn: ZFn, model, n: int, seed: int) -> PropertyReport:
    """Z(ν_j, ν_j - 1, λ_3, ...) = 0 for every j (x_1 = y_j, x_2 = y_j / q² in the algebraic model)."""
    if n < 2:
        return _report("vanishing", model, n, seed, True)
    rng = _rng(seed, "vanishing")
    params = draw_params(model, n, rng)
    scale = abs(zfn(model, params))
    for j in range(n):
        r = params.rows[j]
        head = [r, model.shift(r)]
        taken = {model.variable(h) for h in head}
        cols = list(params.cols)
        cols[:2] = head
        # keep the remaining columns distinct from the substituted ones
        for idx in range(2, n):
            while (model.exact and model.variable(cols[idx]) in taken) or (
                not model.exact and any(abs(cols[idx] - h) < 0.1 for h in head)
            ):
                cols[idx] = draw_point(model, rng)
            taken.add(model.variable(cols[idx]))
        sub = make_params(model, cols, params.rows)
        z = zfn(model, sub)
        ok = z == 0 if model.exact else abs(z) <= 1e-9 * max(scale, abs(model.c()) ** (n * n))
        if not ok:
            return _report("vanishing", model, n, seed, False, _witness(sub, j=j + 1, value=z))
    return _report("vanishing", model, n, seed, True)


def specialization_value(model, params):
    """The closed product for Z at coinciding column and row parameters."""
    rows = params.rows
    n = params.n
    if model.name == "trig-algebraic":
        q = model.q
        ys = params.nus
        value = (q - 1 / q) ** n
        for j in range(n):
            for k in range(n):
                if j != k:
                    value *= q * ys[j] - ys[k] / q
        return value
    value = Fraction(1) if model.exact else complex(1.0)
    for j in range(n):
        for k in range(n):
            value *= model.weights(rows[j], rows[k])[0]
    return value


def check_specialization(zfn: ZFn, model, n: int, seed: int = 0) -> PropertyReport:
    """Z at {λ} = {ν} against the closed product."""
    rng = _rng(seed, "specialization")
    params = draw_params(model, n, rng)
    diag = make_params(model, params.rows, params.rows)
    z = zfn(model, diag)
    expected = specialization_value(model, diag)
    ok = close(z, expected)
    return _report("specialization", model, n, seed, ok,
                   {} if ok else _witness(diag, value=z, expected=expected))


def reconstruct(model, xs, ys):
    """Z from the defining properties alone, by Lagrange expansion in the first variable.

    ``xs``/``ys`` are the polynomial variables (λ, ν or x, y). The value at
    x_1 = y_i factorises into a known product times the (N-1)-point function
    with y_i removed, which is reconstructed recursively from the empty
    lattice, whose value is 1.
    """
    n = len(xs)
    if n == 0:
        return Fraction(1)
    if model.name == "trig-algebraic":
        q = model.q
        c = q - 1 / q

        def a(x, y):
            return q * x - y / q
    else:
        c = Fraction(1)

        def a(x, y):
            return x - y + 1

    total = Fraction(0)
    for i in range(n):
        rest = ys[:i] + ys[i + 1 :]
        value = reconstruct(model, xs[1:], rest) * c
        for x in xs[1:]:
            value *= a(x, ys[i])
        for y in rest:
            value *= a(ys[i], y)
        for y in rest:
            value *= (xs[0] - y) / (ys[i] - y)
        total += value
    return total


def check_uniqueness(model, n: int, seed: int) -> PropertyReport:
    """The property-based reconstruction against the enumeration oracle."""
    if not model.exact:
        raise ValueError("the reconstruction needs an exact model")
    rng = _rng(seed, "uniqueness")
    for _ in range(UNIQUENESS_POINTS):
        params = draw_params(model, n, rng)
        got = reconstruct(model, list(params.lambdas), list(params.nus))
        expected = z_enum(model, params)
        if got != expected:
            return _report("uniqueness", model, n, seed, False,
                           _witness(params, reconstructed=got, enumerated=expected))
    return _report("uniqueness", model, n, seed, True)


# ---------------------------------------------------------------------------
# QISM identities

def _draw_avoiding(model, rng, avoid):
    """A point p with a(p, r), a(r, p) and b(p, r) nonzero for every r in ``avoid``."""

    def tiny(z):
        return z == 0 if model.exact else abs(z) < 1e-3

    while True:
        p = draw_point(model, rng)
        bad = False
        for r in avoid:
            a, b, _ = model.weights(p, r)
            if tiny(a) or tiny(b) or tiny(model.weights(r, p)[0]):
                bad = True
                break
        if not bad:
            return p


def check_qism(model, n: int, seed: int, which=None) -> list:
    """QISM identities on random states; returns one report per identity."""
    rng = _rng(seed, "qism")
    params = draw_params(model, n, rng)
    reports = []
    want = set(which) if which else None

    def run(check_id, fn):
        if want is not None and check_id not in want:
            return
        ok, witness = fn()
        reports.append(_report(check_id, model, n, seed, ok, {} if ok else witness))

    vac = qism.vacuum(model, params)
    rows = params.rows

    def cup0():
        p = draw_point(model, rng)
        out = qism.monodromy_apply("C", model, params, p, vac)
        a, d = qism.point_vacuum(model, p, params)
        ok = out.is_zero()
        ok &= qism.monodromy_apply("A", model, params, p, vac).equals(vac.scaled(a))
        ok &= qism.monodromy_apply("D", model, params, p, vac).equals(vac.scaled(d))
        return ok, _witness(params, point=p)

    def bb():
        for _ in range(BB_STATES):
            lam, mu = draw_point(model, rng), draw_point(model, rng)
            state = qism.random_state(model, n, rng)
            if not qism.commutator_bb(model, params, lam, mu, state).is_zero():
                return False, _witness(params, lam=lam, mu=mu)
        return True, {}

    def ab():
        for _ in range(5):
            lam = draw_point(model, rng)
            mu = _draw_avoiding(model, rng, [lam])
            state = qism.random_state(model, n, rng)
            lhs, rhs = qism.ab_relation_sides(model, params, lam, mu, state)
            if not lhs.equals(rhs):
                return False, _witness(params, lam=lam, mu=mu)
        return True, {}

    def qdet():
        for _ in range(3):
            p = draw_point(model, rng)
            state = qism.random_state(model, n, rng)
            scalar = qism.qdet_scalar(model, params, p)
            expected = state.scaled(scalar)
            for form in (1, 2):
                if not qism.qdet_apply(model, params, p, state, form).equals(expected):
                    return False, _witness(params, point=p, form=form, scalar=scalar)
        return True, {}

    def qdet_central():
        p, mu = draw_point(model, rng), draw_point(model, rng)
        state = qism.random_state(model, n, rng)
        for entry in "ABCD":
            left = qism.qdet_apply(model, params, p,
                                   qism.monodromy_apply(entry, model, params, mu, state))
            right = qism.monodromy_apply(entry, model, params, mu,
                                         qism.qdet_apply(model, params, p, state))
            if not left.equals(right):
                return False, _witness(params, point=p, mu=mu, entry=entry)
        return True, {}

    def bethe():
        # eigenvalues are distinct as functions of μ; a single μ can collide by accident
        mus = [_draw_avoiding(model, rng, [model.shift(r) for r in rows]) for _ in range(3)]
        signatures = []
        for size in range(n + 1):
            for subset in itertools.combinations(range(1, n + 1), size):
                vec = qism.bethe_vector(model, params, subset)
                if vec.is_zero():
                    return False, _witness(params, subset=list(subset), reason="zero Bethe vector")
                sig = []
                for mu in mus:
                    lam = qism.bethe_eigenvalue(model, params, subset, mu)
                    got = qism.monodromy_apply("A", model, params, mu, vec)
                    if not got.equals(vec.scaled(lam)):
                        return False, _witness(params, subset=list(subset), mu=mu, eigenvalue=lam)
                    sig.append(lam)
                signatures.append(sig)
        for i in range(len(signatures)):
            for j in range(i):
                if all(close(x, y) for x, y in zip(signatures[i], signatures[j])):
                    return False, _witness(params, mu=mus, reason="repeated eigenvalue")
        return True, {}

    def null():
        for j in range(1, n + 1):
            if not qism.check_null_vector(model, params, j):
                return False, _witness(params, j=j)
        return True, {}

    def spin_flip():
        for j in range(1, n + 1):
            if not qism.check_spin_flip(model, params, j):
                return False, _witness(params, j=j)
        return qism.check_full_flip(model, params), _witness(params, j="all")

    def z_matches():
        a, b = qism.z_qism(model, params), z_enum(model, params)
        return close(a, b), _witness(params, qism=a, enum=b)

    run("c-annihilates-vacuum", cup0)
    run("bb-commute", bb)
    run("ab-relation", ab)
    run("qdet-scalar", qdet)
    run("qdet-central", qdet_central)
    run("bethe-eigen", bethe)
    run("null-vector", null)
    run("spin-flip", spin_flip)
    run("qism-vs-enum", z_matches)
    return reports


QISM_CHECKS = (
    "c-annihilates-vacuum", "bb-commute", "ab-relation", "qdet-scalar", "qdet-central",
    "bethe-eigen", "null-vector", "spin-flip", "qism-vs-enum",
)
PROPERTY_CHECKS = ("symmetry", "degree", "vanishing", "specialization", "uniqueness")
ALL_CHECKS = PROPERTY_CHECKS + QISM_CHECKS + ("agreement",)


def check_agreement(model, n: int, seed: int, impls: Optional[dict] = None) -> PropertyReport:
    """All implementations give the same value at a random draw."""
    rng = _rng(seed, "agreement")
    params = draw_params(model, n, rng)
    impls = impls if impls is not None else implementations(model, seed)
    values = {name: fn(model, params) for name, fn in impls.items()}
    ref = values.get("enum", next(iter(values.values())))
    bad = {k: v for k, v in values.items() if not close(v, ref)}
    witness = {} if not bad else _witness(params, reference=ref, **{k.replace("/", "_"): v for k, v in bad.items()})
    return _report("agreement", model, n, seed, not bad, witness)


def run_matrix(models, ns, seeds, checks=ALL_CHECKS):
    """Every requested check for every model, N and seed; yields reports."""
    for model in models:
        for n in ns:
            for seed in seeds:
                impls = implementations(model, seed)
                for check in PROPERTY_CHECKS:
                    if check not in checks:
                        continue
                    if check == "uniqueness":
                        if model.exact and n <= 3:
                            yield check_uniqueness(model, n, seed)
                        continue
                    fn = {"symmetry": check_symmetry, "degree": check_degree,
                          "vanishing": check_vanishing, "specialization": check_specialization}[check]
                    for name, zfn in impls.items():
                        if applicable(check, name, model):
                            rep = fn(zfn, model, n, seed)
                            rep.impl = name
                            yield rep
                qchecks = [c for c in QISM_CHECKS if c in checks]
                if qchecks:
                    yield from check_qism(model, n, seed, qchecks)
                if "agreement" in checks:
                    yield check_agreement(model, n, seed, impls)
