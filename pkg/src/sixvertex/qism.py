"""Monodromy-matrix operators on the 2^N-dimensional quantum space.

Site k (k = 1..N) is the k-th horizontal line and corresponds to bit k-1 of a
spin mask; a set bit means spin down. Mask 0 is |⇑⟩, the full mask is |⇓⟩.

The L-operator of the vertex (j, k) maps (auxiliary in, quantum in) to
(auxiliary out, quantum out) with

    aux ↑, site ↑ -> aux ↑, site ↑  weight a
    aux ↑, site ↓ -> aux ↑, site ↓  weight b      aux ↓, site ↑  weight c
    aux ↓, site ↑ -> aux ↓, site ↑  weight b      aux ↑, site ↓  weight c
    aux ↓, site ↓ -> aux ↓, site ↓  weight a

and the monodromy matrix is T(λ) = L_N(λ, ν_N) ⋯ L_1(λ, ν_1), so site 1 is
visited first. Entry (α, β) of T has auxiliary input β and output α:
A = (↑, ↑), B = (↑ out, ↓ in), C = (↓ out, ↑ in), D = (↓, ↓).

Operator arguments are *points* in the sense of :mod:`sixvertex.model`
(λ, or the square root u in the algebraic model).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .model import point_vacuum
from .numerics import ResourceLimitError, Scalar, is_exact

#: largest N accepted by :func:`z_qism`
QISM_CAP = 14

#: relative threshold for calling a complex state zero
COMPLEX_ZERO_RTOL = 1e-10

#: amplitudes below this fraction of the largest one are dropped in complex mode
COMPLEX_PRUNE = 1e-14

# entry -> (auxiliary output, auxiliary input)
_ENTRIES = {"A": (0, 0), "B": (0, 1), "C": (1, 0), "D": (1, 1)}

# (aux in, site in) -> [(aux out, site out, weight index)], weight index into (a, b, c)
_L_TABLE = {
    (0, 0): [(0, 0, 0)],
    (0, 1): [(0, 1, 1), (1, 0, 2)],
    (1, 0): [(1, 0, 1), (0, 1, 2)],
    (1, 1): [(1, 1, 0)],
}


@dataclass
class QuantumState:
    """Sparse vector over spin masks; only nonzero amplitudes are stored.

    ``scale`` records the largest magnitude of any single term that went
    into the amplitudes; it is the reference for complex zero tests.
    """

    n: int
    amps: dict = field(default_factory=dict)
    scale: float = 0.0

    @classmethod
    def vacuum(cls, n: int, one: Scalar = Fraction(1)) -> "QuantumState":
        return cls(n, {0: one}, abs(one))

    @classmethod
    def basis(cls, n: int, mask: int, amp: Scalar = Fraction(1)) -> "QuantumState":
        if not 0 <= mask < (1 << n):
            raise ValueError(f"mask {mask} out of range for {n} sites")
        return cls(n, {mask: amp}, abs(amp))

    def amplitude(self, mask: int) -> Scalar:
        return self.amps.get(mask, 0)

    def _prune(self) -> "QuantumState":
        if not self.amps:
            return self
        if all(is_exact(v) for v in self.amps.values()):
            self.amps = {m: v for m, v in self.amps.items() if v != 0}
        else:
            top = max(abs(v) for v in self.amps.values())
            self.amps = {m: v for m, v in self.amps.items() if abs(v) > COMPLEX_PRUNE * top}
        self.scale = max([self.scale] + [abs(v) for v in self.amps.values()])
        return self

    def scaled(self, s: Scalar) -> "QuantumState":
        return QuantumState(self.n, {m: s * v for m, v in self.amps.items()}, abs(s) * self.scale)._prune()

    def __add__(self, other: "QuantumState") -> "QuantumState":
        return self._combine(other, 1)

    def __sub__(self, other: "QuantumState") -> "QuantumState":
        return self._combine(other, -1)

    def _combine(self, other, sign):
        if other.n != self.n:
            raise ValueError("states live on different numbers of sites")
        amps = dict(self.amps)
        for m, v in other.amps.items():
            amps[m] = amps.get(m, 0) + sign * v
        return QuantumState(self.n, amps, max(self.scale, other.scale))._prune()

    def is_zero(self, rtol: float = COMPLEX_ZERO_RTOL) -> bool:
        if not self.amps:
            return True
        if all(is_exact(v) for v in self.amps.values()):
            return False
        return max(abs(v) for v in self.amps.values()) <= rtol * self.scale

    def equals(self, other: "QuantumState", rtol: float = COMPLEX_ZERO_RTOL) -> bool:
        """Exact equality for exact amplitudes, relative closeness otherwise."""
        return (self - other).is_zero(rtol)

    def sector(self) -> set:
        """Numbers of down spins present in the state."""
        return {bin(m).count("1") for m in self.amps}

    def dump(self) -> str:
        """One line per amplitude: the mask in binary (site 1 rightmost) and the value."""
        from .numerics import serialize

        lines = []
        for m in sorted(self.amps):
            lines.append(f"{m:0{self.n}b} {serialize(self.amps[m])}")
        return "\n".join(lines)


def monodromy_apply(entry: str, model, params, point, state: QuantumState) -> QuantumState:
    """Apply A, B, C or D at ``point`` to ``state``; the input is not modified."""
    if entry not in _ENTRIES:
        raise ValueError(f"unknown monodromy entry {entry!r}")
    n = params.n
    if state.n != n:
        raise ValueError(f"state has {state.n} sites, parameters describe {n}")
    aux_out, aux_in = _ENTRIES[entry]
    weights = [model.weights(point, r) for r in params.rows]
    scale = state.scale
    cur = {(aux_in, m): v for m, v in state.amps.items()}
    for k in range(n):
        bit = 1 << k
        w = weights[k]
        nxt = {}
        for (aux, mask), amp in cur.items():
            site = 1 if mask & bit else 0
            base = mask & ~bit
            for a_out, s_out, wi in _L_TABLE[(aux, site)]:
                key = (a_out, base | bit if s_out else base)
                nxt[key] = nxt.get(key, 0) + amp * w[wi]
        cur = nxt
        if cur:
            scale = max(scale, max(abs(v) for v in cur.values()))
    amps = {m: v for (aux, m), v in cur.items() if aux == aux_out}
    return QuantumState(n, amps, scale)._prune()


def apply_chain(ops: Sequence[tuple], model, params, state: QuantumState) -> QuantumState:
    """Apply ``[(entry, point), ...]`` right to left, like an operator product."""
    for entry, point in reversed(ops):
        state = monodromy_apply(entry, model, params, point, state)
    return state


def _one(model):
    return Fraction(1) if model.exact else complex(1.0)


def vacuum(model, params) -> QuantumState:
    return QuantumState.vacuum(params.n, _one(model))


def b_chain(model, params, cap: int = QISM_CAP) -> QuantumState:
    """B(λ_N) ⋯ B(λ_1) |⇑⟩, checking the spin sector after every step."""
    n = params.n
    if n > cap:
        raise ResourceLimitError(f"N={n} exceeds the QISM cap {cap}")
    state = vacuum(model, params)
    for j, p in enumerate(params.cols):
        state = monodromy_apply("B", model, params, p, state)
        if state.amps and state.sector() != {j + 1}:
            raise AssertionError(f"B left the magnetisation sector after {j + 1} steps")
    return state


def z_qism(model, params, cap: int = QISM_CAP) -> Scalar:
    """⟨⇓| B(λ_N) ⋯ B(λ_1) |⇑⟩; Z̃_N for the algebraic model. Any parameters allowed."""
    n = params.n
    state = b_chain(model, params, cap)
    z = state.amplitude((1 << n) - 1)
    if z == 0:
        z = 0 * _one(model)
    if params.algebraic:
        for u, v in zip(params.us, params.vs):
            z /= u * v
    return z


def qdet_apply(model, params, point, state: QuantumState, form: int = 1) -> QuantumState:
    """Quantum determinant at ``point`` applied to ``state``.

    Form 1: D(λ)A(λ-1) - C(λ)B(λ-1); form 2: A(λ)D(λ-1) - B(λ)C(λ-1).
    """
    s = model.shift(point)
    if form == 1:
        first = apply_chain([("D", point), ("A", s)], model, params, state)
        second = apply_chain([("C", point), ("B", s)], model, params, state)
    elif form == 2:
        first = apply_chain([("A", point), ("D", s)], model, params, state)
        second = apply_chain([("B", point), ("C", s)], model, params, state)
    else:
        raise ValueError("form must be 1 or 2")
    return first - second


def qdet_scalar(model, params, point) -> Scalar:
    """a(λ) d(λ-1), the scalar by which the quantum determinant acts."""
    a, _ = point_vacuum(model, point, params)
    _, d = point_vacuum(model, model.shift(point), params)
    return a * d


def f_fn(model, p, r) -> Scalar:
    a, b, _ = model.weights(p, r)
    return a / b


def g_fn(model, p, r) -> Scalar:
    _, b, c = model.weights(p, r)
    return c / b


def bethe_vector(model, params, subset: Iterable[int]) -> QuantumState:
    """B(ν_{j_1} - 1) ⋯ B(ν_{j_k} - 1) |⇑⟩ for 1-based indices ``subset``."""
    subset = list(subset)
    if len(set(subset)) != len(subset):
        raise ValueError("repeated indices in the Bethe vector subset")
    for j in subset:
        if not 1 <= j <= params.n:
            raise ValueError(f"index {j} out of range")
    ops = [("B", model.shift(params.rows[j - 1])) for j in subset]
    return apply_chain(ops, model, params, vacuum(model, params))


def bethe_eigenvalue(model, params, subset: Iterable[int], mu) -> Scalar:
    """a(μ) ∏_{j ∈ subset} f(ν_j - 1, μ)."""
    value, _ = point_vacuum(model, mu, params)
    for j in subset:
        value *= f_fn(model, model.shift(params.rows[j - 1]), mu)
    return value


def null_vector(model, params, j: int, k: int | None = None) -> QuantumState:
    """B(ν_j) B(ν_k - 1) |⇑⟩, with k = j by default."""
    k = j if k is None else k
    ops = [("B", params.rows[j - 1]), ("B", model.shift(params.rows[k - 1]))]
    return apply_chain(ops, model, params, vacuum(model, params))


def check_null_vector(model, params, j: int) -> bool:
    """True iff B(ν_j) B(ν_j - 1) |⇑⟩ vanishes."""
    return null_vector(model, params, j).is_zero()


def spin_flip_sides(model, params, j: int) -> tuple[QuantumState, QuantumState]:
    """Both sides of B(ν_j)|↑…↑_j ↓_{j-1}…↓_1⟩ = a(ν_j)|↑…↓_j…↓_1⟩."""
    n = params.n
    if not 1 <= j <= n:
        raise ValueError(f"index {j} out of range")
    one = _one(model)
    before = QuantumState.basis(n, (1 << (j - 1)) - 1, one)
    lhs = monodromy_apply("B", model, params, params.rows[j - 1], before)
    a, _ = point_vacuum(model, params.rows[j - 1], params)
    rhs = QuantumState.basis(n, (1 << j) - 1, one).scaled(a)
    return lhs, rhs


def check_spin_flip(model, params, j: int) -> bool:
    lhs, rhs = spin_flip_sides(model, params, j)
    return lhs.equals(rhs)


def check_full_flip(model, params) -> bool:
    """B(ν_N) ⋯ B(ν_1)|⇑⟩ = ∏_k a(ν_k) |⇓⟩."""
    ops = [("B", r) for r in reversed(params.rows)]
    lhs = apply_chain(ops, model, params, vacuum(model, params))
    coeff = _one(model)
    for r in params.rows:
        coeff *= point_vacuum(model, r, params)[0]
    rhs = QuantumState.basis(params.n, (1 << params.n) - 1, _one(model)).scaled(coeff)
    return lhs.equals(rhs)


def random_state(model, n: int, rng, density: float = 0.6) -> QuantumState:
    """A state with random small rational (or complex) amplitudes."""
    amps = {}
    for m in range(1 << n):
        if rng.random() < density:
            if model.exact:
                v = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            else:
                v = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if v != 0:
                amps[m] = v
    if not amps:
        amps[rng.randrange(1 << n)] = _one(model)
    return QuantumState(n, amps, max(abs(v) for v in amps.values()))


def commutator_bb(model, params, lam, mu, state: QuantumState) -> QuantumState:
    """[B(λ), B(μ)] applied to ``state``."""
    return apply_chain([("B", lam), ("B", mu)], model, params, state) - apply_chain(
        [("B", mu), ("B", lam)], model, params, state
    )


def ab_relation_sides(model, params, lam, mu, state: QuantumState):
    """A(μ)B(λ)v and f(λ,μ) B(λ)A(μ)v + g(μ,λ) B(μ)A(λ)v."""
    lhs = apply_chain([("A", mu), ("B", lam)], model, params, state)
    t1 = apply_chain([("B", lam), ("A", mu)], model, params, state).scaled(f_fn(model, lam, mu))
    t2 = apply_chain([("B", mu), ("A", lam)], model, params, state).scaled(g_fn(model, mu, lam))
    return lhs, t1 + t2

