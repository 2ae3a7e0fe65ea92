"""Bases of polynomials of degree at most N-1.

A basis is stored by its coefficient matrix: ``coeffs[i][j]`` is the
coefficient of z**j in the i-th polynomial (both zero-based). The basis
condition is that the coefficient determinant Q_N is nonzero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numerics import Scalar, det, is_exact, product


class DegenerateBasisError(ValueError):
    pass


@dataclass(frozen=True)
class PolyBasis:
    coeffs: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.coeffs)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("coefficient matrix must be square and nonempty")
        object.__setattr__(self, "coeffs", rows)
        if det(rows) == 0:
            raise DegenerateBasisError("coefficient determinant vanishes; not a basis")

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def evaluate(self, k: int, z: Scalar) -> Scalar:
        """Value of the k-th polynomial (zero-based) at ``z``, by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs[k]):
            acc = acc * z + c
        return acc

    def transformed(self, m: Sequence[Sequence[Scalar]]) -> "PolyBasis":
        """The basis whose i-th polynomial is Σ_l m[i][l] p_l."""
        n = self.n
        rows = [
            [sum((m[i][l] * self.coeffs[l][j] for l in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]
        return PolyBasis(rows)


def monomial_basis(n: int, exact: bool = True) -> PolyBasis:
    one, zero = (Fraction(1), Fraction(0)) if exact else (complex(1.0), complex(0.0))
    return PolyBasis([[one if i == j else zero for j in range(n)] for i in range(n)])


def _expand_roots(roots: Sequence[Scalar], one: Scalar) -> list:
    # coefficients (lowest degree first) of ∏ (z - r)
    coeffs = [one]
    for r in roots:
        nxt = [0 * one] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return coeffs


def lagrange_basis(points: Sequence[Scalar]) -> PolyBasis:
    """p_k(z) = ∏_{l≠k} (z - points[l]), expanded into coefficients."""
    points = list(points)
    n = len(points)
    for i in range(n):
        for j in range(i):
            if points[i] == points[j]:
                raise DegenerateBasisError("degenerate Lagrange basis: coinciding points")
    one = Fraction(1) if all(is_exact(p) for p in points) else complex(1.0)
    rows = [_expand_roots(points[:k] + points[k + 1 :], one) for k in range(n)]
    return PolyBasis(rows)


def random_basis(n: int, seed: int, exact: bool = True, max_attempts: int = 100) -> PolyBasis:
    """Integer coefficients in [-9, 9], redrawn until the determinant is nonzero."""
    rng = random.Random(seed)
    conv = Fraction if exact else complex
    for _ in range(max_attempts):
        rows = [[conv(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)]
        if det(rows) != 0:
            return PolyBasis(rows)
    raise DegenerateBasisError(f"no invertible coefficient matrix after {max_attempts} draws")


def eval_basis_matrix(basis: PolyBasis, zs: Sequence[Scalar]) -> list:
    """The matrix [p_k(z_j)]_{j,k}."""
    if len(zs) != basis.n:
        raise ValueError(f"need {basis.n} evaluation points, got {len(zs)}")
    return [[basis.evaluate(k, z) for k in range(basis.n)] for z in zs]


def qn(basis: PolyBasis) -> Scalar:
    """Determinant of the coefficient matrix."""
    return det(basis.coeffs)


def plain_vandermonde(zs: Sequence[Scalar]) -> Scalar:
    """∏_{j<k} (z_k - z_j)."""
    zs = list(zs)
    one = Fraction(1) if all(is_exact(z) for z in zs) else complex(1.0)
    return product((zs[k] - zs[j] for k in range(len(zs)) for j in range(k)), one)
