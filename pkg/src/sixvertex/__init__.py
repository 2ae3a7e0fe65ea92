"""Six-vertex model with domain-wall boundary: partition function by determinants and oracles."""

from .detrep import (
    IncompatibleRepresentationError,
    Representation,
    SingularConfigurationError,
    z_basis_rat,
    z_basis_trig,
    z_fw,
    z_ik,
    z_kostov,
)
from .enumeration import asm_count, enumerate_configs, z_enum
from .model import Rational, SpectralParams, TrigAlgebraic, TrigComplex
from .numerics import det
from .polybasis import PolyBasis, lagrange_basis, monomial_basis, random_basis
from .qism import z_qism

__all__ = [
    "IncompatibleRepresentationError", "PolyBasis", "Rational", "Representation",
    "SingularConfigurationError", "SpectralParams", "TrigAlgebraic", "TrigComplex",
    "asm_count", "det", "enumerate_configs", "lagrange_basis", "monomial_basis",
    "random_basis", "z_basis_rat", "z_basis_trig", "z_enum", "z_fw", "z_ik", "z_kostov", "z_qism",
]
