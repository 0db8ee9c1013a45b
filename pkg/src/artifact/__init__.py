"""Hodge numbers of weighted hypersurfaces and integral lattice invariants.

Exact arithmetic throughout: rational polynomials, integer elimination,
Smith normal forms and finite quadratic forms.
"""

from .errors import (
    ActionError,
    ArtifactError,
    GenusUndecidedError,
    LatticeError,
    NonHomogeneousError,
    NotQuasiSmoothError,
    PolynomialSyntaxError,
    UnknownVariableError,
    ZeroPolynomialError,
)
from .hodge import DiagonalAction, eigen_hodge_numbers, hodge_numbers_primitive, residue_basis
from .jacobian import (
    graded_quotient_dim,
    hilbert_series_closed_form,
    ideal_membership,
    jacobian_context,
    quasi_smooth,
)
from .lattice import (
    Lattice,
    SublatticeEmbedding,
    discriminant_form,
    discriminant_group,
    is_primitive,
    orthogonal_complement,
    root_lattice,
    same_genus,
    signature,
    smith_normal_form,
    standard_lattice,
)
from .polyring import Polynomial, WeightedRing, parse_polynomial, weighted_degree

__version__ = "0.1.0"

__all__ = [
    "ActionError",
    "ArtifactError",
    "DiagonalAction",
    "GenusUndecidedError",
    "Lattice",
    "LatticeError",
    "NonHomogeneousError",
    "NotQuasiSmoothError",
    "Polynomial",
    "PolynomialSyntaxError",
    "SublatticeEmbedding",
    "UnknownVariableError",
    "WeightedRing",
    "ZeroPolynomialError",
    "discriminant_form",
    "discriminant_group",
    "eigen_hodge_numbers",
    "graded_quotient_dim",
    "hilbert_series_closed_form",
    "hodge_numbers_primitive",
    "ideal_membership",
    "is_primitive",
    "jacobian_context",
    "orthogonal_complement",
    "parse_polynomial",
    "quasi_smooth",
    "residue_basis",
    "root_lattice",
    "same_genus",
    "signature",
    "smith_normal_form",
    "standard_lattice",
    "weighted_degree",
]
