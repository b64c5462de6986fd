"""Exact structure theory of n-Lie algebras with invariant bilinear forms."""
from __future__ import annotations

from .audit import StructureReport, audit, summarize
from .catalog import NAMES as CATALOG_NAMES, builtin, scramble
from .exact_linalg import Matrix, Subspace
from .metric import (
    BilinearForm,
    centroid,
    check_invariance,
    gamma_B,
    invariant_form_space,
    metric_dimension,
    orthogonal_complement,
)
from .nlie_core import NLieAlgebra, center, check_axioms, derived_algebra, ideal_generated
from .structure import (
    NotSplitError,
    b_irreducible_decomposition,
    find_minimal_ideals,
    is_simple,
    m_count,
    radical,
    socle,
)

__all__ = [
    "BilinearForm", "CATALOG_NAMES", "Matrix", "NLieAlgebra", "NotSplitError",
    "StructureReport", "Subspace", "audit", "b_irreducible_decomposition", "builtin",
    "center", "centroid", "check_axioms", "check_invariance", "derived_algebra",
    "find_minimal_ideals", "gamma_B", "ideal_generated", "invariant_form_space",
    "is_simple", "m_count", "metric_dimension", "orthogonal_complement", "radical",
    "scramble", "socle", "summarize",
]
