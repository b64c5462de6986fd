from __future__ import annotations

import pytest

from nlie.exact_linalg import Matrix
from nlie.metric import BilinearForm
from nlie.nlie_core import NLieAlgebra


# checks whose hypotheses hold for every metric algebra
UNCONDITIONAL = {
    "jacobi_identity", "form_invariance", "derived_is_center_perp",
    "perp_of_product_is_centralizer", "perfect_iff_centerless", "perp_of_product_criterion",
    "orthogonal_decomposition", "invertible_centroid_spans", "form_operator_correspondence",
    "metric_dimension_equality", "ideal_iff_perp_in_centralizer",
    "nondegenerate_lines_central", "isotropic_center_criterion",
    "coisotropic_radical_criterion", "centralizer_of_radical_splitting",
    "levi_acts_onto_radical_perp", "levi_decomposition", "radical_perp_dual_module",
}


def oscillator() -> tuple[NLieAlgebra, BilinearForm]:
    """Metric solvable Lie algebra whose quotient by the center acts by a rotation."""
    A = NLieAlgebra(2, 4, {(0, 1): [0, 0, 1, 0], (0, 2): [0, -1, 0, 0], (1, 2): [0, 0, 0, 1]},
                    ["h", "v1", "v2", "z"])
    B = BilinearForm(Matrix([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]))
    return A, B


@pytest.fixture
def oscillator_algebra():
    return oscillator()


# one verdict line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
