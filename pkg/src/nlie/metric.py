"""Invariant bilinear forms, the centroid and the metric dimension.

A form is invariant when every inner derivation is skew for it,
``B([x, y1], y2) = -B([x, y2], y1)``, i.e. ``D^T M + M D = 0`` for the Gram
matrix ``M`` and every ``D = ad(e_J)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import (
    ZERO,
    DimensionError,
    Matrix,
    RowReducer,
    Subspace,
    commutant,
    lin_comb,
    nullspace_vectors,
    scalar,
    span_basis_of,
)
from .nlie_core import ContractError, NLieAlgebra, cached_on_algebra


class DegenerateFormError(ContractError):
    """The operation needs a nondegenerate form."""


class NotMetricError(ContractError):
    """The form is not an invariant nondegenerate symmetric form."""


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form given by its Gram matrix."""

    gram: Matrix

    def __post_init__(self):
        if not self.gram.is_square:
            raise DimensionError("Gram matrix must be square")
        if not self.gram.is_symmetric():
            raise ContractError("Gram matrix is not symmetric")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "BilinearForm":
        return cls(Matrix(rows))

    @classmethod
    def identity(cls, d: int) -> "BilinearForm":
        return cls(Matrix.identity(d))

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __call__(self, x: Sequence, y: Sequence):
        My = self.gram @ y
        return sum((a * b for a, b in zip(x, My) if a and b), ZERO)

    def is_nondegenerate(self) -> bool:
        return self.gram.is_invertible()

    def scale(self, c) -> "BilinearForm":
        return BilinearForm(self.gram.scale(c))

    def __add__(self, other: "BilinearForm") -> "BilinearForm":
        return BilinearForm(self.gram + other.gram)

    def transport(self, P: Matrix) -> "BilinearForm":
        """Gram matrix in the basis given by the columns of P."""
        return BilinearForm(P.T @ self.gram @ P)

    def restrict(self, V: Subspace) -> "BilinearForm":
        """Form on V in the coordinates of V's echelon basis."""
        if V.is_zero:
            return BilinearForm(Matrix._raw((), 0))
        Bm = V.basis_matrix()
        return BilinearForm(Bm.T @ self.gram @ Bm)

    def to_strings(self) -> list[list[str]]:
        return self.gram.to_strings()


@dataclass(frozen=True)
class CentroidElement:
    """A map satisfying phi([x1, ..., xn]) = [phi(x1), x2, ..., xn]."""

    matrix: Matrix
    self_adjoint: bool = False


def _check_form(A: NLieAlgebra, form: BilinearForm):
    if form.dim != A.dim:
        raise DimensionError(f"{form.dim}x{form.dim} Gram matrix on a {A.dim}-dim algebra")


@cached_on_algebra
def invariance_defect(A: NLieAlgebra, form: BilinearForm):
    """First (J, i, j) with (D^T M + M D)_{ij} != 0 for D = ad(e_J), or None."""
    _check_form(A, form)
    M = form.gram
    for J, D in A.ad_generators.items():
        S = D.T @ M + M @ D
        for i, row in enumerate(S.rows):
            for j, x in enumerate(row):
                if x:
                    return J, i, j
    return None


def check_invariance(A: NLieAlgebra, form: BilinearForm) -> bool:
    return invariance_defect(A, form) is None


def is_metric(A: NLieAlgebra, form: BilinearForm) -> bool:
    return check_invariance(A, form) and form.is_nondegenerate()


def require_metric(A: NLieAlgebra, form: BilinearForm):
    if not check_invariance(A, form):
        raise NotMetricError("form is not invariant")
    if not form.is_nondegenerate():
        raise NotMetricError("form is degenerate")


def perp(form: BilinearForm, W: Subspace) -> Subspace:
    """{x : B(w, x) = 0 for all w in W}, for any form."""
    d = form.dim
    M = form.gram
    rows = [M.T @ w for w in W.basis]
    return Subspace.span(nullspace_vectors(rows, d), d)


def orthogonal_complement(A: NLieAlgebra, form: BilinearForm, W: Subspace) -> Subspace:
    _check_form(A, form)
    if not form.is_nondegenerate():
        raise DegenerateFormError("orthogonal complement needs a nondegenerate form")
    return perp(form, W)


ISOTROPIC = "isotropic"
COISOTROPIC = "coisotropic"
NONDEGENERATE = "nondegenerate"
MIXED = "mixed"


def classify_subspace(A: NLieAlgebra, form: BilinearForm, W: Subspace) -> frozenset[str]:
    """Labels among isotropic, coisotropic, nondegenerate; {mixed} if none hold."""
    Wp = orthogonal_complement(A, form, W)
    labels = set()
    if Wp.contains(W):
        labels.add(ISOTROPIC)
    if W.contains(Wp):
        labels.add(COISOTROPIC)
    if (W & Wp).is_zero:
        labels.add(NONDEGENERATE)
    return frozenset(labels or {MIXED})


def is_nondegenerate_subspace(form: BilinearForm, W: Subspace) -> bool:
    return W.is_zero or form.restrict(W).is_nondegenerate()


# ---------------------------------------------------------------------------
# centroid and invariant forms
# ---------------------------------------------------------------------------

@cached_on_algebra
def centroid_matrices(A: NLieAlgebra) -> list[Matrix]:
    """Basis of the centroid as matrices.

    By antisymmetry, phi([x1, ..., xn]) = [phi(x1), ..., xn] for all tuples
    says exactly that phi commutes with every ad(x2, ..., xn).
    """
    return commutant(A.ad_span, A.dim)


def centroid(A: NLieAlgebra) -> list[CentroidElement]:
    return [CentroidElement(m) for m in centroid_matrices(A)]


def _self_adjoint_part(mats: Sequence[Matrix], form: BilinearForm) -> list[Matrix]:
    """Basis of {sum c_i X_i : X^T M = M X}."""
    if not mats:
        return []
    M = form.gram
    d = form.dim
    defects = [(X.T @ M - M @ X).flat() for X in mats]
    k = len(mats)
    rows = [[defects[i][e] for i in range(k)] for e in range(d * d)]
    coeffs = nullspace_vectors(rows, k)
    flats = [X.flat() for X in mats]
    return span_basis_of((Matrix.from_flat(lin_comb(c, flats, d * d), d) for c in coeffs), d)


@cached_on_algebra
def gamma_B_matrices(A: NLieAlgebra, form: BilinearForm) -> list[Matrix]:
    require_metric(A, form)
    return _self_adjoint_part(centroid_matrices(A), form)


def gamma_B(A: NLieAlgebra, form: BilinearForm) -> list[CentroidElement]:
    return [CentroidElement(m, True) for m in gamma_B_matrices(A, form)]


@cached_on_algebra
def invariant_form_space(A: NLieAlgebra) -> list[BilinearForm]:
    """Basis of the symmetric invariant forms, solved directly on Gram entries."""
    d = A.dim
    slots = [(i, j) for i in range(d) for j in range(i, d)]
    index = {s: t for t, s in enumerate(slots)}

    def var(i, j):
        return index[(i, j) if i <= j else (j, i)]

    red = RowReducer(len(slots))
    for D in A.ad_span:
        Dr = D.rows
        # (D^T K + K D)_{ij} = sum_k D_ki K_kj + K_ik D_kj
        for i, j in slots:
            row = [ZERO] * len(slots)
            for k in range(d):
                if Dr[k][i]:
                    row[var(k, j)] += Dr[k][i]
                if Dr[k][j]:
                    row[var(i, k)] += Dr[k][j]
            red.add(row)
    rows = [tuple(r) for r, _ in red._rows.values()]
    out = []
    for sol in Subspace.span(nullspace_vectors(rows, len(slots)), len(slots)).basis:
        g = [[sol[var(i, j)] for j in range(d)] for i in range(d)]
        out.append(BilinearForm(Matrix(g)))
    return out


# ---------------------------------------------------------------------------
# metric dimension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricDimension:
    value: int
    form_space_dim: int
    witness: Matrix | None
    coefficients: tuple | None
    spanning_invertibles: tuple[Matrix, ...] = ()
    warning: str | None = None
    det_polynomial: str | None = None

    @property
    def dimensions_agree(self) -> bool:
        return self.value == self.form_space_dim

    def __int__(self):
        return self.value


def _vectors_by_l1(k: int, radius: int, skip_radius: int):
    """Integer vectors in [-radius, radius]^k ordered by L1 norm, then
    lexicographically with coordinates ranked 0, 1, -1, 2, -2, ...

    Vectors already inside [-skip_radius, skip_radius]^k are left out.
    """
    for s in range(0, k * radius + 1):
        for vec in _compositions(k, s, radius):
            if skip_radius >= 0 and all(abs(c) <= skip_radius for c in vec):
                continue
            yield vec


def _compositions(k: int, s: int, radius: int):
    if k == 0:
        if s == 0:
            yield ()
        return
    top = min(s, radius)
    for first in sorted(range(-top, top + 1), key=lambda c: (abs(c), c < 0)):
        for rest in _compositions(k - 1, s - abs(first), radius):
            yield (first,) + rest


def determinant_polynomial(mats: Sequence[Matrix]) -> str:
    import sympy

    k = len(mats)
    syms = sympy.symbols(f"c1:{k + 1}")
    d = mats[0].nrows if mats else 0
    expr = sympy.zeros(d, d)
    for c, m in zip(syms, mats):
        expr += c * sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator))
                                   for x in r] for r in m.rows])
    return str(sympy.expand(expr.det()))


def find_invertible_combination(mats: Sequence[Matrix], bound: int = 6):
    """First integer combination (L1 then lexicographic order) with det != 0."""
    if not mats:
        return None
    d = mats[0].nrows
    k = len(mats)
    flats = [m.flat() for m in mats]
    start = min(3, bound)
    previous = -1
    for radius in range(start, bound + 1):
        for coeffs in _vectors_by_l1(k, radius, previous):
            if not any(coeffs):
                continue
            m = Matrix.from_flat(lin_comb([scalar(c) for c in coeffs], flats, d * d), d)
            if m.det() != 0:
                return coeffs, m
        previous = radius
    return None


@cached_on_algebra
def metric_dimension(A: NLieAlgebra, form: BilinearForm, bound: int = 6) -> MetricDimension:
    """dim Gamma_B, cross-checked against the dimension of invariant forms.

    Also returns an invertible element of Gamma_B and a spanning set of
    invertible elements, built by perturbing the witness along each basis
    vector.
    """
    basis = gamma_B_matrices(A, form)
    fdim = len(invariant_form_space(A))
    found = find_invertible_combination(basis, bound)
    if found is None:
        return MetricDimension(
            len(basis), fdim, None, None,
            warning=f"no invertible element of Gamma_B found with coefficients in [-{bound},{bound}]",
            det_polynomial=determinant_polynomial(basis) if basis else "0")
    coeffs, W = found
    spanning = [W]
    for C in basis:
        for t in range(1, A.dim + 2):
            cand = W + C.scale(t)
            if cand.det() != 0:
                spanning.append(cand)
                break
    red = RowReducer(A.dim ** 2, (m.flat() for m in spanning))
    warning = None
    if red.rank != len(basis):
        warning = "invertible elements found do not span Gamma_B"
    return MetricDimension(len(basis), fdim, W, coeffs, tuple(spanning), warning)


def d_operator(A: NLieAlgebra, B: BilinearForm, K: BilinearForm) -> CentroidElement:
    """The map D with K(x, y) = B(Dx, y); D is a B-self-adjoint centroid element."""
    require_metric(A, B)
    _check_form(A, K)
    if not check_invariance(A, K):
        raise ContractError("second form is not invariant")
    D = B.gram.inverse() @ K.gram
    if any(D @ ad != ad @ D for ad in A.ad_span):
        raise ContractError("form operator does not commute with inner derivations")
    if D.T @ B.gram != B.gram @ D:
        raise ContractError("form operator is not self-adjoint")
    return CentroidElement(D, True)
