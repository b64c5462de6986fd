"""Finite-dimensional n-Lie algebras given by structure constants.

An :class:`NLieAlgebra` stores ``[e_{i1}, ..., e_{in}]`` only for strictly
increasing index tuples; every other tuple is obtained from the antisymmetry
of the bracket.  Construction validates the generalised Jacobi identity by
default.
"""
from __future__ import annotations

import inspect
import itertools
from dataclasses import dataclass
from functools import cached_property, wraps
from typing import Iterable, Mapping, Sequence

import flint

from .exact_linalg import (
    _from_fmpq,
    _to_flint,
    ONE,
    ZERO,
    DimensionError,
    Matrix,
    OperatorAlgebra,
    RowReducer,
    Subspace,
    Vector,
    close_operator_algebra,
    format_scalar,
    nullspace_vectors,
    scalar,
    independent_subset,
    unit_vector,
)


class AxiomError(ValueError):
    """Structure constants violate the Jacobi identity."""

    def __init__(self, report: "AxiomReport"):
        self.report = report
        super().__init__(report.describe())


class ContractError(ValueError):
    """An operation was called outside its precondition."""


@dataclass(frozen=True)
class Violation:
    xs: tuple[str, ...]
    ys: tuple[str, ...]
    lhs: Vector
    rhs: Vector

    def describe(self) -> str:
        lhs = ", ".join(format_scalar(c) for c in self.lhs)
        rhs = ", ".join(format_scalar(c) for c in self.rhs)
        return (f"Jacobi fails for x=({', '.join(self.xs)}), y=({', '.join(self.ys)}): "
                f"lhs=[{lhs}] rhs=[{rhs}]")


@dataclass(frozen=True)
class AxiomReport:
    checked: int
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        if self.ok:
            return f"Jacobi identity holds on all {self.checked} basis tuples"
        return "; ".join(v.describe() for v in self.violations[:5])


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 when an entry repeats."""
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] == seq[j]:
                return 0
            if seq[i] > seq[j]:
                s = -s
    return s


def _det(rows: Sequence[Sequence]):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return Matrix(rows).det()


def cached_on_algebra(fn):
    """Memoize ``fn(A, *args)`` on the algebra instance, which is never mutated.

    Arguments must be hashable; calls that raise are not cached.
    """
    key_name = fn.__module__ + "." + fn.__qualname__
    sig = inspect.signature(fn)

    @wraps(fn)
    def wrapper(A, *args, **kwargs):
        memo = A.__dict__.setdefault("_memo", {})
        bound = sig.bind(A, *args, **kwargs)
        bound.apply_defaults()
        key = (key_name,) + tuple(bound.arguments.values())[1:]
        if key not in memo:
            memo[key] = fn(A, *args, **kwargs)
        return memo[key]

    return wrapper


class NLieAlgebra:
    """An n-Lie algebra over the rationals.

    ``structure_constants`` maps strictly increasing index tuples of length
    ``n`` to coefficient vectors of length ``dim``; missing tuples bracket to
    zero.
    """

    def __init__(self, n: int, dim: int,
                 structure_constants: Mapping[Sequence[int], Sequence],
                 basis_names: Sequence[str] | None = None,
                 validate: bool = True):
        if n < 2:
            raise ValueError("arity must be at least 2")
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.n = n
        self.dim = dim
        names = tuple(basis_names) if basis_names is not None else \
            tuple(f"e{i + 1}" for i in range(dim))
        if len(names) != dim or len(set(names)) != dim:
            raise ValueError("basis names must be distinct and match the dimension")
        self.basis_names = names
        consts: dict[tuple[int, ...], Vector] = {}
        for key, value in structure_constants.items():
            key = tuple(key)
            if len(key) != n:
                raise ValueError(f"bracket tuple {key} does not have length {n}")
            if any(not 0 <= k < dim for k in key):
                raise ValueError(f"index out of range in {key}")
            if any(key[i] >= key[i + 1] for i in range(n - 1)):
                raise ValueError(f"bracket tuple {key} is not strictly increasing")
            vec = tuple(scalar(c) for c in value)
            if len(vec) != dim:
                raise DimensionError(f"value of {key} has length {len(vec)}, expected {dim}")
            if any(vec):
                consts[key] = vec
        self.structure_constants = dict(sorted(consts.items()))
        if validate:
            report = check_axioms(self)
            if not report.ok:
                raise AxiomError(report)

    def __repr__(self):
        return f"NLieAlgebra(n={self.n}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, NLieAlgebra):
            return NotImplemented
        return (self.n, self.dim, self.structure_constants) == \
            (other.n, other.dim, other.structure_constants)

    def __hash__(self):
        return hash((self.n, self.dim, tuple(self.structure_constants.items())))

    # -- brackets ---------------------------------------------------------

    def basis_bracket(self, idx: Sequence[int]) -> Vector | None:
        """Bracket of basis vectors by index; None stands for zero."""
        s = permutation_sign(idx)
        if s == 0:
            return None
        vec = self.structure_constants.get(tuple(sorted(idx)))
        if vec is None:
            return None
        return vec if s > 0 else tuple(-c for c in vec)

    def bracket(self, *vectors: Sequence) -> Vector:
        """Multilinear alternating evaluation of the bracket on n vectors."""
        if len(vectors) != self.n:
            raise ContractError(f"bracket takes {self.n} arguments, got {len(vectors)}")
        for v in vectors:
            if len(v) != self.dim:
                raise DimensionError(f"vector of length {len(v)} in a {self.dim}-dim algebra")
        d = self.dim
        out = [ZERO] * d
        for key, val in self.structure_constants.items():
            coeff = _det([[v[k] for k in key] for v in vectors])
            if coeff:
                for i, c in enumerate(val):
                    if c:
                        out[i] += coeff * c
        return tuple(out)

    def vector(self, coeffs: Mapping[str, object]) -> Vector:
        """Vector from a mapping basis name -> coefficient."""
        out = [ZERO] * self.dim
        for name, c in coeffs.items():
            out[self.basis_names.index(name)] = scalar(c)
        return tuple(out)

    def e(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    # -- inner derivations ---------------------------------------------------

    @cached_property
    def ad_generators(self) -> dict[tuple[int, ...], Matrix]:
        """ad(e_J): x -> [e_{j1}, ..., e_{j(n-1)}, x] for increasing J."""
        d = self.dim
        out = {}
        for J in itertools.combinations(range(d), self.n - 1):
            cols = []
            for k in range(d):
                v = self.basis_bracket(J + (k,))
                cols.append(v if v is not None else (ZERO,) * d)
            m = Matrix.from_columns(cols, d)
            if not m.is_zero():
                out[J] = m
        return out

    @cached_property
    def ad_span(self) -> list[Matrix]:
        """Basis of the linear span of all inner derivations, taken among the ad(e_J)."""
        return independent_subset(self.ad_generators.values(), self.dim)

    def ad(self, *vectors: Sequence) -> Matrix:
        """Matrix of x -> [v1, ..., v_{n-1}, x]."""
        if len(vectors) != self.n - 1:
            raise ContractError(f"ad takes {self.n - 1} arguments")
        d = self.dim
        acc = [[ZERO] * d for _ in range(d)]
        for J, m in self.ad_generators.items():
            coeff = _det([[v[k] for k in J] for v in vectors]) if J else ONE
            if coeff:
                for i, row in enumerate(m.rows):
                    a = acc[i]
                    for j, x in enumerate(row):
                        if x:
                            a[j] += coeff * x
        return Matrix._raw(tuple(tuple(r) for r in acc), d)

    @cached_property
    def inner_derivation_algebra(self) -> OperatorAlgebra:
        return close_operator_algebra(self.ad_span, self.dim)

    # -- derived objects -----------------------------------------------------

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace.span(vectors, self.dim)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

def check_axioms(A: NLieAlgebra, max_violations: int = 20) -> AxiomReport:
    """Exhaustive check of the generalised Jacobi identity on basis tuples.

    For every increasing (n-1)-tuple y the operator D = ad(y) must act as a
    derivation on every increasing n-tuple x of basis vectors.  Both sides
    are alternating in x and in y, so increasing tuples are enough.  All y
    are handled at once: column y of ``W[m]`` is D e_m.
    """
    d, n = A.dim, A.n
    tuples = list(itertools.combinations(range(d), n - 1))
    xs = list(itertools.combinations(range(d), n))
    checked = len(tuples) * len(xs)
    gens = A.ad_generators
    if not gens or not xs:
        return AxiomReport(checked)
    cols = list(gens)
    W = [_to_flint([[gens[J].rows[i][m] for J in cols] for i in range(d)], len(cols))
         for m in range(d)]
    violations = []
    for I in xs:
        c = A.structure_constants.get(I)
        lhs = flint.fmpq_mat(d, len(cols))
        if c is not None:
            for m, cm in enumerate(c):
                if cm:
                    lhs += W[m] * flint.fmpq(int(cm.numerator), int(cm.denominator))
        rhs = flint.fmpq_mat(d, len(cols))
        for slot, xi in enumerate(I):
            M = []
            for k in range(d):
                v = A.basis_bracket(I[:slot] + (k,) + I[slot + 1:])
                M.append(v if v is not None else (ZERO,) * d)
            rhs += _to_flint([list(r) for r in zip(*M)], d) * W[xi]
        if lhs == rhs:
            continue
        for t, J in enumerate(cols):
            lv = tuple(_from_fmpq(lhs[i, t]) for i in range(d))
            rv = tuple(_from_fmpq(rhs[i, t]) for i in range(d))
            if lv != rv:
                violations.append(Violation(
                    tuple(A.basis_names[i] for i in I),
                    tuple(A.basis_names[j] for j in J), lv, rv))
                if len(violations) >= max_violations:
                    return AxiomReport(checked, tuple(violations))
    # tuples with ad(y) = 0 satisfy the identity trivially
    return AxiomReport(checked, tuple(violations))


# ---------------------------------------------------------------------------
# subspaces, ideals, series
# ---------------------------------------------------------------------------

def _check_space(A: NLieAlgebra, V: Subspace):
    if V.ambient_dim != A.dim:
        raise DimensionError(f"subspace of Q^{V.ambient_dim} in a {A.dim}-dim algebra")


def subspace_product(A: NLieAlgebra, *spaces: Subspace) -> Subspace:
    """Span of all brackets [v1, ..., vn] with v_i running over bases of V_i."""
    if len(spaces) != A.n:
        raise ContractError(f"product takes {A.n} subspaces")
    for V in spaces:
        _check_space(A, V)
    d = A.dim
    if any(V.is_zero for V in spaces):
        return Subspace.zero(d)
    rest = [V for V in spaces if not V.is_full]
    if not rest:
        return Subspace.span(A.structure_constants.values(), d)
    if len(rest) == 1:
        V = rest[0]
        return Subspace.span((D @ v for D in A.ad_span for v in V.basis), d)
    # group equal slots; antisymmetry lets each group run over combinations
    groups: list[list] = []
    for V in spaces:
        for g in groups:
            if g[0] == V:
                g[1] += 1
                break
        else:
            groups.append([V, 1])
    choices = []
    for V, k in groups:
        combos = list(itertools.combinations(V.basis, k))
        if not combos:
            return Subspace.zero(d)
        choices.append(combos)
    red = RowReducer(d)
    for pick in itertools.product(*choices):
        vecs = [v for combo in pick for v in combo]
        red.add(A.bracket(*vecs))
        if red.rank == d:
            break
    return Subspace(d, red.basis())


@cached_on_algebra
def derived_algebra(A: NLieAlgebra) -> Subspace:
    return Subspace.span(A.structure_constants.values(), A.dim)


def is_perfect(A: NLieAlgebra) -> bool:
    return derived_algebra(A).is_full


def is_ideal(A: NLieAlgebra, V: Subspace) -> bool:
    _check_space(A, V)
    return all(D @ v in V for D in A.ad_span for v in V.basis)


def is_subalgebra(A: NLieAlgebra, V: Subspace) -> bool:
    _check_space(A, V)
    return V.contains(subspace_product(A, *([V] * A.n)))


def is_abelian_ideal(A: NLieAlgebra, V: Subspace) -> bool:
    """Ideal with [V, V, G, ..., G] = 0."""
    if not is_ideal(A, V):
        return False
    G = A.full()
    return subspace_product(A, V, V, *([G] * (A.n - 2))).is_zero


def derived_series(A: NLieAlgebra, I: Subspace) -> list[Subspace]:
    """I = I^(0), I^(1), ... until a term repeats or vanishes."""
    if not is_ideal(A, I):
        raise ContractError("derived series needs an ideal")
    series = [I]
    while not series[-1].is_zero:
        nxt = subspace_product(A, *([series[-1]] * A.n))
        series.append(nxt)
        if nxt == series[-2]:
            break
    return series


def is_solvable(A: NLieAlgebra, I: Subspace) -> bool:
    return derived_series(A, I)[-1].is_zero


def centralizer(A: NLieAlgebra, V: Subspace) -> Subspace:
    """C_G(V) = {x : [x, V, G, ..., G] = 0}."""
    _check_space(A, V)
    d, n = A.dim, A.n
    if V.is_full:
        return center(A)
    rows = []
    for v in V.basis:
        for K in itertools.combinations(range(d), n - 2):
            # matrix of x -> [v, e_K, x]
            acc = [[ZERO] * d for _ in range(d)]
            for i, vi in enumerate(v):
                if not vi:
                    continue
                key = (i,) + K
                s = permutation_sign(key)
                if s == 0:
                    continue
                m = A.ad_generators.get(tuple(sorted(key)))
                if m is None:
                    continue
                c = vi if s > 0 else -vi
                for r, row in enumerate(m.rows):
                    a = acc[r]
                    for j, x in enumerate(row):
                        if x:
                            a[j] += c * x
            rows.extend(acc)
    return Subspace.span(nullspace_vectors(rows, d), d)


@cached_on_algebra
def center(A: NLieAlgebra) -> Subspace:
    rows = [r for D in A.ad_span for r in D.rows]
    return Subspace.span(nullspace_vectors(rows, A.dim), A.dim)


def ideal_generated(A: NLieAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    """Smallest ideal containing the given vectors."""
    V = Subspace.span(vectors, A.dim)
    return V + A.inner_derivation_algebra.apply(V)


def inner_derivations(A: NLieAlgebra) -> OperatorAlgebra:
    """Associative algebra generated by all ad(e_J)."""
    return A.inner_derivation_algebra


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

@cached_on_algebra
def quotient(A: NLieAlgebra, I: Subspace, validate: bool = True) -> tuple[NLieAlgebra, Matrix]:
    """Quotient algebra G/I and the canonical projection G -> G/I.

    The quotient basis is the images of the standard basis vectors at the
    non-pivot positions of I's echelon basis.  Quotienting by zero returns
    A itself.
    """
    if not is_ideal(A, I):
        raise ContractError("quotient needs an ideal")
    if I.is_zero:
        return A, Matrix.identity(A.dim)
    keep = I.non_pivots
    k = len(keep)

    def project(v):
        r = I.reduce(v)
        return tuple(r[j] for j in keep)

    proj = Matrix.from_columns([project(unit_vector(A.dim, i)) for i in range(A.dim)], k) \
        if k else Matrix._raw((), A.dim)
    consts = {}
    for T in itertools.combinations(range(k), A.n):
        v = A.basis_bracket(tuple(keep[t] for t in T))
        if v is not None:
            consts[T] = project(v)
    names = [A.basis_names[j] for j in keep]
    return NLieAlgebra(A.n, k, consts, names, validate=validate), proj


def lift(I: Subspace, v: Sequence) -> Vector:
    """Representative in G of a vector of G/I in the quotient coordinates."""
    out = [ZERO] * I.ambient_dim
    for j, c in zip(I.non_pivots, v):
        out[j] = c
    return tuple(out)


def preimage(I: Subspace, W: Subspace) -> Subspace:
    """Preimage in G of a subspace W of G/I."""
    return Subspace.span(list(I.basis) + [lift(I, w) for w in W.basis], I.ambient_dim)


def direct_sum(A: NLieAlgebra, B: NLieAlgebra, validate: bool = True) -> NLieAlgebra:
    """Block algebra A + B with all mixed brackets zero."""
    if A.n != B.n:
        raise ContractError("direct sum needs equal arity")
    d = A.dim + B.dim
    consts = {}
    for key, v in A.structure_constants.items():
        consts[key] = tuple(v) + (ZERO,) * B.dim
    for key, v in B.structure_constants.items():
        consts[tuple(k + A.dim for k in key)] = (ZERO,) * A.dim + tuple(v)
    names = list(A.basis_names) + list(B.basis_names)
    if len(set(names)) != len(names):
        names = [f"{x}_1" for x in A.basis_names] + [f"{x}_2" for x in B.basis_names]
    return NLieAlgebra(A.n, d, consts, names, validate=validate)


@cached_on_algebra
def restrict(A: NLieAlgebra, V: Subspace, validate: bool = False) -> tuple[NLieAlgebra, Matrix]:
    """Subalgebra V as a standalone algebra, with the embedding (d x k matrix).

    Coordinates are taken relative to V's echelon basis, so restricting to
    the whole space returns A itself.
    """
    if not is_subalgebra(A, V):
        raise ContractError("restriction needs a subalgebra")
    if V.is_full:
        return A, Matrix.identity(A.dim)
    k = V.dim
    consts = {}
    for T in itertools.combinations(range(k), A.n):
        v = A.bracket(*(V.basis[t] for t in T))
        if any(v):
            consts[T] = V.coordinates(v)
    names = tuple(f"b{i + 1}" for i in range(k))
    return NLieAlgebra(A.n, k, consts, names, validate=validate), V.basis_matrix()


def change_basis(A: NLieAlgebra, P: Matrix, validate: bool = False) -> NLieAlgebra:
    """Same algebra in the basis given by the columns of invertible P."""
    Pinv = P.inverse()
    cols = P.columns()
    consts = {}
    for T in itertools.combinations(range(A.dim), A.n):
        v = A.bracket(*(cols[t] for t in T))
        if any(v):
            consts[T] = Pinv @ v
    return NLieAlgebra(A.n, A.dim, consts, A.basis_names, validate=validate)


def abelian(d: int, n: int = 3) -> NLieAlgebra:
    return NLieAlgebra(n, d, {})
