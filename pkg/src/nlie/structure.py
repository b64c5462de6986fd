"""Deep structure of n-Lie algebras and metric n-Lie algebras.

Ideals are exactly the subspaces invariant under the associative algebra E
generated by the inner derivations, so minimal ideals are simple
E-submodules and the socle is the part of G killed by the radical of E.
Splitting into minimal ideals uses rational eigenprojections of elements of
the commutant of E; anything that refuses to split over the rationals is
reported as such and never guessed.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import (
    ZERO,
    Matrix,
    RowReducer,
    Subspace,
    close_operator_algebra,
    commutant,
    lin_comb,
    nullspace_vectors,
    rational_eigenprojection,
    restrict_operator,
    scalar,
    sum_of,
)
from .metric import (
    BilinearForm,
    centroid_matrices,
    gamma_B_matrices,
    is_nondegenerate_subspace,
    perp,
    require_metric,
)
from .nlie_core import (
    ContractError,
    NLieAlgebra,
    cached_on_algebra,
    center,
    derived_algebra,
    is_ideal,
    is_solvable,
    is_subalgebra,
    preimage,
    quotient,
    restrict,
    subspace_product,
)

DEFAULT_SEED = 0


class NotSplitError(RuntimeError):
    """A module refused to split over the rationals where splitting was needed."""


# ---------------------------------------------------------------------------
# module splitting
# ---------------------------------------------------------------------------

ABELIAN = "abelian"
SIMPLE = "simple"


@dataclass(frozen=True)
class MinimalIdealRecord:
    space: Subspace
    kind: str
    in_center: bool
    in_derived: bool

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True)
class MinimalIdeals:
    """Minimal ideals found in a socle, plus the parts that did not split."""

    records: tuple[MinimalIdealRecord, ...]
    residual: tuple[Subspace, ...] = ()

    @property
    def fully_split(self) -> bool:
        return not self.residual

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)


def _image(V: Subspace, P: Matrix) -> Subspace:
    """Image in the ambient space of the operator P written in V's coordinates."""
    Vm = V.basis_matrix()
    return Subspace.span((Vm @ c for c in P.columns()), V.ambient_dim)


def _candidates(basis: Sequence[Matrix], rng: random.Random, k: int, extra: int = 6):
    yield from basis
    if len(basis) < 2:
        return
    flats = [b.flat() for b in basis]
    for _ in range(extra):
        coeffs = [scalar(rng.randint(-3, 3)) for _ in basis]
        yield Matrix.from_flat(lin_comb(coeffs, flats, k * k), k)
    for a, b in itertools.islice(itertools.combinations(basis, 2), 10):
        yield a @ b


def split_invariant_subspace(gens: Sequence[Matrix], V: Subspace,
                             rng: random.Random) -> tuple[list[Subspace], list[Subspace]]:
    """Split an invariant semisimple subspace into irreducible pieces.

    Returns (certified irreducible pieces, pieces that did not split).  A
    piece is certified when the commutant of the generators restricted to
    it is one-dimensional, i.e. it is absolutely irreducible.
    """
    if V.is_zero:
        return [], []
    k = V.dim
    ops = [restrict_operator(g, V) for g in gens]
    comm = commutant(ops, k)
    if len(comm) == 1:
        return [V], []
    for c in _candidates(comm, rng, k):
        parts = rational_eigenprojection(c)
        if len(parts) > 1:
            done, left = [], []
            for _, P in parts:
                a, b = split_invariant_subspace(gens, _image(V, P), rng)
                done += a
                left += b
            return done, left
    return [], [V]


def _is_cyclic_everywhere(E, W: Subspace) -> bool:
    return all(E.cyclic(v) == W for v in W.basis)


# ---------------------------------------------------------------------------
# socle and minimal ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SocleResult:
    space: Subspace
    certified: bool
    module_socle: Subspace


@cached_on_algebra
def module_socle(A: NLieAlgebra) -> Subspace:
    """Sum of all simple E-submodules: vectors killed by the radical of E."""
    E = A.inner_derivation_algebra
    if not E.radical_is_nilpotent():
        raise ArithmeticError("trace-form radical contains a non-nilpotent element")
    return E.annihilated(E.radical_basis)


@cached_on_algebra
def socle(A: NLieAlgebra, form: BilinearForm | None = None,
          seed: int = DEFAULT_SEED) -> SocleResult:
    """Sum of minimal ideals, with Soc = 0 for simple or one-dimensional G."""
    mod = module_socle(A)
    if A.dim <= 1:
        return SocleResult(Subspace.zero(A.dim), True, mod)
    try:
        simple = is_simple(A, seed)
    except NotSplitError:
        return SocleResult(mod, False, mod)
    if simple:
        return SocleResult(Subspace.zero(A.dim), True, mod)
    return SocleResult(mod, True, mod)


@cached_on_algebra
def find_minimal_ideals(A: NLieAlgebra, soc: Subspace,
                        seed: int = DEFAULT_SEED) -> MinimalIdeals:
    """Decompose a socle into minimal ideals.

    Central vectors give one abelian line per echelon basis vector; the rest
    is split by eigenprojections of commutant elements.
    """
    rng = random.Random(seed)
    d = A.dim
    E = A.inner_derivation_algebra
    C = center(A)
    derived = derived_algebra(A)
    central = soc & C
    nontrivial = E.apply(soc)
    pieces, residual = split_invariant_subspace(A.ad_span, nontrivial, rng)
    records = []
    G = A.full()
    for v in central.basis:
        line = Subspace.span([v], d)
        records.append(MinimalIdealRecord(line, ABELIAN, True, line <= derived))
    for W in sorted(pieces, key=lambda s: (s.pivots, s.basis)):
        if not _is_cyclic_everywhere(E, W):
            residual.append(W)
            continue
        abelian = subspace_product(A, W, W, *([G] * (A.n - 2))).is_zero
        records.append(MinimalIdealRecord(W, ABELIAN if abelian else SIMPLE,
                                          W <= C, W <= derived))
    return MinimalIdeals(tuple(records), tuple(residual))


def m_count(A: NLieAlgebra, seed: int = DEFAULT_SEED) -> int:
    soc = socle(A, seed=seed)
    mins = find_minimal_ideals(A, soc.space, seed)
    if not mins.fully_split or not soc.certified:
        raise NotSplitError("socle does not split into minimal ideals over Q")
    return len(mins)


# ---------------------------------------------------------------------------
# simplicity and radical
# ---------------------------------------------------------------------------

@cached_on_algebra
def is_simple(A: NLieAlgebra, seed: int = DEFAULT_SEED) -> bool:
    """G^1 != 0 and the only ideals are 0 and G."""
    if A.dim <= 1 or derived_algebra(A).is_zero:
        return False
    E = A.inner_derivation_algebra
    if E.radical_basis:
        return False
    if len(centroid_matrices(A)) == 1:
        return True
    pieces, residual = split_invariant_subspace(A.ad_span, A.full(), random.Random(seed))
    if residual:
        raise NotSplitError("adjoint module does not split over Q")
    return len(pieces) == 1


def _solvable_socle_part(A: NLieAlgebra, seed: int) -> Subspace:
    mins = find_minimal_ideals(A, module_socle(A), seed)
    if not mins.fully_split:
        raise NotSplitError("radical undecided over Q")
    return sum_of((r.space for r in mins if is_solvable(A, r.space)), A.dim)


def _radical(A: NLieAlgebra, seed: int) -> Subspace:
    if A.dim == 0:
        return Subspace.zero(0)
    if A.dim == 1:
        return A.full()
    I = _solvable_socle_part(A, seed)
    if I.is_zero:
        return I
    if I.is_full:
        return I
    Q, _ = quotient(A, I, validate=False)
    return preimage(I, _radical(Q, seed))


@dataclass(frozen=True)
class RadicalResult:
    space: Subspace
    is_ideal: bool
    is_solvable: bool
    quotient_clean: bool

    @property
    def certified(self) -> bool:
        return self.is_ideal and self.is_solvable and self.quotient_clean


@cached_on_algebra
def radical_with_certificate(A: NLieAlgebra, seed: int = DEFAULT_SEED) -> RadicalResult:
    R = _radical(A, seed)
    ideal = is_ideal(A, R)
    solv = ideal and is_solvable(A, R)
    if R.is_full or not ideal:
        clean = ideal
    else:
        Q, _ = quotient(A, R, validate=False)
        # a one-dimensional quotient would itself be solvable
        clean = Q.dim > 1 and _solvable_socle_part(Q, seed).is_zero
    return RadicalResult(R, ideal, solv, clean)


def radical(A: NLieAlgebra, seed: int = DEFAULT_SEED) -> Subspace:
    """Maximal solvable ideal, by peeling off solvable minimal ideals."""
    res = radical_with_certificate(A, seed)
    if not res.certified:
        raise AssertionError("radical certificate failed")
    return res.space


# ---------------------------------------------------------------------------
# strong semisimple ideals
# ---------------------------------------------------------------------------

@cached_on_algebra
def _module_minimal_ideals(A: NLieAlgebra, seed: int) -> MinimalIdeals:
    mins = find_minimal_ideals(A, module_socle(A), seed)
    if not mins.fully_split:
        raise NotSplitError("socle does not split into minimal ideals over Q")
    return mins


def simple_ideals(A: NLieAlgebra, seed: int = DEFAULT_SEED) -> list[Subspace]:
    """All simple ideals of G (the non-abelian minimal E-submodules of G)."""
    return [r.space for r in _module_minimal_ideals(A, seed) if r.kind == SIMPLE]


@cached_on_algebra
def strong_semisimple_part(A: NLieAlgebra, seed: int = DEFAULT_SEED) -> Subspace:
    return sum_of(simple_ideals(A, seed), A.dim)


def is_strong_semisimple(A: NLieAlgebra, seed: int = DEFAULT_SEED) -> bool:
    """G is a direct sum of simple ideals (the zero algebra counts)."""
    if A.dim == 0:
        return True
    return strong_semisimple_part(A, seed).is_full


@dataclass(frozen=True)
class StrongSemisimpleResult:
    space: Subspace
    nondegenerate: bool
    splits: bool


def max_strong_semisimple_ideal(A: NLieAlgebra, form: BilinearForm,
                                seed: int = DEFAULT_SEED) -> StrongSemisimpleResult:
    """S(G), the sum of all simple ideals, with the check G = S(G) + S(G)^perp."""
    require_metric(A, form)
    S = strong_semisimple_part(A, seed)
    nondeg = is_nondegenerate_subspace(form, S)
    Sp = perp(form, S)
    splits = (S & Sp).is_zero and (S + Sp).is_full
    return StrongSemisimpleResult(S, nondeg, splits)


# ---------------------------------------------------------------------------
# B-irreducible decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    space: Subspace
    algebra: NLieAlgebra
    form: BilinearForm
    certified: bool = True

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True)
class Decomposition:
    components: tuple[Component, ...]

    @property
    def fully_split(self) -> bool:
        return all(c.certified for c in self.components)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sorted(c.dim for c in self.components))

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


def _anisotropic_central(A: NLieAlgebra, form: BilinearForm):
    C = center(A)
    vecs = list(C.basis)
    for v in vecs:
        if form(v, v):
            return v
    for u, v in itertools.combinations(vecs, 2):
        w = tuple(a + b for a, b in zip(u, v))
        if form(w, w):
            return w
    return None


def is_local_algebra(mats: Sequence[Matrix], d: int) -> bool:
    """The algebra generated by ``mats`` and the identity modulo its radical is Q."""
    alg = close_operator_algebra(list(mats) + [Matrix.identity(d)], d)
    return alg.dim - len(alg.radical_basis) == 1


def _split_metric(A: NLieAlgebra, form: BilinearForm, rng: random.Random):
    """Pairs (subspace in A's coordinates, certified) of B-irreducible pieces."""
    d = A.dim
    if d <= 1:
        return [(A.full(), True)]
    x = _anisotropic_central(A, form)
    pieces = None
    if x is not None:
        line = Subspace.span([x], d)
        pieces = [line, perp(form, line)]
    else:
        gb = gamma_B_matrices(A, form)
        if len(gb) > 1:
            for c in _candidates(gb, rng, d):
                parts = rational_eigenprojection(c)
                if len(parts) > 1:
                    pieces = [Subspace.span(P.columns(), d) for _, P in parts]
                    break
        if pieces is None:
            return [(A.full(), len(gb) == 1 or is_local_algebra(gb, d))]
    out = []
    for V in pieces:
        sub, emb = restrict(A, V)
        for W, ok in _split_metric(sub, form.restrict(V), rng):
            out.append((W.transform(emb), ok))
    return out


@cached_on_algebra
def b_irreducible_decomposition(A: NLieAlgebra, form: BilinearForm,
                                seed: int = DEFAULT_SEED) -> Decomposition:
    """Orthogonal decomposition into B-irreducible nondegenerate ideals."""
    require_metric(A, form)
    rng = random.Random(seed)
    parts = _split_metric(A, form, rng)
    parts.sort(key=lambda p: (-p[0].dim, p[0].pivots, p[0].basis))
    comps = []
    for V, ok in parts:
        sub, _ = restrict(A, V)
        comps.append(Component(V, sub, form.restrict(V), ok))
    dec = Decomposition(tuple(comps))
    if not decomposition_is_orthogonal(A, form, dec):
        raise AssertionError("decomposition failed its orthogonality check")
    return dec


def decomposition_is_orthogonal(A: NLieAlgebra, form: BilinearForm, dec: Decomposition) -> bool:
    spaces = [c.space for c in dec]
    if sum_of(spaces, A.dim) != A.full() or sum(s.dim for s in spaces) != A.dim:
        return False
    G = A.full()
    for U, V in itertools.combinations(spaces, 2):
        if any(form(u, v) for u in U.basis for v in V.basis):
            return False
        if not subspace_product(A, U, V, *([G] * (A.n - 2))).is_zero:
            return False
    return all(is_ideal(A, s) for s in spaces)


def is_B_irreducible(A: NLieAlgebra, form: BilinearForm, seed: int = DEFAULT_SEED) -> bool:
    dec = b_irreducible_decomposition(A, form, seed)
    if not dec.fully_split:
        raise NotSplitError("B-irreducibility undecided over Q")
    return len(dec) == 1


# ---------------------------------------------------------------------------
# Levi data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeviCheck:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


@cached_on_algebra
def verify_levi(A: NLieAlgebra, S: Subspace, R: Subspace,
                seed: int = DEFAULT_SEED) -> LeviCheck:
    """G = S + R with S a strong semisimple subalgebra and R the radical."""
    reasons = []
    if not is_subalgebra(A, S):
        reasons.append("S is not a subalgebra")
    else:
        sub, _ = restrict(A, S)
        if not is_strong_semisimple(sub, seed):
            reasons.append("S is not strong semisimple")
    try:
        if radical(A, seed) != R:
            reasons.append("R is not the radical")
    except NotSplitError:
        reasons.append("radical undecided over Q")
    if not (S & R).is_zero or not (S + R).is_full:
        reasons.append("S and R are not complementary")
    return LeviCheck(not reasons, tuple(reasons))


def default_levi(A: NLieAlgebra, R: Subspace) -> Subspace | None:
    """The Levi factor when it is forced: G if R = 0, and 0 if G is solvable."""
    if R.is_zero:
        return A.full()
    if R.is_full:
        return Subspace.zero(A.dim)
    return None


def _tuple_ads(A: NLieAlgebra, S: Subspace) -> list[Matrix]:
    return [A.ad(*combo) for combo in itertools.combinations(S.basis, A.n - 1)]


@cached_on_algebra
def simple_factors(A: NLieAlgebra, S: Subspace, seed: int = DEFAULT_SEED) -> list[Subspace]:
    """Simple ideals of the subalgebra S, in ambient coordinates."""
    if S.is_zero:
        return []
    sub, emb = restrict(A, S)
    return sorted((W.transform(emb) for W in simple_ideals(sub, seed)),
                  key=lambda s: (s.pivots, s.basis))


def _solve_intertwiner(A: NLieAlgebra, form: BilinearForm, S: Subspace, Si: Subspace,
                       others: Sequence[Subspace], R: Subspace, Rp: Subspace,
                       ads: Sequence[Matrix]) -> list[Matrix]:
    d = A.dim
    nv = d * d
    M = form.gram
    red = RowReducer(nv)

    def var(a, b):
        return a * d + b

    def kill(v):
        # X v = 0
        for a in range(d):
            row = [ZERO] * nv
            for b, x in enumerate(v):
                if x:
                    row[var(a, b)] = x
            red.add(row)

    for r in R.basis:
        kill(r)
    for Sj in others:
        for s in Sj.basis:
            kill(s)
    ann = Rp.annihilator().basis
    for s in Si.basis:
        for nrow in ann:
            row = [ZERO] * nv
            for a, na in enumerate(nrow):
                if na:
                    for b, x in enumerate(s):
                        if x:
                            row[var(a, b)] += na * x
            red.add(row)
    for D in ads:
        for s in S.basis:
            Ds = D @ s
            # (X D s)_a - (D X s)_a = 0
            for a in range(d):
                row = [ZERO] * nv
                for b, x in enumerate(Ds):
                    if x:
                        row[var(a, b)] += x
                for c, dac in enumerate(D.rows[a]):
                    if dac:
                        for b, x in enumerate(s):
                            if x:
                                row[var(c, b)] -= dac * x
                red.add(row)
    for x, y in itertools.combinations_with_replacement(S.basis, 2):
        My, Mx = M @ y, M @ x
        row = [ZERO] * nv
        for a in range(d):
            for b in range(d):
                row[var(a, b)] = x[b] * My[a] - y[b] * Mx[a]
        red.add(row)
    rows = [tuple(r) for r, _ in red._rows.values()]
    return [Matrix.from_flat(v, d) for v in Subspace.span(nullspace_vectors(rows, nv), nv).basis]


@dataclass(frozen=True)
class Intertwiners:
    maps: tuple[Matrix, ...]
    solution_dims: tuple[int, ...]
    injective: tuple[bool, ...]
    in_gamma_B: tuple[bool, ...]
    dual_dim_ok: bool
    pairing_injective: bool

    @property
    def ok(self) -> bool:
        return (self.dual_dim_ok and self.pairing_injective and all(self.injective)
                and all(self.in_gamma_B))


@cached_on_algebra
def find_intertwiners(A: NLieAlgebra, form: BilinearForm, S: Subspace,
                      seed: int = DEFAULT_SEED) -> Intertwiners:
    """Self-adjoint S-module maps S -> R^perp, one per simple factor of S.

    Each map vanishes on R and on the other simple factors; extended by zero
    on R it is an element of Gamma_B.
    """
    require_metric(A, form)
    R = radical(A, seed)
    check = verify_levi(A, S, R, seed)
    if not check:
        raise ContractError("Levi verification failed: " + "; ".join(check.reasons))
    Rp = perp(form, R)
    dual_ok = Rp.dim == S.dim
    pairing_ok = (Rp & perp(form, S)).is_zero
    factors = simple_factors(A, S, seed)
    ads = _tuple_ads(A, S) if factors else []
    rng = random.Random(seed)
    gb = gamma_B_matrices(A, form)
    gb_red = RowReducer(A.dim ** 2, (m.flat() for m in gb))
    maps, dims, inj, ingb = [], [], [], []
    for i, Si in enumerate(factors):
        others = factors[:i] + factors[i + 1:]
        sols = _solve_intertwiner(A, form, S, Si, others, R, Rp, ads)
        dims.append(len(sols))
        chosen = None
        cands = list(sols)
        flats = [m.flat() for m in sols]
        for _ in range(8 if sols else 0):
            coeffs = [scalar(rng.randint(-3, 3)) for _ in sols]
            cands.append(Matrix.from_flat(lin_comb(coeffs, flats, A.dim ** 2), A.dim))
        for X in cands:
            if Si.transform(X).dim == Si.dim:
                chosen = X
                break
        inj.append(chosen is not None)
        if chosen is None:
            chosen = sols[0] if sols else Matrix.zeros(A.dim)
        maps.append(chosen)
        ingb.append(gb_red.contains(chosen.flat()))
    return Intertwiners(tuple(maps), tuple(dims), tuple(inj), tuple(ingb), dual_ok, pairing_ok)
