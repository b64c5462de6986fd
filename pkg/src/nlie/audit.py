"""Machine checks of structural identities for metric n-Lie algebras.

Every check evaluates its hypotheses exactly and reports one of ``pass``,
``fail``, ``not-applicable`` or ``not-split``; the last marks checks that
needed a splitting the rationals do not provide.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .exact_linalg import (
    Matrix,
    RowReducer,
    Subspace,
    close_operator_algebra,
    format_scalar,
    rational_eigenprojection,
    restrict_operator,
    sum_of,
)
from .metric import (
    BilinearForm,
    centroid_matrices,
    check_invariance,
    d_operator,
    gamma_B_matrices,
    invariant_form_space,
    is_nondegenerate_subspace,
    metric_dimension,
    perp,
)
from .nlie_core import (
    NLieAlgebra,
    center,
    centralizer,
    check_axioms,
    derived_algebra,
    derived_series,
    ideal_generated,
    is_ideal,
    quotient,
    restrict,
    subspace_product,
)
from .structure import (
    ABELIAN,
    DEFAULT_SEED,
    SIMPLE,
    NotSplitError,
    _anisotropic_central,
    _candidates,
    b_irreducible_decomposition,
    decomposition_is_orthogonal,
    default_levi,
    find_intertwiners,
    find_minimal_ideals,
    is_B_irreducible,
    is_local_algebra,
    is_simple,
    is_strong_semisimple,
    module_socle,
    radical_with_certificate,
    socle,
    strong_semisimple_part,
    verify_levi,
)

PASS = "pass"
FAIL = "fail"
NA = "not-applicable"
NOT_SPLIT = "not-split"


@dataclass(frozen=True)
class CheckResult:
    check: str
    status: str
    detail: str = ""


class Analysis:
    """Lazily computed invariants of (G, B), shared by all checks."""

    def __init__(self, A: NLieAlgebra, form: BilinearForm | None, seed: int = DEFAULT_SEED,
                 levi: Subspace | None = None, extra_forms: tuple[BilinearForm, ...] = ()):
        self.A = A
        self.form = form
        self.seed = seed
        self.given_levi = levi
        self.extra_forms = tuple(extra_forms)

    @property
    def d(self) -> int:
        return self.A.dim

    @property
    def G(self) -> Subspace:
        return self.A.full()

    def rng(self, salt: int) -> random.Random:
        return random.Random(self.seed * 1000 + salt)

    @cached_property
    def center(self) -> Subspace:
        return center(self.A)

    @cached_property
    def derived(self) -> Subspace:
        return derived_algebra(self.A)

    @cached_property
    def simple(self) -> bool:
        return is_simple(self.A, self.seed)

    @cached_property
    def socle(self):
        return socle(self.A, self.form, self.seed)

    @cached_property
    def minimal(self):
        soc = self.socle
        mins = find_minimal_ideals(self.A, soc.space, self.seed)
        if not soc.certified or not mins.fully_split:
            raise NotSplitError("socle does not split over Q")
        return mins.records

    @cached_property
    def module_minimal(self):
        mins = find_minimal_ideals(self.A, module_socle(self.A), self.seed)
        if not mins.fully_split:
            raise NotSplitError("socle does not split over Q")
        return mins.records

    @property
    def m_count(self) -> int:
        return len(self.minimal)

    @cached_property
    def radical_result(self):
        return radical_with_certificate(self.A, self.seed)

    @property
    def R(self) -> Subspace:
        return self.radical_result.space

    @cached_property
    def R_perp(self) -> Subspace:
        return perp(self.form, self.R)

    @cached_property
    def C_R(self) -> Subspace:
        return centralizer(self.A, self.R)

    @cached_property
    def S_G(self) -> Subspace:
        return strong_semisimple_part(self.A, self.seed)

    @cached_property
    def levi(self) -> Subspace | None:
        if self.given_levi is not None:
            return self.given_levi
        return default_levi(self.A, self.R)

    @cached_property
    def centroid(self) -> list[Matrix]:
        return centroid_matrices(self.A)

    @cached_property
    def gamma_B(self) -> list[Matrix]:
        return gamma_B_matrices(self.A, self.form)

    @cached_property
    def form_space(self) -> list[BilinearForm]:
        return invariant_form_space(self.A)

    @cached_property
    def metric_dim(self):
        return metric_dimension(self.A, self.form)

    @cached_property
    def decomposition(self):
        dec = b_irreducible_decomposition(self.A, self.form, self.seed)
        if not dec.fully_split:
            raise NotSplitError("decomposition undecided over Q")
        return dec

    @property
    def b_irreducible(self) -> bool:
        return len(self.decomposition) == 1

    @cached_property
    def ideals(self) -> list[Subspace]:
        """Ideals used as test cases: characteristic ones plus seeded random ones."""
        out = [Subspace.zero(self.d), self.G, self.center, self.derived]
        for attr in ("R", "R_perp", "C_R", "S_G"):
            try:
                out.append(getattr(self, attr))
            except NotSplitError:
                pass
        for attr in ("minimal", "module_minimal"):
            try:
                out.extend(r.space for r in getattr(self, attr))
            except NotSplitError:
                pass
        try:
            out.extend(c.space for c in self.decomposition)
        except NotSplitError:
            pass
        try:
            out.extend(derived_series(self.A, self.R))
        except NotSplitError:
            pass
        rng = self.rng(1)
        for _ in range(3):
            out.append(ideal_generated(self.A, [self.G.random_vector(rng, -2, 2)]))
        uniq = []
        for s in out:
            if s not in uniq:
                uniq.append(s)
        return [s for s in uniq if is_ideal(self.A, s)]

    def random_subspaces(self, salt: int, count: int) -> list[Subspace]:
        rng = self.rng(salt)
        out = []
        for _ in range(count):
            k = rng.randint(1, max(1, self.d - 1))
            out.append(Subspace.span((self.G.random_vector(rng, -2, 2) for _ in range(k)),
                                     self.d))
        return out


def _fmt_space(V: Subspace) -> str:
    return "[" + "; ".join(" ".join(format_scalar(x) for x in b) for b in V.basis) + "]"


def _verdict(ok: bool, detail: str = "", fail_detail: str | None = None):
    return (PASS, detail) if ok else (FAIL, fail_detail if fail_detail is not None else detail)


def _ops_agree_on(A: NLieAlgebra, ops_a, ops_b, V: Subspace) -> bool:
    """Operator sets generate the same unital algebra on the invariant space V."""
    k = V.dim
    if k == 0:
        return True
    I = Matrix.identity(k)

    def enveloping(ops):
        if V.is_full and ops is A.ad_span:
            return close_operator_algebra(list(A.inner_derivation_algebra.span_basis) + [I], k)
        return close_operator_algebra([restrict_operator(m, V) for m in ops] + [I], k)

    alg_a, alg_b = enveloping(ops_a), enveloping(ops_b)
    return alg_a.dim == alg_b.dim and all(alg_a.contains(m) for m in alg_b.span_basis)


# ---------------------------------------------------------------------------
# individual checks; each returns (status, detail)
# ---------------------------------------------------------------------------

def chk_jacobi(an: Analysis):
    rep = check_axioms(an.A)
    return _verdict(rep.ok, f"{rep.checked} basis tuples", rep.describe())


def chk_invariance(an: Analysis):
    inv = check_invariance(an.A, an.form)
    nondeg = an.form.is_nondegenerate()
    return _verdict(inv and nondeg, "invariant and nondegenerate",
                    f"invariant={inv} nondegenerate={nondeg}")


def chk_derived_perp(an: Analysis):
    lhs = perp(an.form, an.derived)
    return _verdict(lhs == an.center, f"dim C(G) = {an.center.dim}",
                    f"derived^perp={_fmt_space(lhs)} center={_fmt_space(an.center)}")


def chk_perp_product(an: Analysis):
    G = an.G
    for I in an.ideals:
        lhs = perp(an.form, subspace_product(an.A, I, *([G] * (an.A.n - 1))))
        rhs = centralizer(an.A, I)
        if lhs != rhs:
            return FAIL, f"I={_fmt_space(I)}: perp={_fmt_space(lhs)} centralizer={_fmt_space(rhs)}"
    return PASS, f"{len(an.ideals)} ideals"


def chk_perfect_complement(an: Analysis):
    ideals = an.ideals
    tested = 0
    for I, Y in itertools.permutations(ideals, 2):
        if I.is_zero or Y.is_zero or not (I & Y).is_zero or not (I + Y).is_full:
            continue
        if subspace_product(an.A, *([I] * an.A.n)) != I:
            continue
        tested += 1
        if not is_nondegenerate_subspace(an.form, I):
            return FAIL, f"perfect summand {_fmt_space(I)} is degenerate"
    simple = [r.space for r in an.module_minimal if r.kind == SIMPLE]
    for J in simple + ([an.S_G] if not an.S_G.is_zero else []):
        tested += 1
        if not is_nondegenerate_subspace(an.form, J):
            return FAIL, f"strong semisimple ideal {_fmt_space(J)} is degenerate"
    if not tested:
        return NA, "no perfect direct summand or strong semisimple ideal"
    return PASS, f"{tested} cases"


def chk_nondegenerate_splits(an: Analysis):
    tested = 0
    for I in an.ideals:
        if not is_nondegenerate_subspace(an.form, I):
            continue
        tested += 1
        Ip = perp(an.form, I)
        if not ((I & Ip).is_zero and (I + Ip).is_full):
            return FAIL, f"I={_fmt_space(I)} does not split off"
    return PASS, f"{tested} nondegenerate ideals"


def chk_perfect_centerless(an: Analysis):
    perfect = an.derived.is_full
    return _verdict(perfect == an.center.is_zero,
                    f"perfect={perfect} center_dim={an.center.dim}")


def chk_lemma_perp_criterion(an: Analysis):
    A, n, d = an.A, an.A.n, an.d
    rng = an.rng(2)
    trials = 0
    for t in range(6):
        Ws = [Subspace.span([an.G.random_vector(rng, -2, 2)
                             for _ in range(rng.randint(1, 2))], d) for _ in range(n)]
        P = subspace_product(A, *Ws)
        Pp = perp(an.form, P)
        if t % 2 and not Pp.is_zero:
            x = Pp.random_vector(rng, -2, 2)
        else:
            x = an.G.random_vector(rng, -2, 2)
        if not any(x):
            continue
        trials += 1
        lhs = x in Pp
        X = Subspace.span([x], d)
        rhs = all(perp(an.form, Ws[i]).contains(
            subspace_product(A, *(Ws[:i] + [X] + Ws[i + 1:]))) for i in range(n))
        if lhs != rhs:
            return FAIL, f"x={x}: in perp={lhs} slotwise={rhs}"
    return PASS, f"{trials} random trials"


def chk_orthogonal_decomposition(an: Analysis):
    dec = an.decomposition
    ok = decomposition_is_orthogonal(an.A, an.form, dec) and all(
        is_nondegenerate_subspace(an.form, c.space) for c in dec)
    return _verdict(ok, f"component dims {list(dec.dims)}")


def chk_indecomposable(an: Analysis):
    if not an.b_irreducible:
        return NA, "not B-irreducible"
    gam = an.centroid
    if is_local_algebra(gam, an.d):
        return PASS, f"centroid (dim {len(gam)}) is local"
    for c in _candidates(gam, an.rng(3), an.d):
        parts = rational_eigenprojection(c)
        if len(parts) > 1:
            return FAIL, f"centroid idempotent splits G into dims {[p.rank() for _, p in parts]}"
    raise NotSplitError("centroid neither local nor split over Q")


def chk_metric_independent(an: Analysis):
    if not an.extra_forms:
        return NA, "single metric"
    base = an.b_irreducible
    for f in an.extra_forms:
        other = is_B_irreducible(an.A, f, an.seed)
        if other != base:
            return FAIL, f"B-irreducible {base} vs {other}"
    return PASS, f"{len(an.extra_forms) + 1} metrics agree"


def chk_invertible_spans(an: Analysis):
    md = an.metric_dim
    if md.witness is None:
        return FAIL, (md.warning or "") + f"; det polynomial {md.det_polynomial}"
    red = RowReducer(an.d ** 2, (m.flat() for m in md.spanning_invertibles))
    return _verdict(red.rank == md.value and md.warning is None,
                    f"witness coefficients {list(md.coefficients)}",
                    md.warning or f"invertibles span {red.rank} of {md.value}")


def chk_form_operator(an: Analysis):
    gb = RowReducer(an.d ** 2, (m.flat() for m in an.gamma_B))
    ops = []
    for K in an.form_space:
        D = d_operator(an.A, an.form, K).matrix
        if not gb.contains(D.flat()):
            return FAIL, "form operator outside Gamma_B"
        if D.T @ an.form.gram != K.gram:
            return FAIL, "form operator does not reproduce the form"
        ops.append(D)
    rank = RowReducer(an.d ** 2, (m.flat() for m in ops)).rank
    ident = d_operator(an.A, an.form, an.form).matrix == Matrix.identity(an.d)
    return _verdict(rank == len(an.form_space) and ident, f"{rank} independent operators")


def chk_metric_dim_equality(an: Analysis):
    a, b = len(an.form_space), len(an.gamma_B)
    return _verdict(a == b, f"dim F = {a}, dim Gamma_B = {b}")


def chk_ideal_perp(an: Analysis):
    cases = an.ideals + an.random_subspaces(4, 6)
    for W in cases:
        lhs = is_ideal(an.A, W)
        rhs = centralizer(an.A, W).contains(perp(an.form, W))
        if lhs != rhs:
            return FAIL, f"W={_fmt_space(W)}: ideal={lhs} perp-in-centralizer={rhs}"
    return PASS, f"{len(cases)} subspaces"


def _one_dim_ideals(an: Analysis) -> list[Subspace]:
    lines = [Subspace.span([v], an.d) for v in an.center.basis]
    x = _anisotropic_central(an.A, an.form)
    if x is not None:
        lines.append(Subspace.span([x], an.d))
    lines += [r.space for r in an.module_minimal if r.dim == 1]
    return [L for L in lines if is_ideal(an.A, L)]


def chk_nondeg_lines(an: Analysis):
    lines = _one_dim_ideals(an)
    tested = 0
    for L in lines:
        if form_val(an, L):
            tested += 1
            if not an.center.contains(L):
                return FAIL, f"nondegenerate line {_fmt_space(L)} is not central"
    return PASS, f"{tested} nondegenerate one-dimensional ideals"


def form_val(an: Analysis, L: Subspace):
    v = L.basis[0]
    return an.form(v, v)


def chk_isotropic_center(an: Analysis):
    iso = perp(an.form, an.center).contains(an.center)
    nondeg_line = any(form_val(an, L) for L in _one_dim_ideals(an))
    return _verdict(iso == (not nondeg_line),
                    f"center isotropic={iso}, nondegenerate line={nondeg_line}")


def chk_centralizer_splitting(an: Analysis):
    C, Rp = an.center, an.R_perp
    ok = (C & Rp).is_zero and (C + Rp) == an.C_R
    return _verdict(ok, f"dim C_G(R) = {an.C_R.dim} = {C.dim} + {Rp.dim}",
                    f"C_G(R)={_fmt_space(an.C_R)} C={_fmt_space(C)} R^perp={_fmt_space(Rp)}")


def chk_coisotropic_radical(an: Analysis):
    no_ss = an.S_G.is_zero
    cois = an.R.contains(an.R_perp)
    return _verdict(no_ss == cois, f"no strong semisimple ideal={no_ss}, R coisotropic={cois}")


def chk_levi_onto_perp(an: Analysis):
    S = an.levi
    if S is None:
        return NA, "Levi factor not supplied"
    lhs = subspace_product(an.A, *([S] * (an.A.n - 1)), an.R_perp)
    return _verdict(lhs == an.R_perp, f"dim R^perp = {an.R_perp.dim}",
                    f"[S..S,R^perp]={_fmt_space(lhs)} R^perp={_fmt_space(an.R_perp)}")


def chk_levi(an: Analysis):
    S = an.levi
    if S is None:
        return NA, "Levi factor not supplied"
    res = verify_levi(an.A, S, an.R, an.seed)
    return _verdict(res.ok, f"dim S = {S.dim}, dim R = {an.R.dim}", "; ".join(res.reasons))


def chk_dual_module(an: Analysis):
    S = an.levi
    if S is None:
        return NA, "Levi factor not supplied"
    res = find_intertwiners(an.A, an.form, S, an.seed)
    return _verdict(res.dual_dim_ok and res.pairing_injective,
                    f"dim R^perp = dim S = {S.dim}",
                    f"dim match={res.dual_dim_ok} pairing injective={res.pairing_injective}")


def chk_intertwiners(an: Analysis):
    S = an.levi
    if S is None:
        return NA, "Levi factor not supplied"
    if S.is_zero:
        return NA, "Levi factor is zero"
    res = find_intertwiners(an.A, an.form, S, an.seed)
    return _verdict(res.ok and len(res.maps) > 0,
                    f"{len(res.maps)} factors, solution dims {list(res.solution_dims)}",
                    f"injective={list(res.injective)} in Gamma_B={list(res.in_gamma_B)}")


def chk_levi_modules(an: Analysis):
    if not an.S_G.is_zero:
        return NA, "has strong semisimple ideals"
    S = an.levi
    if S is None:
        return NA, "Levi factor not supplied"
    CR = an.C_R
    for r in an.minimal:
        if not CR.contains(r.space):
            return FAIL, f"minimal ideal {_fmt_space(r.space)} not in C_G(R)"
    s_ops = [an.A.ad(*c) for c in itertools.combinations(S.basis, an.A.n - 1)]
    same = _ops_agree_on(an.A, s_ops, an.A.ad_span, CR)
    return _verdict(same, f"{len(an.minimal)} minimal ideals in C_G(R)",
                    "S-submodules of C_G(R) differ from ideals")


def chk_lower_bound(an: Analysis):
    if not an.b_irreducible:
        return NA, "not B-irreducible"
    md = an.metric_dim.value
    return _verdict(md >= an.m_count + 1, f"{md} >= {an.m_count} + 1")


def chk_center_bound(an: Analysis):
    if an.d <= 1:
        return NA, "dim G = 1"
    md = an.metric_dim.value
    return _verdict(md >= an.center.dim + 1, f"{md} >= {an.center.dim} + 1")


def chk_decomposition_bound(an: Analysis):
    if an.d <= 1:
        return NA, "dim G = 1"
    md = an.metric_dim.value
    parts = []
    for c in an.decomposition:
        sub = an if len(an.decomposition) == 1 else Analysis(c.algebra, c.form, an.seed)
        parts.append((sub.metric_dim.value, sub.m_count))
    s_md = sum(p[0] for p in parts)
    s_m = len(parts) + sum(p[1] for p in parts)
    return _verdict(md >= s_md and md >= s_m, f"{md} >= {s_md} and {md} >= {s_m}")


def chk_local(an: Analysis):
    if an.d <= 1:
        return NA, "dim G = 1"
    md = an.metric_dim.value
    if md != 2:
        return NA, f"metric dimension {md}"
    local = an.m_count == 1
    solvable_branch = an.R.is_full and an.center.dim == 1
    perfect_branch = False
    if an.derived.is_full and not an.R.is_full:
        Q = an.A if an.R.is_zero else quotient(an.A, an.R, validate=False)[0]
        perfect_branch = is_simple(Q, an.seed)
    return _verdict(local == (solvable_branch or perfect_branch),
                    f"local={local} solvable-branch={solvable_branch} perfect-branch={perfect_branch}")


def _intersection_split(J, parts, d) -> bool:
    return sum_of((P & J for P in parts), d) == J


def chk_direct_sum_splitting(an: Analysis):
    parts = [c.space for c in an.decomposition]
    if len(parts) < 2:
        return NA, "single component"
    G = an.G
    tested = 0
    for J in an.ideals:
        hyp1 = subspace_product(an.A, J, *([G] * (an.A.n - 1))) == J
        hyp2 = False
        if not hyp1 and not J.is_full:
            Q, _ = quotient(an.A, J, validate=False)
            hyp2 = center(Q).is_zero
        if not (hyp1 or hyp2):
            continue
        tested += 1
        if not _intersection_split(J, parts, an.d):
            return FAIL, f"J={_fmt_space(J)} does not split along components"
    if not tested:
        return NA, "no ideal satisfies the hypotheses"
    return PASS, f"{tested} ideals"


def chk_semisimple_splits(an: Analysis):
    S = an.S_G
    if S.is_zero:
        return NA, "no simple ideals"
    Sp = perp(an.form, S)
    simple = [r.space for r in an.module_minimal if r.kind == SIMPLE]
    direct = sum(s.dim for s in simple) == S.dim
    ok = is_nondegenerate_subspace(an.form, S) and (S & Sp).is_zero and (S + Sp).is_full
    return _verdict(ok and direct, f"dim S(G) = {S.dim}")


def _nonsimple_big(an: Analysis):
    if an.d <= 1:
        return "dim G = 1"
    if an.simple:
        return "G is simple"
    return None


def chk_dichotomy(an: Analysis):
    why = _nonsimple_big(an)
    if why:
        return NA, why
    G = an.G
    recs = an.minimal
    for r in recs:
        J = r.space
        abelian = subspace_product(an.A, J, J, *([G] * (an.A.n - 2))).is_zero
        if not abelian:
            sub, _ = restrict(an.A, J)
            if not is_simple(sub, an.seed):
                return FAIL, f"{_fmt_space(J)} neither abelian nor simple"
        if not (an.derived.contains(J) or an.center.contains(J)):
            return FAIL, f"{_fmt_space(J)} neither derived nor central"
    for r1, r2 in itertools.combinations(recs, 2):
        if not subspace_product(an.A, r1.space, r2.space, *([G] * (an.A.n - 2))).is_zero:
            return FAIL, "distinct minimal ideals do not annihilate each other"
    return PASS, f"{len(recs)} minimal ideals"


def chk_one_dim_quotient(an: Analysis):
    why = _nonsimple_big(an)
    if why:
        return NA, why
    for r in an.minimal:
        lhs = an.d - perp(an.form, r.space).dim == 1
        rhs = an.center.contains(r.space) and r.dim == 1
        if lhs != rhs:
            return FAIL, f"{_fmt_space(r.space)}: quotient one-dim={lhs} central line={rhs}"
    return PASS, f"{len(an.minimal)} minimal ideals"


def chk_minimal_in_derived(an: Analysis):
    why = _nonsimple_big(an)
    if why:
        return NA, why
    if not an.b_irreducible:
        return NA, "not B-irreducible"
    target = an.C_R & an.derived
    for r in an.minimal:
        if not target.contains(r.space):
            return FAIL, f"{_fmt_space(r.space)} not in C_G(R) & G^1"
    if any(r.in_center for r in an.minimal) and not an.derived.contains(an.center):
        return FAIL, "center not contained in the derived algebra"
    return PASS, f"{len(an.minimal)} minimal ideals"


def chk_complement_structure(an: Analysis):
    A, d = an.A, an.d
    S = an.S_G
    P = perp(an.form, S)
    if P.is_zero:
        return NA, "G is strong semisimple"
    sub, emb = restrict(A, P)
    issues = []
    # ideals of S(G)^perp are ideals of G
    sub_ops = sub.ad_span if sub is A else [emb @ m @ _left_inverse(P) for m in sub.ad_span]
    if sub is not A and not _ops_agree_on(A, A.ad_span, sub_ops, P):
        issues.append("ideals of S(G)^perp differ from ideals of G")
    sub_rad = radical_with_certificate(sub, an.seed).space.transform(emb)
    if sub_rad != an.R:
        issues.append("radical of S(G)^perp is not R")
    if not strong_semisimple_part(sub, an.seed).is_zero:
        issues.append("S(G)^perp has strong semisimple ideals")
    abelian = sum_of((r.space for r in an.module_minimal if r.kind == ABELIAN), d)
    if module_socle(sub).transform(emb) != abelian:
        issues.append("abelian minimal ideals do not span the socle of S(G)^perp")
    if center(sub).transform(emb) != an.center:
        issues.append("centers differ")
    R_sub = Subspace.span((P.coordinates(r) for r in an.R.basis), P.dim)
    cr_sub = centralizer(sub, R_sub).transform(emb)
    if not ((S & cr_sub).is_zero and S + cr_sub == an.C_R):
        issues.append("C_G(R) is not S(G) + C_{S(G)^perp}(R)")
    W = an.R_perp & P
    if not ((S & W).is_zero and S + W == an.R_perp):
        issues.append("R^perp is not S(G) + W")
    return _verdict(not issues, f"dim S(G)^perp = {P.dim}", "; ".join(issues))


def _left_inverse(V: Subspace) -> Matrix:
    """k x d matrix sending a vector of V to its coordinates."""
    k = V.dim
    rows = [[0] * V.ambient_dim for _ in range(k)]
    for i, p in enumerate(V.pivots):
        rows[i][p] = 1
    return Matrix(rows)


def chk_socle_centralizer(an: Analysis):
    why = _nonsimple_big(an)
    if why:
        return NA, why + " (socle is zero by convention)"
    soc = an.socle.space
    return _verdict(soc == an.C_R, f"dim Soc = dim C_G(R) = {soc.dim}",
                    f"Soc={_fmt_space(soc)} C_G(R)={_fmt_space(an.C_R)}")


CHECKS: tuple[tuple[str, Callable], ...] = (
    ("jacobi_identity", chk_jacobi),
    ("form_invariance", chk_invariance),
    ("derived_is_center_perp", chk_derived_perp),
    ("perp_of_product_is_centralizer", chk_perp_product),
    ("perfect_complement_nondegenerate", chk_perfect_complement),
    ("nondegenerate_ideal_splits", chk_nondegenerate_splits),
    ("perfect_iff_centerless", chk_perfect_centerless),
    ("perp_of_product_criterion", chk_lemma_perp_criterion),
    ("orthogonal_decomposition", chk_orthogonal_decomposition),
    ("irreducible_implies_indecomposable", chk_indecomposable),
    ("irreducibility_metric_independent", chk_metric_independent),
    ("invertible_centroid_spans", chk_invertible_spans),
    ("form_operator_correspondence", chk_form_operator),
    ("metric_dimension_equality", chk_metric_dim_equality),
    ("ideal_iff_perp_in_centralizer", chk_ideal_perp),
    ("nondegenerate_lines_central", chk_nondeg_lines),
    ("isotropic_center_criterion", chk_isotropic_center),
    ("coisotropic_radical_criterion", chk_coisotropic_radical),
    ("centralizer_of_radical_splitting", chk_centralizer_splitting),
    ("levi_acts_onto_radical_perp", chk_levi_onto_perp),
    ("levi_decomposition", chk_levi),
    ("radical_perp_dual_module", chk_dual_module),
    ("levi_intertwiners", chk_intertwiners),
    ("minimal_ideals_are_levi_modules", chk_levi_modules),
    ("metric_dimension_lower_bound", chk_lower_bound),
    ("center_bound", chk_center_bound),
    ("decomposition_bound", chk_decomposition_bound),
    ("local_characterization", chk_local),
    ("direct_sum_ideal_splitting", chk_direct_sum_splitting),
    ("semisimple_ideal_splits", chk_semisimple_splits),
    ("minimal_ideal_dichotomy", chk_dichotomy),
    ("one_dim_quotient_criterion", chk_one_dim_quotient),
    ("minimal_ideals_in_derived", chk_minimal_in_derived),
    ("semisimple_complement_structure", chk_complement_structure),
    ("socle_equals_centralizer_of_radical", chk_socle_centralizer),
)

CHECK_IDS = tuple(name for name, _ in CHECKS)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    dim: int
    arity: int
    center: Subspace
    derived: Subspace
    radical: Subspace | None
    socle: Subspace | None
    socle_components: tuple | None
    m_count: int | None
    max_strong_semisimple: Subspace | None
    metric_dim: int | None
    audit: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.audit if c.status == FAIL]

    @property
    def not_split(self) -> list[CheckResult]:
        return [c for c in self.audit if c.status == NOT_SPLIT]

    @property
    def statuses(self) -> dict[str, str]:
        return {c.check: c.status for c in self.audit}

    def invariants(self) -> dict:
        def dim(s):
            return None if s is None else s.dim
        return {
            "dim": self.dim,
            "arity": self.arity,
            "center_dim": self.center.dim,
            "derived_dim": self.derived.dim,
            "radical_dim": dim(self.radical),
            "socle_dim": dim(self.socle),
            "m_count": self.m_count,
            "max_strong_semisimple_dim": dim(self.max_strong_semisimple),
            "metric_dim": self.metric_dim,
        }

    def to_dict(self) -> dict:
        return {
            "invariants": self.invariants(),
            "audit": [{"check": c.check, "status": c.status, "detail": c.detail}
                      for c in self.audit],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        lines = []
        for k, v in self.invariants().items():
            lines.append(f"{k:<28}{'-' if v is None else v}")
        lines.append("")
        width = max((len(c.check) for c in self.audit), default=10) + 2
        lines.append(f"{'check':<{width}}{'status':<16}detail")
        for c in self.audit:
            lines.append(f"{c.check:<{width}}{c.status:<16}{c.detail}")
        return "\n".join(lines)


def _run(fn, an: Analysis) -> tuple[str, str]:
    try:
        return fn(an)
    except NotSplitError as exc:
        return NOT_SPLIT, str(exc)


def _maybe(fn):
    try:
        return fn()
    except NotSplitError:
        return None


def audit(A: NLieAlgebra, form: BilinearForm, seed: int = DEFAULT_SEED,
          levi: Subspace | None = None,
          extra_forms: tuple[BilinearForm, ...] = ()) -> StructureReport:
    """Compute the structure of (G, B) and run every check."""
    an = Analysis(A, form, seed, levi, extra_forms)
    results = tuple(CheckResult(name, *_run(fn, an)) for name, fn in CHECKS)
    return StructureReport(
        dim=A.dim, arity=A.n, center=an.center, derived=an.derived,
        radical=_maybe(lambda: an.R),
        socle=_maybe(lambda: an.socle.space if an.socle.certified else None),
        socle_components=_maybe(lambda: an.minimal),
        m_count=_maybe(lambda: an.m_count),
        max_strong_semisimple=_maybe(lambda: an.S_G),
        metric_dim=an.metric_dim.value,
        audit=results,
    )


def summarize(A: NLieAlgebra, form: BilinearForm | None, seed: int = DEFAULT_SEED) -> dict:
    """Invariants of G (and of (G, B) when a form is given).

    Raises NotSplitError when a value cannot be decided over the rationals.
    """
    an = Analysis(A, form, seed)
    out = {
        "dim": A.dim,
        "center_dim": an.center.dim,
        "derived_dim": an.derived.dim,
        "radical_dim": an.R.dim,
        "socle_dim": an.socle.space.dim,
        "m_count": an.m_count,
        "centroid_dim": len(an.centroid),
        "form_space_dim": len(an.form_space),
        "simple": an.simple,
        "strong_semisimple": is_strong_semisimple(A, seed),
        "strong_semisimple_dim": an.S_G.dim,
    }
    if not an.socle.certified:
        raise NotSplitError("socle undecided over Q")
    spaces = {"center": an.center, "derived": an.derived, "radical": an.R,
              "socle": an.socle.space, "strong_semisimple": an.S_G}
    if form is not None:
        out["metric_dim"] = an.metric_dim.value
        out["decomposition"] = an.decomposition.dims
        out["b_irreducible"] = an.b_irreducible
    out["spaces"] = spaces
    return out
