"""Built-in example algebras with known invariants, and random base changes."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Callable

from .exact_linalg import ONE, ZERO, Matrix, Subspace, scalar
from .metric import BilinearForm, check_invariance
from .nlie_core import NLieAlgebra, change_basis, direct_sum, permutation_sign


def simple_algebra(n: int) -> NLieAlgebra:
    """The (n+1)-dimensional simple n-Lie algebra, [e_I] = eps(I, l) e_l.

    Here l is the index missing from I and eps the Levi-Civita symbol.
    """
    d = n + 1
    consts = {}
    for I in itertools.combinations(range(d), n):
        (l,) = set(range(d)) - set(I)
        v = [ZERO] * d
        v[l] = scalar(permutation_sign(I + (l,)))
        consts[I] = v
    return NLieAlgebra(n, d, consts)


def abelian_algebra(d: int, n: int = 3) -> NLieAlgebra:
    return NLieAlgebra(n, d, {})


def dual_number_extension(A: NLieAlgebra) -> NLieAlgebra:
    """A tensor Q[t]/(t^2): basis e_i = x_i (x) 1 then f_i = x_i (x) t."""
    d = A.dim
    names = [f"e{i + 1}" for i in range(d)] + [f"f{i + 1}" for i in range(d)]
    consts = {}
    for I in itertools.combinations(range(2 * d), A.n):
        tpow = sum(1 for i in I if i >= d)
        if tpow > 1:
            continue
        v = A.basis_bracket(tuple(i % d for i in I))
        if v is None:
            continue
        out = [ZERO] * (2 * d)
        off = d if tpow else 0
        for k, c in enumerate(v):
            out[k + off] = c
        consts[I] = out
    return NLieAlgebra(A.n, 2 * d, consts, names)


def hyperbolic_form(d: int) -> BilinearForm:
    """B(e_i, f_j) = delta_ij on a 2d-dimensional space, zero elsewhere."""
    rows = [[ZERO] * (2 * d) for _ in range(2 * d)]
    for i in range(d):
        rows[i][d + i] = ONE
        rows[d + i][i] = ONE
    return BilinearForm(Matrix(rows))


def block_form(*blocks: Matrix) -> BilinearForm:
    d = sum(b.nrows for b in blocks)
    rows = [[ZERO] * d for _ in range(d)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.rows):
            for j, x in enumerate(r):
                rows[off + i][off + j] = x
        off += b.nrows
    return BilinearForm(Matrix(rows))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: NLieAlgebra
    forms: tuple[BilinearForm, ...]
    expected: dict
    levi: Subspace | None = None
    subspaces: dict = field(default_factory=dict)

    @property
    def form(self) -> BilinearForm:
        return self.forms[0]


def _abelian(d: int) -> CatalogEntry:
    A = abelian_algebra(d)
    G = A.full()
    expected = dict(
        dim=d, center_dim=d, derived_dim=0, radical_dim=d,
        socle_dim=0 if d == 1 else d, m_count=0 if d == 1 else d,
        metric_dim=d * (d + 1) // 2, centroid_dim=d * d, form_space_dim=d * (d + 1) // 2,
        decomposition=(1,) * d, b_irreducible=d == 1, simple=False,
        strong_semisimple=False, strong_semisimple_dim=0,
    )
    subs = dict(radical=G, center=G, socle=Subspace.zero(d) if d == 1 else G)
    return CatalogEntry(f"abelian_{d}", A, (BilinearForm.identity(d),), expected,
                        Subspace.zero(d), subs)


def _simple(n: int, name: str | None = None) -> CatalogEntry:
    A = simple_algebra(n)
    d = n + 1
    expected = dict(
        dim=d, center_dim=0, derived_dim=d, radical_dim=0, socle_dim=0, m_count=0,
        metric_dim=1, centroid_dim=1, form_space_dim=1, decomposition=(d,),
        b_irreducible=True, simple=True, strong_semisimple=True, strong_semisimple_dim=d,
    )
    subs = dict(radical=Subspace.zero(d), center=Subspace.zero(d), socle=Subspace.zero(d))
    return CatalogEntry(name or f"a_simple_{n}", A, (BilinearForm.identity(d),), expected,
                        A.full(), subs)


def _a4_dual() -> CatalogEntry:
    A = dual_number_extension(simple_algebra(3))
    B = hyperbolic_form(4)
    I4 = Matrix.identity(4)
    Z4 = Matrix.zeros(4)
    # B plus the pairing concentrated on the e-part
    K = BilinearForm(Matrix([r1 + r2 for r1, r2 in zip(I4.rows, I4.rows)] +
                            [r1 + r2 for r1, r2 in zip(I4.rows, Z4.rows)]))
    f_part = Subspace.coordinate(8, range(4, 8))
    e_part = Subspace.coordinate(8, range(4))
    expected = dict(
        dim=8, center_dim=0, derived_dim=8, radical_dim=4, socle_dim=4, m_count=1,
        metric_dim=2, centroid_dim=2, form_space_dim=2, decomposition=(8,),
        b_irreducible=True, simple=False, strong_semisimple=False, strong_semisimple_dim=0,
    )
    subs = dict(radical=f_part, center=Subspace.zero(8), socle=f_part)
    return CatalogEntry("a4_dual", A, (B, K), expected, e_part, subs)


def _a4_plus_a4() -> CatalogEntry:
    a4 = simple_algebra(3)
    A = direct_sum(a4, a4)
    I4 = Matrix.identity(4)
    forms = (BilinearForm.identity(8), block_form(I4, I4.scale(2)))
    expected = dict(
        dim=8, center_dim=0, derived_dim=8, radical_dim=0, socle_dim=8, m_count=2,
        metric_dim=2, centroid_dim=2, form_space_dim=2, decomposition=(4, 4),
        b_irreducible=False, simple=False, strong_semisimple=True, strong_semisimple_dim=8,
    )
    subs = dict(radical=Subspace.zero(8), center=Subspace.zero(8), socle=A.full())
    return CatalogEntry("a4_plus_a4", A, forms, expected, A.full(), subs)


def _a4_plus_abelian1() -> CatalogEntry:
    A = direct_sum(simple_algebra(3), abelian_algebra(1))
    line = Subspace.coordinate(5, [4])
    expected = dict(
        dim=5, center_dim=1, derived_dim=4, radical_dim=1, socle_dim=5, m_count=2,
        metric_dim=2, centroid_dim=2, form_space_dim=2, decomposition=(1, 4),
        b_irreducible=False, simple=False, strong_semisimple=False, strong_semisimple_dim=4,
    )
    subs = dict(radical=line, center=line, socle=A.full())
    return CatalogEntry("a4_plus_abelian1", A, (BilinearForm.identity(5),), expected,
                        Subspace.coordinate(5, range(4)), subs)


_BUILDERS: dict[str, Callable[[], CatalogEntry]] = {}
for _d in range(1, 5):
    _BUILDERS[f"abelian_{_d}"] = (lambda d=_d: _abelian(d))
for _n in range(2, 5):
    _BUILDERS[f"a_simple_{_n}"] = (lambda n=_n: _simple(n))
_BUILDERS["a4"] = lambda: _simple(3, "a4")
_BUILDERS["a4_dual"] = _a4_dual
_BUILDERS["a4_plus_a4"] = _a4_plus_a4
_BUILDERS["a4_plus_abelian1"] = _a4_plus_abelian1

NAMES = tuple(_BUILDERS)


def builtin(name: str) -> CatalogEntry:
    try:
        entry = _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}") from None
    for form in entry.forms:
        if not check_invariance(entry.algebra, form) or not form.is_nondegenerate():
            raise AssertionError(f"catalog form on {name} is not a metric")
    return entry


def random_invertible(d: int, rng: random.Random) -> Matrix:
    """Entries drawn from {-2, ..., 2}, redrawn until the determinant is nonzero."""
    while True:
        m = Matrix([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)])
        if m.det() != 0:
            return m


def scramble(entry: CatalogEntry, seed: int, matrix: Matrix | None = None) -> CatalogEntry:
    """Same entry in the basis given by the columns of a random invertible matrix.

    Brackets and forms are transported; subspace expectations are mapped to
    coordinates in the new basis.  Scalar expectations are unchanged.
    """
    A = entry.algebra
    P = matrix if matrix is not None else random_invertible(A.dim, random.Random(seed))
    Pinv = P.inverse()
    new_alg = change_basis(A, P)
    forms = tuple(f.transport(P) for f in entry.forms)
    subs = {k: v.transform(Pinv) for k, v in entry.subspaces.items()}
    levi = entry.levi.transform(Pinv) if entry.levi is not None else None
    return replace(entry, name=f"{entry.name}@{seed}", algebra=new_alg, forms=forms,
                   levi=levi, subspaces=subs)


def self_test(entry: CatalogEntry, seed: int = 0) -> list[tuple[str, object, object]]:
    """Mismatches (key, expected, computed) between stored and computed invariants."""
    from .audit import summarize

    summary = summarize(entry.algebra, entry.form, seed=seed)
    bad = []
    for key, want in entry.expected.items():
        got = summary[key]
        if got != want:
            bad.append((key, want, got))
    spaces = summary["spaces"]
    for key, want in entry.subspaces.items():
        if spaces[key] != want:
            bad.append((key, want, spaces[key]))
    return bad
