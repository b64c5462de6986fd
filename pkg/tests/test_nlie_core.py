from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlie.catalog import builtin, dual_number_extension, random_invertible, simple_algebra
from nlie.exact_linalg import Matrix, Subspace, unit_vector
from nlie.nlie_core import (
    AxiomError,
    NLieAlgebra,
    abelian,
    center,
    centralizer,
    change_basis,
    check_axioms,
    derived_series,
    direct_sum,
    ideal_generated,
    inner_derivations,
    is_abelian_ideal,
    is_ideal,
    is_perfect,
    is_solvable,
    quotient,
    subspace_product,
)

a4 = simple_algebra(3)
a4_dual = dual_number_extension(a4)
F_PART = Subspace.coordinate(8, range(4, 8))


def e(i, d=4):
    return unit_vector(d, i - 1)


def perturbed_a4(value) -> NLieAlgebra:
    consts = {I: a4.basis_bracket(I) for I in itertools.combinations(range(4), 3)}
    consts[(0, 1, 2)] = value
    return NLieAlgebra(3, 4, consts, validate=False)


# --- bracket -------------------------------------------------------------------

def test_bracket_examples():
    assert a4.bracket(e(1), e(2), e(3)) == e(4)
    assert a4.bracket(e(1), e(1), e(3)) == (0, 0, 0, 0)
    assert a4.bracket(e(2), e(1), e(3)) == tuple(-x for x in e(4))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=3, max_size=3),
       st.permutations(range(3)))
def test_bracket_is_alternating(vs, perm):
    sign = 1
    p = list(perm)
    for i in range(3):
        for j in range(i + 1, 3):
            if p[i] > p[j]:
                sign = -sign
    lhs = a4.bracket(*[vs[k] for k in perm])
    assert lhs == tuple(sign * x for x in a4.bracket(*vs))


def test_repeated_index_brackets_to_zero():
    assert a4_dual.basis_bracket((0, 0, 5)) is None or not any(a4_dual.basis_bracket((0, 0, 5)))


def test_constructor_rejects_non_increasing_keys():
    with pytest.raises((AxiomError, ValueError)):
        NLieAlgebra(3, 4, {(1, 0, 2): [0, 0, 0, 1]})


# --- axioms --------------------------------------------------------------------

def test_check_axioms_examples():
    assert check_axioms(a4).ok
    assert check_axioms(abelian(4)).ok
    bad = check_axioms(perturbed_a4([0, 0, 1, 0]))
    assert not bad.ok and bad.violations
    assert "Jacobi fails for" in bad.describe()


def test_validating_constructor_raises_on_violation():
    consts = {I: a4.basis_bracket(I) for I in itertools.combinations(range(4), 3)}
    consts[(0, 1, 2)] = [1, 0, 0, 1]
    with pytest.raises(AxiomError):
        NLieAlgebra(3, 4, consts)


# --- products, ideals, series --------------------------------------------------

def test_subspace_product_examples():
    G = a4.full()
    assert subspace_product(a4, G, G, G).is_full
    A3 = abelian(3)
    assert subspace_product(A3, A3.full(), A3.full(), A3.full()).is_zero
    line = Subspace.span([e(1)], 4)
    assert subspace_product(a4, line, line, G).is_zero


def test_ideal_examples():
    assert not is_ideal(a4, Subspace.span([e(1)], 4))
    A2 = abelian(2)
    assert is_abelian_ideal(A2, Subspace.span([[1, 3]], 2))
    assert is_abelian_ideal(a4_dual, F_PART)
    assert not is_abelian_ideal(a4_dual, a4_dual.full())


def test_derived_series_examples():
    A3 = abelian(3)
    assert derived_series(A3, A3.full()) == [A3.full(), A3.zero()]
    assert is_solvable(A3, A3.full())
    series = derived_series(a4, a4.full())
    assert series[:2] == [a4.full(), a4.full()]
    assert not is_solvable(a4, a4.full())
    assert derived_series(a4_dual, F_PART) == [F_PART, Subspace.zero(8)]
    assert is_solvable(a4_dual, F_PART)


def test_center_and_centralizer_examples():
    assert center(abelian(3)).is_full
    assert center(a4).is_zero
    assert centralizer(a4_dual, F_PART) == F_PART


def test_ideal_generated_is_smallest_ideal():
    assert ideal_generated(a4, [e(1)]).is_full
    I = ideal_generated(a4_dual, [unit_vector(8, 5)])
    assert I == F_PART


# --- quotient, direct sum, inner derivations ------------------------------------

def test_quotient_examples():
    A3 = abelian(3)
    Q, P = quotient(A3, Subspace.span([[1, 1, 0]], 3))
    assert Q.dim == 2 and not Q.structure_constants
    Q, P = quotient(a4_dual, F_PART)
    assert Q.dim == 4
    assert all(Q.basis_bracket(I) == a4.basis_bracket(I)
               for I in itertools.combinations(range(4), 3))
    Q, P = quotient(a4, a4.zero())
    assert Q == a4 and P == Matrix.identity(4)


def test_quotient_by_non_ideal_is_rejected():
    with pytest.raises(ValueError):
        quotient(a4, Subspace.span([e(1)], 4))


def test_direct_sum_examples():
    assert direct_sum(abelian(1), abelian(2)) == abelian(3)
    S = direct_sum(a4, a4)
    assert S.dim == 8 and is_perfect(S)
    T = direct_sum(a4, abelian(1))
    assert T.dim == 5 and center(T) == Subspace.coordinate(5, [4])


def test_inner_derivation_examples():
    assert inner_derivations(abelian(3)).dim == 0
    E = inner_derivations(a4)
    assert len(a4.ad_span) == 6
    assert not E.radical_basis
    # the 6 inner derivations generate all of End(Q^4) associatively
    assert E.dim == 16
    Ed = inner_derivations(a4_dual)
    assert Ed.radical_basis
    E_PART = Subspace.coordinate(8, range(4))
    assert any(not r.is_zero() and E_PART.transform(r) <= F_PART for r in Ed.radical_basis)


# --- base change ----------------------------------------------------------------

@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_change_basis_transports_brackets(seed):
    rng = random.Random(seed)
    P = random_invertible(4, rng)
    B = change_basis(a4, P)
    assert check_axioms(B).ok
    x, y, z = ([rng.randint(-2, 2) for _ in range(4)] for _ in range(3))
    # P maps new coordinates to old ones
    lhs = P @ list(B.bracket(x, y, z))
    rhs = a4.bracket(P @ x, P @ y, P @ z)
    assert tuple(lhs) == tuple(rhs)


def test_catalog_entries_are_valid_algebras():
    for name in ("a4_plus_a4", "a4_plus_abelian1"):
        assert check_axioms(builtin(name).algebra).ok
