from __future__ import annotations

import random

import pytest

from nlie.audit import audit
from nlie.catalog import NAMES, builtin, random_invertible, scramble, self_test
from nlie.exact_linalg import Matrix
from nlie.metric import check_invariance
from nlie.nlie_core import check_axioms
from nlie.structure import b_irreducible_decomposition


def test_catalog_names():
    assert set(NAMES) == {
        "abelian_1", "abelian_2", "abelian_3", "abelian_4", "a_simple_2", "a_simple_3",
        "a_simple_4", "a4", "a4_dual", "a4_plus_a4", "a4_plus_abelian1"}


def test_unknown_name():
    with pytest.raises(KeyError):
        builtin("a5")


def test_expected_value_examples():
    assert builtin("a4").expected["metric_dim"] == 1
    assert builtin("a4_dual").expected["m_count"] == 1
    assert builtin("abelian_2").expected["metric_dim"] == 3


def test_a4_is_alias_of_a_simple_3():
    assert builtin("a4").algebra == builtin("a_simple_3").algebra


@pytest.mark.parametrize("name", NAMES)
def test_entry_is_valid(name):
    entry = builtin(name)
    assert check_axioms(entry.algebra).ok
    for form in entry.forms:
        assert check_invariance(entry.algebra, form) and form.is_nondegenerate()


@pytest.mark.parametrize("name", NAMES)
def test_self_test(name):
    assert self_test(builtin(name)) == []


@pytest.mark.parametrize("name", NAMES)
def test_scrambled_self_test(name):
    assert self_test(scramble(builtin(name), 3), seed=3) == []


def test_identity_scramble_is_unchanged():
    entry = builtin("a4_dual")
    same = scramble(entry, 0, Matrix.identity(8))
    assert same.algebra == entry.algebra
    assert same.forms == entry.forms
    assert same.subspaces == entry.subspaces and same.levi == entry.levi


def test_scramble_is_deterministic():
    e = builtin("a4")
    assert scramble(e, 5).algebra == scramble(e, 5).algebra


def test_scramble_matrices_are_small_and_invertible():
    m = random_invertible(6, random.Random(1))
    assert m.is_invertible()
    assert all(-2 <= x <= 2 for r in m.rows for x in r)


def test_scrambled_a4_audits_like_a4():
    e = builtin("a4")
    want = audit(e.algebra, e.form, levi=e.levi).statuses
    s = scramble(e, 0)
    assert audit(s.algebra, s.form, levi=s.levi).statuses == want


def test_scrambled_a4_plus_a4_decomposes_into_two_blocks():
    for seed in range(3):
        s = scramble(builtin("a4_plus_a4"), seed)
        assert b_irreducible_decomposition(s.algebra, s.form, seed).dims == (4, 4)
