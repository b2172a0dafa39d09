import pytest

from isocount import enumeration, oracle
from isocount.enumeration import (
    BudgetExceeded,
    EnumerationBudget,
    census_by_type,
    count_by_enumeration,
    count_containing,
    count_maximal_isotropic,
    enumerate_maximal_isotropic,
    iter_subgroups,
)
from isocount.symplectic import (
    abelian_invariants,
    is_maximal_isotropic,
    make_module,
)


def test_small_enumerations():
    assert len(enumerate_maximal_isotropic(make_module((1, 2)))) == 3
    assert len(enumerate_maximal_isotropic(make_module((1, 1)))) == 1
    subs = enumerate_maximal_isotropic(make_module((2, 2)))
    assert len(subs) == 15
    assert all(is_maximal_isotropic(H) for H in subs)
    assert len({H.basis for H in subs}) == 15


def test_counts():
    assert count_maximal_isotropic(make_module((6, 6))) == 600
    assert count_by_enumeration(make_module((2, 2, 2))) == 135


def test_count_k24_is_39():
    # the published table gives 51; both the lattice search and the
    # element-set brute force give 39
    assert count_maximal_isotropic(make_module((2, 4))) == 39
    assert len(oracle.maximal_isotropic((2, 4))) == 39


@pytest.mark.parametrize("t", [(1, 2), (2, 2), (1, 4), (2, 4), (3, 3), (1, 2, 2), (1, 6), (1, 3, 3)])
def test_agrees_with_element_set_oracle(t):
    ours = {frozenset(H.elements()) for H in enumerate_maximal_isotropic(make_module(t))}
    assert ours == set(oracle.maximal_isotropic(t))


@pytest.mark.parametrize("t", [(2, 2), (1, 4), (2, 4), (1, 2, 2)])
def test_all_subgroups_agree_with_oracle(t):
    ours = {frozenset(H.elements()) for H in iter_subgroups(make_module(t))}
    assert ours == oracle.all_subgroups(t)


def test_subgroups_of_given_order():
    m = make_module((2, 4))
    for order in (1, 2, 4, 8, 64):
        subs = list(iter_subgroups(m, order=order))
        assert all(H.order == order for H in subs)
        assert len(subs) == sum(1 for S in oracle.all_subgroups((2, 4)) if len(S) == order)


@pytest.mark.parametrize("t", [(4, 4), (2, 2, 4), (6, 12)])
def test_output_sorted_and_deterministic(t):
    a = [H.basis for H in enumerate_maximal_isotropic(make_module(t))]
    assert a == sorted(a)
    assert a == [H.basis for H in enumerate_maximal_isotropic(make_module(t))]


def test_parallel_matches_serial():
    m = make_module((8, 8))
    serial = [H.basis for H in enumerate_maximal_isotropic(m)]
    parallel = [H.basis for H in enumerate_maximal_isotropic(m, jobs=2)]
    assert serial == parallel
    assert count_by_enumeration(m, jobs=2) == 1335


def test_census_examples():
    assert census_by_type(2, 1).by_name() == {"1": 15}
    assert census_by_type(2, 2).by_name() == {"1": 120, "3": 30, "7": 1}
    assert census_by_type(2, 3).by_name() == {"1": 960, "2_1": 360, "6_1": 15}


def test_census_rejects_n0():
    with pytest.raises(ValueError):
        census_by_type(2, 0)


def test_count_containing_examples():
    m = make_module((2, 2))
    assert count_containing(m.trivial()) == 15
    H = enumerate_maximal_isotropic(m)[4]
    assert count_containing(H) == 1
    assert count_containing(m.subgroup([(1, 0, 0, 0)])) == 3


@pytest.mark.parametrize("t", [(2, 2), (3, 3), (4, 4)])
def test_count_containing_matches_filter(t):
    m = make_module(t)
    maximal = enumerate_maximal_isotropic(m)
    for W in iter_subgroups(m, isotropic=True):
        assert count_containing(W) == sum(W.issubset(H) for H in maximal)


def test_budget_candidates():
    with pytest.raises(BudgetExceeded) as info:
        count_by_enumeration(make_module((8, 8)), EnumerationBudget(max_candidates=100))
    assert info.value.stats.candidates > 100


def test_budget_seconds():
    with pytest.raises(BudgetExceeded):
        count_by_enumeration(make_module((16, 16)), EnumerationBudget(max_seconds=1e-4))


def test_budget_validation():
    with pytest.raises(ValueError):
        EnumerationBudget(max_candidates=0)


def test_invariants_are_chains():
    for H in enumerate_maximal_isotropic(make_module((4, 8))):
        inv = abelian_invariants(H)
        assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
        assert H.order == __import__("math").prod(inv)


def test_diagonal_tuples():
    assert enumeration.diagonal_tuples((2, 2), 2) == [(1, 2), (2, 1)]
    assert len(enumeration.diagonal_tuples((4, 4), None)) == 9
