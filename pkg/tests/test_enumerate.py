import pytest

from hyperwitt.enumerate import (
    build,
    canonical_key,
    census_for,
    enumerate_census,
    value_sets_are_subgroups,
)
from hyperwitt.errors import BudgetExceeded
from hyperwitt.hyperfield import find_isomorphism, validate_axioms
from hyperwitt.quadratic import qh_archimedean, qh_finite_field, qh_padic


def test_small_counts():
    rows = enumerate_census(2)
    assert [(r.q, r.count) for r in rows] == [(1, 1), (2, 3)]
    assert all(r.matches for r in rows)


def test_q2_classes_are_the_known_fields():
    row = census_for(2)
    known = [qh_finite_field(3), qh_archimedean("real")]
    for h in known:
        assert sum(find_isomorphism(h, t) is not None for t in row.tables) == 1


def test_q4_reports_the_abstract_extra_class():
    row = census_for(4)
    assert row.count == 7 and row.matches is False
    assert len(row.subgroup_tables) == 6
    (extra,) = row.divergent_tables
    assert validate_axioms(extra).ok
    assert not value_sets_are_subgroups(extra)
    d = row.to_dict()
    assert d["subgroup_count"] == 6 and len(d["divergent_tables"]) == 1


def test_q4_contains_local_fields():
    row = census_for(4)
    for h in (qh_padic(3), qh_padic(5)):
        assert any(find_isomorphism(h, t) is not None for t in row.tables)


def test_canonical_key_is_invariant_under_relabelling():
    D = {0: 0b0011, 2: 0b0101, 3: 0b1001}
    k1 = canonical_key(4, 1, D)
    # swap generators 1 and 2 of the group
    swap = {0: 0, 1: 2, 2: 1, 3: 3}
    D2 = {swap[x]: sum(1 << swap[z] for z in range(4) if m >> z & 1) for x, m in D.items()}
    assert canonical_key(4, 2, D2) == k1


def test_build_matches_q_f3():
    h = build(2, 1, {0: 0b11})  # 1 + 1 = {1, -1}
    assert validate_axioms(h).ok
    assert find_isomorphism(h, qh_finite_field(3)) is not None


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        census_for(4, budget=3)
    with pytest.raises(BudgetExceeded):
        enumerate_census(16)
    with pytest.raises(ValueError):
        census_for(3)
