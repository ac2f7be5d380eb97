import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fc_salvetti.groups import (
    DEFAULT_BATTERY,
    BUDGET_ENV,
    FiniteGroupTable,
    GroupTableError,
    HomBudgetExceeded,
    alternating_group,
    battery,
    count_homs,
    count_homs_naive,
    cyclic_group,
    default_budget,
    dihedral_group,
    hom_set,
    symmetric_group,
)
from fc_salvetti.presentation import fc_model_presentation
from fc_salvetti.verify import abelianization
from fc_salvetti.words import GroupPresentation, free_group


@pytest.mark.parametrize("name,order,abelian", [("C2", 2, True), ("C3", 3, True), ("S3", 6, False),
                                                 ("D8", 8, False), ("A4", 12, False)])
def test_battery_groups(name, order, abelian):
    (g,) = battery([name])
    assert g.order == order
    comm = all(g.table[a][b] == g.table[b][a] for a in range(order) for b in range(order))
    assert comm == abelian


def test_group_structure():
    d8 = dihedral_group(4)
    elem_orders = sorted(min(k for k in range(1, 9) if _power(d8, x, k) == d8.identity) for x in range(8))
    assert elem_orders == [1, 2, 2, 2, 2, 2, 4, 4]
    a4 = alternating_group(4)
    assert sorted(min(k for k in range(1, 13) if _power(a4, x, k) == a4.identity) for x in range(12)) == \
        [1] + [2] * 3 + [3] * 8


def _power(g, x, k):
    acc = g.identity
    for _ in range(k):
        acc = g.table[acc][x]
    return acc


def test_bad_table():
    with pytest.raises(GroupTableError):
        FiniteGroupTable.from_table("bad", ["a", "b"], [[0, 0], [0, 0]])
    with pytest.raises(KeyError):
        battery(["Q8"])


def test_spec_examples():
    s3 = symmetric_group(3)
    assert count_homs(free_group(2), s3) == 36
    model1 = fc_model_presentation(1)
    assert count_homs(model1, s3) == 30
    # brute force (xy)^2 = (yx)^2
    t, inv = s3.table, s3.inverses
    brute = sum(1 for x, y in itertools.product(range(6), repeat=2)
                if t[t[t[x][y]][x]][y] == t[t[t[y][x]][y]][x])
    assert brute == 30


letters = st.integers(1, 3).flatmap(lambda g: st.sampled_from([g, -g]))
presentations = st.lists(st.lists(letters, min_size=1, max_size=8).map(tuple), max_size=4).map(
    lambda rels: GroupPresentation(("a", "b", "c"), tuple(rels))
)


@settings(max_examples=80, deadline=None)
@given(presentations, st.sampled_from(DEFAULT_BATTERY))
def test_agrees_with_naive(p, name):
    (g,) = battery([name])
    assert count_homs(p, g) == count_homs_naive(p, g)
    assert len(hom_set(p, g)) == count_homs(p, g)


@settings(max_examples=80, deadline=None)
@given(presentations)
def test_c2_rule(p):
    # homs to C2 factor through H_1 / 2
    rank, torsion = abelianization(p)
    even = sum(1 for t in torsion if t % 2 == 0)
    assert count_homs(p, cyclic_group(2)) == 2 ** (rank + even)


def test_budget():
    with pytest.raises(HomBudgetExceeded):
        count_homs(fc_model_presentation(3), alternating_group(4), budget=100)


def test_budget_env(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "123")
    assert default_budget() == 123
    with pytest.raises(HomBudgetExceeded):
        count_homs(fc_model_presentation(2), symmetric_group(3))
