import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from fc_salvetti.snf import abelian_invariants, homology_rank_and_torsion, smith_diagonal


def test_hand_cases():
    assert smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert smith_diagonal([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]
    assert smith_diagonal([[0, 0], [0, 0]]) == []
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]


def test_abelian_invariants():
    assert abelian_invariants([], 2) == (2, ())
    assert abelian_invariants([[2, 0], [0, 3]], 2) == (0, (6,))
    assert abelian_invariants([[4, 0, 0]], 3) == (2, (4,))


def test_homology_of_a_circle_and_disc():
    # circle: one vertex, one loop
    assert homology_rank_and_torsion([[0]], [], 1) == (1, ())
    # disc glued along the loop twice: RP^2
    assert homology_rank_and_torsion([[0]], [[2]], 1) == (0, (2,))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_matches_sympy(rows):
    ours = smith_diagonal(rows)
    m = sympy.Matrix(rows)
    if m.is_zero_matrix:
        assert ours == []
        return
    theirs = [abs(int(v)) for v in invariant_factors(m, domain=sympy.ZZ) if v != 0]
    assert ours == theirs
    for a, b in zip(ours, ours[1:]):
        assert b % a == 0
