import itertools
import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from fc_salvetti import arrangement as A
from fc_salvetti.arrangement import (
    COORDINATE,
    EPSILON,
    Arrangement,
    ArrangementError,
    CapacityError,
    Hyperplane,
    build_fc_arrangement,
    coordinate_hyperplane,
    epsilon_hyperplane,
)


def test_n2_hyperplanes_in_order():
    arr = build_fc_arrangement(2)
    got = [(h.normal, h.offset) for h in arr.hyperplanes]
    assert got == [((1, 1), 1), ((1, -1), 1), ((-1, 1), 1), ((-1, -1), 1), ((1, 0), 0), ((0, 1), 0)]
    assert [h.kind for h in arr.hyperplanes] == [EPSILON] * 4 + [COORDINATE] * 2


@pytest.mark.parametrize("n,count", [(1, 3), (2, 6), (3, 11), (4, 20)])
def test_hyperplane_counts(n, count):
    arr = build_fc_arrangement(n)
    assert len(arr) == count
    assert len(arr.epsilon_indices) == 2 ** n and len(arr.coordinate_indices) == n
    assert len({h.key() for h in arr.hyperplanes}) == count


@pytest.mark.parametrize("n", [0, -1, A.MAX_FC_DIMENSION + 1])
def test_capacity(n):
    with pytest.raises(CapacityError):
        build_fc_arrangement(n)


def test_hyperplane_validation():
    with pytest.raises(ArrangementError):
        Hyperplane((0, 0), 1)
    with pytest.raises(ArrangementError):
        Hyperplane((2, 2), 2)
    with pytest.raises(ArrangementError):
        Hyperplane((1, 1), 0, EPSILON, (1, 1))
    with pytest.raises(ArrangementError):
        Arrangement(2, (epsilon_hyperplane((1, 1)), Hyperplane((-1, -1), -1)))


def test_strict_feasible_examples():
    arr = build_fc_arrangement(2)
    assert A.strict_feasible(arr, (-1, -1, -1, -1, 1, 1))
    assert arr.signs_at((Fraction(1, 10), Fraction(1, 10))) == (-1, -1, -1, -1, 1, 1)
    # x + y > 1 and -x - y > 1
    assert not A.strict_feasible(arr, (1, -1, -1, 1, 1, 1))
    # the flat x + y = 1 = x - y is (1, 0), which violates y > 0
    assert not A.strict_feasible(arr, (0, 0, -1, -1, 1, 1))
    assert A.strict_feasible(arr, (0, 0, -1, -1, 1, 0))


def test_witness_realises_signs():
    arr = build_fc_arrangement(3)
    for ch in A.enumerate_chambers(arr)[:20]:
        x = A.feasibility_witness(arr, ch.signs)
        assert arr.signs_at(x) == ch.signs


def _exact_rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def zaslavsky(arr):
    """Regions and Euler characteristic of the complexified complement.

    Whitney: pi(t) = sum over subsets S with nonempty intersection of
    (-1)^|S| (-t)^rank(S); regions = pi(1), chi = pi(-1).
    """
    hyps = arr.hyperplanes
    regions = chi = 0
    for r in range(len(hyps) + 1):
        for sub in itertools.combinations(hyps, r):
            normals = [list(h.normal) for h in sub]
            rank = _exact_rank(normals)
            if rank != _exact_rank([[*h.normal, h.offset] for h in sub]):
                continue  # empty intersection
            regions += (-1) ** r * (-1) ** rank
            chi += (-1) ** r
    return regions, chi


@pytest.mark.parametrize("n,count", [(1, 4), (2, 16), (3, 96)])
def test_chamber_counts(n, count):
    arr = build_fc_arrangement(n)
    chambers = A.enumerate_chambers(arr)
    assert len(chambers) == count
    assert chambers == A.enumerate_chambers_exhaustive(arr)
    assert len(chambers) % 2 ** n == 0


@pytest.mark.parametrize("n", [1, 2])
def test_chamber_count_matches_whitney(n):
    arr = build_fc_arrangement(n)
    assert zaslavsky(arr)[0] == len(A.enumerate_chambers(arr))


def test_n2_line_formula():
    # regions of a line arrangement: 1 + L + sum over points (m_p - 1), minus parallel corrections
    # computed directly: 1 + #lines + #(intersection points counted with multiplicity - 1)
    arr = build_fc_arrangement(2)
    flats = A.enumerate_flats2(arr)
    assert len(A.enumerate_chambers(arr)) == 1 + len(arr) + sum(len(f.zero_hyperplanes) - 1 for f in flats)


def test_random_points_land_in_chambers():
    rng = random.Random(7)
    arr = build_fc_arrangement(3)
    chambers = {c.signs for c in A.enumerate_chambers(arr)}
    for _ in range(300):
        x = tuple(Fraction(rng.randint(-300, 300), 97) for _ in range(3))
        s = arr.signs_at(x)
        if 0 not in s:
            assert s in chambers


@pytest.mark.parametrize("n,count", [(1, 3), (2, 20)])
def test_codim1_counts(n, count):
    arr = build_fc_arrangement(n)
    walls = A.enumerate_codim1_faces(arr)
    assert len(walls) == count
    for w in walls:
        (j,) = w.zeros
        for s in (1, -1):
            assert A.strict_feasible(arr, w.signs[:j] + (s,) + w.signs[j + 1:])


def test_codim1_by_restriction():
    # walls on H_j are the regions of the arrangement restricted to H_j
    arr = build_fc_arrangement(2)
    walls = A.enumerate_codim1_faces(arr)
    per = [sum(1 for w in walls if w.zeros == (j,)) for j in range(len(arr))]
    assert per == [3, 3, 3, 3, 4, 4]


def test_n2_flats():
    arr = build_fc_arrangement(2)
    flats = {f.zero_hyperplanes: f.pattern for f in A.enumerate_flats2(arr)}
    x_plus_y, x_minus_y, mx_plus_y, mx_minus_y, lx, ly = range(6)
    assert flats[(x_plus_y, x_minus_y, ly)] == "boundary"
    assert flats[(lx, ly)] == "coordinate"
    assert not any(set(z) == {x_plus_y, mx_minus_y} for z in flats)
    assert len(flats) == 5
    assert all(A.fc_flat_pattern_ok(arr, f) for f in A.enumerate_flats2(arr))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_flat_trichotomy(n):
    arr = build_fc_arrangement(n)
    for f in A.enumerate_flats2(arr):
        assert A.fc_flat_pattern_ok(arr, f), f
        rows = [arr.hyperplanes[j] for j in f.zero_hyperplanes]
        assert _exact_rank([list(h.normal) for h in rows]) == 2
        assert _exact_rank([[*h.normal, h.offset] for h in rows]) == 2


def test_flats_are_maximal():
    arr = build_fc_arrangement(3)
    for f in A.enumerate_flats2(arr):
        base = [[*arr.hyperplanes[j].normal, arr.hyperplanes[j].offset] for j in f.zero_hyperplanes[:2]]
        for k, h in enumerate(arr.hyperplanes):
            through = _exact_rank(base + [[*h.normal, h.offset]]) == 2
            assert through == (k in f.zero_hyperplanes)


def test_codim2_faces_n2():
    arr = build_fc_arrangement(2)
    faces = A.enumerate_codim2_faces(arr)
    # 4 triple points (1,0), (-1,0), (0,1), (0,-1) and the origin
    assert len(faces) == 5
    for face, flat in faces:
        assert set(face.zeros) == set(flat.zero_hyperplanes)


def test_generic_arrangement_accepted():
    arr = Arrangement(2, (Hyperplane((1, 0), 0), Hyperplane((0, 1), 0), Hyperplane((1, 1), 1)))
    assert len(A.enumerate_chambers(arr)) == 7
    assert not arr.is_fc


def test_roundtrip_serialisation():
    for n in (1, 2, 3):
        arr = build_fc_arrangement(n)
        text = A.dumps_arrangement(arr)
        assert A.loads_arrangement(text) == arr
        assert A.dumps_arrangement(A.loads_arrangement(text)) == text
    gen = Arrangement(2, (Hyperplane((1, 2), 3), Hyperplane((0, 1), -1)))
    assert A.loads_arrangement(A.dumps_arrangement(gen)) == gen


def test_chamber_listing_roundtrip():
    text = A.dumps_chambers(build_fc_arrangement(2))
    arr, chambers = A.loads_chambers(text)
    assert len(chambers) == 16
    doc = json.loads(text)
    doc["chambers"][0] = [1, 1, 1, 1, 1, 1]
    with pytest.raises(ArrangementError):
        A.loads_chambers(json.dumps(doc))


def test_malformed_documents():
    with pytest.raises(ArrangementError):
        A.loads_arrangement("{")
    with pytest.raises(ArrangementError):
        A.loads_arrangement('{"dimension": 2}')
    doc = A.arrangement_to_dict(build_fc_arrangement(2))
    doc["hyperplanes"] = doc["hyperplanes"][:-1]
    with pytest.raises(ArrangementError):
        A.arrangement_from_dict(doc)


@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=5))
def test_epsilon_hyperplane_shape(eps):
    h = epsilon_hyperplane(eps)
    assert h.normal == tuple(eps) and h.offset == 1 and h.tag == tuple(eps)
    n = len(eps)
    for i in range(n):
        c = coordinate_hyperplane(n, i)
        assert c.offset == 0 and c.normal[i] == 1 and sum(map(abs, c.normal)) == 1
