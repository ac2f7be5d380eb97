import json
from collections import deque

import pytest

from fc_salvetti import arrangement as A
from fc_salvetti.arrangement import Face, build_fc_arrangement
from fc_salvetti.salvetti import (
    IncidenceError,
    build_salvetti_2_skeleton,
    check_complex,
    complex_to_dict,
    dumps_complex,
    galleries,
    loads_complex,
    local_cycle,
    opposite_chamber,
)

SIGMA0 = (-1, -1, -1, -1, 1, 1)


def chamber_at(arr, x):
    return Face(arr.signs_at(x), 0)


def test_opposite_across_wall():
    arr = build_fc_arrangement(2)
    sigma = Face(SIGMA0, 0)
    wall = Face((0, -1, -1, -1, 1, 1), 1)
    opp = opposite_chamber(arr, sigma, wall)
    assert opp.signs == (1, -1, -1, -1, 1, 1)
    assert opposite_chamber(arr, opp, wall) == sigma


def test_opposite_across_triple_point():
    arr = build_fc_arrangement(2)
    sigma = Face((1, -1, -1, -1, 1, 1), 0)
    point = Face((0, 0, -1, -1, 1, 0), 2)
    opp = opposite_chamber(arr, sigma, point)
    # flip the signs of y = 0, x + y = 1 and x - y = 1
    assert opp.signs == (-1, 1, -1, -1, 1, -1)
    assert opp == chamber_at(arr, (1.2, -0.3))
    # (0.5, -0.2) has x - y < 1: it is the chamber reached by flipping only two of the three
    assert chamber_at(arr, (0.5, -0.2)).signs == (-1, -1, -1, -1, 1, -1)
    assert opposite_chamber(arr, opp, point) == sigma


def test_opposite_requires_incidence():
    arr = build_fc_arrangement(2)
    with pytest.raises(IncidenceError):
        opposite_chamber(arr, Face(SIGMA0, 0), Face(arr.signs_at((-1, 0)), 2))


@pytest.mark.parametrize("n,counts,chi", [(1, (4, 6, 0), -2), (2, (16, 40, 28), 4)])
def test_cell_counts(n, counts, chi):
    cx = build_salvetti_2_skeleton(build_fc_arrangement(n))
    assert cx.counts == counts
    assert cx.euler_characteristic == chi


def test_n2_euler_characteristic_matches_whitney():
    from test_arrangement import zaslavsky

    arr = build_fc_arrangement(2)
    assert zaslavsky(arr)[1] == build_salvetti_2_skeleton(arr).euler_characteristic


@pytest.mark.parametrize("n", [1, 2, 3])
def test_structure(n):
    arr = build_fc_arrangement(n)
    cx = build_salvetti_2_skeleton(arr)
    assert check_complex(cx) == []
    assert len(cx.cells1) == 2 * len(A.enumerate_codim1_faces(arr))
    for c in cx.cells1:
        back = cx.cell1_index[c.target, c.hyperplane]
        assert cx.cells1[back].target == c.source


def local_geodesics(arr, chamber, face, flat):
    """All shortest chamber paths from ``chamber`` to its opposite around ``face``.

    Plain BFS over chambers whose closure contains the face, flipping one
    flat hyperplane at a time.
    """
    zs = flat.zero_hyperplanes
    target = tuple(-s if j in zs else s for j, s in enumerate(chamber.signs))
    dist = {chamber.signs: 0}
    queue = deque([chamber.signs])
    while queue:
        s = queue.popleft()
        for j in zs:
            t = s[:j] + (-s[j],) + s[j + 1:]
            wall = s[:j] + (0,) + s[j + 1:]
            if t in dist or not A.strict_feasible(arr, t) or not A.strict_feasible(arr, wall):
                continue
            dist[t] = dist[s] + 1
            queue.append(t)
    paths = []

    def extend(path):
        s = path[-1][0] if path else chamber.signs
        if s == target:
            paths.append(tuple(path))
            return
        for j in zs:
            t = s[:j] + (-s[j],) + s[j + 1:]
            if dist.get(t) == dist[s] + 1:
                extend(path + [(t, j)])

    extend([])
    return dist[target], paths


@pytest.mark.parametrize("n", [2, 3])
def test_galleries_are_the_two_geodesics(n):
    arr = build_fc_arrangement(n)
    cx = build_salvetti_2_skeleton(arr)
    for cell in cx.cells2[:: max(1, len(cx.cells2) // 60)]:
        base = cx.chambers[cell.base]
        length, paths = local_geodesics(arr, base, cell.face, cell.flat)
        assert length == len(cell.flat.zero_hyperplanes)
        assert len(paths) == 2
        got = set()
        for gallery in (cell.gallery1, cell.gallery2):
            got.add(tuple((cx.chambers[cx.cells1[k].target].signs, cx.cells1[k].hyperplane) for k in gallery))
        assert got == set(paths)


def test_local_cycle_sizes():
    arr = build_fc_arrangement(2)
    sizes = {f.zero_hyperplanes: len(local_cycle(arr, f)[0]) for f in A.enumerate_flats2(arr)}
    assert sizes[(4, 5)] == 4
    assert sizes[(0, 1, 5)] == 6


def test_galleries_origin_and_triple_point():
    arr = build_fc_arrangement(2)
    flats = {f.zero_hyperplanes: f for f in A.enumerate_flats2(arr)}
    origin = Face((-1, -1, -1, -1, 0, 0), 2)
    g1, g2 = galleries(arr, Face(SIGMA0, 0), origin, flats[(4, 5)])
    assert len(g1) == len(g2) == 2
    assert [j for _, j in g1] == [j for _, j in g2][::-1]
    point = Face((0, 0, -1, -1, 1, 0), 2)
    start = Face((1, -1, -1, -1, 1, 1), 0)
    g1, g2 = galleries(arr, start, point, flats[(0, 1, 5)])
    assert len(g1) == len(g2) == 3
    assert sorted(j for _, j in g1) == [0, 1, 5]
    assert [j for _, j in g1] == [j for _, j in g2][::-1]


def test_roundtrip():
    for n in (1, 2, 3):
        cx = build_salvetti_2_skeleton(build_fc_arrangement(n))
        text = dumps_complex(cx)
        again = loads_complex(text)
        assert again.counts == cx.counts
        assert dumps_complex(again) == text


def test_tampered_complex_rejected():
    cx = build_salvetti_2_skeleton(build_fc_arrangement(2))
    doc = complex_to_dict(cx)
    doc["cells2"][0]["gallery1"] = doc["cells2"][0]["gallery2"]
    with pytest.raises(IncidenceError):
        loads_complex(json.dumps(doc))
    with pytest.raises(IncidenceError):
        loads_complex("[]")
