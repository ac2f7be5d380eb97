"""The Salvetti 2-skeleton of the complement of a complexified real arrangement.

0-cells are chambers, 1-cells are arrows (chamber, wall) pointing across the
wall, and 2-cells are pairs (chamber, codim-2 face) whose boundary is the
difference of the two positive minimal galleries from the chamber to its
opposite around the face.

Attaching words are tuples of signed 1-based 1-cell indices: ``+k`` means 1-cell
``k - 1`` traversed along its arrow, ``-k`` against it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Sequence

from .arrangement import (
    Arrangement,
    Face,
    Flat2,
    Signs,
    arrangement_from_dict,
    arrangement_to_dict,
    enumerate_chambers,
    enumerate_codim1_faces,
    enumerate_codim2_faces,
    strict_feasible,
    walls_of,
)

Word = tuple[int, ...]


class IncidenceError(ValueError):
    """A face does not lie in the closure of the given chamber."""


@dataclass(frozen=True)
class Cell1:
    source: int
    hyperplane: int
    target: int


@dataclass(frozen=True)
class Cell2:
    base: int
    face: Face
    flat: Flat2
    gallery1: tuple[int, ...]
    gallery2: tuple[int, ...]

    @property
    def boundary(self) -> Word:
        """gallery1 followed by gallery2 reversed."""
        return tuple(k + 1 for k in self.gallery1) + tuple(-(k + 1) for k in reversed(self.gallery2))


@dataclass(eq=False)
class Complex2:
    arrangement: Arrangement
    chambers: list[Face]
    cells1: list[Cell1]
    cells2: list[Cell2]
    chamber_index: dict[Signs, int] = field(repr=False)
    cell1_index: dict[tuple[int, int], int] = field(repr=False)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.chambers), len(self.cells1), len(self.cells2)

    @property
    def euler_characteristic(self) -> int:
        c0, c1, c2 = self.counts
        return c0 - c1 + c2

    def word_endpoints(self, word: Sequence[int]) -> tuple[int, int]:
        """Start and end 0-cell of an edge path; raises if it is not a path."""
        pos = None
        start = None
        for letter in word:
            cell = self.cells1[abs(letter) - 1]
            a, b = (cell.source, cell.target) if letter > 0 else (cell.target, cell.source)
            if pos is None:
                start = a
            elif pos != a:
                raise IncidenceError(f"word {word} is not an edge path")
            pos = b
        if start is None:
            raise IncidenceError("empty word has no endpoints")
        return start, pos


def opposite_chamber(arr: Arrangement, chamber: Face, face: Face) -> Face:
    """Flip every sign of ``chamber`` where ``face`` is zero."""
    if not face.in_closure_of(chamber):
        raise IncidenceError(f"{face.signs} is not in the closure of {chamber.signs}")
    sig = tuple(-c if s == 0 else c for s, c in zip(face.signs, chamber.signs))
    if not strict_feasible(arr, sig):
        raise IncidenceError(f"opposite of {chamber.signs} across {face.signs} is empty")
    return Face(sig, 0)


# ---------------------------------------------------------------------------
# cyclic order of the chambers around a codim-2 face


def _solve_2x2(u: Sequence[int], v: Sequence[int], w: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Exact (alpha, beta) with w = alpha*u + beta*v; u, v independent."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            det = u[i] * v[j] - u[j] * v[i]
            if det:
                alpha = Fraction(w[i] * v[j] - w[j] * v[i], det)
                beta = Fraction(u[i] * w[j] - u[j] * w[i], det)
                if any(alpha * a + beta * b != c for a, b, c in zip(u, v, w)):
                    raise ValueError("vector is not in the span")
                return alpha, beta
    raise ValueError("u and v are parallel")


def _half(p: tuple[Fraction, Fraction]) -> int:
    x, y = p
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]) -> int:
    hp, hq = _half(p), _half(q)
    if hp != hq:
        return hp - hq
    cross = p[0] * q[1] - p[1] * q[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def local_cycle(arr: Arrangement, flat: Flat2) -> tuple[list[tuple[int, ...]], list[int]]:
    """Cyclic order of the 2m local chambers at a codim-2 flat.

    Returns ``(sectors, crossings)``: ``sectors[t]`` is the sign pattern on
    ``flat.zero_hyperplanes`` of the t-th sector, and ``crossings[t]`` is the
    hyperplane index crossed going from sector t to sector t+1 (cyclically).

    Every hyperplane through the flat has normal in the 2-dimensional span of
    two independent ones, u and v.  In the coordinates p = u.x - b_u,
    q = v.x - b_v of a complementary 2-plane, hyperplane k is the line
    alpha_k p + beta_k q = 0, so the sectors are read off from an exact angular
    sort of the 2m rays on those lines.
    """
    zs = flat.zero_hyperplanes
    hyps = [arr.hyperplanes[k] for k in zs]
    u = hyps[0].normal
    v = next(h.normal for h in hyps[1:] if any(u[i] * h.normal[j] != u[j] * h.normal[i]
                                             for i in range(len(u)) for j in range(len(u))))
    coeffs = [_solve_2x2(u, v, h.normal) for h in hyps]
    rays = []
    for k, (alpha, beta) in zip(zs, coeffs):
        d = (-beta, alpha)
        rays.append((d, k))
        rays.append(((beta, -alpha), k))
    rays.sort(key=cmp_to_key(lambda r, s: _angle_cmp(r[0], s[0])))
    count = len(rays)
    sectors = []
    crossings = []
    for t in range(count):
        r0 = rays[t][0]
        r1 = rays[(t + 1) % count][0]
        w = (r0[0] + r1[0], r0[1] + r1[1])
        pattern = []
        for alpha, beta in coeffs:
            val = alpha * w[0] + beta * w[1]
            pattern.append(1 if val > 0 else -1)
        sectors.append(tuple(pattern))
        crossings.append(rays[(t + 1) % count][1])
    return sectors, crossings


def _lift(face: Face, zs: Sequence[int], pattern: Sequence[int]) -> Signs:
    sig = list(face.signs)
    for k, s in zip(zs, pattern):
        sig[k] = s
    return tuple(sig)


def galleries(arr: Arrangement, chamber: Face, face: Face, flat: Flat2) -> tuple[list[tuple[Signs, int]], list[tuple[Signs, int]]]:
    """The two minimal positive galleries from ``chamber`` to its opposite around ``face``.

    Each gallery is a list of (source chamber signs, crossed hyperplane).  The
    first returned gallery is the one whose first crossing has the smaller
    hyperplane index.
    """
    if not face.in_closure_of(chamber):
        raise IncidenceError(f"{face.signs} is not in the closure of {chamber.signs}")
    zs = flat.zero_hyperplanes
    sectors, crossings = local_cycle(arr, flat)
    mine = tuple(chamber.signs[k] for k in zs)
    t0 = sectors.index(mine)
    count = len(sectors)
    m = count // 2
    fwd = []
    back = []
    for step in range(m):
        t = (t0 + step) % count
        fwd.append((_lift(face, zs, sectors[t]), crossings[t]))
        t = (t0 - step) % count
        back.append((_lift(face, zs, sectors[t]), crossings[(t - 1) % count]))
    if fwd[0][1] > back[0][1]:
        fwd, back = back, fwd
    return fwd, back


# ---------------------------------------------------------------------------
# assembly


@lru_cache(maxsize=None)
def build_salvetti_2_skeleton(arr: Arrangement) -> Complex2:
    chambers = enumerate_chambers(arr)
    chamber_index = {c.signs: i for i, c in enumerate(chambers)}
    cells1 = []
    for i, c in enumerate(chambers):
        for j in walls_of(arr, c):
            flipped = c.signs[:j] + (-c.signs[j],) + c.signs[j + 1:]
            cells1.append(Cell1(i, j, chamber_index[flipped]))
    cell1_index = {(c.source, c.hyperplane): k for k, c in enumerate(cells1)}

    cells2 = []
    cycles: dict[tuple[int, ...], tuple] = {}
    for face, flat in enumerate_codim2_faces(arr):
        if flat.zero_hyperplanes not in cycles:
            cycles[flat.zero_hyperplanes] = local_cycle(arr, flat)
        sectors, _ = cycles[flat.zero_hyperplanes]
        for pattern in sectors:
            sig = _lift(face, flat.zero_hyperplanes, pattern)
            base = chamber_index[sig]
            g1, g2 = galleries(arr, chambers[base], face, flat)
            cells2.append(Cell2(
                base,
                face,
                flat,
                tuple(cell1_index[chamber_index[s], k] for s, k in g1),
                tuple(cell1_index[chamber_index[s], k] for s, k in g2),
            ))
    cells2.sort(key=lambda c: (c.base, c.face.signs))
    return Complex2(arr, chambers, cells1, cells2, chamber_index, cell1_index)


def check_complex(cx: Complex2) -> list[str]:
    """Structural problems with ``cx``; empty when everything holds."""
    problems = []
    walls = enumerate_codim1_faces(cx.arrangement)
    if len(cx.cells1) != 2 * len(walls):
        problems.append(f"{len(cx.cells1)} 1-cells for {len(walls)} walls")
    for k, cell in enumerate(cx.cells1):
        a = cx.chambers[cell.source].signs
        b = cx.chambers[cell.target].signs
        diff = [j for j in range(len(a)) if a[j] != b[j]]
        if diff != [cell.hyperplane]:
            problems.append(f"1-cell {k} does not cross exactly its wall")
    for k, cell in enumerate(cx.cells2):
        m = len(cell.flat.zero_hyperplanes)
        if len(cell.gallery1) != m or len(cell.gallery2) != m:
            problems.append(f"2-cell {k} has galleries of the wrong length")
            continue
        try:
            s1, e1 = cx.word_endpoints([g + 1 for g in cell.gallery1])
            s2, e2 = cx.word_endpoints([g + 1 for g in cell.gallery2])
        except IncidenceError as exc:
            problems.append(f"2-cell {k}: {exc}")
            continue
        if not (s1 == s2 == cell.base and e1 == e2):
            problems.append(f"2-cell {k} galleries do not share endpoints")
        opp = opposite_chamber(cx.arrangement, cx.chambers[cell.base], cell.face)
        if cx.chambers[e1] != opp:
            problems.append(f"2-cell {k} does not end at the opposite chamber")
        h1 = [cx.cells1[g].hyperplane for g in cell.gallery1]
        h2 = [cx.cells1[g].hyperplane for g in cell.gallery2]
        if h1 != h2[::-1] or sorted(h1) != list(cell.flat.zero_hyperplanes):
            problems.append(f"2-cell {k} galleries do not cross in reversed orders")
        mid1 = {cx.cells1[g].target for g in cell.gallery1[:-1]}
        mid2 = {cx.cells1[g].target for g in cell.gallery2[:-1]}
        if mid1 & mid2:
            problems.append(f"2-cell {k} galleries meet before the end")
    return problems


# ---------------------------------------------------------------------------
# serialisation


def complex_to_dict(cx: Complex2) -> dict:
    return {
        "arrangement": arrangement_to_dict(cx.arrangement),
        "counts": list(cx.counts),
        "euler_characteristic": cx.euler_characteristic,
        "cells0": [list(c.signs) for c in cx.chambers],
        "cells1": [[c.source, c.hyperplane, c.target] for c in cx.cells1],
        "cells2": [
            {
                "base": c.base,
                "face": list(c.face.signs),
                "flat": list(c.flat.zero_hyperplanes),
                "pattern": c.flat.pattern,
                "gallery1": list(c.gallery1),
                "gallery2": list(c.gallery2),
                "boundary": list(c.boundary),
            }
            for c in cx.cells2
        ],
    }


def complex_from_dict(data: dict) -> Complex2:
    """Rebuild a complex from its document; raises IncidenceError if it is inconsistent."""
    try:
        arr = arrangement_from_dict(data["arrangement"])
        chambers = [Face(tuple(int(v) for v in s), 0) for s in data["cells0"]]
        cells1 = [Cell1(int(a), int(j), int(b)) for a, j, b in data["cells1"]]
        cells2 = []
        for rec in data["cells2"]:
            signs = tuple(int(v) for v in rec["face"])
            cells2.append(Cell2(
                int(rec["base"]),
                Face(signs, 2),
                Flat2(tuple(int(v) for v in rec["flat"]), str(rec.get("pattern", ""))),
                tuple(int(v) for v in rec["gallery1"]),
                tuple(int(v) for v in rec["gallery2"]),
            ))
    except (KeyError, TypeError, ValueError) as exc:
        raise IncidenceError(f"malformed complex document: {exc}") from exc
    cx = Complex2(
        arr, chambers, cells1, cells2,
        {c.signs: i for i, c in enumerate(chambers)},
        {(c.source, c.hyperplane): k for k, c in enumerate(cells1)},
    )
    n0, n1 = len(chambers), len(cells1)
    if any(not (0 <= c.source < n0 and 0 <= c.target < n0 and 0 <= c.hyperplane < len(arr)) for c in cells1) \
            or any(not 0 <= c.base < n0 or any(not 0 <= g < n1 for g in (*c.gallery1, *c.gallery2)) for c in cells2) \
            or any(len(c.signs) != len(arr) for c in chambers):
        raise IncidenceError("complex document has out-of-range indices")
    problems = check_complex(cx)
    if problems:
        raise IncidenceError("; ".join(problems[:3]))
    if [list(c.boundary) for c in cells2] != [rec.get("boundary", list(c.boundary)) for rec, c in zip(data["cells2"], cells2)]:
        raise IncidenceError("stored boundary words disagree with the galleries")
    return cx


def dumps_complex(cx: Complex2) -> str:
    return json.dumps(complex_to_dict(cx), indent=1) + "\n"


def loads_complex(text: str) -> Complex2:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IncidenceError(f"not a valid complex document: {exc}") from exc
    return complex_from_dict(data)
