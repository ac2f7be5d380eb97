"""Coordinate sign flips acting on an arrangement, its faces and its Salvetti complex.

An element ``g`` of {-1, 1}^n acts on R^n by ``x -> (g_1 x_1, ..., g_n x_n)``.
When the arrangement is stable under this map, ``g`` permutes hyperplanes and
acts on sign vectors; that is all the quotient construction needs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .arrangement import COORDINATE, EPSILON, Arrangement, Face, Hyperplane, Signs
from .salvetti import Cell1, Cell2, Complex2, complex_from_dict, complex_to_dict

TYPE1_NONCLOSED = "type1"
TYPE2_CLOSED = "type2"
INTERIOR = "interior"
BOUNDARY = "boundary"
COORDINATE_DISC = "coordinate"

SignFlip = tuple[int, ...]


class ActionError(ValueError):
    pass


def identity(n: int) -> SignFlip:
    return (1,) * n


def compose(g: SignFlip, h: SignFlip) -> SignFlip:
    return tuple(a * b for a, b in zip(g, h))


def group_elements(n: int) -> list[SignFlip]:
    """All of {-1, 1}^n, identity first."""
    return list(itertools.product((1, -1), repeat=n))


@dataclass(frozen=True)
class HyperplaneAction:
    """How ``g`` permutes hyperplane indices, with the induced sign change."""

    perm: tuple[int, ...]
    factor: tuple[int, ...]

    def signs(self, signs: Signs) -> Signs:
        out = [0] * len(signs)
        for j, s in enumerate(signs):
            out[self.perm[j]] = self.factor[j] * s
        return tuple(out)


@lru_cache(maxsize=None)
def hyperplane_action(arr: Arrangement, g: SignFlip) -> HyperplaneAction:
    if len(g) != arr.dimension or set(g) - {-1, 1}:
        raise ActionError(f"{g} is not a sign flip in dimension {arr.dimension}")
    perm = []
    factor = []
    for h in arr.hyperplanes:
        image = tuple(gi * a for gi, a in zip(g, h.normal))
        probe = Hyperplane(image, h.offset)
        j = arr.index_of(probe)
        if j is None:
            raise ActionError(f"arrangement is not stable under {g}: {h} has no image")
        target = arr.hyperplanes[j]
        perm.append(j)
        factor.append(1 if (target.normal, target.offset) == (image, h.offset) else -1)
    return HyperplaneAction(tuple(perm), tuple(factor))


def act_signs(arr: Arrangement, g: SignFlip, signs: Signs) -> Signs:
    return hyperplane_action(arr, g).signs(signs)


def act_face(arr: Arrangement, g: SignFlip, face: Face) -> Face:
    return Face(act_signs(arr, g, face.signs), face.codim)


class CellAction:
    """Permutation action of the whole group on the cells of a complex."""

    def __init__(self, cx: Complex2) -> None:
        self.complex = cx
        arr = cx.arrangement
        self.elements = group_elements(arr.dimension)
        cell2_index = {(c.base, c.face.signs): k for k, c in enumerate(cx.cells2)}
        self.perm0: dict[SignFlip, list[int]] = {}
        self.perm1: dict[SignFlip, list[int]] = {}
        self.perm2: dict[SignFlip, list[int]] = {}
        for g in self.elements:
            act = hyperplane_action(arr, g)
            p0 = [cx.chamber_index[act.signs(c.signs)] for c in cx.chambers]
            p1 = [cx.cell1_index[p0[c.source], act.perm[c.hyperplane]] for c in cx.cells1]
            p2 = [cell2_index[p0[c.base], act.signs(c.face.signs)] for c in cx.cells2]
            self.perm0[g], self.perm1[g], self.perm2[g] = p0, p1, p2

    def act0(self, g: SignFlip, k: int) -> int:
        return self.perm0[g][k]

    def act1(self, g: SignFlip, k: int) -> int:
        return self.perm1[g][k]

    def act2(self, g: SignFlip, k: int) -> int:
        return self.perm2[g][k]

    def act_word(self, g: SignFlip, word) -> tuple[int, ...]:
        p1 = self.perm1[g]
        return tuple((p1[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in word)


@lru_cache(maxsize=None)
def cell_action(cx: Complex2) -> CellAction:
    return CellAction(cx)


def verify_free_action(cx: Complex2) -> bool:
    """True iff no non-identity sign flip fixes any cell of ``cx``.

    Raises :class:`ActionError` if the arrangement is not stable under the
    group, in which case there is no action at all.
    """
    action = cell_action(cx)
    for g in action.elements[1:]:
        for perm in (action.perm0[g], action.perm1[g], action.perm2[g]):
            if any(perm[k] == k for k in range(len(perm))):
                return False
    return True


@dataclass
class OrbitCell:
    representative: int
    orbit_size: int
    cell_type: str = ""
    # 1-cells: source and target 0-cell orbits; 2-cells: projected boundary
    source: int = -1
    target: int = -1
    word: tuple[int, ...] = ()

    @property
    def is_loop(self) -> bool:
        return self.source == self.target and self.source >= 0


@dataclass(eq=False)
class QuotientComplex2:
    complex: Complex2
    cells0: list[OrbitCell]
    cells1: list[OrbitCell]
    cells2: list[OrbitCell]
    orbit0: list[int] = field(repr=False)
    orbit1: list[int] = field(repr=False)
    orbit2: list[int] = field(repr=False)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.cells0), len(self.cells1), len(self.cells2)

    @property
    def euler_characteristic(self) -> int:
        c0, c1, c2 = self.counts
        return c0 - c1 + c2

    def project_word(self, word) -> tuple[int, ...]:
        return tuple((self.orbit1[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in word)

    def chamber(self, orbit: int) -> Face:
        return self.complex.chambers[self.cells0[orbit].representative]

    def disc_shape(self, k: int) -> tuple[int, int]:
        """(distinct 1-cells, distinct 0-cells) on the boundary of 2-cell ``k``."""
        word = self.cells2[k].word
        ones = {abs(x) - 1 for x in word}
        zeros = set()
        for e in ones:
            zeros.add(self.cells1[e].source)
            zeros.add(self.cells1[e].target)
        return len(ones), len(zeros)


def _positive(arr: Arrangement, signs: Signs) -> bool:
    return all(signs[j] == 1 for j in arr.coordinate_indices)


def _orbits(elements, perm: dict, count: int, key) -> tuple[list[int], list[list[int]]]:
    """Partition ``range(count)`` into orbits, each led by the minimum of ``key``."""
    orbit_of = [-1] * count
    members: list[list[int]] = []
    reps = []
    for k in range(count):
        if orbit_of[k] >= 0:
            continue
        orb = sorted({perm[g][k] for g in elements})
        for x in orb:
            orbit_of[x] = len(members)
        members.append(orb)
        reps.append(min(orb, key=key))
    # renumber orbits by representative index
    order = sorted(range(len(reps)), key=lambda i: reps[i])
    renum = {old: new for new, old in enumerate(order)}
    return [renum[o] for o in orbit_of], [members[i] for i in order]


def _cell2_type(arr: Arrangement, cell: Cell2) -> str:
    kinds = {arr.hyperplanes[j].kind for j in cell.flat.zero_hyperplanes}
    if kinds == {EPSILON}:
        return INTERIOR
    if kinds == {COORDINATE}:
        return COORDINATE_DISC
    return BOUNDARY


@lru_cache(maxsize=None)
def _build_quotient(cx: Complex2) -> QuotientComplex2:
    arr = cx.arrangement
    action = cell_action(cx)
    els = action.elements
    for g in els[1:]:
        for perm in (action.perm0[g], action.perm1[g], action.perm2[g]):
            if any(perm[k] == k for k in range(len(perm))):
                raise ActionError(f"{g} fixes a cell; the action is not free")

    def key0(k: int):
        s = cx.chambers[k].signs
        return (not _positive(arr, s), s)

    def key1(k: int):
        c = cx.cells1[k]
        s = cx.chambers[c.source].signs
        return (not _positive(arr, s), s, c.hyperplane)

    def key2(k: int):
        c = cx.cells2[k]
        s = cx.chambers[c.base].signs
        return (not _positive(arr, s), s, c.face.signs)

    orbit0, mem0 = _orbits(els, action.perm0, len(cx.chambers), key0)
    orbit1, mem1 = _orbits(els, action.perm1, len(cx.cells1), key1)
    orbit2, mem2 = _orbits(els, action.perm2, len(cx.cells2), key2)

    cells0 = [OrbitCell(min(m, key=key0), len(m)) for m in mem0]
    cells1 = []
    for m in mem1:
        rep = min(m, key=key1)
        c: Cell1 = cx.cells1[rep]
        kind = arr.hyperplanes[c.hyperplane].kind
        cells1.append(OrbitCell(
            rep, len(m),
            TYPE2_CLOSED if kind == COORDINATE else TYPE1_NONCLOSED,
            source=orbit0[c.source], target=orbit0[c.target],
        ))
    q = QuotientComplex2(cx, cells0, cells1, [], orbit0, orbit1, orbit2)
    for m in mem2:
        rep = min(m, key=key2)
        c2 = cx.cells2[rep]
        q.cells2.append(OrbitCell(rep, len(m), _cell2_type(arr, c2), word=q.project_word(c2.boundary)))
    return q


def build_quotient(cx: Complex2) -> QuotientComplex2:
    """Orbit complex of the sign-flip action; raises ActionError if not free."""
    return _build_quotient(cx)


def lift_consistent(q: QuotientComplex2, k: int, g: SignFlip) -> bool:
    """Does projecting 2-cell orbit ``k`` from the lift ``g . rep`` give the same relator?

    The two galleries are ordered by hyperplane index, which ``g`` may
    permute, so the second lift may yield the inverse word.
    """
    cx = q.complex
    action = cell_action(cx)
    other = cx.cells2[action.act2(g, q.cells2[k].representative)]
    w = q.project_word(other.boundary)
    base = q.cells2[k].word
    inv = tuple(-x for x in reversed(base))
    return w in (base, inv)


def quotient_to_dict(q: QuotientComplex2) -> dict:
    return {
        "complex": complex_to_dict(q.complex),
        "counts": list(q.counts),
        "euler_characteristic": q.euler_characteristic,
        "cells0": [
            {"representative": c.representative, "orbit_size": c.orbit_size,
             "signs": list(q.complex.chambers[c.representative].signs)}
            for c in q.cells0
        ],
        "cells1": [
            {"representative": c.representative, "orbit_size": c.orbit_size,
             "type": c.cell_type, "source": c.source, "target": c.target}
            for c in q.cells1
        ],
        "cells2": [
            {"representative": c.representative, "orbit_size": c.orbit_size,
             "type": c.cell_type, "boundary": list(c.word)}
            for c in q.cells2
        ],
        "orbits": {"cells0": q.orbit0, "cells1": q.orbit1, "cells2": q.orbit2},
    }


def quotient_from_dict(data: dict) -> QuotientComplex2:
    """Parse a quotient document.

    The orbit cells are recomputed from the embedded complex and must agree
    with the document, so a parsed quotient is always a genuine one.
    """
    try:
        cx = complex_from_dict(data["complex"])
    except KeyError as exc:
        raise ActionError(f"malformed quotient document: {exc}") from exc
    q = _build_quotient(cx)
    if quotient_to_dict(q) != data:
        raise ActionError("quotient document does not match the quotient of its complex")
    return q


def dumps_quotient(q: QuotientComplex2) -> str:
    return json.dumps(quotient_to_dict(q), indent=1) + "\n"


def loads_quotient(text: str) -> QuotientComplex2:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ActionError(f"not a valid quotient document: {exc}") from exc
    return quotient_from_dict(data)
