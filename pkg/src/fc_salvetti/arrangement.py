"""Real affine hyperplane arrangements and their faces.

Faces are handled purely combinatorially as sign vectors (covectors) with
entries in {-1, 0, 1}, one per hyperplane.  Whether a sign vector is realised
by a point of R^n is decided by an exact rational LP, so nothing in this
module touches floating point.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .lp import OPTIMAL, maximize

EPSILON = "epsilon"
COORDINATE = "coordinate"
GENERIC = "generic"

#: Largest n accepted by :func:`build_fc_arrangement`.
MAX_FC_DIMENSION = 6

Signs = tuple[int, ...]


class CapacityError(ValueError):
    """Requested instance is outside the supported size range."""


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane ``{x : <normal, x> = offset}``."""

    normal: tuple[int, ...]
    offset: int
    kind: str = GENERIC
    tag: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not any(self.normal):
            raise ArrangementError("hyperplane normal must be nonzero")
        if math.gcd(*self.normal, self.offset) != 1:
            raise ArrangementError(f"coefficients of {self} are not primitive")
        if self.kind == EPSILON:
            if set(self.normal) - {-1, 1} or self.offset != 1 or self.tag != self.normal:
                raise ArrangementError(f"malformed epsilon hyperplane {self}")
        elif self.kind == COORDINATE:
            if len(self.tag) != 1:
                raise ArrangementError(f"malformed coordinate hyperplane {self}")
            (i,) = self.tag
            unit = tuple(int(k == i) for k in range(len(self.normal)))
            if self.normal != unit or self.offset != 0:
                raise ArrangementError(f"malformed coordinate hyperplane {self}")

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def evaluate(self, x: Sequence[Fraction | int]) -> Fraction:
        return sum((Fraction(a) * v for a, v in zip(self.normal, x)), Fraction(0)) - self.offset

    def side(self, x: Sequence[Fraction | int]) -> int:
        v = self.evaluate(x)
        return (v > 0) - (v < 0)

    def key(self) -> tuple[int, ...]:
        """Orientation-free identity of the underlying point set."""
        coeffs = (*self.normal, self.offset)
        lead = next(c for c in coeffs if c)
        return coeffs if lead > 0 else tuple(-c for c in coeffs)

    def __str__(self) -> str:
        terms = " ".join(f"{a:+d}*x{i + 1}" for i, a in enumerate(self.normal) if a)
        return f"{terms} = {self.offset}"


def epsilon_hyperplane(eps: Sequence[int]) -> Hyperplane:
    eps = tuple(eps)
    return Hyperplane(eps, 1, EPSILON, eps)


def coordinate_hyperplane(n: int, i: int) -> Hyperplane:
    return Hyperplane(tuple(int(k == i) for k in range(n)), 0, COORDINATE, (i,))


@dataclass(frozen=True)
class Arrangement:
    dimension: int
    hyperplanes: tuple[Hyperplane, ...]
    is_fc: bool = False

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ArrangementError("dimension must be positive")
        seen = set()
        for h in self.hyperplanes:
            if h.dimension != self.dimension:
                raise ArrangementError(f"{h} does not live in dimension {self.dimension}")
            if h.key() in seen:
                raise ArrangementError(f"duplicate hyperplane {h}")
            seen.add(h.key())
        if self.is_fc:
            n = self.dimension
            if self.hyperplanes != build_fc_arrangement(n).hyperplanes:
                raise ArrangementError("hyperplane list is not the F_C arrangement")

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def signs_at(self, x: Sequence[Fraction | int]) -> Signs:
        return tuple(h.side(x) for h in self.hyperplanes)

    def index_of(self, h: Hyperplane) -> int | None:
        key = h.key()
        for j, other in enumerate(self.hyperplanes):
            if other.key() == key:
                return j
        return None

    @property
    def epsilon_indices(self) -> tuple[int, ...]:
        return tuple(j for j, h in enumerate(self.hyperplanes) if h.kind == EPSILON)

    @property
    def coordinate_indices(self) -> tuple[int, ...]:
        return tuple(j for j, h in enumerate(self.hyperplanes) if h.kind == COORDINATE)


@lru_cache(maxsize=None)
def build_fc_arrangement(n: int) -> Arrangement:
    """The 2^n hyperplanes ``eps . x = 1`` followed by the n coordinate planes."""
    if n < 1 or n > MAX_FC_DIMENSION:
        raise CapacityError(f"n must satisfy 1 <= n <= {MAX_FC_DIMENSION}, got {n}")
    hyps = [epsilon_hyperplane(eps) for eps in itertools.product((1, -1), repeat=n)]
    hyps += [coordinate_hyperplane(n, i) for i in range(n)]
    arr = Arrangement(n, tuple(hyps))
    object.__setattr__(arr, "is_fc", True)
    return arr


# ---------------------------------------------------------------------------
# exact feasibility


def strict_feasible(arr: Arrangement, signs: Sequence[int]) -> bool:
    """Is there a point whose side of every hyperplane is exactly ``signs``?"""
    return _strict_feasible(arr, tuple(signs))


@lru_cache(maxsize=None)
def _strict_feasible(arr: Arrangement, signs: Signs) -> bool:
    if len(signs) != len(arr):
        raise ArrangementError("sign vector length does not match arrangement")
    return feasibility_witness(arr, signs) is not None


def feasibility_witness(arr: Arrangement, signs: Sequence[int]) -> tuple[Fraction, ...] | None:
    """A rational point realising ``signs``, or None.

    Solves max t subject to s_j (a_j.x - b_j) >= t on the signed rows,
    a_j.x = b_j on the zero rows and t <= 1, with x free.  The sign vector is
    realised iff the optimum is positive.  Free variables are split as
    x = p - q and t is written 1 - u with u >= 0.
    """
    n = arr.dimension
    a_ub: list[list[int]] = []
    b_ub: list[int] = []
    a_eq: list[list[int]] = []
    b_eq: list[int] = []
    for h, s in zip(arr.hyperplanes, signs):
        a = h.normal
        if s == 0:
            a_eq.append([*a, *(-v for v in a), 0])
            b_eq.append(h.offset)
        else:
            # -s a.x + s b + t <= 0  with t = 1 - u
            row = [-s * v for v in a]
            a_ub.append([*row, *(-v for v in row), -1])
            b_ub.append(-s * h.offset - 1)
    c = [0] * (2 * n) + [-1]
    res = maximize(c, a_ub, b_ub, a_eq, b_eq)
    if res.status != OPTIMAL:
        return None
    # optimum of -u, so t = 1 + value
    if 1 + res.value <= 0:
        return None
    x = res.x
    return tuple(x[i] - x[n + i] for i in range(n))


# ---------------------------------------------------------------------------
# faces


@dataclass(frozen=True, order=True)
class Face:
    signs: Signs
    codim: int = field(compare=False)

    @property
    def zeros(self) -> tuple[int, ...]:
        return tuple(j for j, s in enumerate(self.signs) if s == 0)

    def is_chamber(self) -> bool:
        return self.codim == 0

    def in_closure_of(self, chamber: "Face") -> bool:
        return all(s == 0 or s == c for s, c in zip(self.signs, chamber.signs))


@dataclass(frozen=True)
class Flat2:
    """A codimension-2 intersection flat and every hyperplane through it."""

    zero_hyperplanes: tuple[int, ...]
    pattern: str = ""


def _generic_point(arr: Arrangement) -> tuple[Fraction, ...]:
    n = arr.dimension
    for t in itertools.count(2):
        x = tuple(Fraction(1, t + k * k * t) for k in range(n))
        if all(h.evaluate(x) != 0 for h in arr.hyperplanes):
            return x
    raise AssertionError("unreachable")


def seed_chamber(arr: Arrangement) -> Face:
    return Face(arr.signs_at(_generic_point(arr)), 0)


def _with_sign(signs: Signs, j: int, s: int) -> Signs:
    return signs[:j] + (s,) + signs[j + 1:]


@dataclass
class FaceData:
    """Chambers and walls found by one wall-crossing sweep."""

    chambers: list[Face]
    walls: list[Face]
    # chamber signs -> hyperplane indices that are walls of that chamber
    wall_sets: dict[Signs, tuple[int, ...]]


@lru_cache(maxsize=None)
def sweep(arr: Arrangement) -> FaceData:
    """Breadth-first wall crossing from the seed chamber."""
    start = seed_chamber(arr).signs
    seen = {start}
    queue = deque([start])
    wall_sets: dict[Signs, tuple[int, ...]] = {}
    walls: set[Signs] = set()
    while queue:
        sig = queue.popleft()
        mine = []
        for j, s in enumerate(sig):
            w = _with_sign(sig, j, 0)
            if not strict_feasible(arr, w):
                continue
            mine.append(j)
            walls.add(w)
            other = _with_sign(sig, j, -s)
            if other not in seen:
                seen.add(other)
                queue.append(other)
        wall_sets[sig] = tuple(mine)
    return FaceData(
        chambers=[Face(s, 0) for s in sorted(seen)],
        walls=[Face(s, 1) for s in sorted(walls)],
        wall_sets=wall_sets,
    )


def enumerate_chambers(arr: Arrangement) -> list[Face]:
    return list(sweep(arr).chambers)


def enumerate_chambers_exhaustive(arr: Arrangement) -> list[Face]:
    """Test every sign vector in {-1, 1}^|H|.  Exponential; used as an oracle."""
    return [
        Face(s, 0)
        for s in itertools.product((-1, 1), repeat=len(arr))
        if strict_feasible(arr, s)
    ]


def enumerate_codim1_faces(arr: Arrangement) -> list[Face]:
    return list(sweep(arr).walls)


def walls_of(arr: Arrangement, chamber: Face) -> tuple[int, ...]:
    return sweep(arr).wall_sets[chamber.signs]


# ---------------------------------------------------------------------------
# codimension-2 flats


def _rank(rows: Iterable[Sequence[int | Fraction]]) -> int:
    mat = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def _classify(arr: Arrangement, zero: Sequence[int]) -> str:
    kinds = {arr.hyperplanes[j].kind for j in zero}
    if kinds == {EPSILON}:
        return "interior"
    if kinds == {COORDINATE}:
        return "coordinate"
    if kinds == {EPSILON, COORDINATE}:
        return "boundary"
    return "generic"


@lru_cache(maxsize=None)
def _flats2(arr: Arrangement) -> tuple[Flat2, ...]:
    hyps = arr.hyperplanes
    found: set[tuple[int, ...]] = set()
    for i, j in itertools.combinations(range(len(hyps)), 2):
        hi, hj = hyps[i], hyps[j]
        if _rank([hi.normal, hj.normal]) < 2:
            continue  # parallel: empty intersection
        members = tuple(
            k
            for k, hk in enumerate(hyps)
            if _rank([(*hi.normal, hi.offset), (*hj.normal, hj.offset), (*hk.normal, hk.offset)]) == 2
        )
        found.add(members)
    return tuple(Flat2(z, _classify(arr, z)) for z in sorted(found))


def enumerate_flats2(arr: Arrangement) -> list[Flat2]:
    if arr.dimension < 2:
        return []
    return list(_flats2(arr))


def fc_flat_pattern_ok(arr: Arrangement, flat: Flat2) -> bool:
    """Does ``flat`` match one of the three F_C patterns?

    {H_e, H_e'} with e, e' differing in >= 2 places and e' != -e;
    {L_i, H_e, H_{g_i e}}; or {L_i, L_j}.
    """
    hyps = [arr.hyperplanes[j] for j in flat.zero_hyperplanes]
    eps = [h.tag for h in hyps if h.kind == EPSILON]
    coords = [h.tag[0] for h in hyps if h.kind == COORDINATE]
    if len(hyps) == 2 and len(eps) == 2:
        a, b = eps
        diff = sum(x != y for x, y in zip(a, b))
        return diff >= 2 and diff != len(a)
    if len(hyps) == 3 and len(eps) == 2 and len(coords) == 1:
        (i,) = coords
        a, b = eps
        return all((x == y) != (k == i) for k, (x, y) in enumerate(zip(a, b)))
    if len(hyps) == 2 and len(coords) == 2:
        return True
    return False


def enumerate_codim2_faces(arr: Arrangement) -> list[tuple[Face, Flat2]]:
    """Every codim-2 face with the flat it spans, sorted by sign vector.

    A codim-2 face in the closure of a chamber has at least two of its
    zero hyperplanes among that chamber's walls, which prunes the LP calls.
    """
    data = sweep(arr)
    out: dict[Signs, Flat2] = {}
    for flat in enumerate_flats2(arr):
        zs = set(flat.zero_hyperplanes)
        for ch in data.chambers:
            if len(zs.intersection(data.wall_sets[ch.signs])) < 2:
                continue
            sig = tuple(0 if j in zs else s for j, s in enumerate(ch.signs))
            if sig in out:
                continue
            if strict_feasible(arr, sig):
                out[sig] = flat
    return [(Face(s, 2), out[s]) for s in sorted(out)]


# ---------------------------------------------------------------------------
# serialisation


def arrangement_to_dict(arr: Arrangement) -> dict:
    return {
        "dimension": arr.dimension,
        "fc": arr.is_fc,
        "hyperplanes": [
            {"normal": list(h.normal), "offset": h.offset, "kind": h.kind, "tag": list(h.tag)}
            for h in arr.hyperplanes
        ],
    }


def arrangement_from_dict(data: dict) -> Arrangement:
    try:
        dim = int(data["dimension"])
        hyps = tuple(
            Hyperplane(
                tuple(int(v) for v in rec["normal"]),
                int(rec["offset"]),
                rec.get("kind", GENERIC),
                tuple(int(v) for v in rec.get("tag", ())),
            )
            for rec in data["hyperplanes"]
        )
    except (KeyError, TypeError) as exc:
        raise ArrangementError(f"malformed arrangement document: {exc}") from exc
    if data.get("fc"):
        arr = build_fc_arrangement(dim)
        if arr.hyperplanes != hyps:
            raise ArrangementError("document claims F_C but hyperplanes differ")
        return arr
    return Arrangement(dim, hyps)


def dumps_arrangement(arr: Arrangement) -> str:
    return json.dumps(arrangement_to_dict(arr), indent=2) + "\n"


def loads_arrangement(text: str) -> Arrangement:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArrangementError(f"not a valid arrangement document: {exc}") from exc
    return arrangement_from_dict(data)


def dumps_chambers(arr: Arrangement) -> str:
    chambers = enumerate_chambers(arr)
    doc = {
        "arrangement": arrangement_to_dict(arr),
        "count": len(chambers),
        "chambers": [list(c.signs) for c in chambers],
    }
    return json.dumps(doc, indent=1) + "\n"


def loads_chambers(text: str) -> tuple[Arrangement, list[Face]]:
    """Parse a chamber listing; every entry must be a chamber of its arrangement."""
    try:
        data = json.loads(text)
        arr = arrangement_from_dict(data["arrangement"])
        chambers = [Face(tuple(int(v) for v in s), 0) for s in data["chambers"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ArrangementError(f"not a valid chamber listing: {exc}") from exc
    for c in chambers:
        if len(c.signs) != len(arr) or 0 in c.signs or not strict_feasible(arr, c.signs):
            raise ArrangementError(f"{c.signs} is not a chamber")
    if data.get("count", len(chambers)) != len(chambers):
        raise ArrangementError("chamber count does not match the listing")
    return arr, chambers
