"""Presentations of the fundamental group of the quotient complex.

Two routes are offered.  TREE contracts a spanning tree of the 1-skeleton,
the textbook construction.  SPANNING_COMPLEX contracts the whole spanning
complex: the height-increasing type-1 arrows together with the interior
discs whose base chamber is lowest.  Both give presentations of the same
group; the second is much smaller.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .arrangement import (
    COORDINATE,
    EPSILON,
    Arrangement,
    Face,
    build_fc_arrangement,
    coordinate_hyperplane,
    epsilon_hyperplane,
    feasibility_witness,
)
from .quotient import INTERIOR, TYPE1_NONCLOSED, TYPE2_CLOSED, QuotientComplex2
from .snf import homology_rank_and_torsion
from .tietze import DEFAULT_BUDGET, TietzeResult, tietze_simplify
from .words import GroupPresentation, Word, commutator, conjugate, power, reduce

TREE = "tree"
SPANNING_COMPLEX = "spanning"


class StructuralError(RuntimeError):
    """The complex does not have the shape the construction relies on."""


def height(arr: Arrangement, chamber: Face) -> int:
    """Number of epsilon hyperplanes separating ``chamber`` from the origin.

    The origin lies on the negative side of every eps.x = 1, so these are the
    epsilon hyperplanes on which the chamber's sign is +.
    """
    if 0 in chamber.signs:
        raise ValueError("height is defined for chambers only")
    return sum(1 for j in arr.epsilon_indices if chamber.signs[j] == 1)


def base_chamber(arr: Arrangement) -> Face:
    """The chamber x_i > 0, sum x_i < 1 next to the origin."""
    return Face(tuple(-1 if h.kind == EPSILON else 1 for h in arr.hyperplanes), 0)


def base_orbit(q: QuotientComplex2) -> int:
    cx = q.complex
    return q.orbit0[cx.chamber_index[base_chamber(cx.arrangement).signs]]


def orbit_heights(q: QuotientComplex2) -> list[int]:
    arr = q.complex.arrangement
    return [height(arr, q.chamber(k)) for k in range(len(q.cells0))]


@dataclass
class SpanningData:
    spanning1: tuple[int, ...]
    spanning2: tuple[int, ...]
    tree: tuple[int, ...]
    h1_rank: int
    h1_torsion: tuple[int, ...]


def disc_vertices(q: QuotientComplex2, k: int) -> set[int]:
    out = set()
    for x in q.cells2[k].word:
        e = q.cells1[abs(x) - 1]
        out.update((e.source, e.target))
    return out


def spanning_cells(q: QuotientComplex2) -> SpanningData:
    heights = orbit_heights(q)
    span1 = tuple(
        k for k, e in enumerate(q.cells1)
        if e.cell_type == TYPE1_NONCLOSED and heights[e.target] == heights[e.source] + 1
    )
    span1_set = set(span1)
    cx = q.complex
    span2 = []
    for k, c in enumerate(q.cells2):
        if c.cell_type != INTERIOR:
            continue
        verts = disc_vertices(q, k)
        low = min(heights[v] for v in verts)
        if sum(1 for v in verts if heights[v] == low) != 1:
            raise StructuralError(f"interior disc {k} has no unique lowest vertex")
        base = q.orbit0[cx.cells2[c.representative].base]
        if heights[base] == low:
            if any(abs(x) - 1 not in span1_set for x in c.word):
                raise StructuralError(f"spanning disc {k} has a non-spanning edge")
            span2.append(k)

    # BFS tree over spanning arrows, rooted at the base chamber's orbit
    root = base_orbit(q)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(q.cells0))}
    for k in span1:
        e = q.cells1[k]
        adj[e.source].append((e.target, k))
        adj[e.target].append((e.source, k))
    seen = {root}
    tree = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w, k in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.append(k)
                queue.append(w)
    if len(seen) != len(q.cells0):
        raise StructuralError("spanning arrows do not reach every vertex")

    rank, torsion = spanning_homology(q, span1, span2)
    return SpanningData(span1, tuple(span2), tuple(sorted(tree)), rank, torsion)


def spanning_homology(q: QuotientComplex2, span1: Sequence[int], span2: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of H_1 of the spanning complex."""
    verts = sorted({v for k in span1 for v in (q.cells1[k].source, q.cells1[k].target)})
    vpos = {v: i for i, v in enumerate(verts)}
    epos = {k: i for i, k in enumerate(span1)}
    d1 = [[0] * len(span1) for _ in verts]
    for k in span1:
        e = q.cells1[k]
        d1[vpos[e.target]][epos[k]] += 1
        d1[vpos[e.source]][epos[k]] -= 1
    d2 = [[0] * len(span2) for _ in span1]
    for j, k in enumerate(span2):
        for x in q.cells2[k].word:
            d2[epos[abs(x) - 1]][j] += 1 if x > 0 else -1
    return homology_rank_and_torsion(d1, d2, len(span1))


def edge_name(k: int) -> str:
    return f"e{k + 1}"


def presentation_from_complex(q: QuotientComplex2, s: SpanningData, mode: str = SPANNING_COMPLEX) -> GroupPresentation:
    """One generator per surviving 1-cell orbit, one relator per surviving disc.

    Generator names are ``e<k>`` for 1-cell orbit ``k - 1``.
    """
    if mode == TREE:
        dead1 = set(s.tree)
        dead2: set[int] = set()
    elif mode == SPANNING_COMPLEX:
        dead1 = set(s.spanning1)
        dead2 = set(s.spanning2)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    keep = [k for k in range(len(q.cells1)) if k not in dead1]
    pos = {k: i + 1 for i, k in enumerate(keep)}
    relators = []
    for k, c in enumerate(q.cells2):
        if k in dead2:
            continue
        w = [pos[abs(x) - 1] * (1 if x > 0 else -1) for x in c.word if abs(x) - 1 in pos]
        relators.append(tuple(w))
    return GroupPresentation(tuple(edge_name(k) for k in keep), tuple(relators))


# ---------------------------------------------------------------------------
# distinguished generators


def gamma_cells(q: QuotientComplex2) -> list[int]:
    """1-cell orbits representing Gamma_0, ..., Gamma_n.

    Gamma_i (i >= 1) is the closed loop across L_i at the base chamber.
    Gamma_0 is the arrow across eps = (1,...,1) that ends at the base
    chamber; the arrow leaving it is spanning and hence contracted, so the
    downward one is the generator of the contracted complex.
    """
    cx = q.complex
    arr = cx.arrangement
    n = arr.dimension
    sigma0 = cx.chamber_index[base_chamber(arr).signs]
    top = arr.index_of(epsilon_hyperplane((1,) * n))
    into = next(k for k, c in enumerate(cx.cells1) if c.target == sigma0 and c.hyperplane == top)
    out = [q.orbit1[into]]
    for i in range(n):
        j = arr.index_of(coordinate_hyperplane(n, i))
        out.append(q.orbit1[cx.cell1_index[sigma0, j]])
    return out


def gamma_names(n: int) -> tuple[str, ...]:
    return tuple(f"G{i}" for i in range(n + 1))


@dataclass
class ComputedPresentation:
    raw: GroupPresentation
    simplified: GroupPresentation
    tietze: TietzeResult
    renamed: bool


def computed_presentation(
    q: QuotientComplex2,
    s: SpanningData,
    mode: str = SPANNING_COMPLEX,
    budget: int = DEFAULT_BUDGET,
) -> ComputedPresentation:
    """Raw presentation, then Tietze; rename survivors to G0..Gn when they are the gamma cells."""
    raw = presentation_from_complex(q, s, mode)
    gen_index = {name: i for i, name in enumerate(raw.generators)}
    gammas = [edge_name(k) for k in gamma_cells(q)]
    protected = [gen_index[g] for g in gammas if g in gen_index]
    res = tietze_simplify(raw, budget, protected)
    simplified = res.presentation
    renamed = False
    if sorted(simplified.generators) == sorted(gammas):
        n = len(gammas) - 1
        order = [simplified.generators.index(g) + 1 for g in gammas]
        # new generator i <- old generator order[i]
        back = {old: new + 1 for new, old in enumerate(order)}
        rels = tuple(
            tuple(back[abs(x)] * (1 if x > 0 else -1) for x in r) for r in simplified.relators
        )
        simplified = GroupPresentation(gamma_names(n), rels)
        renamed = True
    return ComputedPresentation(raw, simplified, res, renamed)


# ---------------------------------------------------------------------------
# the model group


def _gen(i: int) -> Word:
    """Word for G_i (G0 is generator 1)."""
    return (i + 1,)


def m_word(indices: Sequence[int]) -> Word:
    """Product of G_i over ``indices`` (1-based, ascending)."""
    return tuple(i + 1 for i in sorted(indices))


def support(eps: Sequence[int]) -> tuple[int, ...]:
    """S(eps): the 1-based positions where eps is -1."""
    return tuple(i + 1 for i, e in enumerate(eps) if e == -1)


def reflect(eps: Sequence[int], i: int) -> tuple[int, ...]:
    """Flip the sign of the i-th (1-based) entry."""
    return tuple(-e if k == i - 1 else e for k, e in enumerate(eps))


def gamma_epsilon_word(eps: Sequence[int]) -> Word:
    """M_eps^-1 G0 M_eps with M_eps the ascending product over S(eps)."""
    if all(e == -1 for e in eps):
        raise ValueError("gamma_epsilon is undefined for eps = (-1, ..., -1)")
    return conjugate(_gen(0), m_word(support(eps)))


def braid_relator(i: int) -> Word:
    """(G0 Gi)^2 (Gi G0)^-2"""
    return reduce((*power(_gen(0) + _gen(i), 2), *power(_gen(i) + _gen(0), -2)))


def ij_relator(I: Sequence[int], J: Sequence[int]) -> Word:
    return commutator(conjugate(_gen(0), m_word(I)), conjugate(_gen(0), m_word(J)))


def ij_pairs(n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered pairs of disjoint nonempty I, J with |I| + |J| <= n - 1, I < J."""
    subsets = [
        c for r in range(1, n + 1) for c in itertools.combinations(range(1, n + 1), r)
    ]
    out = []
    for I, J in itertools.combinations(sorted(subsets), 2):
        if set(I) & set(J) or len(I) + len(J) > n - 1:
            continue
        out.append((I, J))
    return out


def fc_model_presentation(n: int) -> GroupPresentation:
    if n < 1:
        raise ValueError("n must be positive")
    rels = [commutator(_gen(i), _gen(j)) for i, j in itertools.combinations(range(1, n + 1), 2)]
    rels += [braid_relator(i) for i in range(1, n + 1)]
    rels += [ij_relator(I, J) for I, J in ij_pairs(n)]
    return GroupPresentation(gamma_names(n), tuple(rels))


def epsilon_pair_feasible(eps: Sequence[int], eps2: Sequence[int]) -> bool:
    """Do H_eps and H_eps2 meet inside the open positive orthant?  Exact LP."""
    n = len(eps)
    hyps = (epsilon_hyperplane(eps), epsilon_hyperplane(eps2),
            *(coordinate_hyperplane(n, i) for i in range(n)))
    arr = Arrangement(n, hyps)
    return feasibility_witness(arr, (0, 0, *([1] * n))) is not None


def epsilon_pair_criterion(eps: Sequence[int], eps2: Sequence[int]) -> bool:
    """Combinatorial form of the same test.

    With K = S(eps) & S(eps2), I = S(eps) - K, J = S(eps2) - K the two
    equations reduce to sum_I x = sum_J x and sum_R x - sum_K x = 1 where R is
    the complement of S(eps) | S(eps2); positive solutions exist iff I, J and
    R are all nonempty.
    """
    s1, s2 = set(support(eps)), set(support(eps2))
    k = s1 & s2
    return bool(s1 - k) and bool(s2 - k) and len(s1 | s2) < len(eps)


@dataclass(frozen=True)
class EpsilonRelation:
    eps: tuple[int, ...]
    eps2: tuple[int, ...]
    relator: Word

    def reduced(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(I, J) after cancelling the common part, ordered I < J."""
        s1, s2 = set(support(self.eps)), set(support(self.eps2))
        k = s1 & s2
        pair = sorted([tuple(sorted(s1 - k)), tuple(sorted(s2 - k))])
        return pair[0], pair[1]


def commuting_normal_form(word: Sequence[int], n: int) -> tuple:
    """Normal form of ``word`` modulo [G_i, G_j] = 1 for 1 <= i < j <= n.

    Those relations make the group the free product of <G0> with Z^n, whose
    reduced words alternate nonzero powers of G0 with nonzero vectors in Z^n.
    """
    parts: list = []
    for x in word:
        if abs(x) == 1:
            item = ("g", 1 if x > 0 else -1)
        else:
            vec = [0] * n
            vec[abs(x) - 2] = 1 if x > 0 else -1
            item = ("v", tuple(vec))
        parts.append(item)
        # merge with the previous syllable until nothing changes
        while len(parts) >= 2 and parts[-1][0] == parts[-2][0]:
            b = parts.pop()
            a = parts.pop()
            if a[0] == "g":
                merged = ("g", a[1] + b[1])
                if merged[1]:
                    parts.append(merged)
            else:
                vec = tuple(u + v for u, v in zip(a[1], b[1]))
                if any(vec):
                    parts.append(("v", vec))
    return tuple(parts)


def epsilon_relator_reduces(rel: "EpsilonRelation") -> bool:
    """Is the eps-pair relator the (I, J) relator conjugated by M(K)?

    Exact, modulo the commutation of G_1..G_n only.
    """
    n = len(rel.eps)
    s1, s2 = set(support(rel.eps)), set(support(rel.eps2))
    k = tuple(sorted(s1 & s2))
    target = commuting_normal_form(rel.relator, n)
    I, J = rel.reduced()
    base = ij_relator(I, J)
    return any(
        commuting_normal_form(conjugate(w, m_word(k)), n) == target
        for w in (base, tuple(-x for x in reversed(base)))
    )


def fc_epsilon_relations(n: int) -> list[EpsilonRelation]:
    """Commutation relators for every eps-pair meeting in the positive orthant."""
    if n < 2:
        return []
    arr = build_fc_arrangement(n)
    eps_list = [arr.hyperplanes[j].tag for j in arr.epsilon_indices]
    out = []
    for a, b in itertools.combinations(eps_list, 2):
        if not epsilon_pair_feasible(a, b):
            continue
        rel = commutator(
            conjugate(_gen(0), m_word(support(a))),
            conjugate(_gen(0), m_word(support(b))),
        )
        out.append(EpsilonRelation(a, b, rel))
    return out
