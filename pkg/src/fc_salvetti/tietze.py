"""Deterministic greedy Tietze simplification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .words import GroupPresentation, Word, cyclic_normal_form, cyclic_reduce, inverse, reduce

DEFAULT_BUDGET = 10_000


@dataclass
class TietzeResult:
    presentation: GroupPresentation
    # original generator index (0-based) -> word in the ORIGINAL generators
    # that it was replaced by; survivors are absent
    eliminated: dict[int, Word]
    # survivors[i] is the original index of the i-th output generator
    survivors: tuple[int, ...]
    steps: int
    exhausted: bool = False
    log: list[str] = field(default_factory=list)


def _substitute(word: Iterable[int], x: int, value: Word) -> Word:
    inv = inverse(value)
    out: list[int] = []
    for y in word:
        if y == x:
            out.extend(value)
        elif y == -x:
            out.extend(inv)
        else:
            out.append(y)
    return reduce(out)


def _isolating(rel: Word) -> list[int]:
    counts: dict[int, int] = {}
    for y in rel:
        counts[abs(y)] = counts.get(abs(y), 0) + 1
    return [g for g, c in counts.items() if c == 1]


def _solve(rel: Word, g: int) -> Word:
    """Value of generator ``g`` forced by ``rel == 1``; g occurs once in rel."""
    i = next(k for k, y in enumerate(rel) if abs(y) == g)
    rot = rel[i:] + rel[:i]
    rest = rot[1:]
    # g^e rest = 1
    return inverse(rest) if rot[0] > 0 else tuple(rest)


def _clean(relators: Iterable[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in relators:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = cyclic_normal_form(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def tietze_simplify(
    p: GroupPresentation,
    budget: int = DEFAULT_BUDGET,
    protected: Iterable[int] = (),
) -> TietzeResult:
    """Eliminate generators isolated by a relator, shortest relator first.

    ``protected`` lists 0-based generator indices that are eliminated only
    when no other elimination is available; this lets callers steer which
    generators survive.  Each step deletes one generator and one relator, so
    the group is unchanged.
    """
    protected = {g + 1 for g in protected}
    relators = _clean(p.relators)
    alive = set(range(1, p.rank + 1))
    subst: dict[int, Word] = {}
    log: list[str] = []
    steps = 0
    exhausted = False
    while True:
        best = None
        for idx, rel in enumerate(relators):
            for g in _isolating(rel):
                key = (g in protected, len(rel), idx, g)
                if best is None or key < best[0]:
                    best = (key, idx, g)
        if best is None:
            break
        if steps >= budget:
            exhausted = True
            break
        _, idx, g = best
        rel = relators.pop(idx)
        value = _solve(rel, g)
        log.append(f"eliminate {p.generators[g - 1]} using relator of length {len(rel)}")
        relators = _clean(_substitute(r, g, value) for r in relators)
        for k in list(subst):
            subst[k] = _substitute(subst[k], g, value)
        subst[g] = value
        alive.discard(g)
        steps += 1

    survivors = tuple(sorted(alive))
    renum = {g: i + 1 for i, g in enumerate(survivors)}

    def remap(w: Word) -> Word:
        return tuple(renum[abs(y)] * (1 if y > 0 else -1) for y in w)

    out = GroupPresentation(
        tuple(p.generators[g - 1] for g in survivors),
        tuple(remap(r) for r in relators),
    )
    eliminated = {g - 1: w for g, w in sorted(subst.items())}
    return TietzeResult(out, eliminated, tuple(g - 1 for g in survivors), steps, exhausted, log)
