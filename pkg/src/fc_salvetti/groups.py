"""Small finite groups as multiplication tables, and counting homomorphisms into them."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .words import GroupPresentation, Word

DEFAULT_HOM_BUDGET = 10**9
BUDGET_ENV = "FC_SALVETTI_HOM_BUDGET"


class HomBudgetExceeded(RuntimeError):
    pass


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroupTable:
    name: str
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.names)

    @classmethod
    def from_table(cls, name: str, names: Sequence[str], table: Sequence[Sequence[int]]) -> "FiniteGroupTable":
        order = len(names)
        tab = tuple(tuple(row) for row in table)
        if len(tab) != order or any(len(row) != order for row in tab):
            raise GroupTableError(f"{name}: table is not {order} x {order}")
        if any(not 0 <= v < order for row in tab for v in row):
            raise GroupTableError(f"{name}: entry out of range")
        ids = [e for e in range(order) if all(tab[e][x] == x == tab[x][e] for x in range(order))]
        if len(ids) != 1:
            raise GroupTableError(f"{name}: no unique identity")
        e = ids[0]
        inverses = []
        for x in range(order):
            inv = [y for y in range(order) if tab[x][y] == e and tab[y][x] == e]
            if len(inv) != 1:
                raise GroupTableError(f"{name}: element {names[x]} has no inverse")
            inverses.append(inv[0])
        for x, y, z in itertools.product(range(order), repeat=3):
            if tab[tab[x][y]][z] != tab[x][tab[y][z]]:
                raise GroupTableError(f"{name}: not associative")
        return cls(name, tuple(names), tab, e, tuple(inverses))

    def evaluate(self, word: Iterable[int], images: Sequence[int]) -> int:
        acc = self.identity
        tab = self.table
        inv = self.inverses
        for x in word:
            v = images[x - 1] if x > 0 else inv[images[-x - 1]]
            acc = tab[acc][v]
        return acc


def permutation_group(name: str, generators: Sequence[tuple[int, ...]]) -> FiniteGroupTable:
    """Closure of ``generators`` under composition (apply right factor first)."""
    ident = tuple(range(len(generators[0])))
    elements = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for g in generators:
                q = tuple(p[g[i]] for i in range(len(g)))
                if q not in elements:
                    elements.add(q)
                    new.append(q)
        frontier = new
    els = sorted(elements)
    index = {p: i for i, p in enumerate(els)}
    table = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in els] for p in els]
    return FiniteGroupTable.from_table(name, [str(p) for p in els], table)


def cyclic_group(k: int) -> FiniteGroupTable:
    table = [[(a + b) % k for b in range(k)] for a in range(k)]
    return FiniteGroupTable.from_table(f"C{k}", [str(a) for a in range(k)], table)


def symmetric_group(k: int) -> FiniteGroupTable:
    gens = [tuple(range(1, k)) + (0,), (1, 0) + tuple(range(2, k))]
    return permutation_group(f"S{k}", gens)


def dihedral_group(k: int) -> FiniteGroupTable:
    """Symmetries of a k-gon, order 2k."""
    rot = tuple((i + 1) % k for i in range(k))
    ref = tuple((-i) % k for i in range(k))
    return permutation_group(f"D{2 * k}", [rot, ref])


def alternating_group(k: int) -> FiniteGroupTable:
    # the 3-cycles (0 1 i) generate A_k
    gens = []
    for i in range(2, k):
        perm = list(range(k))
        perm[0], perm[1], perm[i] = 1, i, 0
        gens.append(tuple(perm))
    return permutation_group(f"A{k}", gens)


BATTERY_BUILDERS: dict[str, Callable[[], FiniteGroupTable]] = {
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "S3": lambda: symmetric_group(3),
    "D8": lambda: dihedral_group(4),
    "A4": lambda: alternating_group(4),
}
DEFAULT_BATTERY = ("C2", "C3", "S3", "D8", "A4")


def battery(names: Iterable[str] = DEFAULT_BATTERY) -> list[FiniteGroupTable]:
    out = []
    for n in names:
        if n not in BATTERY_BUILDERS:
            raise KeyError(f"unknown battery group {n!r}; choose from {sorted(BATTERY_BUILDERS)}")
        out.append(BATTERY_BUILDERS[n]())
    return out


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_HOM_BUDGET


@dataclass
class _Plan:
    order: list[int]
    # for each depth, relators completed once order[depth] is assigned
    checks: list[list[Word]]
    # forced[depth] = (relator rotated to start at the generator) or None
    forced: list[Word | None]


def _plan(p: GroupPresentation) -> _Plan:
    """Choose an assignment order that completes relators as early as possible.

    Greedy: prefer a generator that some relator would then determine
    uniquely (it is the relator's only unassigned generator and occurs once),
    otherwise the one that finishes the most relators, otherwise the one in
    the most relators.
    """
    rank = p.rank
    gens_of = [set(abs(x) for x in r) for r in p.relators]
    assigned: set[int] = set()
    order: list[int] = []
    forced: list[Word | None] = []
    while len(order) < rank:
        best = None
        for g in range(1, rank + 1):
            if g in assigned:
                continue
            determines = None
            finishes = 0
            touches = 0
            for r, gs in zip(p.relators, gens_of):
                if g not in gs:
                    continue
                touches += 1
                if gs - assigned == {g}:
                    finishes += 1
                    if determines is None and sum(1 for x in r if abs(x) == g) == 1:
                        determines = r
            key = (determines is None, -finishes, -touches, g)
            if best is None or key < best[0]:
                best = (key, g, determines)
        _, g, rel = best
        if rel is not None:
            i = next(k for k, x in enumerate(rel) if abs(x) == g)
            rel = rel[i:] + rel[:i]
        order.append(g)
        forced.append(rel)
        assigned.add(g)
    done: set[int] = set()
    checks = []
    seen_rel: set[int] = set()
    for g in order:
        done.add(g)
        now = []
        for idx, (r, gs) in enumerate(zip(p.relators, gens_of)):
            if idx not in seen_rel and gs <= done:
                seen_rel.add(idx)
                now.append(r)
        checks.append(now)
    return _Plan(order, checks, forced)


def _homs(p: GroupPresentation, group: FiniteGroupTable, budget: int | None, collect: list | None) -> int:
    budget = default_budget() if budget is None else budget
    plan = _plan(p)
    images = [0] * p.rank
    order = group.order
    tab = group.table
    inv = group.inverses
    e = group.identity
    spent = 0

    def evaluate(word: Word) -> int:
        nonlocal spent
        spent += len(word)
        if spent > budget:
            raise HomBudgetExceeded(f"hom count into {group.name} exceeded {budget} lookups")
        acc = e
        for x in word:
            acc = tab[acc][images[x - 1] if x > 0 else inv[images[-x - 1]]]
        return acc

    rank = p.rank

    def search(depth: int) -> int:
        if depth == rank:
            if collect is not None:
                collect.append(tuple(images))
            return 1
        g = plan.order[depth]
        rel = plan.forced[depth]
        if rel is not None:
            # rel = g^s w with w already evaluable: g^s = w^-1
            val = inv[evaluate(rel[1:])]
            candidates = (val if rel[0] > 0 else inv[val],)
        else:
            candidates = range(order)
        total = 0
        for v in candidates:
            images[g - 1] = v
            if all(evaluate(r) == e for r in plan.checks[depth]):
                total += search(depth + 1)
        return total

    return search(0)


def count_homs(p: GroupPresentation, group: FiniteGroupTable, budget: int | None = None) -> int:
    """Number of homomorphisms from the presented group into ``group``.

    Backtracking over generator images; each relator is checked as soon as
    all its generators have images, and a generator occurring once in a
    relator whose other generators are assigned has its image computed
    rather than searched.  ``budget`` caps the number of table lookups.
    """
    return _homs(p, group, budget, None)


def count_homs_naive(p: GroupPresentation, group: FiniteGroupTable) -> int:
    """Enumerate every tuple of images.  Exponential; a test oracle."""
    total = 0
    for images in itertools.product(range(group.order), repeat=p.rank):
        if all(group.evaluate(r, images) == group.identity for r in p.relators):
            total += 1
    return total


def hom_set(p: GroupPresentation, group: FiniteGroupTable, budget: int | None = None) -> set[tuple[int, ...]]:
    """All homomorphisms as tuples of generator images."""
    out: list[tuple[int, ...]] = []
    _homs(p, group, budget, out)
    return set(out)
