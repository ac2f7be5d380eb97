"""Smith normal form of integer matrices, and what it tells us about homology."""

from __future__ import annotations

from typing import Sequence


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        # pivot: smallest nonzero absolute value in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # divisibility: fold in any entry not divisible by the pivot
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, rows):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, cols):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelian_invariants(relation_rows: Sequence[Sequence[int]], ngens: int) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion coefficients) of Z^ngens modulo the row span."""
    if not relation_rows:
        return ngens, ()
    d = smith_diagonal(relation_rows)
    return ngens - len(d), tuple(x for x in d if x > 1)


def homology_rank_and_torsion(
    d1: Sequence[Sequence[int]], d2: Sequence[Sequence[int]], n_edges: int
) -> tuple[int, tuple[int, ...]]:
    """H_1 = ker d1 / im d2 for a chain complex C2 -> C1 -> C0.

    ker d1 is saturated in C1, so the torsion of H_1 is the torsion of
    coker d2.
    """
    r1 = len(smith_diagonal(d1)) if d1 and n_edges else 0
    f2 = smith_diagonal(d2) if d2 and d2[0] else []
    return n_edges - r1 - len(f2), tuple(x for x in f2 if x > 1)
