"""Dense two-phase simplex over exact rationals.

The tableau is kept fraction-free: an integer matrix ``M`` and a positive
integer ``D`` with the true tableau equal to ``M / D``.  Pivoting on a
positive entry ``p`` updates every other row by ``(p*M_ij - M_ic*M_rj) // D``,
where the division is exact, and sets ``D = p``.  Bland's rule is used for
both entering and leaving variables so degenerate problems terminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Number = int | Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _integer_row(coeffs: Sequence[Number], rhs: Number) -> tuple[list[int], int]:
    if type(rhs) is int and all(type(v) is int for v in coeffs):
        return list(coeffs), rhs
    vals = [Fraction(v) for v in (*coeffs, rhs)]
    den = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    return ints[:-1], ints[-1]


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], obj: list[int]) -> None:
        self.rows = rows
        self.basis = basis
        self.obj = obj
        self.den = 1

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        p = prow[c]
        d = self.den
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[c]
            if f:
                self.rows[i] = [(a * p - f * b) // d for a, b in zip(row, prow)]
            elif p != d:
                self.rows[i] = [(a * p) // d for a in row]
        f = self.obj[c]
        if f:
            self.obj = [(a * p - f * b) // d for a, b in zip(self.obj, prow)]
        elif p != d:
            self.obj = [(a * p) // d for a in self.obj]
        self.den = p
        self.basis[r] = c

    def flip(self) -> None:
        # keep den positive; M / den is unchanged
        self.rows = [[-v for v in row] for row in self.rows]
        self.obj = [-v for v in self.obj]
        self.den = -self.den

    def run(self, allowed: int) -> bool:
        """Maximise; columns ``>= allowed`` never enter.  False if unbounded."""
        while True:
            obj = self.obj
            col = next((j for j in range(allowed) if obj[j] < 0), -1)
            if col < 0:
                return True
            row = -1
            for i, line in enumerate(self.rows):
                a = line[col]
                if a <= 0:
                    continue
                if row < 0:
                    row = i
                    continue
                best = self.rows[row]
                # compare line[-1]/a with best[-1]/best[col]
                lhs = line[-1] * best[col]
                rhs = best[-1] * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[row]):
                    row = i
            if row < 0:
                return False
            self.pivot(row, col)


def maximize(
    c: Sequence[Number],
    a_ub: Sequence[Sequence[Number]] = (),
    b_ub: Sequence[Number] = (),
    a_eq: Sequence[Sequence[Number]] = (),
    b_eq: Sequence[Number] = (),
) -> LPResult:
    """Maximise ``c.x`` subject to ``a_ub x <= b_ub``, ``a_eq x == b_eq``, ``x >= 0``."""
    nvar = len(c)
    nslack = len(a_ub)
    m = nslack + len(a_eq)
    rows: list[list[int]] = []
    needs_art: list[bool] = []
    for i, (coeffs, rhs) in enumerate(zip(a_ub, b_ub)):
        ints, b = _integer_row(coeffs, rhs)
        line = ints + [0] * nslack + [b]
        line[nvar + i] = 1
        if b < 0:
            line = [-v for v in line]
        rows.append(line)
        needs_art.append(b < 0)
    for coeffs, rhs in zip(a_eq, b_eq):
        ints, b = _integer_row(coeffs, rhs)
        line = ints + [0] * nslack + [b]
        if b < 0:
            line = [-v for v in line]
        rows.append(line)
        needs_art.append(True)
    # columns: structural | slacks | artificials | rhs, one artificial per row that needs it
    first_art = nvar + nslack
    nart = sum(needs_art)
    width = first_art + nart + 1
    basis: list[int] = []
    k = first_art
    for i, line in enumerate(rows):
        b = line.pop()
        line.extend([0] * nart)
        line.append(b)
        if needs_art[i]:
            line[k] = 1
            basis.append(k)
            k += 1
        else:
            basis.append(nvar + i)

    # phase 1: maximise -(sum of artificials)
    obj = [0] * width
    for i, line in enumerate(rows):
        if needs_art[i]:
            for j in range(first_art):
                obj[j] -= line[j]
            obj[-1] -= line[-1]
    tab = _Tableau(rows, basis, obj)
    if any(needs_art):
        tab.run(first_art)
        if tab.obj[-1] != 0:
            return LPResult(INFEASIBLE)
        for i in range(m):
            if tab.basis[i] >= first_art:
                j = next((j for j in range(first_art) if tab.rows[i][j] != 0), None)
                if j is None:
                    continue
                tab.pivot(i, j)
                if tab.den < 0:
                    tab.flip()
        # artificials never re-enter; drop their columns (rows still basic in
        # one are all-zero and keep an out-of-range basis index)
        tab.rows = [line[:first_art] + [line[-1]] for line in tab.rows]
        width = first_art + 1

    # phase 2
    cden = math.lcm(*(Fraction(v).denominator for v in c)) if nvar else 1
    cint = [int(Fraction(v) * cden) for v in c]
    d = tab.den
    obj = [0] * width
    for j in range(nvar):
        obj[j] = -cint[j] * d
    for i, b in enumerate(tab.basis):
        if b < nvar and cint[b]:
            cb = cint[b]
            obj = [o + cb * v for o, v in zip(obj, tab.rows[i])]
    tab.obj = obj
    if not tab.run(first_art):
        return LPResult(UNBOUNDED)
    d = tab.den
    x = [Fraction(0)] * nvar
    for i, b in enumerate(tab.basis):
        if b < nvar:
            x[b] = Fraction(tab.rows[i][-1], d)
    return LPResult(OPTIMAL, Fraction(tab.obj[-1], d * cden), tuple(x))
