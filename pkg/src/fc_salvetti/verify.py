"""Invariant checks and presentation comparisons.

Nothing here proves that two presentations define isomorphic groups.  Equal
abelianisations and equal homomorphism counts into a battery of small groups
are necessary conditions, so a pass means "indistinguishable by battery".
"""

from __future__ import annotations

import itertools
import json
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import arrangement as A
from .groups import FiniteGroupTable, HomBudgetExceeded, battery, count_homs, hom_set
from .presentation import (
    SPANNING_COMPLEX,
    TREE,
    base_chamber,
    base_orbit,
    computed_presentation,
    edge_name,
    epsilon_pair_criterion,
    epsilon_pair_feasible,
    epsilon_relator_reduces,
    fc_epsilon_relations,
    fc_model_presentation,
    gamma_cells,
    gamma_epsilon_word,
    height,
    ij_pairs,
    ij_relator,
    orbit_heights,
    spanning_cells,
)
from .quotient import (
    BOUNDARY,
    COORDINATE_DISC,
    INTERIOR,
    TYPE1_NONCLOSED,
    TYPE2_CLOSED,
    act_signs,
    build_quotient,
    group_elements,
    lift_consistent,
    verify_free_action,
)
from .salvetti import build_salvetti_2_skeleton, check_complex
from .snf import abelian_invariants
from .tietze import tietze_simplify
from .words import GroupPresentation, cyclic_normal_form, cyclic_reduce, exponent_sums, inverse

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass
class CheckResult:
    name: str
    status: str
    expected: object = None
    actual: object = None
    note: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    title: str
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, expected=None, actual=None, note: str = "", seconds: float = 0.0) -> CheckResult:
        if any(c.name == name for c in self.checks):
            raise ValueError(f"duplicate check {name!r}")
        res = CheckResult(name, PASS if ok else FAIL, expected, actual, note, seconds)
        self.checks.append(res)
        return res

    def skip(self, name: str, note: str, expected=None, actual=None) -> CheckResult:
        res = CheckResult(name, SKIP, expected, actual, note)
        self.checks.append(res)
        return res

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    def to_json(self, include_timing: bool = False) -> str:
        """Structured form.  Timing is left out by default so reruns are byte-identical."""
        records = []
        for c in self.checks:
            rec = {"name": c.name, "status": c.status, "expected": _plain(c.expected),
                   "actual": _plain(c.actual)}
            if c.note:
                rec["note"] = c.note
            if include_timing:
                rec["seconds"] = round(c.seconds, 3)
            records.append(rec)
        doc = {"title": self.title, "passed": self.passed, "checks": records}
        return json.dumps(doc, indent=1) + "\n"

    def summary(self, include_timing: bool = False) -> str:
        lines = [self.title]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            line = f"  [{c.status.upper():4}] {c.name:<{width}}"
            if c.status != PASS or c.note:
                line += f"  expected={_plain(c.expected)} actual={_plain(c.actual)}"
            if c.note:
                line += f"  ({c.note})"
            if include_timing:
                line += f"  {c.seconds:.2f}s"
            lines.append(line.rstrip())
        counts = defaultdict(int)
        for c in self.checks:
            counts[c.status] += 1
        lines.append(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIP]} skipped")
        return "\n".join(lines) + "\n"


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, list):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


# ---------------------------------------------------------------------------
# oracles


def abelianization(p: GroupPresentation) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion coefficients) of the abelianised group."""
    rows = [exponent_sums(r, p.rank) for r in p.relators]
    return abelian_invariants(rows, p.rank)


def hom_counts(p: GroupPresentation, groups: Sequence[FiniteGroupTable], budget: int | None = None) -> dict[str, int | None]:
    out: dict[str, int | None] = {}
    for g in groups:
        try:
            out[g.name] = count_homs(p, g, budget)
        except HomBudgetExceeded:
            out[g.name] = None
    return out


def compare_presentations(
    p1: GroupPresentation,
    p2: GroupPresentation,
    groups: Sequence[FiniteGroupTable] | None = None,
    budget: int | None = None,
    label: str = "compare",
) -> VerificationReport:
    groups = battery() if groups is None else groups
    rep = VerificationReport(f"{label}: indistinguishable by battery?")
    ab1, ab2 = abelianization(p1), abelianization(p2)
    rep.add(f"{label}.abelianization", ab1 == ab2, ab1, ab2)
    c1 = hom_counts(p1, groups, budget)
    c2 = hom_counts(p2, groups, budget)
    for g in groups:
        a, b = c1[g.name], c2[g.name]
        name = f"{label}.homs.{g.name}"
        if a is None or b is None:
            rep.skip(name, "hom-count budget exceeded", a, b)
        else:
            rep.add(name, a == b, a, b)
    return rep


# ---------------------------------------------------------------------------
# the full suite


class _Suite:
    def __init__(self, report: VerificationReport) -> None:
        self.report = report

    def check(self, name: str, fn: Callable[[], tuple[bool, object, object] | tuple[bool, object, object, str]]) -> None:
        start = time.perf_counter()
        try:
            out = fn()
        except HomBudgetExceeded as exc:
            self.report.skip(name, f"hom-count budget exceeded: {exc}")
            return
        except Exception as exc:  # structural errors are reported, not raised
            self.report.add(name, False, "no error", f"{type(exc).__name__}: {exc}",
                            seconds=time.perf_counter() - start)
            return
        ok, expected, actual, *rest = out
        self.report.add(name, bool(ok), expected, actual, rest[0] if rest else "",
                        seconds=time.perf_counter() - start)


def boundary_pattern_matches(words: Sequence[Sequence[int]]) -> bool:
    """Do three relators read d=a, ba=dc, cba=dcb for some labelling of their letters?"""
    letters = sorted({abs(x) for w in words for x in w})
    if len(letters) != 4:
        return False
    targets = []
    for perm in itertools.permutations(letters):
        a, b, c, d = perm
        pattern = [
            (a, -d),
            (b, a, -c, -d),
            (c, b, a, -b, -c, -d),
        ]
        targets.append((perm, {cyclic_normal_form(w) for w in pattern}))
    got = {cyclic_normal_form(w) for w in words}
    return any(t == got for _, t in targets)


def run_invariant_suite(n: int, groups: Sequence[FiniteGroupTable] | None = None, budget: int | None = None) -> VerificationReport:
    groups = battery() if groups is None else groups
    report = VerificationReport(f"invariant suite, n = {n}")
    s = _Suite(report)
    arr = A.build_fc_arrangement(n)
    two_n = 2 ** n

    s.check("arrangement.hyperplane_counts", lambda: (
        len(arr.epsilon_indices) == two_n and len(arr.coordinate_indices) == n,
        [two_n, n], [len(arr.epsilon_indices), len(arr.coordinate_indices)]))

    chambers = A.enumerate_chambers(arr)
    if n <= 3:
        s.check("arrangement.chambers_bfs_equals_exhaustive", lambda: (
            chambers == A.enumerate_chambers_exhaustive(arr), "equal", len(chambers)))
    else:
        report.skip("arrangement.chambers_bfs_equals_exhaustive", "exhaustive oracle limited to n <= 3")
    s.check("arrangement.chamber_count_divisible", lambda: (
        len(chambers) % two_n == 0, f"multiple of {two_n}", len(chambers)))

    def walls_ok():
        walls = A.enumerate_codim1_faces(arr)
        bad = [w for w in walls if len(w.zeros) != 1 or not all(
            A.strict_feasible(arr, w.signs[:j] + (s_,) + w.signs[j + 1:]) for j in w.zeros for s_ in (1, -1))]
        return not bad, 0, len(bad)
    s.check("arrangement.walls_have_two_sides", walls_ok)

    if n >= 2:
        def flats_ok():
            flats = A.enumerate_flats2(arr)
            bad = [f.zero_hyperplanes for f in flats if not A.fc_flat_pattern_ok(arr, f)]
            return not bad, [], bad
        s.check("arrangement.flat_trichotomy", flats_ok)

    cx = build_salvetti_2_skeleton(arr)
    s.check("complex.structure", lambda: (not (p := check_complex(cx)), [], p[:5]))
    n_walls = len(A.enumerate_codim1_faces(arr))
    n_faces2 = A.enumerate_codim2_faces(arr)
    s.check("complex.counts", lambda: (
        cx.counts == (len(chambers), 2 * n_walls, sum(2 * len(f.zero_hyperplanes) for _, f in n_faces2)),
        [len(chambers), 2 * n_walls, sum(2 * len(f.zero_hyperplanes) for _, f in n_faces2)],
        list(cx.counts)))

    s.check("action.free", lambda: (verify_free_action(cx), True, verify_free_action(cx)))
    q = build_quotient(cx)
    s.check("quotient.counts_times_2n", lambda: (
        tuple(two_n * c for c in q.counts) == cx.counts, list(cx.counts), [two_n * c for c in q.counts]))
    s.check("quotient.euler_multiplicative", lambda: (
        two_n * q.euler_characteristic == cx.euler_characteristic,
        cx.euler_characteristic, two_n * q.euler_characteristic))
    s.check("quotient.orbit_sizes", lambda: (
        all(c.orbit_size == two_n for cells in (q.cells0, q.cells1, q.cells2) for c in cells), two_n, "all"))
    s.check("quotient.loops_are_type2", lambda: (
        all(c.is_loop == (c.cell_type == TYPE2_CLOSED) for c in q.cells1), True, True))

    def lifts_ok():
        bad = [k for k in range(len(q.cells2)) for g in group_elements(n) if not lift_consistent(q, k, g)]
        return not bad, [], bad[:5]
    s.check("quotient.attaching_words_lift_independent", lifts_ok)

    def shapes_ok():
        seen = defaultdict(set)
        families: dict[tuple, list[int]] = defaultdict(list)
        for k, c in enumerate(q.cells2):
            rep = cx.cells2[c.representative]
            face_orbit = min(
                A.Face(_act(arr, g, rep.face.signs), 2) for g in group_elements(n)
            ).signs
            families[face_orbit].append(k)
            if c.cell_type in (INTERIOR, COORDINATE_DISC):
                seen[c.cell_type].add(q.disc_shape(k))
        for fam in families.values():
            if q.cells2[fam[0]].cell_type != BOUNDARY:
                continue
            ones = {abs(x) - 1 for k in fam for x in q.cells2[k].word}
            zeros = {v for e in ones for v in (q.cells1[e].source, q.cells1[e].target)}
            seen[BOUNDARY].add((len(ones), len(zeros)))
            seen["boundary_word_length"].update(len(q.cells2[k].word) for k in fam)
        expected = {INTERIOR: {(4, 4)}, BOUNDARY: {(6, 3)}, COORDINATE_DISC: {(2, 1)},
                    "boundary_word_length": {6}}
        actual = {k: sorted(v) for k, v in seen.items()}
        ok = all(seen.get(k, v) == v for k, v in expected.items())
        return ok, {k: sorted(v) for k, v in expected.items()}, actual
    if n >= 2:
        s.check("quotient.disc_shapes", shapes_ok)

    heights = orbit_heights(q)
    root = base_orbit(q)
    s.check("height.base_is_zero", lambda: (
        heights[root] == 0 and heights.count(0) == 1, [root], [k for k, h in enumerate(heights) if h == 0]))

    def height_steps():
        bad = []
        for k, c in enumerate(cx.cells1):
            dh = height(arr, cx.chambers[c.target]) - height(arr, cx.chambers[c.source])
            kind = arr.hyperplanes[c.hyperplane].kind
            if (kind == A.EPSILON and abs(dh) != 1) or (kind == A.COORDINATE and dh != 0):
                bad.append(k)
        return not bad, 0, len(bad)
    s.check("height.wall_steps", height_steps)

    span = None

    def spanning_ok():
        nonlocal span
        span = spanning_cells(q)
        ok = span.h1_rank == 0 and not span.h1_torsion and len(span.tree) == len(q.cells0) - 1
        return ok, {"h1": [0, []], "tree_edges": len(q.cells0) - 1}, \
            {"h1": [span.h1_rank, list(span.h1_torsion)], "tree_edges": len(span.tree)}
    s.check("spanning.simply_connected_h1", spanning_ok)
    if span is None:
        return report

    if n >= 2:
        def braid_pattern():
            dead = set(span.spanning1)
            families = defaultdict(list)
            for k, c in enumerate(q.cells2):
                if c.cell_type != BOUNDARY:
                    continue
                rep = cx.cells2[c.representative]
                fam = min(_act(arr, g, rep.face.signs) for g in group_elements(n))
                families[fam].append(tuple(x for x in c.word if abs(x) - 1 not in dead))
            bad = [f for f, ws in families.items() if not boundary_pattern_matches(ws)]
            return not bad, "d=a, ba=dc, cba=dcb", f"{len(families) - len(bad)}/{len(families)} families"
        s.check("presentation.boundary_relations_pattern", braid_pattern)

    model = fc_model_presentation(n)
    comp = {}

    def presentations():
        for mode in (SPANNING_COMPLEX, TREE):
            comp[mode] = computed_presentation(q, span, mode)
        cp = comp[SPANNING_COMPLEX]
        expected = len(q.cells1) - len(span.spanning1)
        return (cp.raw.rank == expected and len(cp.raw.relators) == len(q.cells2) - len(span.spanning2),
                [expected, len(q.cells2) - len(span.spanning2)], [cp.raw.rank, len(cp.raw.relators)])
    s.check("presentation.raw_size", presentations)
    if not comp:
        return report
    cp = comp[SPANNING_COMPLEX]

    s.check("presentation.tietze_reaches_model_rank", lambda: (
        cp.simplified.rank == n + 1 and cp.renamed, n + 1, cp.simplified.rank))
    s.check("presentation.model_relator_count", lambda: (
        len(model.relators) == _model_count(n), _model_count(n), len(model.relators)))

    ab_model = abelianization(model)
    s.check("presentation.model_abelianization", lambda: (ab_model == (n + 1, ()), [n + 1, []], ab_model))
    s.check("presentation.computed_abelianization", lambda: (
        abelianization(cp.simplified) == (n + 1, ()), [n + 1, []], abelianization(cp.simplified)))

    # Tietze preserves the group; both contraction routes agree
    for mode in (SPANNING_COMPLEX, TREE):
        pres = comp[mode]
        _merge(report, compare_presentations(pres.raw, pres.simplified, groups, budget, f"tietze.{mode}"))
    _merge(report, compare_presentations(comp[TREE].simplified, cp.simplified, groups, budget, "modes.tree_vs_spanning"))

    if n >= 2:
        _merge(report, compare_presentations(cp.simplified, model, groups, budget, "model"))
        if cp.renamed:
            def same_homs():
                diff = [g.name for g in groups if hom_set(cp.simplified, g) != hom_set(model, g)]
                return not diff, [], diff
            s.check("model.hom_sets_under_gamma_matching", same_homs)
            s.check("model.gamma_epsilon_expressions", lambda: _gamma_checks(q, cp, model, groups))
    else:
        counts_c = hom_counts(cp.simplified, groups, budget)
        counts_m = hom_counts(model, groups, budget)
        report.skip("model.comparison", "known theorem boundary case: n = 1 has no 2-cells",
                    counts_m, counts_c)
        s.check("model.n1_boundary_discrepancy", lambda: (
            cp.simplified.rank == 2 and not cp.simplified.relators and counts_c.get("S3") == 36
            and counts_m.get("S3") == 30,
            {"free_rank": 2, "S3": [36, 30]},
            {"free_rank": cp.simplified.rank if not cp.simplified.relators else None,
             "S3": [counts_c.get("S3"), counts_m.get("S3")]}))

    if n >= 2:
        s.check("epsilon.lp_matches_criterion", lambda: _epsilon_criterion(n))
        s.check("epsilon.reduced_relators_equal_ij", lambda: _epsilon_reduction(n))
    return report


def _model_count(n: int) -> int:
    return n * (n - 1) // 2 + n + len(ij_pairs(n))


def _act(arr, g, signs):
    return act_signs(arr, g, signs)


def _merge(report: VerificationReport, other: VerificationReport) -> None:
    for c in other.checks:
        report.checks.append(c)


def _epsilon_criterion(n: int):
    eps_all = list(itertools.product((1, -1), repeat=n))
    bad = []
    feasible = 0
    for i, a in enumerate(eps_all):
        for b in eps_all[i + 1:]:
            lp = epsilon_pair_feasible(a, b)
            feasible += lp
            if lp != epsilon_pair_criterion(a, b):
                bad.append([a, b])
    return not bad, "agree on all pairs", {"feasible_pairs": feasible, "disagreements": bad[:5]}


def _epsilon_reduction(n: int):
    rels = fc_epsilon_relations(n)
    reduced = {r.reduced() for r in rels}
    broken = [r.reduced() for r in rels if not epsilon_relator_reduces(r)]
    ok = reduced == set(ij_pairs(n)) and not broken
    return ok, {"pairs": len(ij_pairs(n)), "not_reducing": []}, \
        {"pairs": len(reduced), "not_reducing": broken[:5]}


def _gamma_checks(q, cp, model: GroupPresentation, groups: Sequence[FiniteGroupTable]):
    """Eliminated generators evaluate like the predicted words under every hom of the model.

    Type-2 loops on L_i should equal G_i and non-spanning type-1 arrows on
    H_eps should equal M_eps^-1 G0 M_eps.
    """
    cx = q.complex
    arr = cx.arrangement
    raw = cp.raw
    gammas = [edge_name(k) for k in gamma_cells(q)]
    survivor_to_g = {raw.generators.index(name) + 1: i + 1 for i, name in enumerate(gammas)}
    checked = 0
    bad = []
    homs = {g.name: hom_set(model, g) for g in groups}
    for raw_idx in range(raw.rank):
        name = raw.generators[raw_idx]
        orbit = int(name[1:]) - 1
        cell = q.cells1[orbit]
        hyp = arr.hyperplanes[cx.cells1[cell.representative].hyperplane]
        if raw_idx in cp.tietze.eliminated:
            word = tuple(survivor_to_g[abs(x)] * (1 if x > 0 else -1) for x in cp.tietze.eliminated[raw_idx])
        else:
            word = (survivor_to_g[raw_idx + 1],)
        if cell.cell_type == TYPE2_CLOSED:
            predicted = (hyp.tag[0] + 2,)
        else:
            predicted = gamma_epsilon_word(hyp.tag)
        for g in groups:
            if g.name not in homs:
                continue
            for images in homs[g.name]:
                if g.evaluate(word, images) != g.evaluate(predicted, images):
                    bad.append(name)
                    break
            else:
                continue
            break
        checked += 1
    return not bad, "all generators match", {"checked": checked, "mismatched": bad[:5]}
