import json

import pytest

from fc_salvetti.groups import battery
from fc_salvetti.presentation import computed_presentation, fc_model_presentation, spanning_cells
from fc_salvetti.quotient import build_quotient
from fc_salvetti.arrangement import build_fc_arrangement
from fc_salvetti.salvetti import build_salvetti_2_skeleton
from fc_salvetti.verify import (
    FAIL,
    PASS,
    SKIP,
    abelianization,
    boundary_pattern_matches,
    compare_presentations,
    run_invariant_suite,
)
from fc_salvetti.words import GroupPresentation, free_group


def computed(n):
    q = build_quotient(build_salvetti_2_skeleton(build_fc_arrangement(n)))
    return computed_presentation(q, spanning_cells(q)).simplified


def test_abelianization_examples():
    for n in (1, 2, 3):
        assert abelianization(fc_model_presentation(n)) == (n + 1, ())
    assert abelianization(free_group(2)) == (2, ())
    assert abelianization(computed(2)) == (3, ())
    assert abelianization(GroupPresentation(("a",), ((1, 1, 1),))) == (0, (3,))


def test_compare_examples():
    assert compare_presentations(computed(2), fc_model_presentation(2)).passed
    assert compare_presentations(computed(1), free_group(2)).passed
    rep = compare_presentations(computed(1), fc_model_presentation(1))
    assert not rep.passed
    s3 = next(c for c in rep.checks if c.name.endswith("homs.S3"))
    assert (s3.expected, s3.actual) == (36, 30)
    p = fc_model_presentation(3)
    assert compare_presentations(p, p).passed


def test_budget_becomes_skip():
    rep = compare_presentations(fc_model_presentation(3), fc_model_presentation(3), battery(["A4"]), budget=50)
    assert rep.passed
    assert [c.status for c in rep.checks] == [PASS, SKIP]


def test_boundary_pattern():
    a, b, c, d = 1, 2, 3, 4
    words = [(a, -d), (b, a, -c, -d), (c, b, a, -b, -c, -d)]
    assert boundary_pattern_matches(words)
    assert boundary_pattern_matches([tuple(-x for x in reversed(w)) for w in words])
    assert not boundary_pattern_matches([(a, -d), (b, a, -c, -d), (c, a, b, -b, -c, -d)])


def test_suite_n1_flags_boundary_case():
    rep = run_invariant_suite(1)
    assert rep.passed
    skip = [c for c in rep.checks if c.status == SKIP]
    assert [c.name for c in skip] == ["model.comparison"]
    assert "known theorem boundary case" in skip[0].note


def test_suite_n2():
    rep = run_invariant_suite(2)
    assert rep.passed, rep.summary()
    assert all(c.status == PASS for c in rep.checks)
    assert len({c.name for c in rep.checks}) == len(rep.checks)


def test_report_serialisation_is_stable():
    a = run_invariant_suite(2).to_json()
    b = run_invariant_suite(2).to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["passed"] is True
    assert all(set(rec) >= {"name", "status", "expected", "actual"} for rec in doc["checks"])
    assert "seconds" not in a


def test_failure_is_reported_not_raised():
    rep = compare_presentations(free_group(1), free_group(2))
    assert not rep.passed
    assert rep.failures[0].status == FAIL
    assert "FAIL" in rep.summary()


@pytest.mark.slow
def test_suite_n4():
    rep = run_invariant_suite(4)
    assert rep.passed, rep.summary()
