import pytest

from dendro.checks import (CHECKS, CheckReport, Limits, closed_report, default_limits,
                           footprint_report, nullary_footprints, open_counterexample,
                           pushout_product, two_shuffle_dendrex, closed_valence_dendrex,
                           reproduce_counterexamples, run_check, shuffle_lemma_instance)
from dendro.tensor import LimitError, factoring_shuffles, in_tensor, shuffles
from dendro.trees import close, enumerate_trees, linear, parse_tree

TINY = Limits(max_n=1, max_vertices=2, max_arity=2)


@pytest.mark.parametrize("cid", list(CHECKS))
def test_every_check_runs_and_passes_on_small_trees(cid):
    r = run_check(cid, TINY)
    assert r.instances_run > 0
    assert r.passed, r.lines(5)
    assert r.summary().startswith(f"check={cid} instances={r.instances_run} failures=0 time=")


def test_defaults_and_overrides():
    assert default_limits("a1") == Limits(3, 4, 3)
    r = run_check("sieve", max_vertices=1)
    assert r.instances_run == run_check("sieve", Limits(3, 1, 3)).instances_run
    with pytest.raises(KeyError):
        run_check("no-such-check")


@pytest.mark.parametrize("cid", ["prop-ii", "shuffle-lemma"])
def test_open_hypothesis_is_needed(cid):
    r = run_check(cid, Limits(1, 2, 2, allow_stumps=True))
    assert not r.passed
    assert any("a(*)" in line for line in r.lines())


def test_report_lines():
    r = CheckReport("demo")
    r.add("one", True)
    r.add("two", False, "x", "y")
    r.tally(False, lambda: ("three", "p", "q"))
    r.notes.append("hello")
    lines = r.lines(max_failures=1)
    assert lines[0] == "FAIL three: expected p; got q"
    assert lines[1] == "... 1 more failures"
    assert lines[2] == "note: hello"
    assert lines[-1] == "check=demo instances=3 failures=2 time=0.00s"


def test_roundtrip_guard():
    with pytest.raises(LimitError):
        run_check("lemma1-roundtrip", Limits(2, 4, 3, ceiling=1000))


def test_counterexamples_trigger():
    r = reproduce_counterexamples()
    assert r.passed and r.instances_run == 9


def test_counterexample_pieces():
    L, T, r = closed_valence_dendrex()
    assert L == close(linear(1)) and in_tensor(r, L, T)
    S, T, A, F = open_counterexample()
    assert A in shuffles(S, T)
    w = shuffle_lemma_instance(S, T, "y")
    assert str(w) == "a|x(a|z)"
    L, T, r = two_shuffle_dendrex()
    assert len(factoring_shuffles(L, T, r)) >= 2


def test_pushout_product_on_closed_simplices():
    assert pushout_product(close(linear(1)), parse_tree("a(b,c)")) is None
    assert pushout_product(close(linear(1)), parse_tree("a(*)")) is not None


def test_nullary_footprints():
    fp = nullary_footprints(parse_tree("a(*)"), parse_tree("x(*)"))
    assert len(fp[("a", "x")]) == 2
    fp = nullary_footprints(parse_tree("a(b)"), parse_tree("x(y)"))
    assert all(not v for v in fp.values())


def test_reports_run():
    r = footprint_report(Limits(1, 2, 2, True), exhaustive_vertices=1)
    assert r.instances_run == len(enumerate_trees(2, 2, True)) ** 2
    assert any("disagree" in n for n in r.notes)
    c = closed_report(1, Limits(1, 1, 2, True))
    assert c.instances_run == 4
    assert c.notes[-1].startswith("pushout-product identity for closed linear trees")
