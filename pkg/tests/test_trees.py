import pytest
from hypothesis import given, settings

from dendro.trees import (ParseError, Tree, TreeError, canonical_form, close, corolla,
                          enumerate_trees, eta, is_open, linear, parse_tree, render_dot,
                          render_text, render_tree, standard_tree)
from oracles import grown_classes
from strategies import CATALOG, scrambled

FIRST = "a(b,c(d(*),e))"


def test_parse_first_example():
    t = parse_tree(FIRST)
    assert t.root == "a"
    assert set(t.children("a")) == {"b", "c"}
    assert set(t.children("c")) == {"d", "e"}
    assert t.children("d") == ()
    assert t.is_leaf("b") and t.is_leaf("e")


def test_parse_eta_and_whitespace():
    assert parse_tree("x") == eta("x")
    assert parse_tree(" x ( y , z ( * ) ) ") == parse_tree("x(y,z(*))")


@pytest.mark.parametrize("text", ["a(b,b)", "a(b(a))"])
def test_duplicate_names_rejected(text):
    with pytest.raises(ParseError):
        parse_tree(text)


@pytest.mark.parametrize("text", ["", "a(", "a(b,)", "a()", "a(b))", "a b", "(*)"])
def test_syntax_errors_report_position(text):
    with pytest.raises(ParseError) as info:
        parse_tree(text)
    assert info.value.position >= 0


def test_render_text():
    assert render_tree(eta("x")) == "x"
    assert render_tree(corolla(2)) == "x(y,z)"
    assert canonical_form(parse_tree(render_tree(parse_tree(FIRST))), True) == \
        canonical_form(parse_tree(FIRST), True)


def test_render_dot_shape():
    dot = render_dot(parse_tree("a(b(*),c)"))
    assert dot.startswith("digraph")
    assert 'e0 [label="a"]' in dot
    assert "e0 -> e1;" in dot and "e0 -> e2;" in dot
    assert "e1 -> e1_stump" in dot and "shape=point" in dot  # stump as a terminal node


def test_canonical_form_examples():
    key = canonical_form
    assert key(parse_tree("x(y,z)")) == key(parse_tree("x(z,y)"))
    assert key(parse_tree("x(y,z)")) != key(parse_tree("x(y(*),z)"))
    assert key(parse_tree(FIRST)) == key(parse_tree("a(c(e,d(*)),b)"))
    assert key(parse_tree("p(q,r(s(*),t))")) == key(parse_tree(FIRST))
    assert key(parse_tree("p(q,r(s(*),t))"), True) != key(parse_tree(FIRST), True)


def test_is_open():
    assert is_open(parse_tree("x(y,z)"))
    assert not is_open(parse_tree(FIRST))
    assert not is_open(close(linear(1)))


def test_edge_le_examples():
    t = parse_tree(FIRST)
    assert t.le("a", "e")
    assert not t.le("b", "c") and not t.le("c", "b")
    assert all(t.le(e, e) for e in t.edges)
    with pytest.raises(TreeError):
        t.le("a", "nope")


def test_standard_trees():
    assert linear(0) == eta("0")
    assert render_text(linear(2)) == "0(1(2))"
    assert render_text(close(linear(1))) == "0(1(*))"
    assert standard_tree("corolla", 3).is_corolla()
    assert standard_tree("close", parse_tree("x(y,z)")) == parse_tree("x(y(*),z(*))")
    with pytest.raises(TreeError):
        linear(-1)
    with pytest.raises(TreeError):
        corolla(0)


def test_tree_invariants_enforced():
    with pytest.raises(TreeError):
        Tree("a", {"a": ("b",)})  # b has no node
    with pytest.raises(TreeError):
        Tree("a", {"a": ("b",), "b": None, "c": None})  # disconnected
    with pytest.raises(TreeError):
        Tree("a", {"a": ("b", "b"), "b": None})


def test_catalog_small_counts():
    assert enumerate_trees(0, 2, True) == [eta("a")]
    assert [render_text(t) for t in enumerate_trees(1, 2, False)] == ["a", "a(b)", "a(b,c)"]
    assert len(enumerate_trees(1, 2, True)) == 4


@pytest.mark.parametrize("args", [(4, 3, True), (4, 3, False), (3, 3, True), (4, 2, False)])
def test_catalog_matches_growth_oracle(args):
    cat = enumerate_trees(*args)
    keys = [canonical_form(t) for t in cat]
    assert len(set(keys)) == len(keys)
    assert set(keys) == grown_classes(*args)


def test_catalog_frozen_sizes():
    # regression values, confirmed by the growth oracle above
    assert len(enumerate_trees(4, 3, True)) == 357
    assert len(enumerate_trees(4, 3, False)) == 233
    assert len(enumerate_trees(4, 2, False)) == 48


def test_catalog_is_deterministic():
    assert enumerate_trees(3, 3, True) == enumerate_trees(3, 3, True)


@pytest.mark.parametrize("t", CATALOG, ids=render_text)
def test_parse_render_round_trip(t):
    assert parse_tree(render_text(t)) == t


@pytest.mark.parametrize("t", CATALOG, ids=render_text)
def test_edge_order_is_a_partial_order(t):
    es = t.preorder()
    for e in es:
        assert t.le(t.root, e)
        for f in es:
            if t.le(e, f) and t.le(f, e):
                assert e == f
            for g in es:
                if t.le(e, f) and t.le(f, g):
                    assert t.le(e, g)


@given(scrambled())
def test_canonical_form_ignores_names_and_order(pair):
    t, s = pair
    assert canonical_form(t) == canonical_form(s)


@settings(max_examples=50)
@given(scrambled(), scrambled())
def test_canonical_form_separates_classes(p, q):
    (t, s), (u, _) = p, q
    assert (canonical_form(s) == canonical_form(u)) == (t == u)


@given(scrambled())
def test_closing_a_tree_with_leaves_is_not_open(pair):
    _, t = pair
    c = close(t)
    if t.leaves:
        assert not is_open(c)
    assert not c.leaves
