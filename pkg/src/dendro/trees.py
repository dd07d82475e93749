"""Finite rooted trees (the objects of the dendroidal category Omega).

A tree is stored as a root edge plus a map from each edge to what sits on
top of it: ``None`` for a leaf, ``()`` for a stump (a vertex without
inputs) and a non-empty tuple of child edges for an ordinary vertex.  A
vertex is named by its output edge.

Edges are arbitrary hashable ids.  Trees parsed from text use their names
(strings); the dendrices of a tensor product use pairs ``(s, t)``.  Because
edge ids are unique within a tree, a tree *is* its own labelling: two
``Tree`` values compare equal exactly when they have the same edges with
the same vertices, regardless of sibling order.  Isomorphism that ignores
the names is handled by :func:`canonical_form`.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping

Edge = Hashable
Node = "tuple[Edge, ...] | None"

STUMP: tuple = ()


class TreeError(ValueError):
    pass


class ParseError(TreeError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def edge_name(e: Edge) -> str:
    if isinstance(e, tuple):
        return "|".join(edge_name(x) for x in e)
    return str(e)


class Tree:
    def __init__(self, root: Edge, kids: Mapping[Edge, "tuple | None"]):
        kids = {e: (None if c is None else tuple(c)) for e, c in kids.items()}
        if root not in kids:
            raise TreeError(f"root edge {edge_name(root)!r} has no entry")
        seen = {root}
        stack = [root]
        while stack:
            e = stack.pop()
            for c in kids[e] or ():
                if c in seen:
                    raise TreeError(f"edge {edge_name(c)!r} occurs twice")
                if c not in kids:
                    raise TreeError(f"edge {edge_name(c)!r} has no entry")
                seen.add(c)
                stack.append(c)
        if len(seen) != len(kids):
            raise TreeError("tree is not connected")
        self.root = root
        self._kids = kids

    # -- basic structure -------------------------------------------------

    def children(self, e: Edge) -> "tuple | None":
        return self._kids[e]

    @property
    def edges(self) -> frozenset:
        return frozenset(self._kids)

    def __len__(self) -> int:
        return len(self._kids)

    def __contains__(self, e: object) -> bool:
        return e in self._kids

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.preorder())

    def preorder(self) -> list:
        out, stack = [], [self.root]
        while stack:
            e = stack.pop()
            out.append(e)
            stack.extend(reversed(self._kids[e] or ()))
        return out

    @cached_property
    def parents(self) -> dict:
        return {c: e for e, cs in self._kids.items() for c in cs or ()}

    def parent(self, e: Edge) -> Edge | None:
        """Output edge of the vertex that has ``e`` as an input."""
        return self.parents.get(e)

    def is_leaf(self, e: Edge) -> bool:
        return self._kids[e] is None

    def has_stump(self, e: Edge) -> bool:
        return self._kids[e] == ()

    @property
    def leaves(self) -> frozenset:
        return frozenset(e for e, c in self._kids.items() if c is None)

    @property
    def vertices(self) -> list:
        """Vertices, each named by its output edge, in preorder."""
        return [e for e in self.preorder() if self._kids[e] is not None]

    @property
    def stumps(self) -> list:
        return [e for e in self.preorder() if self._kids[e] == ()]

    def inner_edges(self) -> list:
        return [e for e in self.preorder()
                if e != self.root and self._kids[e] is not None]

    def is_inner(self, e: Edge) -> bool:
        return e != self.root and self._kids[e] is not None

    def is_top_vertex(self, v: Edge) -> bool:
        cs = self._kids[v]
        return cs is not None and all(self._kids[c] is None for c in cs)

    def top_vertices(self) -> list:
        return [v for v in self.vertices if self.is_top_vertex(v)]

    def is_corolla(self) -> bool:
        return len(self.vertices) == 1

    def is_eta(self) -> bool:
        return len(self._kids) == 1 and self._kids[self.root] is None

    # -- order ------------------------------------------------------------

    @cached_property
    def _ancestors(self) -> dict:
        anc = {self.root: frozenset([self.root])}
        for e in self.preorder():
            for c in self._kids[e] or ():
                anc[c] = anc[e] | {c}
        return anc

    def le(self, e: Edge, f: Edge) -> bool:
        """True iff ``e`` lies on the path from the root up to ``f``."""
        if e not in self._kids or f not in self._kids:
            unknown = e if e not in self._kids else f
            raise TreeError(f"unknown edge {edge_name(unknown)!r}")
        return e in self._ancestors[f]

    def above(self, e: Edge) -> list:
        """Edges strictly above ``e``."""
        return [f for f in self.preorder() if f != e and e in self._ancestors[f]]

    # -- structural edits (each returns a new tree) ----------------------

    def subtree(self, e: Edge) -> "Tree":
        """The subtree T/e with root edge ``e``."""
        keep = {e} | set(self.above(e))
        return Tree(e, {f: self._kids[f] for f in keep})

    def relabel(self, f) -> "Tree":
        return Tree(f(self.root), {
            f(e): None if cs is None else tuple(f(c) for c in cs)
            for e, cs in self._kids.items()})

    def contract(self, e: Edge) -> "Tree":
        """Contract the inner edge ``e``, merging its two vertices."""
        if not self.is_inner(e):
            raise TreeError(f"{edge_name(e)!r} is not an inner edge")
        p = self.parents[e]
        kids = dict(self._kids)
        kids[p] = tuple(itertools.chain.from_iterable(
            self._kids[e] if c == e else (c,) for c in self._kids[p]))
        del kids[e]
        return Tree(self.root, kids)

    def delete_top(self, v: Edge) -> "Tree":
        """Delete the top vertex ``v`` with its input leaves."""
        if not self.is_top_vertex(v):
            raise TreeError(f"{edge_name(v)!r} is not a top vertex")
        kids = dict(self._kids)
        for c in self._kids[v]:
            del kids[c]
        kids[v] = None
        return Tree(self.root, kids)

    def delete_root(self) -> "Tree":
        """Delete the root vertex, the root edge and the leaf siblings of
        the unique inner input of the root vertex."""
        cs = self._kids[self.root] or ()
        inner = [c for c in cs if self._kids[c] is not None]
        if len(inner) != 1:
            raise TreeError("root face needs exactly one inner edge at the root")
        return self.subtree(inner[0])

    # -- identity ----------------------------------------------------------

    @cached_property
    def key(self) -> tuple:
        """Labelled identity: root plus each edge's set of children."""
        return (self.root, frozenset(
            (e, None if cs is None else frozenset(cs))
            for e, cs in self._kids.items()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tree) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Tree({render_text(self)!r})"

    def __str__(self) -> str:
        return render_text(self)


# -- canonical forms ------------------------------------------------------

def canonical_form(t: Tree, labelled: bool = False) -> tuple:
    """Isomorphism key of ``t``; equal keys iff the trees are isomorphic.

    With ``labelled=True`` the edge names take part in the comparison.
    """
    def go(e):
        cs = t.children(e)
        tag = (edge_name(e),) if labelled else ()
        if cs is None:
            return ("L",) + tag
        if cs == ():
            return ("S",) + tag
        return ("V",) + tag + (tuple(sorted(go(c) for c in cs)),)
    return go(t.root)


def is_open(t: Tree) -> bool:
    return not t.stumps


# -- text format ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+(?:\|[A-Za-z0-9_]+)*)|(\(\s*\*\s*\))|([(),]))")


def _tokens(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        tok = "(*)" if m.lastindex == 2 else m.group(m.lastindex)
        out.append((tok, start))
        pos = m.end()
    return out


def parse_tree(text: str) -> Tree:
    """Parse ``a(b,c(d(*),e))``-style text.  ``x|y`` names become pairs."""
    toks = _tokens(text)
    kids: dict = {}
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, len(text))

    def edge():
        nonlocal i
        tok, pos = peek()
        if tok is None or not re.fullmatch(r"[A-Za-z0-9_|]+", tok):
            raise ParseError("expected an edge name", pos)
        name = tuple(tok.split("|")) if "|" in tok else tok
        if name in kids:
            raise ParseError(f"duplicate edge name {tok!r}", pos)
        kids[name] = None
        i += 1
        tok, pos = peek()
        if tok == "(*)":
            kids[name] = ()
            i += 1
        elif tok == "(":
            i += 1
            cs = [edge()]
            while peek()[0] == ",":
                i += 1
                cs.append(edge())
            tok, pos = peek()
            if tok != ")":
                raise ParseError("expected ')'", pos)
            i += 1
            kids[name] = tuple(cs)
        return name

    root = edge()
    if i != len(toks):
        raise ParseError("trailing input", toks[i][1])
    return Tree(root, kids)


def render_text(t: Tree, annotate=None) -> str:
    """Render in the text grammar, children sorted by their rendering.

    ``annotate(v)`` may return a suffix string placed after a vertex's
    output edge name.
    """
    def go(e):
        cs = t.children(e)
        s = edge_name(e)
        if annotate is not None and cs is not None:
            s += annotate(e)
        if cs is None:
            return s
        if cs == ():
            return s + "(*)"
        return s + "(" + ",".join(sorted(go(c) for c in cs)) + ")"
    return go(t.root)


def render_dot(t: Tree, name: str = "T", vertex_style=None) -> str:
    """Graphviz digraph with one node per edge and per stump, arrows
    pointing from the root towards the leaves.

    With ``vertex_style(v)`` (returning node attributes) every vertex is
    drawn as a node of its own between its output and its inputs.
    """
    ids = {e: f"e{k}" for k, e in enumerate(t.preorder())}
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    for e in t.preorder():
        lines.append(f'  {ids[e]} [label="{edge_name(e)}"];')
    for e in t.preorder():
        cs = t.children(e)
        if cs is None:
            continue
        if vertex_style is not None:
            v = f"{ids[e]}_v"
            lines.append(f'  {v} [label="", shape=circle, width=0.15, {vertex_style(e)}];')
            lines.append(f"  {ids[e]} -> {v};")
            lines += [f"  {v} -> {ids[c]};" for c in cs]
            continue
        if cs == ():
            lines.append(f'  {ids[e]}_stump [label="", shape=point, width=0.12];')
            lines.append(f"  {ids[e]} -> {ids[e]}_stump;")
        for c in cs:
            lines.append(f"  {ids[e]} -> {ids[c]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_tree(t: Tree, format: str = "text") -> str:
    if format == "text":
        return render_text(t)
    if format == "dot":
        return render_dot(t)
    raise ValueError(f"unknown format {format!r}")


# -- standard trees -------------------------------------------------------

def eta(name: Edge = "x") -> Tree:
    return Tree(name, {name: None})


def linear(n: int) -> Tree:
    """The linear tree for the simplex [n]: edges "0" (root) .. "n"."""
    if n < 0:
        raise TreeError("linear(n) needs n >= 0")
    kids = {str(i): (str(i + 1),) for i in range(n)}
    kids[str(n)] = None
    return Tree("0", kids)


def corolla(k: int, root: str = "x", leaves: Iterable[str] | None = None) -> Tree:
    if k < 1:
        raise TreeError("corolla(k) needs k >= 1")
    names = list(leaves) if leaves is not None else (
        ["y", "z"] if k == 2 else [f"y{i}" for i in range(1, k + 1)])
    if len(names) != k:
        raise TreeError("wrong number of leaf names")
    kids = {root: tuple(names)}
    kids.update({n: None for n in names})
    return Tree(root, kids)


def close(t: Tree) -> Tree:
    """Put a stump on top of every leaf."""
    return Tree(t.root, {e: (() if cs is None else cs) for e, cs in t._kids.items()})


def standard_tree(kind: str, arg) -> Tree:
    if kind == "linear":
        return linear(arg)
    if kind == "corolla":
        return corolla(arg)
    if kind == "close":
        return close(arg)
    raise TreeError(f"unknown standard tree {kind!r}")


# -- catalogs ------------------------------------------------------------

def _shapes(max_vertices: int, max_arity: int, allow_stumps: bool) -> dict:
    """Unlabelled shapes (canonical keys) by exact vertex count."""
    by_count: dict = {0: [("L",)]}
    for k in range(1, max_vertices + 1):
        found = set()
        pool = [(c, s) for c in range(k) for s in by_count[c]]
        if allow_stumps and k == 1:
            found.add(("S",))
        for arity in range(1, max_arity + 1):
            for combo in itertools.combinations_with_replacement(range(len(pool)), arity):
                if sum(pool[j][0] for j in combo) == k - 1:
                    found.add(("V", tuple(sorted(pool[j][1] for j in combo))))
        by_count[k] = sorted(found)
    return by_count


def _names() -> Iterator[str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    yield from letters
    for a, b in itertools.product(letters, repeat=2):
        yield a + b


def tree_from_shape(shape: tuple) -> Tree:
    names = _names()
    kids: dict = {}

    def go(s):
        e = next(names)
        if s[0] == "L":
            kids[e] = None
        elif s[0] == "S":
            kids[e] = ()
        else:
            kids[e] = tuple(go(c) for c in s[1])
        return e

    root = go(shape)
    return Tree(root, kids)


def enumerate_trees(max_vertices: int = 4, max_arity: int = 3,
                    allow_stumps: bool = True) -> list[Tree]:
    """One tree per isomorphism class with at most ``max_vertices``
    vertices of arity at most ``max_arity``, in a fixed order."""
    if max_vertices < 0 or max_arity < 1:
        raise TreeError("need max_vertices >= 0 and max_arity >= 1")
    by_count = _shapes(max_vertices, max_arity, allow_stumps)
    return [tree_from_shape(s) for k in range(max_vertices + 1) for s in by_count[k]]
