"""Shuffles and dendrices of the Boardman-Vogt tensor product S (x) T.

A non-degenerate dendrex of ``S (x) T`` is stored as a tree whose edges are
pairs ``(s, t)`` of an edge of S and an edge of T.  The tensor product
operad is thin (at most one operation per signature), so this labelling
determines the dendrex; two faces of different shuffles with the same
labels are the same dendrex, which is exactly the Boardman-Vogt
identification.

Two descriptions of the same sets are provided:

* the explicit one: shuffles by frontier recursion, closed under faces;
* the operadic one (:class:`Block`): the operations of ``a (x) b`` for
  faces ``a`` of S and ``b`` of T, as bitmasks over colours, with
  dendrex membership decided vertex by vertex.

The explicit sets are only feasible for small trees; the operadic one
scales further and is what the exhaustive checks use.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .faces import Embedding, Subobject, elementary_faces, face_closure, is_face
from .trees import Edge, Tree, TreeError, edge_name, render_dot, render_text

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))

Dendrex = Tree


class TensorError(ValueError):
    pass


class LimitError(TensorError):
    """A computation would exceed a configured size ceiling."""


# largest number of operations into one colour that a block may hold
MAX_OPS_PER_COLOUR = 2_000_000


# -- explicit layer ----------------------------------------------------------

def _frontier(S: Tree, T: Tree, c: tuple) -> list[dict]:
    """All frontier expansions above colour ``c`` as partial kid maps."""
    s, t = c
    options = []
    if S.children(s) is not None:
        options.append([(x, t) for x in S.children(s)])
    if T.children(t) is not None:
        options.append([(s, y) for y in T.children(t)])
    if not options:
        return [{c: None}]
    out = []
    for kids in options:
        for parts in itertools.product(*(_frontier(S, T, k) for k in kids)):
            m = {c: tuple(kids)}
            for p in parts:
                m.update(p)
            out.append(m)
    return out


@lru_cache(maxsize=256)
def percolations(S: Tree, T: Tree) -> tuple[Dendrex, ...]:
    """Every tree reachable by frontier recursion from ``(root S, root T)``:
    at each colour pick the S-vertex or the T-vertex above it."""
    root = (S.root, T.root)
    found = {Tree(root, m) for m in _frontier(S, T, root)}
    return tuple(sorted(found, key=render_text))


@lru_cache(maxsize=256)
def shuffles(S: Tree, T: Tree) -> tuple[Dendrex, ...]:
    """The shuffles of ``S (x) T``, one per tree produced by frontier
    recursion.

    With stumps on both sides some of these are faces of others (a stump
    on one side absorbs the vertices of the other); :func:`maximal_shuffles`
    drops those.
    """
    return percolations(S, T)


@lru_cache(maxsize=256)
def maximal_shuffles(S: Tree, T: Tree) -> tuple[Dendrex, ...]:
    ps = percolations(S, T)
    return tuple(a for a in ps
                 if not any(b is not a and len(b) > len(a) and is_face(a, b) for b in ps))


def dendrex_faces(r: Dendrex) -> list[Dendrex]:
    return [f.image for _, f in elementary_faces(r)]


@lru_cache(maxsize=256)
def dendrices(S: Tree, T: Tree) -> Subobject:
    """All non-degenerate dendrices of ``S (x) T``: the face closure of the
    shuffles."""
    return Subobject((S, T), face_closure(shuffles(S, T)))


def colours_of(r: Dendrex) -> tuple[frozenset, frozenset]:
    return frozenset(s for s, _ in r.edges), frozenset(t for _, t in r.edges)


def is_dendrex(S: Tree, T: Tree, r: Dendrex) -> bool:
    """Membership of ``r`` in ``dendrices(S, T)``, decided vertex by vertex."""
    return in_tensor(r, S, T)


def factoring_shuffles(S: Tree, T: Tree, r: Dendrex) -> list[Dendrex]:
    if not is_dendrex(S, T, r):
        raise TensorError(f"{render_text(r)} is not a dendrex of the tensor product")
    return [a for a in shuffles(S, T) if is_face(r, a)]


def pushforward(f: Embedding, g: Embedding, r: Dendrex) -> Dendrex:
    """Transport a dendrex of ``source(f) (x) source(g)`` into
    ``target(f) (x) target(g)``."""
    if not is_dendrex(f.source, g.source, r):
        raise TensorError(f"{render_text(r)} is not a dendrex of the source product")
    return r.relabel(lambda c: (f.edge_map[c[0]], g.edge_map[c[1]]))


def tensor_subobject(A: Subobject, B: Subobject) -> Subobject:
    """``A (x) B`` inside ``S (x) T`` for subobjects of the representables."""
    (S,), (T,) = A.carrier, B.carrier
    out: set = set()
    for a in A.maximal():
        for b in B.maximal():
            out |= dendrices(a, b).elements
    return Subobject((S, T), out)


# -- operations of a (x) b ---------------------------------------------------

def _realize(a: Tree, b: Tree, c: tuple, ins: frozenset, memo: dict):
    """A generator tree for the operation ``ins -> c`` of ``a (x) b``, as
    nested ``(side, colour, children)`` tuples, or None.  S-moves are
    tried first so the result is deterministic."""
    key = (c, ins)
    if key in memo:
        return memo[key]
    memo[key] = None
    if c in ins:
        res = ("leaf", c, ()) if len(ins) == 1 else None
        memo[key] = res
        return res
    for side, tree in ((0, a), (1, b)):
        ch = tree.children(c[side])
        if ch is None:
            continue
        kids = [(x, c[1]) if side == 0 else (c[0], x) for x in ch]
        parts: dict = {k: set() for k in kids}
        ok = True
        for d in ins:
            hit = [k for k in kids if tree.le(k[side], d[side])]
            if len(hit) != 1:
                ok = False
                break
            parts[hit[0]].add(d)
        if not ok:
            continue
        subs = []
        for k in kids:
            sub = _realize(a, b, k, frozenset(parts[k]), memo)
            if sub is None:
                break
            subs.append(sub)
        else:
            res = ("S" if side == 0 else "T", c, tuple(subs))
            memo[key] = res
            return res
    return None


def realize_operation(a: Tree, b: Tree, out: tuple, ins: Iterable[tuple]):
    """Generator tree for the operation ``ins -> out`` of ``a (x) b``, or
    None when there is no such operation."""
    ins = frozenset(ins)
    if out in ins:
        return None
    for d in ins | {out}:
        if d[0] not in a or d[1] not in b:
            return None
    for d in ins:
        if not (a.le(out[0], d[0]) and b.le(out[1], d[1])):
            return None
    return _realize(a, b, out, ins, {})


def is_tensor_operation(a: Tree, b: Tree, out: tuple, ins: Iterable[tuple]) -> bool:
    return realize_operation(a, b, out, ins) is not None


def in_tensor(r: Dendrex, a: Tree, b: Tree) -> bool:
    """Is ``r`` a dendrex of ``a (x) b`` (after relabelling into S (x) T)?"""
    if not all(isinstance(c, tuple) and len(c) == 2 and c[0] in a and c[1] in b
               for c in r.edges):
        return False
    return all(is_tensor_operation(a, b, v, r.children(v)) for v in r.vertices)


def footprints(r: Dendrex, a: Tree, b: Tree) -> dict:
    """For each vertex of ``r``, the S-vertices and T-vertices (named by
    their output edges) composed into it, read off one realization.  For
    open trees the result does not depend on the realization."""
    out = {}
    for v in r.vertices:
        g = realize_operation(a, b, v, r.children(v))
        if g is None:
            raise TensorError(f"vertex at {edge_name(v)} is not an operation")
        fs, ft = set(), set()
        stack = [g]
        while stack:
            side, c, subs = stack.pop()
            if side == "S":
                fs.add(c[0])
            elif side == "T":
                ft.add(c[1])
            stack.extend(subs)
        out[v] = (frozenset(fs), frozenset(ft))
    return out


def render_dendrex(r: Dendrex, S: Tree, T: Tree) -> str:
    """Nested text with ``s|t`` edges and ``[S:..;T:..]`` footprints."""
    fps = footprints(r, S, T)

    def ann(v):
        fs, ft = fps[v]
        return "[S:" + ",".join(sorted(map(edge_name, fs))) + ";T:" + \
            ",".join(sorted(map(edge_name, ft))) + "]"
    return render_text(r, annotate=ann)


def dendrex_dot(r: Dendrex, S: Tree, T: Tree, name: str = "D") -> str:
    """DOT drawing with a node per vertex: pure S-vertices filled, pure
    T-vertices hollow, composites crossed."""
    fps = footprints(r, S, T)

    def style(v):
        fs, ft = fps[v]
        if fs and ft:
            return 'shape=doublecircle, xlabel="(x)"'
        if fs:
            return "style=filled, fillcolor=black"
        return "style=solid"
    return render_dot(r, name=name, vertex_style=style)


# -- colour indexing and blocks ------------------------------------------------

class Carrier:
    """Bit indexing of the colours ``Edges(S) x Edges(T)``."""

    def __init__(self, S: Tree, T: Tree):
        self.S, self.T = S, T
        self.s_edges = S.preorder()
        self.t_edges = T.preorder()
        self._si = {e: i for i, e in enumerate(self.s_edges)}
        self._ti = {e: i for i, e in enumerate(self.t_edges)}
        self.nt = len(self.t_edges)
        self.colours = [(s, t) for s in self.s_edges for t in self.t_edges]

    def index(self, c: tuple) -> int:
        return self._si[c[0]] * self.nt + self._ti[c[1]]

    def colour(self, i: int) -> tuple:
        return self.colours[i]

    def mask(self, cs: Iterable[tuple]) -> int:
        m = 0
        for c in cs:
            m |= 1 << self.index(c)
        return m

    def unmask(self, m: int) -> list[tuple]:
        out, i = [], 0
        while m:
            if m & 1:
                out.append(self.colours[i])
            m >>= 1
            i += 1
        return out

    def __eq__(self, other):
        return isinstance(other, Carrier) and (self.S, self.T) == (other.S, other.T)

    def __hash__(self):
        return hash((self.S, self.T))


@lru_cache(maxsize=64)
def carrier(S: Tree, T: Tree) -> Carrier:
    return Carrier(S, T)


class Block:
    """A thin sub-operad of ``S (x) T``: a set of colours and, for each
    colour, the input sets (bitmasks) of the operations into it.

    ``N(block)`` (its dendroidal nerve) is the set of labelled trees all of
    whose edges are colours and all of whose vertices are operations.
    """

    __slots__ = ("carrier", "colours", "ops", "name")

    def __init__(self, carrier: Carrier, colours: frozenset, ops: dict, name: str = ""):
        self.carrier = carrier
        self.colours = colours
        self.ops = ops
        self.name = name

    @classmethod
    def of(cls, S: Tree, T: Tree, a: Tree | None = None, b: Tree | None = None) -> "Block":
        a = S if a is None else a
        b = T if b is None else b
        return _block(S, T, a, b)

    def __and__(self, other: "Block") -> "Block":
        if self.carrier != other.carrier:
            raise TensorError("blocks over different carriers")
        cols = self.colours & other.colours
        ops = {c: self.ops[c] & other.ops[c] for c in cols}
        return Block(self.carrier, cols, ops, f"({self.name} & {other.name})")

    def restrict(self, allowed: Iterable[int], name: str = "") -> "Block":
        """The full sub-operad on a subset of the colours."""
        cols = self.colours & frozenset(allowed)
        allowed_mask = 0
        for c in cols:
            allowed_mask |= 1 << c
        ops = {c: frozenset(m for m in self.ops[c] if m & ~allowed_mask == 0) for c in cols}
        return Block(self.carrier, cols, ops, name or f"{self.name}|restricted")

    def n_ops(self) -> int:
        return sum(len(v) for v in self.ops.values())

    def contains(self, r: Dendrex) -> bool:
        car = self.carrier
        try:
            idx = {e: car.index(e) for e in r.edges}
        except (KeyError, TypeError, IndexError):
            return False
        if not all(i in self.colours for i in idx.values()):
            return False
        for v in r.vertices:
            m = 0
            for c in r.children(v):
                m |= 1 << idx[c]
            if m not in self.ops[idx[v]]:
                return False
        return True

    def contained_in(self, other: "Block") -> bool:
        return self.colours <= other.colours and all(
            self.ops[c] <= other.ops[c] for c in self.colours)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Block) and self.carrier == other.carrier
                and self.colours == other.colours and self.ops == other.ops)

    def __hash__(self):
        return hash(self.colours)

    def _order(self) -> list[int]:
        car = self.carrier
        depth_s = {e: len(car.S._ancestors[e]) for e in car.s_edges}
        depth_t = {e: len(car.T._ancestors[e]) for e in car.t_edges}

        def d(i):
            s, t = car.colour(i)
            return depth_s[s] + depth_t[t]
        return sorted(self.colours, key=d, reverse=True)

    def count(self) -> int:
        """Number of dendrices in the nerve."""
        n: dict = {}
        for c in self._order():
            tot = 1
            for m in self.ops[c]:
                p = 1
                i = 0
                while m:
                    if m & 1:
                        p *= n[i]
                    m >>= 1
                    i += 1
                tot += p
            n[c] = tot
        return sum(n.values())

    def trees(self) -> Iterable[Dendrex]:
        """Every dendrex of the nerve (use only on small blocks)."""
        car = self.carrier
        rooted: dict = {}
        for c in self._order():
            col = car.colour(c)
            here = [{col: None}]
            for m in self.ops[c]:
                ins = [car.index(x) for x in car.unmask(m)]
                for parts in itertools.product(*(rooted[i] for i in ins)):
                    k = {col: tuple(car.colour(i) for i in ins)}
                    for p in parts:
                        k.update(p)
                    here.append(k)
            rooted[c] = here
        for c, ks in rooted.items():
            for k in ks:
                yield Tree(car.colour(c), k)

    def __repr__(self) -> str:
        return f"Block({self.name or '?'}: {len(self.colours)} colours, {self.n_ops()} ops)"


@lru_cache(maxsize=4096)
def _block(S: Tree, T: Tree, a: Tree, b: Tree) -> Block:
    car = carrier(S, T)
    if not (a.edges <= S.edges and b.edges <= T.edges):
        raise TensorError("block faces must be labelled by edges of the carrier")
    memo: dict = {}

    def partial(c: tuple) -> set:
        if c in memo:
            return memo[c]
        res = {1 << car.index(c)}
        for side, tree in ((0, a), (1, b)):
            ch = tree.children(c[side])
            if ch is None:
                continue
            acc = {0}
            for x in ch:
                k = (x, c[1]) if side == 0 else (c[0], x)
                sub = partial(k)
                if len(acc) * len(sub) > MAX_OPS_PER_COLOUR:
                    raise LimitError(
                        f"more than {MAX_OPS_PER_COLOUR} operations into {edge_name(c)}")
                acc = {p | q for p in acc for q in sub}
            res |= acc
        memo[c] = res
        return res

    colours = frozenset(car.index((s, t)) for s in a.edges for t in b.edges)
    ops = {}
    for s in a.edges:
        for t in b.edges:
            i = car.index((s, t))
            ops[i] = frozenset(partial((s, t)) - {1 << i})
    return Block(car, colours, ops, f"{render_text(a)}(x){render_text(b)}")


def clear_caches() -> None:
    """Drop memoized blocks and shuffles (blocks of larger pairs are big)."""
    for f in (_block, carrier, percolations, shuffles, maximal_shuffles, dendrices):
        f.cache_clear()


def blocks_for(S: Tree, T: Tree, A: Sequence[Tree], B: Sequence[Tree]) -> list[Block]:
    """Blocks generating ``A (x) B`` for generating faces A of S and B of T."""
    return [Block.of(S, T, a, b) for a in A for b in B]


# -- nerve inclusion -------------------------------------------------------------

@dataclass
class Witness:
    tree: Dendrex

    def __str__(self) -> str:
        return render_text(self.tree)


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _minimal(keys: set) -> set:
    if len(keys) <= 1:
        return keys
    out: list = []
    for k in sorted(keys, key=int.bit_count):
        if not any(o & k == o for o in out):
            out.append(k)
    return set(out)


def nerve_included(block: Block, family: Sequence[Block]) -> Witness | None:
    """Decide ``N(block) <= union of N(f) for f in family``.

    Returns None when the inclusion holds, otherwise a dendrex of
    ``N(block)`` lying in no member of the family.

    A tree lies in ``N(f)`` exactly when every edge is a colour of ``f`` and
    every vertex an operation of ``f``, so for each rooted tree it is enough
    to track the set ``K`` of family members (a bitmask) that still contain
    it.  Only the inclusion-minimal sets matter; a tree with ``K = 0`` is
    a witness.
    """
    car = block.carrier
    for f in family:
        if f.carrier != car:
            raise TensorError("family over a different carrier")
    if not block.colours or any(block.contained_in(f) for f in family):
        return None
    col_k = {}
    for c in block.colours:
        k = 0
        for j, f in enumerate(family):
            if c in f.colours:
                k |= 1 << j
        col_k[c] = k

    reach: dict = {}  # colour -> minimal K masks of trees rooted there
    for c in block._order():
        found = {col_k[c]}
        members = [(j, family[j].ops[c]) for j in _bits(col_k[c])]
        for opm in block.ops[c]:
            k = col_k[c]
            for j, ops in members:
                if opm not in ops:
                    k &= ~(1 << j)
            keys = {k}
            for d in _bits(opm):
                rd = reach[d]
                if len(rd) == 1:
                    (kd,) = rd
                    keys = {x & kd for x in keys}
                else:
                    keys = _minimal({x & kd for x in keys for kd in rd})
            found |= keys
        reach[c] = _minimal(found)
        if 0 in reach[c]:
            return Witness(_rebuild(block, col_k, family, reach, c))
    return None


def _rebuild(block: Block, col_k: dict, family: Sequence[Block], reach: dict, c: int) -> Tree:
    """A tree rooted at ``c`` whose K mask is 0, found by search."""
    car = block.carrier
    kids: dict = {}

    def k_of_op(c, opm):
        k = col_k[c]
        for j in _bits(col_k[c]):
            if opm not in family[j].ops[c]:
                k &= ~(1 << j)
        return k

    def build(c, target):
        # a tree rooted at c whose K mask is contained in target
        col = car.colour(c)
        if col_k[c] & ~target == 0:
            kids[col] = None
            return True
        for opm in sorted(block.ops[c]):
            ins = _bits(opm)
            choice = _choose(k_of_op(c, opm), ins, target)
            if choice is None:
                continue
            kids[col] = tuple(car.colour(d) for d in ins)
            for d, kd in zip(ins, choice):
                build(d, kd)
            return True
        return False

    def _choose(k, ins, target):
        # one reachable key per input with k & keys within target
        if not ins:
            return () if k & ~target == 0 else None
        d, rest = ins[0], ins[1:]
        for kd in sorted(reach[d]):
            tail = _choose(k & kd, rest, target)
            if tail is not None:
                return (kd,) + tail
        return None

    if not build(c, 0):
        raise TensorError("witness reconstruction failed")
    return Tree(car.colour(c), kids)


def union_included(xs: Sequence[Block], ys: Sequence[Block]) -> Witness | None:
    for x in xs:
        w = nerve_included(x, ys)
        if w is not None:
            return w
    return None


def intersect_unions(xs: Sequence[Block], ys: Sequence[Block]) -> list[Block]:
    out = []
    for x in xs:
        for y in ys:
            z = x & y
            if z.colours:
                out.append(z)
    return out


def union_equal(xs: Sequence[Block], ys: Sequence[Block]) -> Witness | None:
    return union_included(xs, ys) or union_included(ys, xs)


def to_subobject(blocks: Sequence[Block]) -> Subobject:
    """Materialize a union of blocks (small blocks only)."""
    if not blocks:
        raise TensorError("cannot infer the carrier of an empty union")
    car = blocks[0].carrier
    els: set = set()
    for b in blocks:
        els.update(b.trees())
    return Subobject((car.S, car.T), els)
