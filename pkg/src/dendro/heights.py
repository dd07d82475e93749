"""Height functions and monos into ``[n] (x) T``.

A mono ``S' >-> [n] (x) T`` is the same thing as a face ``u: S >-> T``
together with a height function on ``S``.  Dendrices of ``[n] (x) T``
carry labels ``(str(i), e)``; here ``[n]`` is :func:`linear` with edges
``"0".."n"`` and root ``"0"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .faces import Embedding, all_subfaces, is_face
from .tensor import Block, Dendrex, in_tensor
from .trees import Edge, Tree, close, edge_name, linear, render_text


class HeightError(ValueError):
    def __init__(self, message: str, pair: tuple | None = None):
        super().__init__(message)
        self.pair = pair


class DecodeError(ValueError):
    pass


class HeightFunction:
    """A monotone map from edges to nonempty subsets of ``{0..n}``."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Mapping[Edge, Iterable[int]]):
        self.n = n
        self.values = {e: frozenset(v) for e, v in values.items()}

    def __getitem__(self, e: Edge) -> frozenset:
        return self.values[e]

    def image(self) -> frozenset:
        return frozenset().union(*self.values.values())

    def _key(self) -> tuple:
        return self.n, frozenset(self.values.items())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HeightFunction) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        items = sorted(self.values.items(), key=lambda kv: edge_name(kv[0]))
        return ";".join(f"{edge_name(e)}:{','.join(map(str, sorted(v)))}" for e, v in items)

    def __repr__(self) -> str:
        return f"HeightFunction(n={self.n}, {self})"


def parse_heights(text: str) -> dict:
    """Parse ``"a:1;b:2;c:1,3"`` into a raw map."""
    out: dict = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        name, sep, vals = part.partition(":")
        if not sep:
            raise HeightError(f"missing ':' in {part!r}")
        name = name.strip()
        e = tuple(name.split("|")) if "|" in name else name
        try:
            out[e] = {int(v) for v in vals.split(",") if v.strip()}
        except ValueError:
            raise HeightError(f"bad height list {vals!r}") from None
    return out


def validate_height(S: Tree, n: int, h: Mapping) -> HeightFunction:
    if n < 0:
        raise HeightError("n must be nonnegative")
    missing = S.edges - set(h)
    if missing:
        raise HeightError(f"no heights for {sorted(map(edge_name, missing))}")
    extra = set(h) - S.edges
    if extra:
        raise HeightError(f"heights given for unknown edges {sorted(map(edge_name, extra))}")
    for e in S.preorder():
        vs = h[e]
        if not vs:
            raise HeightError(f"empty height set at {edge_name(e)}", (e,))
        if min(vs) < 0 or max(vs) > n:
            raise HeightError(f"height out of range 0..{n} at {edge_name(e)}", (e,))
    # strict order: e < e' forces max h(e) <= min h(e'); sets may have several points
    for e in S.preorder():
        for f in S.above(e):
            if f != e and max(h[e]) > min(h[f]):
                raise HeightError(
                    f"monotonicity fails at ({edge_name(e)},{edge_name(f)})", (e, f))
    return HeightFunction(n, h)


@dataclass(frozen=True)
class MonoKey:
    """A face of ``target`` (as its labelled image) and a height function on it."""

    face: Tree
    target: Tree
    height: HeightFunction

    def __post_init__(self):
        if not is_face(self.face, self.target):
            raise DecodeError(f"{render_text(self.face)} is not a face of {render_text(self.target)}")
        if set(self.height.values) != self.face.edges:
            raise HeightError("height must be defined exactly on the face's edges")

    @property
    def n(self) -> int:
        return self.height.n

    @property
    def embedding(self) -> Embedding:
        return Embedding(self.face, self.target)

    def __str__(self) -> str:
        return f"{render_text(self.face)} @ {self.height} (n={self.n})"


def mono_key(face: Tree, target: Tree, n: int, h: Mapping) -> MonoKey:
    return MonoKey(face, target, validate_height(face, n, h))


# -- encode / decode -------------------------------------------------------------

def _label(i: int, e: Edge) -> tuple:
    return (str(i), e)


def encode(key: MonoKey) -> Dendrex:
    """The mono ``S'``: each edge ``e`` of the face subdivided into ``(i, e)``
    for ``i`` in ``h(e)``."""
    F, h = key.face, key.height
    kids: dict = {}
    for e in F.preorder():
        run = sorted(h[e])
        for lo, hi in zip(run, run[1:]):
            kids[_label(lo, e)] = (_label(hi, e),)
        ch = F.children(e)
        kids[_label(run[-1], e)] = None if ch is None else tuple(
            _label(min(h[c]), c) for c in ch)
    return Tree(_label(min(h[F.root]), F.root), kids)


def decode(r: Dendrex, T: Tree, n: int, closed: bool = False, check: bool = True) -> MonoKey:
    """Split a dendrex of ``[n] (x) T`` (or ``cl[n] (x) T``) into its face
    of T and height function.

    Runs of edges with a constant T-label are collapsed (the degeneracy);
    what remains must be a face of T.  For ``cl[n]`` a stump composite can
    swallow inputs of a T-vertex, and then it is not.
    """
    L = close(linear(n)) if closed else linear(n)
    if check and not in_tensor(r, L, T):
        raise DecodeError(f"{render_text(r)} is not a dendrex of the tensor product")
    heights: dict = {}
    top: dict = {}
    for s, t in r.edges:
        i = int(s)
        heights.setdefault(t, set()).add(i)
        if i >= top.get(t, -1):
            top[t] = i
    kids: dict = {}
    for t, i in top.items():
        ch = r.children(_label(i, t))
        if ch is not None and any(c[1] == t for c in ch):
            raise DecodeError(f"T-colour {edge_name(t)} does not form a single run")
        kids[t] = None if ch is None else tuple(c[1] for c in ch)
    F = Tree(r.root[1], kids)
    if not is_face(F, T):
        raise DecodeError(
            f"valence decreased: {render_text(F)} is not a face of {render_text(T)}")
    return MonoKey(F, T, HeightFunction(n, heights))


def complete_shuffle(key: MonoKey) -> Dendrex:
    """The shuffle of ``[n] (x) F`` built by subdividing further: the root
    edge down to 0, an inner edge down to the top height of its parent,
    and a leaf also up to ``n``."""
    F, h, n = key.face, key.height, key.n
    kids: dict = {}
    for e in F.preorder():
        d = F.parent(e)
        lo = 0 if d is None else max(h[d])
        hi = n if F.is_leaf(e) else max(h[e])
        for i in range(lo, hi):
            kids[_label(i, e)] = (_label(i + 1, e),)
        ch = F.children(e)
        kids[_label(hi, e)] = None if ch is None else tuple(_label(hi, c) for c in ch)
    return Tree(_label(0, F.root), kids)


def _linear_face(n: int, avoid: Iterable[int]) -> Tree | None:
    keep = [i for i in range(n + 1) if i not in set(avoid)]
    if not keep:
        return None
    names = [str(i) for i in keep]
    kids = {a: (b,) for a, b in zip(names, names[1:])}
    kids[names[-1]] = None
    return Tree(names[0], kids)


def simplicial_face_factor(r: Dendrex, T: Tree, n: int, I: Iterable[int]) -> bool:
    """Does ``r`` lie in ``(intersection of the faces d_i[n], i in I) (x) T``?"""
    face = _linear_face(n, I)
    if face is None:
        return False
    return Block.of(linear(n), T, face, T).contains(r)


def tree_face_factor(r: Dendrex, T: Tree, n: int, F: Tree) -> bool:
    """Does ``r`` lie in ``[n] (x) F`` for the face ``F`` of T?"""
    return Block.of(linear(n), T, linear(n), F).contains(r)


# -- counting and iteration -------------------------------------------------------

def count_heights(S: Tree, n: int) -> int:
    """Number of height functions on S with values in ``{0..n}``."""
    memo: dict = {}

    def count(e, lb):
        # h(e) has max m and min >= lb: 2^(m-lb) choices; the rest must sit above m
        if (e, lb) in memo:
            return memo[e, lb]
        tot = 0
        ch = S.children(e) or ()
        for m in range(lb, n + 1):
            p = 1 << (m - lb)
            for c in ch:
                p *= count(c, m)
            tot += p
        memo[e, lb] = tot
        return tot
    return count(S.root, 0)


@lru_cache(maxsize=1024)
def count_monos(T: Tree, n: int) -> int:
    """Sum over all faces F of T of the number of height functions on F."""
    return sum(count_heights(F, n) for F in all_subfaces(T).elements)


def _subsets_with_max(lb: int, m: int) -> Iterator[frozenset]:
    rest = range(lb, m)
    for k in range(len(rest) + 1):
        for c in itertools.combinations(rest, k):
            yield frozenset(c + (m,))


def iter_heights(S: Tree, n: int) -> Iterator[HeightFunction]:
    """Every height function on S, in a deterministic order."""
    def go(edges: list, bound: dict):
        if not edges:
            yield {}
            return
        e, rest = edges[0], edges[1:]
        lb = bound[e]
        for m in range(lb, n + 1):
            for vs in _subsets_with_max(lb, m):
                nb = dict(bound)
                for c in S.children(e) or ():
                    nb[c] = m
                for tail in go(rest, nb):
                    tail[e] = vs
                    yield tail
    for vals in go(S.preorder(), {S.root: 0}):
        yield HeightFunction(n, vals)


def iter_keys(T: Tree, n: int) -> Iterator[MonoKey]:
    """All pairs (face of T, height function) for fixed n."""
    for F in all_subfaces(T):
        for h in iter_heights(F, n):
            yield MonoKey(F, T, h)
