"""Faces of trees, subobjects of representables, and the detachment forest.

A face of ``T`` is represented by its image: a tree whose edges are edges
of ``T``.  Because a map in Omega is determined by what it does on edges,
this labelled tree identifies the face completely, and subobjects of
``Omega[T]`` are just face-closed sets of such trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .trees import Edge, Tree, TreeError, edge_name, parse_tree, render_text


class FaceError(TreeError):
    pass


@dataclass(frozen=True)
class FaceDescriptor:
    kind: str  # "inner" | "top" | "root" | "edge"
    edge: Edge = None

    def __post_init__(self):
        if self.kind not in ("inner", "top", "root", "edge"):
            raise FaceError(f"unknown face kind {self.kind!r}")
        if (self.kind == "root") != (self.edge is None):
            raise FaceError(f"bad face descriptor {self.kind}:{self.edge}")

    def __str__(self) -> str:
        return "root" if self.kind == "root" else f"{self.kind}:{edge_name(self.edge)}"

    @classmethod
    def parse(cls, text: str) -> "FaceDescriptor":
        text = text.strip()
        if text == "root":
            return cls("root")
        kind, sep, name = text.partition(":")
        if not sep or not name:
            raise FaceError(f"cannot parse face descriptor {text!r}")
        return cls(kind, tuple(name.split("|")) if "|" in name else name)


def Inner(e: Edge) -> FaceDescriptor:
    return FaceDescriptor("inner", e)


def Top(v: Edge) -> FaceDescriptor:
    return FaceDescriptor("top", v)


def Root() -> FaceDescriptor:
    return FaceDescriptor("root")


def CorollaEdge(e: Edge) -> FaceDescriptor:
    return FaceDescriptor("edge", e)


@dataclass(frozen=True)
class Embedding:
    """A face ``source >-> target`` given by an injective edge map."""

    source: Tree
    target: Tree
    edge_map: Mapping = field(default=None, compare=False, hash=False)
    image: Tree = field(init=False)

    def __post_init__(self):
        m = self.edge_map
        if m is None:
            m = {e: e for e in self.source.edges}
            object.__setattr__(self, "edge_map", m)
        if len(set(m.values())) != len(m) or set(m) != set(self.source.edges):
            raise FaceError("edge map must be injective and total")
        image = self.source.relabel(lambda e: m[e])
        if not is_face(image, self.target):
            raise FaceError(f"{render_text(image)} is not a face of {render_text(self.target)}")
        object.__setattr__(self, "image", image)

    @classmethod
    def of(cls, image: Tree, target: Tree) -> "Embedding":
        return cls(image, target)

    def compose(self, outer: "Embedding") -> "Embedding":
        """``outer . self``: first into ``self.target``, then into ``outer.target``."""
        return Embedding(self.source, outer.target,
                         {e: outer.edge_map[f] for e, f in self.edge_map.items()})

    def factors_through(self, other: "Embedding") -> bool:
        return is_face(self.image, other.image)

    def __str__(self) -> str:
        return f"{render_text(self.image)} >-> {render_text(self.target)}"


# -- the operations of Omega(T) ------------------------------------------

def is_operation(t: Tree, out: Edge, ins: Iterable[Edge]) -> bool:
    """Is there an operation ``ins -> out`` in the operad generated by ``t``?

    Walk up from ``out``: every branch must stop at an input or die in a
    stump, and every input must be reached.  The identity is excluded.
    """
    ins = set(ins)
    if out not in t or out in ins or not ins <= t.edges:
        return False
    if t.is_leaf(out):
        return False
    reached = 0
    stack = list(t.children(out))
    while stack:
        e = stack.pop()
        if e in ins:
            reached += 1
        elif t.is_leaf(e):
            return False
        else:
            stack.extend(t.children(e))
    return reached == len(ins)


def is_face(f: Tree, t: Tree) -> bool:
    """Is the labelled tree ``f`` (edges among those of ``t``) a face of ``t``?

    Independent of the elementary-face iteration: a map of trees is a
    composite of faces exactly when it is injective on edges, and it is a
    map when every vertex of ``f`` goes to an operation of ``t``.
    """
    if not f.edges <= t.edges:
        return False
    return all(is_operation(t, v, f.children(v)) for v in f.vertices)


# -- elementary faces ----------------------------------------------------

def elementary_faces(t: Tree) -> list[tuple[FaceDescriptor, Embedding]]:
    if t.is_eta():
        return []
    if t.is_corolla():
        return [(CorollaEdge(e), Embedding(Tree(e, {e: None}), t)) for e in t.preorder()]
    out = [(Inner(e), Embedding(t.contract(e), t)) for e in t.inner_edges()]
    out += [(Top(v), Embedding(t.delete_top(v), t)) for v in t.top_vertices()]
    if root_face_defined(t):
        out.append((Root(), Embedding(t.delete_root(), t)))
    return out


def root_face_defined(t: Tree) -> bool:
    cs = t.children(t.root)
    return bool(cs) and not t.is_corolla() and sum(t.is_inner(c) for c in cs) == 1


def apply_face(t: Tree, d: FaceDescriptor) -> Embedding:
    if d.kind == "edge":
        if not t.is_corolla() or d.edge not in t:
            raise FaceError(f"{d} is only defined on an edge of a corolla")
        return Embedding(Tree(d.edge, {d.edge: None}), t)
    if d.kind == "root":
        if not root_face_defined(t):
            raise FaceError("root face is undefined: the root vertex must have "
                            "exactly one inner input")
        return Embedding(t.delete_root(), t)
    if d.edge not in t:
        raise FaceError(f"unknown edge {edge_name(d.edge)!r}")
    if d.kind == "inner":
        if not t.is_inner(d.edge):
            raise FaceError(f"{edge_name(d.edge)!r} is not an inner edge")
        return Embedding(t.contract(d.edge), t)
    if not t.is_top_vertex(d.edge):
        raise FaceError(f"{edge_name(d.edge)!r} is not the output of a top vertex")
    # on a corolla the top face is the root edge, one of its corolla faces
    return Embedding(t.delete_top(d.edge), t)


# -- subobjects ----------------------------------------------------------

class Subobject:
    """A face-closed set of labelled trees over a fixed carrier.

    For ``Omega[T]`` the carrier is ``(T,)`` and the elements are faces of
    ``T``; for a tensor product it is ``(S, T)`` and the elements are
    non-degenerate dendrices.
    """

    __slots__ = ("carrier", "elements")

    def __init__(self, carrier: tuple, elements: Iterable[Tree] = ()):
        self.carrier = tuple(carrier)
        self.elements = frozenset(elements)

    def _check(self, other: "Subobject") -> None:
        if self.carrier != other.carrier:
            raise ValueError("subobjects live over different carriers")

    def __or__(self, other: "Subobject") -> "Subobject":
        self._check(other)
        return Subobject(self.carrier, self.elements | other.elements)

    def __and__(self, other: "Subobject") -> "Subobject":
        self._check(other)
        return Subobject(self.carrier, self.elements & other.elements)

    def __le__(self, other: "Subobject") -> bool:
        self._check(other)
        return self.elements <= other.elements

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subobject) and self.carrier == other.carrier
                and self.elements == other.elements)

    def __hash__(self) -> int:
        return hash((self.carrier, self.elements))

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Tree]:
        return iter(sorted(self.elements, key=lambda t: (-len(t), render_text(t))))

    def __repr__(self) -> str:
        return f"Subobject({len(self)} elements)"

    def maximal(self) -> list[Tree]:
        """Elements that are not proper faces of other elements."""
        els = sorted(self.elements, key=lambda t: (len(t), len(t.vertices)), reverse=True)
        out: list[Tree] = []
        for x in els:
            if not any(m != x and is_face(x, m) for m in out):
                out.append(x)
        return out

    def is_face_closed(self) -> bool:
        return all(f.image in self.elements
                   for x in self.elements for _, f in elementary_faces(x))


def subobject_ops(x: Subobject, y: Subobject, op: str):
    if op == "union":
        return x | y
    if op == "intersect":
        return x & y
    if op == "leq":
        return x <= y
    raise ValueError(f"unknown subobject operation {op!r}")


def face_closure(generators: Iterable[Tree]) -> frozenset:
    seen = set(generators)
    todo = list(seen)
    while todo:
        x = todo.pop()
        for _, f in elementary_faces(x):
            if f.image not in seen:
                seen.add(f.image)
                todo.append(f.image)
    return frozenset(seen)


def all_subfaces(t: Tree) -> Subobject:
    return Subobject((t,), face_closure([t]))


def boundary(t: Tree) -> Subobject:
    return Subobject((t,), face_closure(f.image for _, f in elementary_faces(t)))


def generated(t: Tree, faces: Iterable[Tree]) -> Subobject:
    """The subobject of ``Omega[t]`` generated by the given faces."""
    return Subobject((t,), face_closure(faces))


# -- detachment ------------------------------------------------------------

@dataclass(frozen=True)
class Forest:
    target: Tree
    components: tuple[Embedding, ...]

    def images(self) -> list[Tree]:
        return [c.image for c in self.components]

    def subobject(self) -> Subobject:
        return generated(self.target, self.images())

    def __str__(self) -> str:
        return " + ".join(render_text(c) for c in self.images()) or "(empty)"


def below(t: Tree, v: Edge) -> Tree:
    """v/T: the component of T - v containing the root; v becomes a leaf."""
    drop = set(t.above(v))
    kids = {e: cs for e, cs in ((e, t.children(e)) for e in t.preorder()) if e not in drop}
    kids[v] = None
    return Tree(t.root, kids)


def detach(t: Tree, y: Edge) -> Forest:
    """D_y(T).

    For a leaf ``y`` on vertex ``v``: the subtrees over the siblings of
    ``y`` plus v/T.  For the root edge: the subtrees over the inputs of
    the root vertex.  For an inner edge: the inner face at ``y``.
    """
    if y not in t:
        raise FaceError(f"unknown edge {edge_name(y)!r}")
    if t.is_inner(y):
        comps = [t.contract(y)]
    elif y == t.root:
        if t.is_leaf(y):
            raise FaceError("D_y is undefined on the single-edge tree")
        comps = [t.subtree(c) for c in t.children(y)]
    else:
        v = t.parent(y)
        comps = [t.subtree(c) for c in t.children(v) if c != y] + [below(t, v)]
    return Forest(t, tuple(Embedding(c, t) for c in comps))


# -- the intersection table ----------------------------------------------

@dataclass
class PairResult:
    first: FaceDescriptor
    second: FaceDescriptor
    case: str  # "a".."e" or "unclassified"
    brute: Subobject
    formula: Subobject | None
    commutes: bool | None = None

    @property
    def ok(self) -> bool:
        if self.formula is None:
            return True
        return self.formula == self.brute and self.commutes is not False


def classify_pair(t: Tree, d1: FaceDescriptor, d2: FaceDescriptor) -> str:
    kinds = {d1.kind, d2.kind}
    if "edge" in kinds:
        return "unclassified"
    if kinds == {"top"}:
        return "a"
    if kinds == {"inner"}:
        return "b"
    if kinds == {"inner", "top"}:
        x = d1.edge if d1.kind == "inner" else d2.edge
        v = d2.edge if d1.kind == "inner" else d1.edge
        return "d" if x == v else "c"
    if kinds == {"inner", "root"}:
        x = d1.edge if d1.kind == "inner" else d2.edge
        return "e" if t.parent(x) == t.root else "c"
    return "unclassified"


def intersection_formula(t: Tree, d1: FaceDescriptor, d2: FaceDescriptor,
                         case: str) -> tuple[Subobject | None, bool | None]:
    """Right-hand side of the table entry for ``case``, and for the
    commuting cases whether both orders of application agree."""
    if case in ("a", "b", "c"):
        one = apply_face(apply_face(t, d2).image, d1).image
        other = apply_face(apply_face(t, d1).image, d2).image
        return generated(t, [one]), one == other
    inner = d1.edge if d1.kind == "inner" else d2.edge
    if case == "d":
        forest = detach(apply_face(t, Top(inner)).image, inner)
    elif case == "e":
        forest = detach(apply_face(t, Root()).image, inner)
    else:
        return None, None
    return generated(t, forest.images()), None


def check_intersection_table(t: Tree) -> list[PairResult]:
    faces = elementary_faces(t)
    out = []
    for i in range(len(faces)):
        for j in range(i + 1, len(faces)):
            (d1, f1), (d2, f2) = faces[i], faces[j]
            brute = generated(t, [f1.image]) & generated(t, [f2.image])
            case = classify_pair(t, d1, d2)
            formula, commutes = intersection_formula(t, d1, d2, case)
            out.append(PairResult(d1, d2, case, brute, formula, commutes))
    return out


def parse_face(t: Tree, spec: str) -> Embedding:
    """A face given as a descriptor (``inner:y``) or as an image tree."""
    try:
        return apply_face(t, FaceDescriptor.parse(spec))
    except FaceError:
        if ":" in spec or spec.strip() == "root":
            raise
    return Embedding(parse_tree(spec), t)
