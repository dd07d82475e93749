"""Exhaustive checks over catalogs of small trees.

Every check walks a catalog within :class:`Limits`, records one instance
per case, and collects the failing ones in a :class:`CheckReport`.
Identities between subobjects of a tensor product are decided on blocks
(see :mod:`dendro.tensor`), so no check has to list dendrices except the
encode/decode round trip, which is about the dendrices themselves.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, Sequence

from . import tensor
from .faces import Subobject, all_subfaces, detach, elementary_faces, generated, is_face
from .faces import check_intersection_table as intersection_table
from .heights import (DecodeError, complete_shuffle, count_monos, decode, encode,
                      iter_keys, simplicial_face_factor, tree_face_factor, _linear_face)
from .tensor import (Block, LimitError, Witness, clear_caches, dendrices,
                     factoring_shuffles, intersect_unions, nerve_included, union_equal)
from .trees import Tree, close, enumerate_trees, is_open, linear, parse_tree, render_text


@dataclass(frozen=True)
class Limits:
    max_n: int = 3
    max_vertices: int = 4
    max_arity: int = 3
    allow_stumps: bool | None = None  # None: the check's own default
    ceiling: int = 2_000_000  # largest estimated instance count a check accepts


@dataclass
class CheckReport:
    check_id: str
    instances_run: int = 0
    failures: list = field(default_factory=list)  # (instance, expected, got)
    wall_time: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def add(self, instance: str, ok: bool, expected: str = "", got: str = "") -> None:
        self.instances_run += 1
        if not ok:
            self.failures.append((instance, expected, got))

    def tally(self, ok: bool, describe: Callable[[], tuple]) -> None:
        """Like :meth:`add`, but the description is built only on failure."""
        self.instances_run += 1
        if not ok:
            self.failures.append(describe())

    def summary(self) -> str:
        return (f"check={self.check_id} instances={self.instances_run} "
                f"failures={len(self.failures)} time={self.wall_time:.2f}s")

    def lines(self, max_failures: int | None = None) -> list[str]:
        fs = sorted(self.failures)
        shown = fs if max_failures is None else fs[:max_failures]
        out = [f"FAIL {i}: expected {e}; got {g}" for i, e, g in shown]
        if len(shown) < len(fs):
            out.append(f"... {len(fs) - len(shown)} more failures")
        out += [f"note: {n}" for n in self.notes]
        out.append(self.summary())
        return out


# -- helpers --------------------------------------------------------------------

def catalog(limits: Limits, stumps: bool) -> list[Tree]:
    return enumerate_trees(limits.max_vertices, limits.max_arity, stumps)


def _stumps(limits: Limits, default: bool) -> bool:
    return default if limits.allow_stumps is None else limits.allow_stumps


def face_images(t: Tree) -> list[Tree]:
    return [f.image for _, f in elementary_faces(t)]


def meet(t: Tree, f: Tree, g: Tree) -> list[Tree]:
    """Generators of the intersection of the subobjects generated by f and g."""
    return Subobject((t,), (generated(t, [f]) & generated(t, [g])).elements).maximal()


def tensor_blocks(S: Tree, T: Tree, A: Iterable[Tree], B: Iterable[Tree]) -> list[Block]:
    """Blocks whose nerves cover ``A (x) B`` for generating faces A, B."""
    B = list(B)
    return [Block.of(S, T, a, b) for a in A for b in B]


def _compare(report: CheckReport, desc: str, lhs: Sequence[Block], rhs: Sequence[Block]) -> None:
    w = union_equal(lhs, rhs)
    report.add(desc, w is None, "equal subobjects",
               "" if w is None else f"dendrex {w} in only one side")


def _t(t: Tree) -> str:
    return render_text(t)


def _linear_faces(n: int) -> list[tuple[int, Tree]]:
    return [(i, _linear_face(n, [i])) for i in range(n + 1)] if n > 0 else []


# -- simplex face identities ----------------------------------------------------

def check_a1(limits: Limits, report: CheckReport) -> None:
    for n in range(limits.max_n + 1):
        L, fs = linear(n), _linear_faces(n)
        for T in catalog(limits, _stumps(limits, True)):
            for (i, fi), (j, fj) in itertools.combinations(fs, 2):
                lhs = intersect_unions(tensor_blocks(L, T, [fi], [T]), tensor_blocks(L, T, [fj], [T]))
                rhs = tensor_blocks(L, T, meet(L, fi, fj), [T])
                _compare(report, f"n={n} T={_t(T)} i={i} j={j}", lhs, rhs)
            clear_caches()


def check_a2(limits: Limits, report: CheckReport) -> None:
    for n in range(limits.max_n + 1):
        L = linear(n)
        for T in catalog(limits, _stumps(limits, True)):
            for fx, fy in itertools.combinations(face_images(T), 2):
                lhs = intersect_unions(tensor_blocks(L, T, [L], [fx]), tensor_blocks(L, T, [L], [fy]))
                rhs = tensor_blocks(L, T, [L], meet(T, fx, fy))
                _compare(report, f"n={n} T={_t(T)} x={_t(fx)} y={_t(fy)}", lhs, rhs)
            clear_caches()


def check_a3(limits: Limits, report: CheckReport) -> None:
    for n in range(limits.max_n + 1):
        L = linear(n)
        for T in catalog(limits, _stumps(limits, True)):
            for i, fi in _linear_faces(n):
                for fx in face_images(T):
                    lhs = [Block.of(L, T, fi, T) & Block.of(L, T, L, fx)]
                    rhs = [Block.of(L, T, fi, fx)]
                    _compare(report, f"n={n} T={_t(T)} i={i} x={_t(fx)}", lhs, rhs)
            clear_caches()


# -- heights ------------------------------------------------------------------

def _lemma1_range(limits: Limits) -> Iterator[tuple[int, Tree]]:
    for T in catalog(limits, _stumps(limits, True)):
        for n in range(limits.max_n + 1):
            yield n, T


def estimate_roundtrip(limits: Limits) -> int:
    """Instances of the round trip: every key plus every dendrex (as many)."""
    return sum(2 * count_monos(T, n) for n, T in _lemma1_range(limits))


def check_lemma1_roundtrip(limits: Limits, report: CheckReport) -> None:
    est = estimate_roundtrip(limits)
    if est > limits.ceiling:
        raise LimitError(f"lemma1-roundtrip would run {est} instances "
                         f"(ceiling {limits.ceiling})")
    for n, T in _lemma1_range(limits):
        for key in iter_keys(T, n):
            try:
                back = decode(encode(key), T, n, check=False)
            except DecodeError as exc:
                back = exc
            report.tally(back == key, lambda: (f"n={n} T={_t(T)} key={key}", str(key), str(back)))
        for r in Block.of(linear(n), T).trees():
            try:
                back = encode(decode(r, T, n, check=False))
            except DecodeError as exc:
                back = exc
            report.tally(back == r, lambda: (f"n={n} T={_t(T)} R={_t(r)}", _t(r), str(back)))
        clear_caches()


# explicit face closures are compared too when they are this small
EXPLICIT_LIMIT = 400


def check_lemma1_counts(limits: Limits, report: CheckReport) -> None:
    for n, T in _lemma1_range(limits):
        L = linear(n)
        want = count_monos(T, n)
        got = Block.of(L, T).count()
        report.add(f"n={n} T={_t(T)} nerve", got == want, str(want), str(got))
        if want <= EXPLICIT_LIMIT:
            got = len(dendrices(L, T))
            report.add(f"n={n} T={_t(T)} explicit", got == want, str(want), str(got))
        clear_caches()


def check_lemma1_factor(limits: Limits, report: CheckReport) -> None:
    est = estimate_roundtrip(limits) // 2
    if est > limits.ceiling:
        raise LimitError(f"lemma1-factor would visit {est} dendrices "
                         f"(ceiling {limits.ceiling})")
    for n, T in _lemma1_range(limits):
        faces = list(all_subfaces(T))
        subsets = [frozenset(c) for k in range(n + 2)
                   for c in itertools.combinations(range(n + 1), k)]
        for r in Block.of(linear(n), T).trees():
            key = decode(r, T, n, check=False)
            img = key.height.image()
            for I in subsets:
                want = not (img & I)
                got = simplicial_face_factor(r, T, n, I)
                report.tally(got == want, lambda: (
                    f"n={n} T={_t(T)} R={_t(r)} I={sorted(I)}", str(want), str(got)))
            for F in faces:
                want = is_face(key.face, F)
                got = tree_face_factor(r, T, n, F)
                report.tally(got == want, lambda: (
                    f"n={n} T={_t(T)} R={_t(r)} F={_t(F)}", str(want), str(got)))
            A = complete_shuffle(key)
            report.add(f"n={n} T={_t(T)} R={_t(r)} complete shuffle",
                       is_face(r, A) and Block.of(linear(n), T, linear(n), key.face).contains(A),
                       "R is a face of a shuffle of [n](x)F", _t(A))
        clear_caches()


# -- open trees ------------------------------------------------------------------

def _pairs(limits: Limits, default_stumps: bool = False) -> list[tuple[Tree, Tree]]:
    cat = catalog(limits, _stumps(limits, default_stumps))
    return [(S, T) for S in cat for T in cat]


def shuffle_lemma_instance(S: Tree, T: Tree, y) -> Witness | None:
    """A dendrex of S (x) T omitting the T-colour y that lies in no
    ``S (x) R`` for a component R of D_y(T), or None."""
    full = Block.of(S, T)
    car = full.carrier
    avoid = [c for c in full.colours if car.colour(c)[1] != y]
    family = [Block.of(S, T, S, R) for R in detach(T, y).images()]
    return nerve_included(full.restrict(avoid, f"{full.name} without {y}"), family)


def check_shuffle_lemma(limits: Limits, report: CheckReport) -> None:
    for S, T in _pairs(limits):
        if T.is_eta():
            continue  # every dendrex of S (x) eta has the colour of its edge
        for y in T.preorder():
            w = shuffle_lemma_instance(S, T, y)
            report.add(f"S={_t(S)} T={_t(T)} y={y}", w is None,
                       "contained in S(x)D_yT", "" if w is None else f"witness {w}")
        clear_caches()


def check_prop_i(limits: Limits, report: CheckReport) -> None:
    cat = catalog(limits, _stumps(limits, False))
    for S in (s for s in cat if is_open(s)):
        for T in cat:
            for fy, fz in itertools.combinations(face_images(T), 2):
                lhs = intersect_unions(tensor_blocks(S, T, [S], [fy]), tensor_blocks(S, T, [S], [fz]))
                rhs = tensor_blocks(S, T, [S], meet(T, fy, fz))
                _compare(report, f"S={_t(S)} T={_t(T)} y={_t(fy)} z={_t(fz)}", lhs, rhs)
            clear_caches()


def check_prop_ii(limits: Limits, report: CheckReport) -> None:
    for S, T in _pairs(limits):
        for fx in face_images(S):
            for fy in face_images(T):
                lhs = [Block.of(S, T, fx, T) & Block.of(S, T, S, fy)]
                rhs = [Block.of(S, T, fx, fy)]
                _compare(report, f"S={_t(S)} T={_t(T)} x={_t(fx)} y={_t(fy)}", lhs, rhs)
        clear_caches()


def pushout_product(S: Tree, T: Tree) -> Witness | None:
    """Compare ``dS (x) T  n  S (x) dT`` with ``dS (x) dT``."""
    dS, dT = face_images(S), face_images(T)
    lhs = intersect_unions(tensor_blocks(S, T, dS, [T]), tensor_blocks(S, T, [S], dT))
    rhs = tensor_blocks(S, T, dS, dT)
    return union_equal(lhs, rhs)


def check_pushout_product(limits: Limits, report: CheckReport) -> None:
    for S, T in _pairs(limits):
        w = pushout_product(S, T)
        report.add(f"S={_t(S)} T={_t(T)}", w is None, "dS(x)T n S(x)dT = dS(x)dT",
                   "" if w is None else f"witness {w}")
        clear_caches()
    for n in range(limits.max_n + 1):
        for T in catalog(limits, _stumps(limits, True)):
            w = pushout_product(linear(n), T)
            report.add(f"S=[{n}] T={_t(T)}", w is None, "d[n](x)T n [n](x)dT = d[n](x)dT",
                       "" if w is None else f"witness {w}")
            clear_caches()


# -- single trees ----------------------------------------------------------------

def check_table(limits: Limits, report: CheckReport) -> None:
    unclassified = 0
    for T in catalog(limits, _stumps(limits, True)):
        for res in intersection_table(T):
            if res.case == "unclassified":
                unclassified += 1
            desc = f"T={_t(T)} {res.first} & {res.second} case={res.case}"
            got = ",".join(sorted(map(_t, Subobject((T,), res.brute.elements).maximal())))
            want = "" if res.formula is None else ",".join(
                sorted(map(_t, Subobject((T,), res.formula.elements).maximal())))
            report.add(desc, res.ok, want or "(brute force only)", got)
    report.notes.append(f"{unclassified} unclassified pairs checked by brute force only")


def check_sieve(limits: Limits, report: CheckReport) -> None:
    for T in catalog(limits, True):
        if not is_open(T):
            continue
        for F in all_subfaces(T):
            report.add(f"T={_t(T)} F={_t(F)}", is_open(F), "open", "has a stump")


# -- registry ---------------------------------------------------------------------

@dataclass(frozen=True)
class CheckSpec:
    run: Callable[[Limits, CheckReport], None]
    defaults: Limits
    summary: str


# Per-check defaults are the largest ranges that finish in minutes; see README.
CHECKS: dict[str, CheckSpec] = {
    "a1": CheckSpec(check_a1, Limits(3, 4, 3), "d_i[n](x)T n d_j[n](x)T = (d_i n d_j)(x)T"),
    "a2": CheckSpec(check_a2, Limits(3, 4, 3), "[n](x)d_xT n [n](x)d_yT = [n](x)(d_x n d_y)T"),
    "a3": CheckSpec(check_a3, Limits(3, 4, 3), "d_i[n](x)T n [n](x)d_xT = d_i[n](x)d_xT"),
    "lemma1-roundtrip": CheckSpec(check_lemma1_roundtrip, Limits(2, 3, 2),
                                  "decode.encode = id and encode.decode = id"),
    "lemma1-counts": CheckSpec(check_lemma1_counts, Limits(2, 4, 3),
                               "|dendrices([n],T)| = count_monos(T,n)"),
    "lemma1-factor": CheckSpec(check_lemma1_factor, Limits(1, 2, 2),
                               "face factorization criteria and complete shuffles"),
    "shuffle-lemma": CheckSpec(check_shuffle_lemma, Limits(3, 4, 2),
                               "faces omitting y lie in S(x)D_yT (S,T open)"),
    "prop-i": CheckSpec(check_prop_i, Limits(3, 4, 2),
                        "S(x)d_yT n S(x)d_zT = S(x)(d_y n d_z)T (S open)"),
    "prop-ii": CheckSpec(check_prop_ii, Limits(3, 4, 2),
                         "d_xS(x)T n S(x)d_yT = d_xS(x)d_yT (S,T open)"),
    "pushout-product": CheckSpec(check_pushout_product, Limits(3, 4, 2),
                                 "dS(x)T n S(x)dT = dS(x)dT"),
    "intersection-table": CheckSpec(check_table, Limits(3, 4, 3),
                                    "intersections of elementary faces, cases (a)-(e)"),
    "sieve": CheckSpec(check_sieve, Limits(3, 4, 3), "faces of open trees are open"),
}


def default_limits(check_id: str) -> Limits:
    if check_id not in CHECKS:
        raise KeyError(f"unknown check {check_id!r}")
    return CHECKS[check_id].defaults


def probe_pairs(limits: Limits, stumps: bool = False, largest: int = 6
                ) -> tuple[Tree, Tree, str] | None:
    """Build the full block of ``S (x) T`` for pairs among the ``largest``
    catalog trees (by edge count) and return the first pair that hits the
    operation ceiling, with the error text.  A sweep over the catalog must
    build these blocks too, so a hit means the sweep cannot finish."""
    cat = sorted(catalog(limits, _stumps(limits, stumps)), key=lambda t: -len(t))[:largest]
    try:
        for S in cat:
            for T in cat:
                try:
                    Block.of(S, T)
                except LimitError as exc:
                    return S, T, str(exc)
        return None
    finally:
        clear_caches()


def run_check(check_id: str, limits: Limits | None = None, **overrides) -> CheckReport:
    """Run one check; ``overrides`` replace single fields of the limits."""
    if check_id not in CHECKS:
        raise KeyError(f"unknown check {check_id!r}; known: {', '.join(CHECKS)}")
    spec = CHECKS[check_id]
    limits = replace(limits or spec.defaults,
                     **{k: v for k, v in overrides.items() if v is not None})
    report = CheckReport(check_id)
    t0 = time.perf_counter()
    spec.run(limits, report)
    report.wall_time = time.perf_counter() - t0
    return report


# -- counterexamples -----------------------------------------------------------------

def closed_valence_dendrex() -> tuple[Tree, Tree, Tree]:
    """``(cl[1], a(b,c), R)``: R runs a_0 -> b_1 and is capped by the stump of cl[1]."""
    L, T = close(linear(1)), parse_tree("a(b,c)")
    r = Tree(("0", "a"), {("0", "a"): (("1", "b"),), ("1", "b"): ()})
    return L, T, r


def open_counterexample() -> tuple[Tree, Tree, Tree, Tree]:
    """``(S, T, A, F)`` with S = a(*): F is a face of the shuffle A that
    omits the colour y but lies in neither S (x) x nor S (x) z."""
    S, T = parse_tree("a(*)"), parse_tree("x(y,z)")
    ax, ay, az = ("a", "x"), ("a", "y"), ("a", "z")
    A = Tree(ax, {ax: (ay, az), ay: (), az: ()})
    F = Tree(ax, {ax: (az,), az: ()})
    return S, T, A, F


def two_shuffle_dendrex() -> tuple[Tree, Tree, Tree]:
    """``([4], x(y,z), R)``: the T-vertex at height 3 with both inputs at height 4."""
    L, T = linear(4), parse_tree("x(y,z)")
    r = Tree(("3", "x"), {("3", "x"): (("4", "y"), ("4", "z")),
                          ("4", "y"): None, ("4", "z"): None})
    return L, T, r


def reproduce_counterexamples() -> CheckReport:
    report = CheckReport("counterexamples")
    t0 = time.perf_counter()

    L, T, r = closed_valence_dendrex()
    report.add("cl[1](x)a(b,c): R is a dendrex", tensor.in_tensor(r, L, T), "True", "False")
    try:
        decode(r, T, 1, closed=True)
        got = "decoded without error"
    except DecodeError as exc:
        got = str(exc)
    report.add("cl[1](x)a(b,c): decode fails", got.startswith("valence decreased"),
               "valence decreased", got)

    S, T, A, F = open_counterexample()
    report.add("a(*)(x)x(y,z): A is a shuffle", A in tensor.shuffles(S, T), "True", "False")
    report.add("a(*)(x)x(y,z): F is a face of A", is_face(F, A), "True", "False")
    report.add("a(*)(x)x(y,z): F omits y", all(t != "y" for _, t in F.edges), "True", "False")
    for e in ("x", "z"):
        inside = Block.of(S, T, S, Tree(e, {e: None})).contains(F)
        report.add(f"a(*)(x)x(y,z): F not in S(x){e}", not inside, "False", str(inside))
    w = shuffle_lemma_instance(S, T, "y")
    report.add("a(*)(x)x(y,z): shuffle lemma fails at y", w is not None,
               "a witness", "none")

    L, T, r = two_shuffle_dendrex()
    k = len(factoring_shuffles(L, T, r))
    report.add("[4](x)x(y,z): R factors through >= 2 shuffles", k >= 2, ">= 2", str(k))

    report.wall_time = time.perf_counter() - t0
    return report


# -- informational reports ----------------------------------------------------------

def nullary_footprints(S: Tree, T: Tree) -> dict:
    """For each colour, the footprints ``(S-vertices, T-vertices)`` of the
    ways to cap it off completely (its nullary operations)."""
    memo: dict = {}

    def kill(c):
        if c in memo:
            return memo[c]
        out = set()
        for side, tree in ((0, S), (1, T)):
            ch = tree.children(c[side])
            if ch is None:
                continue
            mine = (frozenset([c[0]]), frozenset()) if side == 0 else (frozenset(), frozenset([c[1]]))
            acc = {mine}
            for x in ch:
                sub = kill((x, c[1]) if side == 0 else (c[0], x))
                acc = {(a[0] | b[0], a[1] | b[1]) for a in acc for b in sub}
            out |= acc
        memo[c] = frozenset(out)
        return memo[c]
    return {(s, t): kill((s, t)) for s in S.preorder() for t in T.preorder()}


def operation_footprints(S: Tree, T: Tree) -> dict:
    """Every operation ``(colour, inputs)`` of ``S (x) T`` with the set of
    footprints over all its generator trees (small trees only)."""
    memo: dict = {}

    def partial(c):
        # (inputs, S-vertices, T-vertices) of partial generator trees rooted at c
        if c in memo:
            return memo[c]
        out = {(frozenset([c]), frozenset(), frozenset())}
        for side, tree in ((0, S), (1, T)):
            ch = tree.children(c[side])
            if ch is None:
                continue
            acc = {(frozenset(), frozenset([c[0]]) if side == 0 else frozenset(),
                    frozenset([c[1]]) if side == 1 else frozenset())}
            for x in ch:
                sub = partial((x, c[1]) if side == 0 else (c[0], x))
                acc = {(a[0] | b[0], a[1] | b[1], a[2] | b[2]) for a in acc for b in sub}
            out |= acc
        memo[c] = out
        return out
    ops: dict = {}
    for s in S.preorder():
        for t in T.preorder():
            for ins, fs, ft in partial((s, t)):
                if ins != {(s, t)}:
                    ops.setdefault(((s, t), ins), set()).add((fs, ft))
    return ops


def _fmt_fp(fp) -> str:
    fs, ft = fp
    return "[S:" + ",".join(sorted(map(str, fs))) + ";T:" + ",".join(sorted(map(str, ft))) + "]"


def footprint_report(limits: Limits | None = None, exhaustive_vertices: int = 2) -> CheckReport:
    """Where would identifying dendrices by vertex footprints differ from
    identifying them by edge labels?

    Over the whole catalog, nullary operations with several footprints are
    listed.  On pairs with at most ``exhaustive_vertices`` vertices each,
    all operations are compared, to confirm that every divergence already
    shows up on a nullary operation.  Nothing here is asserted.
    """
    limits = limits or Limits(3, 4, 3, True)
    report = CheckReport("footprints")
    t0 = time.perf_counter()
    cat = catalog(limits, _stumps(limits, True))
    divergent = 0
    examples = []
    for S in cat:
        for T in cat:
            report.instances_run += 1
            multi = {c: fps for c, fps in nullary_footprints(S, T).items() if len(fps) > 1}
            if multi:
                divergent += 1
                if len(examples) < 10:
                    c, fps = min(multi.items(), key=lambda kv: str(kv[0]))
                    examples.append(f"S={_t(S)} T={_t(T)} colour {c[0]}|{c[1]}: "
                                    + " vs ".join(sorted(map(_fmt_fp, fps))))
    report.notes.append(f"{divergent} of {report.instances_run} pairs have a nullary "
                        "operation with several footprints")
    report.notes.extend(examples)
    small = [t for t in cat if len(t.vertices) <= exhaustive_vertices]
    agree = disagree = 0
    for S in small:
        for T in small:
            op_level = any(len(v) > 1 for v in operation_footprints(S, T).values())
            null_level = any(len(v) > 1 for v in nullary_footprints(S, T).values())
            if op_level == null_level:
                agree += 1
            else:
                disagree += 1
                report.notes.append(f"S={_t(S)} T={_t(T)}: operation-level divergence "
                                    f"{op_level}, nullary {null_level}")
    report.notes.append(f"operation-level comparison on {agree + disagree} small pairs: "
                        f"{disagree} disagree with the nullary test")
    report.wall_time = time.perf_counter() - t0
    return report


def closed_report(max_n: int = 2, limits: Limits | None = None) -> CheckReport:
    """The pushout-product identity for ``cl[n] (x) T``, and how many
    dendrices of ``cl[n] (x) T`` fail to decode.  Reported, not asserted."""
    limits = limits or Limits(max_n, 2, 2, True)
    report = CheckReport("closed")
    t0 = time.perf_counter()
    holds = fails = 0
    for n in range(1, max_n + 1):
        L = close(linear(n))
        for T in catalog(limits, _stumps(limits, True)):
            report.instances_run += 1
            w = pushout_product(L, T)
            if w is None:
                holds += 1
            else:
                fails += 1
                report.notes.append(f"cl[{n}] T={_t(T)}: identity fails, witness {w}")
            bad = total = 0
            for r in Block.of(L, T).trees():
                total += 1
                try:
                    decode(r, T, n, closed=True, check=False)
                except DecodeError:
                    bad += 1
            if bad:
                report.notes.append(f"cl[{n}] T={_t(T)}: {bad} of {total} dendrices "
                                    "do not decode (valence decreased)")
    report.notes.append(f"pushout-product identity for closed linear trees: "
                        f"holds {holds}, fails {fails}")
    report.wall_time = time.perf_counter() - t0
    return report
