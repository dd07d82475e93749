"""Brute-force oracles shared by the tests.  They deliberately avoid the
code paths they are used to check."""

import itertools

from dendro.trees import Tree


def candidate_subtrees(t: Tree):
    """Every labelled tree whose edges are edges of ``t``, with the order
    inherited from ``t`` (children = minimal edges above)."""
    edges = t.preorder()
    for r in range(1, len(edges) + 1):
        for chosen in itertools.combinations(edges, r):
            chosen = set(chosen)
            roots = [e for e in chosen if not any(f != e and t.le(f, e) for f in chosen)]
            if len(roots) != 1:
                continue
            kids, open_ends = {}, []
            for e in chosen:
                above = [f for f in chosen if f != e and t.le(e, f)]
                mins = [f for f in above if not any(g != f and t.le(g, f) for g in above)]
                kids[e] = tuple(mins) if mins else None
                if not mins:
                    open_ends.append(e)
            for caps in itertools.product((None, ()), repeat=len(open_ends)):
                k = dict(kids)
                k.update(zip(open_ends, caps))
                yield Tree(roots[0], k)


def height_functions(t: Tree, n: int):
    """All monotone maps from edges to nonempty subsets of 0..n."""
    subsets = [frozenset(c) for r in range(1, n + 2)
               for c in itertools.combinations(range(n + 1), r)]
    edges = t.preorder()
    for vals in itertools.product(subsets, repeat=len(edges)):
        h = dict(zip(edges, vals))
        if all(max(h[e]) <= min(h[f]) for e in edges for f in edges
               if e != f and t.le(e, f)):
            yield h


def grown_classes(max_vertices: int, max_arity: int, allow_stumps: bool) -> set:
    """Isomorphism classes reached from the single edge by repeatedly
    putting a vertex (or a stump) on top of a leaf."""
    from dendro.trees import canonical_form, eta

    level = {eta("e"): None}
    seen = {canonical_form(eta("e"))}
    counter = itertools.count()
    for _ in range(max_vertices):
        nxt = {}
        for t in level:
            for leaf in t.leaves:
                lo = 0 if allow_stumps else 1
                for k in range(lo, max_arity + 1):
                    kids = {e: t.children(e) for e in t.preorder()}
                    new = tuple(f"n{next(counter)}" for _ in range(k))
                    kids[leaf] = new
                    kids.update({e: None for e in new})
                    g = Tree(t.root, kids)
                    key = canonical_form(g)
                    if key not in seen:
                        seen.add(key)
                        nxt[g] = None
        level = nxt
    return seen
