"""Hypothesis strategies: catalog trees with shuffled siblings and fresh names."""

from hypothesis import strategies as st

from dendro.trees import Tree, enumerate_trees

CATALOG = enumerate_trees(3, 3, True)
OPEN = [t for t in CATALOG if not t.stumps]


def scramble(t: Tree, rnd, prefix: str = "e") -> Tree:
    """An isomorphic copy: siblings permuted, edges renamed at random."""
    names = {e: f"{prefix}{i}" for i, e in enumerate(rnd.sample(t.preorder(), len(t)))}
    kids = {}
    for e in t.preorder():
        ch = t.children(e)
        if ch:
            ch = list(ch)
            rnd.shuffle(ch)
            ch = tuple(names[c] for c in ch)
        kids[names[e]] = ch
    return Tree(names[t.root], kids)


@st.composite
def trees(draw, pool=CATALOG):
    return draw(st.sampled_from(pool))


@st.composite
def scrambled(draw, pool=CATALOG):
    t = draw(st.sampled_from(pool))
    return t, scramble(t, draw(st.randoms(use_true_random=False)))
