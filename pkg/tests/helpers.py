"""Independent reference implementations used as test oracles."""

import itertools
import random

from p5cert.graphs import Graph, as_induced_p3, is_clique, mask_of, set_of
from p5cert.treepart import CLIQUE, P3, Bag, RootedTree, TreePartition


def naive_find_induced_path(g: Graph, k: int):
    """Full enumeration over k-subsets and orderings; presence oracle."""
    if k == 1:
        return (1,) if g.n >= 1 else None
    for subset in itertools.combinations(range(1, g.n + 1), k):
        for perm in itertools.permutations(subset):
            if perm[0] > perm[-1]:
                continue  # a path equals its reverse
            ok = True
            for i in range(k):
                for j in range(i + 1, k):
                    edge = g.has_edge(perm[i], perm[j])
                    if edge != (j - i == 1):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return perm
    return None


def naive_dominating_structure(g: Graph, comp: int):
    """Plain staged scan: singletons, edges, triangles, induced P3s."""
    ids = sorted(set_of(comp))

    def dominates(s):
        covered = mask_of(s)
        for v in s:
            covered |= g.adj[v] & comp
        return comp & ~covered == 0

    for v in ids:
        if dominates([v]):
            return Bag(frozenset([v]), CLIQUE)
    for u, v in itertools.combinations(ids, 2):
        if g.has_edge(u, v) and dominates([u, v]):
            return Bag(frozenset([u, v]), CLIQUE)
    for t in itertools.combinations(ids, 3):
        if is_clique(g, t) and dominates(t):
            return Bag(frozenset(t), CLIQUE)
    for t in itertools.combinations(ids, 3):
        order = as_induced_p3(g, t)
        if order is not None and dominates(t):
            return Bag(frozenset(t), P3, order)
    return None  # maximal-clique stage not reimplemented here


def nested_trees(t: int):
    """All ordered rooted trees on t nodes as nested child lists."""
    if t == 1:
        yield []
        return
    for forest in _nested_forests(t - 1):
        yield forest


def _nested_forests(k: int):
    if k == 0:
        yield []
        return
    for first in range(1, k + 1):
        for head in nested_trees(first):
            for rest in _nested_forests(k - first):
                yield [head] + rest


def nested_to_tree(nested) -> RootedTree:
    """Convert nested child lists to a preorder-numbered RootedTree."""
    parents = [None]
    children = {0: []}

    def walk(kids, my_id):
        for sub in kids:
            kid_id = len(parents)
            parents.append(my_id)
            children[my_id].append(kid_id)
            children[kid_id] = []
            walk(sub, kid_id)

    walk(nested, 0)
    return RootedTree(tuple(parents), tuple(tuple(children[i]) for i in range(len(parents))))


def random_nested(size: int, rng: random.Random):
    if size == 1:
        return []
    kids = []
    remaining = size - 1
    while remaining:
        s = rng.randint(1, remaining)
        kids.append(random_nested(s, rng))
        remaining -= s
    return kids


def random_tree_partition(n: int, rng: random.Random) -> TreePartition:
    """Random well-formed partition with canonical (preorder) numbering."""
    t = rng.randint(1, n)
    tree = nested_to_tree(random_nested(t, rng))
    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    # composition of n into t positive parts
    cuts = sorted(rng.sample(range(1, n), t - 1)) if t > 1 else []
    chunks = [ids[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    bags = []
    for chunk in chunks:
        chunk = sorted(chunk)
        if len(chunk) == 3 and rng.random() < 0.5:
            a, b, c = chunk
            center = rng.choice(chunk)
            order = {a: (b, a, c), b: (a, b, c), c: (a, c, b)}[center]
            bags.append(Bag(frozenset(chunk), P3, order))
        else:
            bags.append(Bag(frozenset(chunk), CLIQUE))
    return TreePartition(n, tree, tuple(bags))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    from p5cert.graphs import build_graph

    edges = [
        (u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p
    ]
    return build_graph(n, edges)
