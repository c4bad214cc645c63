"""Tree partitions: rooted trees of bags that are dominating cliques or induced P3s.

Every connected P5-free graph admits such a partition; the builder here also
succeeds on some graphs that are not P5-free (the 5-path itself is one), so
its success must never be used as a P5-freeness test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NoDominatingStructure
from .graphs import (
    Graph,
    component_masks,
    is_clique,
    is_dominating,
    iter_bits,
    mask_of,
    require_connected,
    set_of,
)

CLIQUE = "clique"
P3 = "p3"


@dataclass(frozen=True, slots=True)
class Bag:
    """A partition class: a clique, or an induced P3 with its path order recorded."""

    members: frozenset[int]
    kind: str
    p3_order: Optional[tuple[int, int, int]] = None

    def __post_init__(self):
        if not self.members:
            raise ValueError("empty bag")
        if self.kind not in (CLIQUE, P3):
            raise ValueError(f"unknown bag kind {self.kind!r}")
        if self.kind == P3:
            o = self.p3_order
            if o is None or len(o) != 3 or set(o) != self.members or len(set(o)) != 3:
                raise ValueError("p3 bag needs an order over exactly its 3 members")
            if o[0] > o[2]:
                raise ValueError("p3 order must start at the lower-id endpoint")
        elif self.p3_order is not None:
            raise ValueError("clique bag carries no p3 order")

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True, slots=True)
class RootedTree:
    """Rooted tree on nodes 0..t-1; children keep their stored order."""

    parent: tuple[Optional[int], ...]
    children: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        t = len(self.parent)
        if len(self.children) != t or t == 0:
            raise ValueError("parent/children length mismatch")
        roots = [i for i, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError("tree must have exactly one root")
        for i, kids in enumerate(self.children):
            for k in kids:
                if not (0 <= k < t) or self.parent[k] != i:
                    raise ValueError("children inconsistent with parents")
        for i, p in enumerate(self.parent):
            if p is not None and i not in self.children[p]:
                raise ValueError("parent without matching child entry")
        if len(list(self.preorder())) != t:
            raise ValueError("not all nodes reachable from the root")

    @property
    def node_count(self) -> int:
        return len(self.parent)

    @property
    def root(self) -> int:
        return self.parent.index(None)

    def preorder(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(self.children[node]))


@dataclass(frozen=True, slots=True)
class TreePartition:
    """A rooted tree whose bags partition the vertices 1..n."""

    n: int
    tree: RootedTree
    bags: tuple[Bag, ...]

    def __post_init__(self):
        if len(self.bags) != self.tree.node_count:
            raise ValueError("one bag per tree node required")
        seen = 0
        for bag in self.bags:
            m = bag.mask
            if m & seen:
                raise ValueError("bags overlap")
            seen |= m
        if seen != (1 << self.n) - 1:
            raise ValueError("bags do not cover 1..n")

    def bag_node_of(self, v: int) -> int:
        for i, bag in enumerate(self.bags):
            if v in bag.members:
                return i
        raise KeyError(v)

    def subtree_masks(self) -> tuple[int, ...]:
        """Vertex mask of each node's subtree (node and all descendants)."""
        order = list(self.tree.preorder())
        masks = [bag.mask for bag in self.bags]
        for node in reversed(order):
            for kid in self.tree.children[node]:
                masks[node] |= masks[kid]
        return tuple(masks)


def _closed_in(g: Graph, v: int, comp: int) -> int:
    return (g.adj[v] & comp) | (1 << (v - 1))


def find_dominating_structure_in(g: Graph, comp: int) -> Optional[Bag]:
    """Staged exhaustive search inside the component given by mask ``comp``.

    Order: singletons by id, edges lexicographically, triangles
    lexicographically, induced P3s lexicographically (by sorted triple),
    then maximal cliques by pivoting enumeration, first dominating one wins.
    Coverage pruning below only skips candidates that provably cannot
    dominate, so the returned structure is the same as for the naive scan.
    """
    adj = g.adj
    cn = {v: _closed_in(g, v, comp) for v in iter_bits(comp)}

    # singletons
    for v in iter_bits(comp):
        if comp & ~cn[v] == 0:
            return Bag(frozenset([v]), CLIQUE)

    # edges
    for u in iter_bits(comp):
        above = ~((1 << u) - 1)
        for v in iter_bits(adj[u] & comp & above):
            if comp & ~(cn[u] | cn[v]) == 0:
                return Bag(frozenset([u, v]), CLIQUE)

    def narrow_by_coverage(cands: int, rest: int, cap: int = 16) -> tuple[int, int]:
        # a third vertex z completes domination only if rest fits inside
        # N[z]; intersecting the closed neighborhoods of uncovered vertices
        # is an exact filter, applied to at most `cap` of them
        while rest and cands and cap:
            low = rest & -rest
            cands &= cn[low.bit_length()]
            rest ^= low
            cap -= 1
        return cands, rest

    # triangles, enumerated by sorted triple {x < y < z}
    for x in iter_bits(comp):
        ax = adj[x] & comp
        for y in iter_bits(ax & ~((1 << x) - 1)):
            base = ax & adj[y] & ~((1 << y) - 1)
            if not base:
                continue
            rest = comp & ~(cn[x] | cn[y])
            cands, rem = narrow_by_coverage(base, rest)
            for z in iter_bits(cands):
                if rem & ~cn[z] == 0:
                    return Bag(frozenset([x, y, z]), CLIQUE)

    # induced P3s, enumerated by sorted triple {x < y < z}
    for x in iter_bits(comp):
        ax = adj[x] & comp
        for y in iter_bits(comp & ~((1 << x) - 1) & ~(1 << (x - 1))):
            ay = adj[y] & comp
            adjacent = (ax >> (y - 1)) & 1
            # exactly two of the three pairs must be edges
            base = (ax ^ ay if adjacent else ax & ay) & ~((1 << y) - 1)
            if not base:
                continue
            rest = comp & ~(cn[x] | cn[y])
            cands, rem = narrow_by_coverage(base, rest)
            for z in iter_bits(cands):
                if rem & ~cn[z]:
                    continue
                if not adjacent:
                    order = (x, z, y)
                elif (ax >> (z - 1)) & 1:
                    order = (z, x, y) if z < y else (y, x, z)
                else:
                    order = (x, y, z)
                return Bag(frozenset([x, y, z]), P3, order)

    # maximal cliques, Bron-Kerbosch with pivot, iterative
    found = _first_dominating_maximal_clique(g, comp, cn)
    if found is not None:
        return Bag(set_of(found), CLIQUE)
    return None


def _first_dominating_maximal_clique(g: Graph, comp: int, cn: dict[int, int]) -> Optional[int]:
    adj = g.adj

    def pivot(p: int, x: int) -> int:
        best, best_cnt = 0, -1
        for v in iter_bits(p | x):
            cnt = bin(adj[v] & p).count("1")
            if cnt > best_cnt:
                best, best_cnt = v, cnt
        return best

    # frames: (r_mask, p_mask, x_mask, candidates_iterator_state)
    stack = [(0, comp, 0, None)]
    while stack:
        r, p, x, cand = stack.pop()
        if cand is None:
            if p == 0 and x == 0:
                covered = r
                for v in iter_bits(r):
                    covered |= adj[v] & comp
                if comp & ~covered == 0:
                    return r
                continue
            cand = p & ~adj[pivot(p, x)]
        if cand == 0:
            continue
        low = cand & -cand
        v = low.bit_length()
        vb = 1 << (v - 1)
        # resume this frame later with v moved from P to X
        stack.append((r, p & ~vb, x | vb, cand ^ low))
        stack.append((r | vb, p & adj[v], x & adj[v], None))
    return None


def find_dominating_structure(g: Graph) -> Optional[Bag]:
    """Dominating clique or induced P3 of a connected graph, or None."""
    require_connected(g)
    return find_dominating_structure_in(g, g.full_mask)


def build_tree_partition(g: Graph) -> TreePartition:
    """Peel dominating structures recursively; nodes are numbered in preorder.

    Children follow the component order (ascending minimum member id), which
    makes the result canonical: the same graph always yields the same
    partition, hence byte-identical encodings.
    """
    require_connected(g)
    bags: list[Bag] = []
    parents: list[Optional[int]] = []
    children: list[list[int]] = []
    stack: list[tuple[Optional[int], int]] = [(None, g.full_mask)]
    while stack:
        parent, comp = stack.pop()
        bag = find_dominating_structure_in(g, comp)
        if bag is None:
            raise NoDominatingStructure(set_of(comp))
        node = len(bags)
        bags.append(bag)
        parents.append(parent)
        children.append([])
        if parent is not None:
            children[parent].append(node)
        rest = comp & ~bag.mask
        for sub in reversed(component_masks(g, rest)):
            stack.append((node, sub))
    tree = RootedTree(tuple(parents), tuple(tuple(k) for k in children))
    return TreePartition(g.n, tree, tuple(bags))


@dataclass(frozen=True, slots=True)
class Violation:
    """First failed check: condition in {partition, 1, 2, 3, ancestor-edge}."""

    condition: str
    witness: str
    node: Optional[int] = None


def validate_tree_partition(g: Graph, tp: TreePartition) -> Optional[Violation]:
    """None if the partition is valid for g, else the first violation.

    Check order: the partition property, then per node in preorder the bag
    shape (1), domination of the subtree's subgraph (2) and the component
    split (3), and finally the redundant diagnostic that the endpoints of
    every edge sit in ancestor-related bags.
    """
    if tp.n != g.n:
        return Violation("partition", f"partition covers 1..{tp.n}, graph has n={g.n}")
    # TreePartition construction already guarantees disjoint cover of 1..n.

    subtree = tp.subtree_masks()
    order = list(tp.tree.preorder())

    for node in order:
        bag = tp.bags[node]
        if bag.kind == CLIQUE:
            if not is_clique(g, bag.members):
                return Violation("1", f"bag {sorted(bag.members)} is not a clique", node)
        else:
            a, b, c = bag.p3_order
            if not (g.has_edge(a, b) and g.has_edge(b, c) and not g.has_edge(a, c)):
                return Violation("1", f"bag order {a}-{b}-{c} is not an induced P3", node)
    for node in order:
        members = tp.bags[node].members
        if not is_dominating(g, members, set_of(subtree[node])):
            missing = next(
                v
                for v in iter_bits(subtree[node])
                if v not in members and not (g.adj[v] & mask_of(members))
            )
            return Violation("2", f"vertex {missing} not dominated by bag {sorted(members)}", node)
    for node in order:
        rest = subtree[node] & ~tp.bags[node].mask
        comps = sorted(component_masks(g, rest))
        kids = sorted(subtree[k] for k in tp.tree.children[node])
        if comps != kids:
            return Violation(
                "3",
                f"remainder components {[sorted(set_of(m)) for m in comps]} != "
                f"child subtrees {[sorted(set_of(m)) for m in kids]}",
                node,
            )

    # diagnostic: every edge must connect ancestor-related bags
    node_of = {}
    for i, bag in enumerate(tp.bags):
        for v in bag.members:
            node_of[v] = i
    ancestors: list[set[int]] = [set() for _ in range(tp.tree.node_count)]
    for node in order:
        p = tp.tree.parent[node]
        if p is not None:
            ancestors[node] = ancestors[p] | {p}
    for u, v in g.edges():
        s, t = node_of[u], node_of[v]
        if s != t and s not in ancestors[t] and t not in ancestors[s]:
            return Violation("ancestor-edge", f"edge {u}-{v} joins unrelated bags {s} and {t}")
    return None


def format_tree_partition(tp: TreePartition) -> str:
    """Human-readable preorder dump, one line per tree node."""
    lines = []
    for node in tp.tree.preorder():
        bag = tp.bags[node]
        parent = tp.tree.parent[node]
        members = ",".join(str(v) for v in bag.sorted_members())
        line = (
            f"node {node}: parent={'-' if parent is None else parent} "
            f"kind={bag.kind} members={members}"
        )
        if bag.kind == P3:
            a, b, c = bag.p3_order
            line += f" order={a}-{b}-{c}"
        lines.append(line)
    return "\n".join(lines) + "\n"
