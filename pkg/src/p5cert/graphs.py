"""Immutable graphs over vertices 1..n with bitmask adjacency rows.

Vertex v occupies bit v-1 of every mask, so a full adjacency row is exactly
the n-bit vector that appears in encoded certificates.  All structural
oracles here (induced paths, cliques, induced P3s, domination, components)
are exhaustive and serve as ground truth for the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import (
    DisconnectedInput,
    EmptySet,
    GraphFormatError,
    LoopEdge,
    OutOfRangeVertex,
    SubsetViolation,
)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield vertex ids of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def set_of(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


@dataclass(frozen=True, slots=True)
class Graph:
    """Simple undirected graph; ``adj[v]`` is the neighbor mask of v (adj[0] unused)."""

    n: int
    adj: tuple[int, ...]

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj[u] >> (v - 1)) & 1 == 1

    def neighbors_mask(self, v: int) -> int:
        return self.adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def closed_mask(self, v: int) -> int:
        return self.adj[v] | (1 << (v - 1))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(1, self.n + 1):
            for v in iter_bits(self.adj[u] >> u << u):
                out.append((u, v))
        return out

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in self.vertices()) // 2


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from unordered vertex pairs; duplicates collapse."""
    if n < 1:
        raise OutOfRangeVertex(f"vertex count {n} must be positive")
    adj = [0] * (n + 1)
    for u, v in edges:
        if not (1 <= u <= n) or not (1 <= v <= n):
            raise OutOfRangeVertex(f"edge ({u},{v}) outside 1..{n}")
        if u == v:
            raise LoopEdge(f"loop at {u}")
        adj[u] |= 1 << (v - 1)
        adj[v] |= 1 << (u - 1)
    return Graph(n, tuple(adj))


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Maximal connected vertex sets, ordered by minimum member id."""
    comps = []
    for m in component_masks(g, g.full_mask):
        comps.append(set_of(m))
    return comps


def component_masks(g: Graph, within: int) -> list[int]:
    """Connected components of the subgraph induced by ``within``, as masks."""
    out = []
    todo = within
    while todo:
        seed = todo & -todo
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= g.adj[v]
            grow &= within & ~comp
            comp |= grow
            frontier = grow
        out.append(comp)
        todo &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    return len(component_masks(g, g.full_mask)) == 1


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    """True iff every pair inside s is an edge; singletons count."""
    ids = sorted(set(s))
    if not ids:
        raise EmptySet("clique test over empty set")
    smask = mask_of(ids)
    for v in ids:
        if smask & ~g.adj[v] & ~(1 << (v - 1)):
            return False
    return True


def as_induced_p3(g: Graph, s: Iterable[int]) -> Optional[tuple[int, int, int]]:
    """Path order (endpoint, center, endpoint) if s induces a P3, else None.

    The lower-id endpoint comes first, which makes the order canonical.
    """
    ids = sorted(set(s))
    if len(ids) != 3:
        return None
    a, b, c = ids
    ab, ac, bc = g.has_edge(a, b), g.has_edge(a, c), g.has_edge(b, c)
    if ab + ac + bc != 2:
        return None
    if not ab:
        return (a, c, b)  # center c
    if not ac:
        return (a, b, c)  # center b
    return (b, a, c)  # center a

def is_dominating(g: Graph, s: Iterable[int], within: Iterable[int]) -> bool:
    """True iff every vertex of ``within`` is in s or adjacent to s."""
    smask = mask_of(s)
    wmask = mask_of(within)
    if smask & ~wmask:
        raise SubsetViolation("dominating set not contained in its region")
    covered = smask
    for v in iter_bits(smask):
        covered |= g.adj[v]
    return wmask & ~covered == 0


def find_induced_path(g: Graph, k: int) -> Optional[tuple[int, ...]]:
    """First induced path on k vertices in DFS order, or None.

    Ground-truth oracle for P_k-freeness.  The search extends paths in
    ascending id order; vertices adjacent to a non-tip path vertex are
    pruned with a forbidden mask, so every emitted path is induced.
    """
    if k < 1:
        raise OutOfRangeVertex("path length must be >= 1")
    if k == 1:
        return (1,) if g.n >= 1 else None
    if k > g.n:
        return None

    adj = g.adj
    path = []

    def extend(tip: int, banned: int) -> Optional[tuple[int, ...]]:
        if len(path) == k:
            return tuple(path)
        cand = adj[tip] & ~banned
        for w in iter_bits(cand):
            path.append(w)
            got = extend(w, banned | adj[tip])
            if got:
                return got
            path.pop()
        return None

    for v in g.vertices():
        path[:] = [v]
        got = extend(v, 1 << (v - 1))
        if got:
            return got
    return None


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedInput(f"graph on {g.n} vertices is not connected")


# --- graph text format ------------------------------------------------------
#
#   c <free-form comment>
#   p <n> <m>
#   e <u> <v>        (m lines, 1 <= u < v <= n, no duplicates)


def write_graph(g: Graph) -> str:
    lines = [f"p {g.n} {g.edge_count()}"]
    for u, v in g.edges():
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = None
    m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate p line")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: malformed p line")
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: non-integer p line") from exc
            if n < 1 or m < 0:
                raise GraphFormatError(f"line {lineno}: bad counts in p line")
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: e line before p line")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: malformed e line")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise GraphFormatError(f"line {lineno}: non-integer e line") from exc
            if not (1 <= u < v <= n):
                raise GraphFormatError(f"line {lineno}: edge ({u},{v}) violates 1 <= u < v <= n")
            if (u, v) in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge ({u},{v})")
            seen.add((u, v))
            edges.append((u, v))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing p line")
    if len(edges) != m:
        raise GraphFormatError(f"p line announces {m} edges, file has {len(edges)}")
    return build_graph(n, edges)
