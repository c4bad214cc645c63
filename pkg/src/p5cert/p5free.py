"""Certification of P5-freeness with three-part certificates.

The honest prover writes, for every vertex: its adjacency row, one shared
encoding of a tree partition of the graph, and a bundle of adjacency rows
("pieces") chosen by a bag-size threshold.  The verifier at vertex u runs a
fixed sequence of checks (i)-(vi): own neighbor row, shared and well-formed
partitioning, partition validity as far as u can see it, pieces consistency,
and finally an attempt to exhibit an induced 5-path among the vertex pairs
whose edge/non-edge status u can pin down.  Rejection reports the first
failing step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .bits import Bits
from .codec import (
    EncodedCertificate,
    NeighborhoodRow,
    decode_certificate,
    decode_partitioning,
    encode_certificate,
    encode_partitioning,
)
from .errors import MalformedCertificate, MalformedPartitioning, P5CertError, ThresholdViolation
from .framework import ACCEPT, CertificateAssignment, LocalView, Scheme, Verdict
from .graphs import Graph, iter_bits, require_connected
from .treepart import CLIQUE, P3, Bag, TreePartition, build_tree_partition


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def bag_is_small(bag: Bag, n: int) -> bool:
    """Threshold rule shared by prover and verifier.

    P3 bags always take the small route; cliques are small up to
    ceil(sqrt(n)) members and big above it.
    """
    return bag.kind == P3 or len(bag.members) <= ceil_sqrt(n)


class Contradiction(P5CertError):
    """Two knowledge sources disagree about one vertex pair."""

    def __init__(self, pair: tuple[int, int], sources: tuple[str, str]):
        self.pair = pair
        self.sources = sources
        super().__init__(f"pair {pair} claimed edge and non-edge by {sources[0]} and {sources[1]}")


# --- prover ---------------------------------------------------------------


def prove(g: Graph) -> CertificateAssignment:
    """Honest certificates; succeeds on every connected P5-free graph."""
    require_connected(g)
    tp = build_tree_partition(g)
    part_bits = encode_partitioning(tp, g.n)
    node_of: dict[int, int] = {}
    for i, bag in enumerate(tp.bags):
        for v in bag.members:
            node_of[v] = i
    certs: CertificateAssignment = {}
    for v in g.vertices():
        bag = tp.bags[node_of[v]]
        if bag_is_small(bag, g.n):
            entries = tuple(NeighborhoodRow(m, g.adj[m]) for m in bag.sorted_members())
        else:
            entries = tuple(pieces_for(g, tp, node_of[v], v))
        cert = EncodedCertificate(g.n, g.adj[v], part_bits, entries)
        certs[v] = encode_certificate(cert, g.n)
    return certs


def pieces_for(g: Graph, tp: TreePartition, bag_node: int, member: int) -> list[NeighborhoodRow]:
    """Round-robin share of subtree rows for one member of a big clique bag.

    The j-th vertex of the subtree (ascending) goes to the (j mod k)-th bag
    member (ascending); every member carries its own row first, so the
    bundle size stays within ceil(|subtree|/k) + 1 and the members' bundles
    jointly cover the whole subtree.
    """
    bag = tp.bags[bag_node]
    if member not in bag.members:
        raise ValueError(f"vertex {member} not in bag {bag_node}")
    if bag.kind != CLIQUE or len(bag.members) <= ceil_sqrt(tp.n):
        raise ThresholdViolation("round-robin pieces need a clique bag above the size threshold")
    members = bag.sorted_members()
    slot = members.index(member)
    k = len(members)
    rows = [NeighborhoodRow(member, g.adj[member])]
    subtree = tp.subtree_masks()[bag_node]
    for j, v in enumerate(iter_bits(subtree)):
        if j % k == slot and v != member:
            rows.append(NeighborhoodRow(v, g.adj[v]))
    return rows


# --- decoded-certificate and partition caches ------------------------------


@lru_cache(maxsize=1 << 16)
def _decode(b: Bits, n: int) -> Optional[EncodedCertificate]:
    try:
        return decode_certificate(b, n)
    except MalformedCertificate:
        return None


@dataclass(frozen=True, slots=True)
class PartitionIndex:
    """Everything the verifier derives from one partitioning block."""

    tp: TreePartition
    node_of: tuple[int, ...]  # vertex -> tree node (index 0 unused)
    members_mask: tuple[int, ...]  # per node
    subtree_mask: tuple[int, ...]  # per node, recomputed, never trusted from certificates
    strict_ancestors: tuple[tuple[int, ...], ...]  # per node, root first
    anc_nodes: tuple[int, ...]  # per node: bitmask over nodes, ancestors incl. self
    intra_edge: tuple[int, ...]  # per vertex: bag-implied known edges
    intra_nonedge: tuple[int, ...]  # per vertex: P3 endpoint non-edges
    cross_nonedge: tuple[int, ...]  # per vertex: other-branch non-edges

    def comparable(self, a: int, b: int) -> bool:
        return bool((self.anc_nodes[a] >> b) & 1 or (self.anc_nodes[b] >> a) & 1)


@lru_cache(maxsize=4096)
def _partition_index(part_bits: Bits, n: int) -> Optional[PartitionIndex]:
    try:
        tp = decode_partitioning(part_bits, n)
    except MalformedPartitioning:
        return None
    tree = tp.tree
    t = tree.node_count
    node_of = [0] * (n + 1)
    for i, bag in enumerate(tp.bags):
        for v in bag.members:
            node_of[v] = i
    members_mask = tuple(bag.mask for bag in tp.bags)
    subtree = tp.subtree_masks()

    order = list(tree.preorder())
    anc_nodes = [0] * t
    strict_anc: list[tuple[int, ...]] = [()] * t
    for node in order:
        p = tree.parent[node]
        if p is None:
            anc_nodes[node] = 1 << node
        else:
            anc_nodes[node] = anc_nodes[p] | (1 << node)
            strict_anc[node] = strict_anc[p] + (p,)
    desc_nodes = [1 << i for i in range(t)]
    for node in reversed(order):
        for k in tree.children[node]:
            desc_nodes[node] |= desc_nodes[k]

    intra_edge = [0] * (n + 1)
    intra_nonedge = [0] * (n + 1)
    for bag in tp.bags:
        if bag.kind == P3:
            a, b, c = bag.p3_order
            intra_edge[a] |= 1 << (b - 1)
            intra_edge[b] |= (1 << (a - 1)) | (1 << (c - 1))
            intra_edge[c] |= 1 << (b - 1)
            intra_nonedge[a] |= 1 << (c - 1)
            intra_nonedge[c] |= 1 << (a - 1)
        else:
            m = bag.mask
            for v in iter_bits(m):
                intra_edge[v] |= m & ~(1 << (v - 1))

    cross_nonedge = [0] * (n + 1)
    full_nodes = (1 << t) - 1
    for i in range(t):
        incomp = full_nodes & ~anc_nodes[i] & ~desc_nodes[i]
        if not incomp:
            continue
        other = 0
        while incomp:
            low = incomp & -incomp
            other |= members_mask[low.bit_length() - 1]
            incomp ^= low
        for v in iter_bits(members_mask[i]):
            cross_nonedge[v] |= other

    return PartitionIndex(
        tp=tp,
        node_of=tuple(node_of),
        members_mask=members_mask,
        subtree_mask=subtree,
        strict_ancestors=tuple(strict_anc),
        anc_nodes=tuple(anc_nodes),
        intra_edge=tuple(intra_edge),
        intra_nonedge=tuple(intra_nonedge),
        cross_nonedge=tuple(cross_nonedge),
    )


# --- knowledge closure ------------------------------------------------------


@dataclass(frozen=True, slots=True)
class KnowledgeMap:
    """Tri-state pair knowledge as symmetric per-vertex masks."""

    n: int
    edge: tuple[int, ...]  # edge[x] bit y-1 set iff pair {x,y} known to be an edge
    nonedge: tuple[int, ...]
    provenance: Optional[dict[tuple[int, int], str]] = None

    def status(self, x: int, y: int) -> str:
        if x == y or not (1 <= x <= self.n and 1 <= y <= self.n):
            raise ValueError(f"not a vertex pair: {x},{y}")
        if (self.edge[x] >> (y - 1)) & 1:
            return "edge"
        if (self.nonedge[x] >> (y - 1)) & 1:
            return "nonedge"
        return "unknown"

    def known_pair_count(self) -> int:
        return sum(bin(self.edge[x] | self.nonedge[x]).count("1") for x in range(1, self.n + 1)) // 2


_OWN = "own-adjacency"
_NBR = "neighbor-row"
_PIECES = "pieces-row"
_INTRA = "intra-bag"
_CROSS = "cross-branch"


def _closure(
    u: int,
    n: int,
    nbr_mask: int,
    dec_u: EncodedCertificate,
    dec_nbrs: list[tuple[int, EncodedCertificate]],
    pidx: PartitionIndex,
    track_provenance: bool,
) -> KnowledgeMap:
    full = (1 << n) - 1
    edge = [0] * (n + 1)
    nonedge = [0] * (n + 1)
    prov: Optional[dict[tuple[int, int], str]] = {} if track_provenance else None

    def record_row(owner: int, row: int, tag: str) -> None:
        if prov is not None:
            for x in range(1, n + 1):
                if x != owner:
                    pair = (owner, x) if owner < x else (x, owner)
                    prov.setdefault(pair, tag)
        new_ne = full & ~row & ~(1 << (owner - 1))
        if nonedge[owner] & row or edge[owner] & new_ne:
            bad = (nonedge[owner] & row) | (edge[owner] & new_ne)
            other = (bad & -bad).bit_length()
            pair = (owner, other) if owner < other else (other, owner)
            earlier = prov.get(pair, "earlier source") if prov is not None else "earlier source"
            raise Contradiction(pair, (earlier, tag))
        edge[owner] |= row
        nonedge[owner] |= new_ne

    def record_pair_masks(masks: list[int], into: list[int], against: list[int], tag: str) -> None:
        for x in range(1, n + 1):
            m = masks[x]
            if not m:
                continue
            if prov is not None:
                for y in iter_bits(m):
                    pair = (x, y) if x < y else (y, x)
                    prov.setdefault(pair, tag)
            conflict = against[x] & m
            if conflict:
                y = (conflict & -conflict).bit_length()
                pair = (x, y) if x < y else (y, x)
                earlier = prov.get(pair, "earlier source") if prov is not None else "earlier source"
                raise Contradiction(pair, (earlier, tag))
            into[x] |= m

    # (a) own adjacency, (b) neighbor rows, (c) pieces rows
    record_row(u, nbr_mask, _OWN)
    for w, d in dec_nbrs:
        record_row(w, d.neighbors_part, _NBR)
    for entry in dec_u.pieces_part:
        record_row(entry.owner, entry.row, _PIECES)
    for _, d in dec_nbrs:
        for entry in d.pieces_part:
            record_row(entry.owner, entry.row, _PIECES)

    # (d) bag-implied pairs, (e) cross-branch non-edges
    record_pair_masks(list(pidx.intra_edge), edge, nonedge, _INTRA)
    record_pair_masks(list(pidx.intra_nonedge), nonedge, edge, _INTRA)
    record_pair_masks(list(pidx.cross_nonedge), nonedge, edge, _CROSS)

    # symmetrize; opposite-direction claims from two row owners clash here
    for x in range(1, n + 1):
        for y in iter_bits(edge[x]):
            if (nonedge[y] >> (x - 1)) & 1:
                pair = (x, y) if x < y else (y, x)
                raise Contradiction(pair, ("row of one endpoint", "row of the other"))
            edge[y] |= 1 << (x - 1)
        for y in iter_bits(nonedge[x]):
            if (edge[y] >> (x - 1)) & 1:
                pair = (x, y) if x < y else (y, x)
                raise Contradiction(pair, ("row of one endpoint", "row of the other"))
            nonedge[y] |= 1 << (x - 1)

    return KnowledgeMap(n, tuple(edge), tuple(nonedge), prov)


def knowledge_closure(view: LocalView, track_provenance: bool = True) -> KnowledgeMap:
    """Everything one vertex can deduce about vertex pairs from its view.

    Merges, in order: own adjacency, each neighbor's claimed row, every row
    in the visible pieces bundles, bag-implied pairs, and other-branch
    non-edges from the shared partition.  Raises ``Contradiction`` when two
    sources disagree; honest certificates never trigger it.
    """
    n = view.n
    dec_u = decode_certificate(view.self_cert, n)
    dec_nbrs = [(w, decode_certificate(bw, n)) for w, bw in view.neighbors]
    pidx = _partition_index(dec_u.partitioning_part, n)
    if pidx is None:
        raise MalformedPartitioning("partitioning block undecodable")
    return _closure(view.self_id, n, view.neighbor_ids_mask(), dec_u, dec_nbrs, pidx, track_provenance)


# --- induced 5-path detection over known pairs ------------------------------


@lru_cache(maxsize=8192)
def _find_p5_known(edge: tuple[int, ...], nonedge: tuple[int, ...], n: int):
    for a in range(1, n + 1):
        ne_a = nonedge[a]
        for b in iter_bits(edge[a]):
            for c in iter_bits(edge[b] & ne_a):
                ne_ab = ne_a & nonedge[b]
                for d in iter_bits(edge[c] & ne_ab):
                    cand = edge[d] & ne_ab & nonedge[c]
                    if cand:
                        return (a, b, c, d, (cand & -cand).bit_length())
    return None


def find_known_induced_p5(km: KnowledgeMap) -> Optional[tuple[int, int, int, int, int]]:
    """First 5 vertices whose 10 pair statuses are known and form a path."""
    return _find_p5_known(km.edge, km.nonedge, km.n)


# --- verifier ---------------------------------------------------------------


def verify(view: LocalView) -> Verdict:
    """Local verification; returns the first failing step or accept."""
    n = view.n
    u = view.self_id

    dec_u = _decode(view.self_cert, n)
    if dec_u is None:
        return Verdict(False, "malformed", "own certificate undecodable")
    dec_nbrs: list[tuple[int, EncodedCertificate]] = []
    for w, bw in view.neighbors:
        d = _decode(bw, n)
        if d is None:
            return Verdict(False, "malformed", f"certificate of neighbor {w} undecodable")
        dec_nbrs.append((w, d))
    nbr_mask = view.neighbor_ids_mask()

    # (i) own neighbor list
    if dec_u.neighbors_part != nbr_mask:
        return Verdict(False, "i", "claimed neighbor row differs from actual neighbors")

    # (ii) shared, well-formed partitioning
    for w, d in dec_nbrs:
        if d.partitioning_part != dec_u.partitioning_part:
            return Verdict(False, "ii", f"partitioning differs from neighbor {w}")
    pidx = _partition_index(dec_u.partitioning_part, n)
    if pidx is None:
        return Verdict(False, "ii", "partitioning does not decode to a partition of 1..n")

    # (iii) bag-local structure, ancestor domination, branch separation
    s = pidx.node_of[u]
    bag = pidx.tp.bags[s]
    bit_u = 1 << (u - 1)
    if bag.kind == CLIQUE:
        missing = pidx.members_mask[s] & ~bit_u & ~nbr_mask
        if missing:
            return Verdict(False, "iii", f"not adjacent to bag member {(missing & -missing).bit_length()}")
    else:
        a, b, c = bag.p3_order
        if u == b:
            ok = (nbr_mask >> (a - 1)) & 1 and (nbr_mask >> (c - 1)) & 1
        elif u == a:
            ok = (nbr_mask >> (b - 1)) & 1 and not (nbr_mask >> (c - 1)) & 1
        else:
            ok = (nbr_mask >> (b - 1)) & 1 and not (nbr_mask >> (a - 1)) & 1
        if not ok:
            return Verdict(False, "iii", f"own role in P3 bag {a}-{b}-{c} does not match adjacency")
    for t_node in pidx.strict_ancestors[s]:
        if not pidx.members_mask[t_node] & nbr_mask:
            return Verdict(False, "iii", f"no neighbor in ancestor bag {t_node}")
    for w, _ in dec_nbrs:
        if not pidx.comparable(s, pidx.node_of[w]):
            return Verdict(False, "iii", f"neighbor {w} lies in an unrelated branch")

    # (iv) pieces consistency
    if bag_is_small(bag, n):
        owners = tuple(e.owner for e in dec_u.pieces_part)
        if owners != bag.sorted_members():
            return Verdict(False, "iv", "pieces owners are not exactly the bag members")
        own_row = dec_u.pieces_part[owners.index(u)].row
        if own_row != nbr_mask:
            return Verdict(False, "iv", "own row miswritten in pieces")
        for w, d in dec_nbrs:
            if w in bag.members and d.pieces_part != dec_u.pieces_part:
                return Verdict(False, "iv", f"pieces differ from bag member {w}")
    else:
        gs = pidx.subtree_mask[s]
        accessible = [dec_u] + [d for w, d in dec_nbrs if w in bag.members]
        coverage = 0
        for d in accessible:
            for e in d.pieces_part:
                coverage |= 1 << (e.owner - 1)
        missing = gs & ~coverage
        if missing:
            return Verdict(False, "iv", f"no visible row for subtree vertex {(missing & -missing).bit_length()}")
        nbr_certs = dict(dec_nbrs)
        check_mask = nbr_mask & gs
        for d in accessible:
            for e in d.pieces_part:
                if (check_mask >> (e.owner - 1)) & 1 and e.row != nbr_certs[e.owner].neighbors_part:
                    return Verdict(False, "iv", f"pieces row of {e.owner} contradicts its certificate")

    # (v) assemble knowledge, look for a fully-known induced 5-path
    try:
        km = _closure(u, n, nbr_mask, dec_u, dec_nbrs, pidx, track_provenance=False)
    except Contradiction as exc:
        return Verdict(False, "v", f"contradictory knowledge about pair {exc.pair}")
    witness = _find_p5_known(km.edge, km.nonedge, n)
    if witness is not None:
        return Verdict(False, "v", f"induced 5-path {'-'.join(map(str, witness))} fully known")

    # (vi)
    return ACCEPT


def scheme() -> Scheme:
    return Scheme("p5", prove, verify)
