"""Bit-exact certificate encodings.

Wire layout (all integers most-significant-bit first, ids are 1..n on
``idwidth = ceil(log2(n+1))`` bits):

  tree          DFS from the root, children in stored order, one 0 per
                downward edge and one 1 per upward edge; 2(t-1) bits.
  partitioning  tree bits, then per tree node in preorder: 1 kind bit
                (0 = clique, 1 = P3), member count on idwidth bits, member
                ids on idwidth bits each.  Clique members ascend; P3 members
                appear in path order starting at the lower-id endpoint, so
                the center needs no extra field.
  certificate   neighbor row (n bits) | partitioning length on
                2*idwidth + 3 bits | partitioning | pieces entry count on
                idwidth bits | entries, each owner id (idwidth) + row (n).

The partitioning block length determines the node count: a block of L bits
with t nodes satisfies L = 2(t-1) + t(1+idwidth) + n*idwidth because the
bags partition 1..n, so t = (L + 2 - n*idwidth) / (3 + idwidth).  Decoders
reject any L for which this is not a positive integer.

The length field is 3 bits wider than the two-id field one might expect:
for n = 3 an all-singleton partition occupies 19 bits, which already
overflows 2*idwidth = 4 bits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import BitReader, Bits, BitUnderflow, BitWriter
from .errors import (
    CertificateFormatError,
    MalformedCertificate,
    MalformedPartitioning,
    MalformedTreeEncoding,
)
from .treepart import CLIQUE, P3, Bag, RootedTree, TreePartition


def idwidth(n: int) -> int:
    """Bits needed for one id in 1..n (equals ceil(log2(n+1)))."""
    return n.bit_length()


def plen_width(n: int) -> int:
    return 2 * idwidth(n) + 3


def encode_tree(tree: RootedTree) -> Bits:
    """Depth-first 0=down / 1=up encoding; 2*(node count - 1) bits."""
    w = BitWriter()
    stack = [(tree.root, 0)]
    while stack:
        node, next_child = stack.pop()
        kids = tree.children[node]
        if next_child < len(kids):
            stack.append((node, next_child + 1))
            w.push(0, 1)
            stack.append((kids[next_child], 0))
        elif stack:
            w.push(1, 1)
    return w.result()


def decode_tree(b: Bits) -> RootedTree:
    """Inverse of ``encode_tree``; nodes come out numbered in preorder."""
    parents: list[int | None] = [None]
    children: list[list[int]] = [[]]
    cur = 0
    for i in range(b.length):
        if b.bit(i) == 0:
            node = len(parents)
            parents.append(cur)
            children.append([])
            children[cur].append(node)
            cur = node
        else:
            up = parents[cur]
            if up is None:
                raise MalformedTreeEncoding("more up-edges than down-edges")
            cur = up
    if cur != 0:
        raise MalformedTreeEncoding("walk does not return to the root")
    return RootedTree(tuple(parents), tuple(tuple(k) for k in children))


def encode_partitioning(tp: TreePartition, n: int) -> Bits:
    if tp.n != n:
        raise ValueError(f"partition of 1..{tp.n} cannot be encoded for n={n}")
    w = idwidth(n)
    out = BitWriter()
    out.push_bits(encode_tree(tp.tree))
    for node in tp.tree.preorder():
        bag = tp.bags[node]
        out.push(1 if bag.kind == P3 else 0, 1)
        out.push(len(bag.members), w)
        ids = bag.p3_order if bag.kind == P3 else bag.sorted_members()
        for v in ids:
            out.push(v, w)
    return out.result()


def decode_partitioning(b: Bits, n: int) -> TreePartition:
    """Strict inverse of ``encode_partitioning``.

    Validates structural well-formedness and that the bags partition 1..n;
    whether the partition is valid for any particular graph is the
    verifier's business, not the decoder's.
    """
    w = idwidth(n)
    numerator = b.length + 2 - n * w
    if numerator <= 0 or numerator % (3 + w):
        raise MalformedPartitioning(f"no node count matches a {b.length}-bit block for n={n}")
    t = numerator // (3 + w)
    if t < 1 or t > n:
        raise MalformedPartitioning(f"implied node count {t} out of range")
    reader = BitReader(b)
    try:
        tree = decode_tree(reader.read_bits(2 * (t - 1)))
    except (BitUnderflow, MalformedTreeEncoding) as exc:
        raise MalformedPartitioning(f"bad tree block: {exc}") from exc
    if tree.node_count != t:
        raise MalformedPartitioning("tree block does not match implied node count")
    bags = []
    seen = 0
    try:
        for _ in range(t):
            kind = reader.read(1)
            cnt = reader.read(w)
            if cnt == 0:
                raise MalformedPartitioning("empty bag")
            ids = [reader.read(w) for _ in range(cnt)]
            for v in ids:
                if not 1 <= v <= n:
                    raise MalformedPartitioning(f"member id {v} out of range")
                if seen >> (v - 1) & 1:
                    raise MalformedPartitioning(f"member id {v} appears twice")
                seen |= 1 << (v - 1)
            if kind == 1:
                if cnt != 3:
                    raise MalformedPartitioning("P3 bag without exactly 3 members")
                if ids[0] > ids[2]:
                    raise MalformedPartitioning("P3 order must start at the lower endpoint")
                bags.append(Bag(frozenset(ids), P3, tuple(ids)))
            else:
                if ids != sorted(ids):
                    raise MalformedPartitioning("clique members not ascending")
                bags.append(Bag(frozenset(ids), CLIQUE))
    except BitUnderflow as exc:
        raise MalformedPartitioning("short read") from exc
    except ValueError as exc:
        raise MalformedPartitioning(str(exc)) from exc
    if not reader.exhausted():
        raise MalformedPartitioning("leftover bits after last bag")
    if seen != (1 << n) - 1:
        raise MalformedPartitioning("bags do not cover 1..n")
    # decode_tree numbers nodes in preorder, so bag i belongs to node i
    return TreePartition(n, tree, tuple(bags))


@dataclass(frozen=True, slots=True)
class NeighborhoodRow:
    """One vertex's full n-bit adjacency row, as claimed by a certificate."""

    owner: int
    row: int

    def __post_init__(self):
        if self.owner < 1:
            raise ValueError("owner id must be positive")
        if self.row >> (self.owner - 1) & 1:
            raise ValueError("row claims a self loop")


@dataclass(frozen=True, slots=True)
class EncodedCertificate:
    """Decoded three-part certificate of one vertex."""

    n: int
    neighbors_part: int
    partitioning_part: Bits
    pieces_part: tuple[NeighborhoodRow, ...]


def encode_certificate(cert: EncodedCertificate, n: int) -> Bits:
    if cert.n != n:
        raise MalformedCertificate("certificate built for a different n")
    w = idwidth(n)
    out = BitWriter()
    try:
        out.push(cert.neighbors_part, n)
        out.push(cert.partitioning_part.length, plen_width(n))
        out.push_bits(cert.partitioning_part)
        out.push(len(cert.pieces_part), w)
        for entry in cert.pieces_part:
            out.push(entry.owner, w)
            out.push(entry.row, n)
    except ValueError as exc:
        raise MalformedCertificate(f"field does not fit: {exc}") from exc
    return out.result()


def decode_certificate(b: Bits, n: int) -> EncodedCertificate:
    w = idwidth(n)
    reader = BitReader(b)
    try:
        neighbors = reader.read(n)
        plen = reader.read(plen_width(n))
        partitioning = reader.read_bits(plen)
        cnt = reader.read(w)
        pieces = []
        for _ in range(cnt):
            owner = reader.read(w)
            row = reader.read(n)
            if not 1 <= owner <= n:
                raise MalformedCertificate(f"pieces owner {owner} out of range")
            if row >> (owner - 1) & 1:
                raise MalformedCertificate(f"pieces row of {owner} claims a self loop")
            pieces.append(NeighborhoodRow(owner, row))
    except BitUnderflow as exc:
        raise MalformedCertificate("short read") from exc
    if not reader.exhausted():
        raise MalformedCertificate("trailing bits")
    return EncodedCertificate(n, neighbors, partitioning, tuple(pieces))


# --- certificate file format --------------------------------------------
#
#   <id> <bitlength> <hex>      one line per vertex, sorted by id;
#                               hex is the bitstring zero-padded to a byte


def write_certificates(certs: dict[int, Bits]) -> str:
    lines = []
    for v in sorted(certs):
        b = certs[v]
        hexpart = b.to_hex()
        lines.append(f"{v} {b.length} {hexpart}" if hexpart else f"{v} {b.length}")
    return "\n".join(lines) + "\n"


def parse_certificates(text: str) -> dict[int, Bits]:
    certs: dict[int, Bits] = {}
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise CertificateFormatError(f"line {lineno}: expected '<id> <bitlength> <hex>'")
        try:
            v = int(parts[0])
            bitlength = int(parts[1])
        except ValueError as exc:
            raise CertificateFormatError(f"line {lineno}: non-integer field") from exc
        if v <= last:
            raise CertificateFormatError(f"line {lineno}: ids must be strictly ascending")
        if bitlength < 0 or (bitlength > 0) != (len(parts) == 3):
            raise CertificateFormatError(f"line {lineno}: bit length / hex mismatch")
        try:
            certs[v] = Bits.from_hex(parts[2] if len(parts) == 3 else "", bitlength)
        except ValueError as exc:
            raise CertificateFormatError(f"line {lineno}: {exc}") from exc
        last = v
    if not certs:
        raise CertificateFormatError("empty certificate file")
    return certs
