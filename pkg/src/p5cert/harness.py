"""Graph generators, adversarial certificate strategies, and measurement.

Soundness here is tested, never proved: a fuzz campaign can only report that
no all-accept assignment was found under the configured strategies.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .bits import Bits
from .codec import (
    EncodedCertificate,
    decode_certificate,
    encode_certificate,
    encode_partitioning,
    write_certificates,
)
from .errors import (
    GenerationBudgetExceeded,
    P5CertError,
    PreconditionNotP5,
    TooLarge,
)
from .framework import CertificateAssignment, Scheme, local_view, max_cert_bits
from .graphs import Graph, build_graph, component_masks, find_induced_path, is_connected
from .p5free import prove, scheme as p5_scheme
from .treepart import CLIQUE, P3, Bag, RootedTree, TreePartition

FAMILIES = ("cograph", "split", "p5free-repair", "with-p5", "gnp")
STRATEGIES = ("bitflip", "wrong-graph", "lying-partition", "lying-pieces", "greedy-search")

_BITFLIP_MAX = 4
_GREEDY_STEPS = 6


@dataclass(frozen=True, slots=True)
class GeneratorSpec:
    family: str
    n: int
    p: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1 or not 0.0 <= self.p <= 1.0:
            raise ValueError("need n >= 1 and p in [0,1]")


@dataclass(frozen=True, slots=True)
class AdversaryStrategy:
    kind: str
    trials: int
    seed: int = 0

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.trials < 1:
            raise ValueError("need at least one trial")


@dataclass
class FuzzReport:
    graph_summary: str
    strategy: str
    trials_run: int
    trials_rejected: int
    counterexample_digest: Optional[str] = None
    counterexample: Optional[CertificateAssignment] = None

    @property
    def passed(self) -> bool:
        return self.trials_rejected == self.trials_run


def _derived_rng(*parts) -> random.Random:
    # stable across processes, unlike hash()-seeded Random
    digest = hashlib.sha256("|".join(map(str, parts)).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


# --- generators --------------------------------------------------------------


def _gnp_edges(n: int, p: float, rng: random.Random) -> set[tuple[int, int]]:
    return {
        (u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p
    }


def _connect_components(n: int, edges: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Join components along a path of their minimum-id vertices."""
    g = build_graph(n, edges)
    comps = component_masks(g, g.full_mask)
    mins = [(m & -m).bit_length() for m in comps]
    for a, b in zip(mins, mins[1:]):
        edges.add((min(a, b), max(a, b)))
    return edges


def _cograph_edges(n: int, p: float, rng: random.Random) -> set[tuple[int, int]]:
    """Random cotree: recursive binary union/join, join forced at the root."""
    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    edges: set[tuple[int, int]] = set()
    stack: list[tuple[list[int], bool]] = [(ids, True)]
    while stack:
        part, forced_join = stack.pop()
        if len(part) == 1:
            continue
        cut = rng.randint(1, len(part) - 1)
        left, right = part[:cut], part[cut:]
        if forced_join or rng.random() < p:
            for a in left:
                for b in right:
                    edges.add((min(a, b), max(a, b)))
        stack.append((left, False))
        stack.append((right, False))
    return edges


def _split_edges(n: int, p: float, rng: random.Random) -> set[tuple[int, int]]:
    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    k = rng.randint(1, n)
    clique, indep = sorted(ids[:k]), sorted(ids[k:])
    edges = {(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]}
    attached = set()
    for i in indep:
        for c in clique:
            if rng.random() < p:
                edges.add((min(i, c), max(i, c)))
                attached.add(i)
    for i in indep:
        if i not in attached:
            c = rng.choice(clique)
            edges.add((min(i, c), max(i, c)))
    return edges


def _delete_middles_until_p5_free(n: int, edges: set[tuple[int, int]], rng: random.Random) -> Graph:
    """Delete a middle edge (position 2-3 or 3-4) of each found 5-path.

    Terminates because the edge count strictly decreases; the middle whose
    deletion keeps the graph connected is preferred, but the result may
    still be disconnected.
    """
    cur = build_graph(n, edges)
    while True:
        path = find_induced_path(cur, 5)
        if path is None:
            return cur
        mids = [(path[1], path[2]), (path[2], path[3])]
        rng.shuffle(mids)
        mids = [(min(e), max(e)) for e in mids]
        pick = mids[0]
        for e in mids:
            if is_connected(build_graph(n, edges - {e})):
                pick = e
                break
        edges.discard(pick)
        cur = build_graph(n, edges)


def repair_to_p5_free(g: Graph, rng: random.Random, reconnect_rounds: int = 3) -> Graph:
    """Connected P5-free graph obtained from g by middle-edge deletions.

    Deleting 5-path middles tends to fragment sparse graphs, and
    reconnecting fragments can create new 5-paths, so only a few
    reconnect-and-repair rounds are attempted.  After that the fragments
    (each P5-free) are joined by making the minimum-id vertex universal:
    an induced path through a universal vertex has at most 3 vertices and
    any path avoiding it stays inside one fragment, so the patched graph
    is connected and P5-free by construction.
    """
    n = g.n
    edges = set(g.edges())
    cur = _delete_middles_until_p5_free(n, edges, rng)
    for _ in range(reconnect_rounds):
        if is_connected(cur):
            return cur
        edges = _connect_components(n, edges)
        cur = _delete_middles_until_p5_free(n, edges, rng)
    if is_connected(cur):
        return cur
    edges.update((1, v) for v in range(2, n + 1) if not cur.has_edge(1, v))
    return build_graph(n, edges)


def generate(spec: GeneratorSpec) -> Graph:
    """Deterministic graph for (family, n, p, seed); always connected."""
    rng = _derived_rng(spec.family, spec.n, spec.p, spec.seed)
    n, p = spec.n, spec.p
    if spec.family == "cograph":
        return build_graph(n, _cograph_edges(n, p, rng))
    if spec.family == "split":
        return build_graph(n, _split_edges(n, p, rng))
    if spec.family == "gnp":
        for _ in range(50):
            edges = _gnp_edges(n, p, rng)
            if is_connected(build_graph(n, edges)):
                return build_graph(n, edges)
        return build_graph(n, _connect_components(n, edges))
    if spec.family == "p5free-repair":
        edges = _gnp_edges(n, p, rng)
        g = build_graph(n, _connect_components(n, edges))
        return repair_to_p5_free(g, rng)
    # with-p5: resample until the oracle finds an induced 5-path
    for _ in range(200):
        edges = _gnp_edges(n, p, rng)
        if not is_connected(build_graph(n, edges)):
            edges = _connect_components(n, edges)
        g = build_graph(n, edges)
        if find_induced_path(g, 5) is not None:
            return g
    raise GenerationBudgetExceeded(f"no graph with an induced 5-path found for n={n}, p={p}")


def oracle_is_p5_free(g: Graph) -> bool:
    return find_induced_path(g, 5) is None


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """All connected labeled graphs on 1..n, ascending by edge-set bitmask."""
    if n > 6:
        raise TooLarge("exhaustive enumeration is limited to n <= 6")
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    for mask in range(1 << len(pairs)):
        adj = [0] * (n + 1)
        m = mask
        while m:
            low = m & -m
            u, v = pairs[low.bit_length() - 1]
            adj[u] |= 1 << (v - 1)
            adj[v] |= 1 << (u - 1)
            m ^= low
        g = Graph(n, tuple(adj))
        if is_connected(g):
            yield g


# --- adversarial certificate strategies --------------------------------------


def honest_best_effort(g: Graph, rng: random.Random) -> CertificateAssignment:
    """prove(g), or honest certificates of a repaired P5-free twin of g."""
    try:
        return prove(g)
    except P5CertError:
        return prove(repair_to_p5_free(g, rng))


def _reencode(cert_bits: Bits, n: int, *, partitioning=None, pieces=None) -> Bits:
    dec = decode_certificate(cert_bits, n)
    new = EncodedCertificate(
        n,
        dec.neighbors_part,
        partitioning if partitioning is not None else dec.partitioning_part,
        pieces if pieces is not None else dec.pieces_part,
    )
    return encode_certificate(new, n)


def _random_false_partition(n: int, rng: random.Random) -> TreePartition:
    """Structurally well-formed partition with no relation to any graph."""
    ids = list(range(1, n + 1))
    rng.shuffle(ids)
    bags: list[Bag] = []
    i = 0
    while i < n:
        size = min(rng.randint(1, 3), n - i)
        chunk = sorted(ids[i : i + size])
        i += size
        if size == 3 and rng.random() < 0.5:
            a, b, c = chunk
            center = rng.choice(chunk)
            order = {a: (b, a, c), b: (a, b, c), c: (a, c, b)}[center]
            bags.append(Bag(frozenset(chunk), P3, order))
        else:
            bags.append(Bag(frozenset(chunk), CLIQUE))
    t = len(bags)
    parents: list[Optional[int]] = [None] + [rng.randint(0, i - 1) for i in range(1, t)]
    children: list[list[int]] = [[] for _ in range(t)]
    for node in range(1, t):
        children[parents[node]].append(node)
    tree = RootedTree(tuple(parents), tuple(tuple(k) for k in children))
    return TreePartition(n, tree, tuple(bags))


def count_rejections(g: Graph, scheme: Scheme, certs: CertificateAssignment, stop_above: Optional[int] = None) -> int:
    count = 0
    for v in g.vertices():
        if not scheme.verifier(local_view(g, certs, v)).accept:
            count += 1
            if stop_above is not None and count > stop_above:
                return count
    return count


def has_rejection(g: Graph, scheme: Scheme, certs: CertificateAssignment) -> bool:
    return count_rejections(g, scheme, certs, stop_above=0) > 0


def adversarial_certificates(g: Graph, strategy: AdversaryStrategy) -> Iterator[CertificateAssignment]:
    """Stream of ``strategy.trials`` assignments; deterministic per seed."""
    rng = _derived_rng("adversary", strategy.kind, strategy.seed, g.n, g.adj)
    n = g.n
    base = honest_best_effort(g, rng)
    kind = strategy.kind
    sch = p5_scheme()

    for _ in range(strategy.trials):
        if kind == "bitflip":
            cur = dict(base)
            for _ in range(rng.randint(1, _BITFLIP_MAX)):
                v = rng.randint(1, n)
                cur[v] = cur[v].flip(rng.randrange(cur[v].length))
            yield cur
        elif kind == "wrong-graph":
            path = find_induced_path(g, 5)
            edges = set(g.edges())
            if path is None:
                u = rng.randint(1, n)
                v = rng.randint(1, n - 1)
                v += v >= u
                e = (min(u, v), max(u, v))
                edges.symmetric_difference_update({e})
            elif rng.random() < 0.5:
                e = rng.choice(list(zip(path, path[1:])))
                edges.discard((min(e), max(e)))
            else:
                i, j = sorted(rng.sample(range(5), 2))
                while j - i == 1:
                    i, j = sorted(rng.sample(range(5), 2))
                e = (min(path[i], path[j]), max(path[i], path[j]))
                edges.add(e)
            modified = build_graph(n, edges)
            if not is_connected(modified):
                modified = build_graph(n, _connect_components(n, set(modified.edges())))
            yield honest_best_effort(modified, rng)
        elif kind == "lying-partition":
            false_bits = encode_partitioning(_random_false_partition(n, rng), n)
            yield {v: _reencode(base[v], n, partitioning=false_bits) for v in g.vertices()}
        elif kind == "lying-pieces":
            cur = dict(base)
            for _ in range(rng.randint(1, 3)):
                v = rng.randint(1, n)
                dec = decode_certificate(cur[v], n)
                if not dec.pieces_part:
                    continue
                idx = rng.randrange(len(dec.pieces_part))
                entry = dec.pieces_part[idx]
                row = entry.row
                for _ in range(rng.randint(1, 3)):
                    pos = rng.randrange(n)
                    if pos != entry.owner - 1:
                        row ^= 1 << pos
                pieces = list(dec.pieces_part)
                pieces[idx] = type(entry)(entry.owner, row)
                cur[v] = _reencode(cur[v], n, pieces=tuple(pieces))
            yield cur
        else:  # greedy-search: hill-climb bit flips to minimize rejections
            cur = dict(base)
            v = rng.randint(1, n)
            cur[v] = cur[v].flip(rng.randrange(cur[v].length))
            cur_count = count_rejections(g, sch, cur)
            for _ in range(_GREEDY_STEPS):
                if cur_count == 0:
                    break
                cand = dict(cur)
                v = rng.randint(1, n)
                cand[v] = cand[v].flip(rng.randrange(cand[v].length))
                cand_count = count_rejections(g, sch, cand, stop_above=cur_count)
                if cand_count <= cur_count:
                    cur, cur_count = cand, cand_count
            yield cur


def fuzz_soundness(g: Graph, strategy: AdversaryStrategy) -> FuzzReport:
    """Run every generated assignment; an all-accept trial is a counterexample."""
    if find_induced_path(g, 5) is None:
        raise PreconditionNotP5("soundness fuzzing needs a graph with an induced 5-path")
    sch = p5_scheme()
    report = FuzzReport(
        graph_summary=f"n={g.n} m={g.edge_count()}",
        strategy=strategy.kind,
        trials_run=0,
        trials_rejected=0,
    )
    for certs in adversarial_certificates(g, strategy):
        report.trials_run += 1
        if has_rejection(g, sch, certs):
            report.trials_rejected += 1
        elif report.counterexample is None:
            text = write_certificates(certs)
            report.counterexample_digest = hashlib.sha256(text.encode()).hexdigest()
            report.counterexample = certs
    return report


def format_fuzz_report(report: FuzzReport, counterexample_path: Optional[str] = None) -> str:
    lines = [
        f"graph: {report.graph_summary}",
        f"strategy: {report.strategy}",
        f"trials: {report.trials_run}",
        f"trials with >=1 rejection: {report.trials_rejected}",
    ]
    if report.passed:
        lines.append(f"SOUNDNESS-FUZZ: PASS({report.trials_run})")
    else:
        lines.append(f"counterexample digest: {report.counterexample_digest}")
        lines.append(f"SOUNDNESS-FUZZ: FAIL counterexample={counterexample_path or '<unwritten>'}")
    return "\n".join(lines) + "\n"


# --- certificate size scaling -------------------------------------------------


def measure_scaling(sizes, family: str, seed: int, p: float = 0.5):
    """Prove each generated graph and report max certificate bits per n.

    Returns (rows, fitted_constant); each row is
    (n, family, seed, max_cert_bits, max_cert_bits / n**1.5).
    """
    rows = []
    for n in sizes:
        g = generate(GeneratorSpec(family, n, p, seed))
        certs = prove(g)
        bits = max_cert_bits(certs)
        rows.append((n, family, seed, bits, bits / n**1.5))
    constant = max(r[4] for r in rows)
    return rows, constant


def format_scaling_csv(rows) -> str:
    lines = ["n,family,seed,max_cert_bits,ratio"]
    for n, family, seed, bits, ratio in rows:
        lines.append(f"{n},{family},{seed},{bits},{ratio:.6f}")
    return "\n".join(lines) + "\n"


def p5free_corpus() -> list[GeneratorSpec]:
    """Deterministic P5-free graphs used across the test suite."""
    specs = []
    for family in ("cograph", "split", "p5free-repair"):
        for n in (8, 16, 32, 48):
            for seed in (1, 2):
                specs.append(GeneratorSpec(family, n, 0.5, seed))
    specs.append(GeneratorSpec("split", 64, 0.4, 3))
    specs.append(GeneratorSpec("cograph", 64, 0.6, 3))
    return specs
