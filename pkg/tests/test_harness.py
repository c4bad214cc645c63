import random

import pytest

import p5cert as pc
from p5cert.errors import GenerationBudgetExceeded, PreconditionNotP5, TooLarge
from p5cert.harness import (
    STRATEGIES,
    count_rejections,
    format_fuzz_report,
    format_scaling_csv,
    has_rejection,
    repair_to_p5_free,
)
from p5cert.p5free import scheme

SCHEME = scheme()


def test_generators_deterministic():
    for family in ("cograph", "split", "p5free-repair", "gnp"):
        spec = pc.GeneratorSpec(family, 12, 0.5, 9)
        assert pc.generate(spec) == pc.generate(spec)
    spec = pc.GeneratorSpec("with-p5", 10, 0.3, 9)
    assert pc.generate(spec) == pc.generate(spec)


def test_generators_connected():
    rng_seeds = range(3)
    for family in ("cograph", "split", "p5free-repair", "gnp"):
        for seed in rng_seeds:
            g = pc.generate(pc.GeneratorSpec(family, 15, 0.4, seed))
            assert pc.is_connected(g)


def test_cograph_family_has_no_p4():
    for seed in range(4):
        g = pc.generate(pc.GeneratorSpec("cograph", 20, 0.5, seed))
        assert pc.find_induced_path(g, 4) is None


def test_split_family_p5_free():
    for seed in range(4):
        g = pc.generate(pc.GeneratorSpec("split", 20, 0.5, seed))
        assert pc.oracle_is_p5_free(g)
    # any 4-vertex graph is trivially P5-free
    assert pc.oracle_is_p5_free(pc.generate(pc.GeneratorSpec("split", 4, 0.5, 0)))


def test_with_p5_family_contains_p5():
    for seed in range(3):
        g = pc.generate(pc.GeneratorSpec("with-p5", 10, 0.3, seed))
        assert pc.find_induced_path(g, 5) is not None


def test_with_p5_impossible_below_five_vertices():
    with pytest.raises(GenerationBudgetExceeded):
        pc.generate(pc.GeneratorSpec("with-p5", 4, 0.5, 0))


def test_repair_produces_p5_free_connected():
    rng = random.Random(50)
    for seed in range(5):
        g = pc.generate(pc.GeneratorSpec("gnp", 14, 0.35, seed))
        repaired = repair_to_p5_free(g, random.Random(seed))
        assert pc.is_connected(repaired)
        assert pc.oracle_is_p5_free(repaired)


def test_enumerate_counts(connected_graphs):
    assert [len(connected_graphs[n]) for n in (1, 2, 3, 4, 5)] == [1, 1, 4, 38, 728]


def test_enumerate_n5_count_by_union_find(connected_graphs):
    # independent count via union-find over all 2^10 labeled graphs
    import itertools

    pairs = list(itertools.combinations(range(5), 2))
    connected = 0
    for mask in range(1 << 10):
        parent = list(range(5))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b, (u, v) in enumerate(pairs):
            if mask >> b & 1:
                parent[find(u)] = find(v)
        if len({find(x) for x in range(5)}) == 1:
            connected += 1
    assert connected == 728 == len(connected_graphs[5])


def test_enumerate_too_large():
    with pytest.raises(TooLarge):
        list(pc.enumerate_connected_graphs(7))


def test_adversarial_streams_deterministic(p5_graph):
    for kind in STRATEGIES:
        st = pc.AdversaryStrategy(kind, 5, seed=3)
        a = [sorted((v, b.value, b.length) for v, b in certs.items()) for certs in pc.adversarial_certificates(p5_graph, st)]
        b = [sorted((v, b.value, b.length) for v, b in certs.items()) for certs in pc.adversarial_certificates(p5_graph, st)]
        assert a == b
        assert len(a) == 5


def test_wrong_graph_strategy_trips_step_i(p5_graph):
    # certificates proved for a graph with a 5-path edge toggled disagree
    # with someone's true neighborhood
    st = pc.AdversaryStrategy("wrong-graph", 8, seed=1)
    from p5cert.framework import local_view

    for certs in pc.adversarial_certificates(p5_graph, st):
        steps = {
            v: SCHEME.verifier(local_view(p5_graph, certs, v)) for v in p5_graph.vertices()
        }
        assert any(not d.accept for d in steps.values())


def test_bitflip_zero_flips_is_honest():
    # the bitflip strategy always flips at least one bit; the honest
    # baseline itself accepts on a P5-free graph
    g = pc.generate(pc.GeneratorSpec("split", 10, 0.5, 2))
    assert pc.run(g, SCHEME).all_accept


def test_fuzz_soundness_p5_graph_all_strategies(p5_graph):
    for kind in STRATEGIES:
        report = pc.fuzz_soundness(p5_graph, pc.AdversaryStrategy(kind, 50, seed=7))
        assert report.passed and report.trials_run == 50
        text = format_fuzz_report(report)
        assert text.strip().endswith("SOUNDNESS-FUZZ: PASS(50)")


def test_fuzz_precondition():
    c5 = pc.build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    with pytest.raises(PreconditionNotP5):
        pc.fuzz_soundness(c5, pc.AdversaryStrategy("bitflip", 5, 0))


def test_fuzz_report_failure_format(p5_graph):
    report = pc.FuzzReport("n=5 m=4", "bitflip", 10, 9, "deadbeef", {})
    text = format_fuzz_report(report, "cx.certs")
    assert "SOUNDNESS-FUZZ: FAIL counterexample=cx.certs" in text


def test_count_rejections_early_stop(p5_graph):
    certs = pc.prove(p5_graph)
    full = count_rejections(p5_graph, SCHEME, certs)
    assert full == 5  # honest pipeline on the 5-path: everyone sees the path
    assert count_rejections(p5_graph, SCHEME, certs, stop_above=1) == 2
    assert has_rejection(p5_graph, SCHEME, certs)


def test_measure_scaling_rows_and_determinism():
    rows1, c1 = pc.measure_scaling([8, 16], "split", seed=5)
    rows2, c2 = pc.measure_scaling([8, 16], "split", seed=5)
    assert rows1 == rows2 and c1 == c2
    csv = format_scaling_csv(rows1)
    assert csv.splitlines()[0] == "n,family,seed,max_cert_bits,ratio"
    assert len(csv.splitlines()) == 3


def test_measure_scaling_n1_golden():
    rows, _ = pc.measure_scaling([1], "split", seed=1)
    assert rows[0][3] == 12  # the minimal certificate


def test_honest_best_effort_on_non_p5_free(p5_graph):
    from p5cert.harness import honest_best_effort

    certs = honest_best_effort(p5_graph, random.Random(0))
    assert set(certs) == set(range(1, 6))
    seven_path = pc.build_graph(7, [(i, i + 1) for i in range(1, 7)])
    certs7 = honest_best_effort(seven_path, random.Random(0))
    assert set(certs7) == set(range(1, 8))
