"""Adversarial soundness fuzzing.

Soundness says: when the graph has an induced 5-path, no certificate
assignment convinces everyone.  That is a for-all over an exponential space,
so it is tested, not proved: five adversary strategies perturb
honest-looking certificates and every trial must leave at least one
rejecting vertex.  A passing campaign means exactly "no counterexample
found under these strategies".
"""

import p5cert as pc
from p5cert.harness import STRATEGIES, format_fuzz_report

p5 = pc.build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
for kind in STRATEGIES:
    report = pc.fuzz_soundness(p5, pc.AdversaryStrategy(kind, trials=100, seed=13))
    print(format_fuzz_report(report))

# a bigger graph with a planted 5-path
g = pc.generate(pc.GeneratorSpec("with-p5", 12, 0.3, seed=5))
report = pc.fuzz_soundness(g, pc.AdversaryStrategy("greedy-search", trials=60, seed=2))
print(format_fuzz_report(report))

# fuzzing a P5-free graph is meaningless and refused
try:
    pc.fuzz_soundness(
        pc.build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]),
        pc.AdversaryStrategy("bitflip", 10, 1),
    )
except Exception as exc:
    print("P5-free input:", type(exc).__name__)
