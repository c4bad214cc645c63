"""Baseline schemes and how certificate sizes compare.

The adjacency-matrix scheme certifies anything with n^2 bits; spanning-tree
labels certify the vertex count with O(log n) bits; plain neighbor rows
certify clique-freeness with n bits.  The P5-freeness scheme sits between
the row scheme and the full matrix.
"""

import p5cert as pc
from p5cert.baselines import kk_freeness_scheme, spanning_tree_size_scheme, universal_scheme
from p5cert.harness import oracle_is_p5_free
from p5cert.p5free import scheme

g = pc.generate(pc.GeneratorSpec("split", 64, 0.4, seed=3))
print(f"split graph: n={g.n}, m={g.edge_count()}, P5-free={oracle_is_p5_free(g)}")

schemes = [
    ("stree-n", spanning_tree_size_scheme()),
    ("kk:3", kk_freeness_scheme(3)),
    ("p5", scheme()),
    ("universal-p5", universal_scheme(oracle_is_p5_free)),
]
for name, sch in schemes:
    certs = sch.prover(g)
    bits = pc.max_cert_bits(certs)
    print(f"{name:13s} max certificate: {bits:6d} bits")

# the universal scheme agrees with the dedicated one on every verdict
p5 = pc.build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
universal = universal_scheme(oracle_is_p5_free)
print("universal on the 5-path:", pc.run(p5, universal).all_accept)

c5 = pc.build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
print("universal on the 5-cycle:", pc.run(c5, universal).all_accept)
print("kk:3 on the 5-cycle (triangle-free):", pc.run(c5, kk_freeness_scheme(3)).all_accept)
