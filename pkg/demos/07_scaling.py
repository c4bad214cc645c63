"""Certificate size scaling.

The scheme promises certificates within O(n^1.5) bits.  Proving generated
P5-free families at growing n and dividing the largest certificate by
n^1.5 should give ratios bounded by a constant, with no growth trend.
"""

import p5cert as pc
from p5cert.harness import format_scaling_csv

for family in ("split", "cograph"):
    rows, constant = pc.measure_scaling([16, 64, 256], family, seed=1)
    print(format_scaling_csv(rows))
    print(f"{family}: fitted constant C = {constant:.3f}")
    ratios = [r[4] for r in rows]
    print(f"{family}: ratio trend {' -> '.join(f'{r:.2f}' for r in ratios)}\n")
