"""
Horizontal trajectories of the extremal quadratic differentials
===============================================================

Near the double poles at 0 and at the poles a_k the trajectories close up
into small loops; the critical set satisfies zeros - poles = -4.
"""
import numpy as np

from freepoles.quaddiff import QuadDiff, critical_points, sample_trajectories

for q in (QuadDiff(1, 3, 0.5), QuadDiff(2, 3)):
    cs = critical_points(q)
    print(q.kind.name, "zeros:", np.round(cs.finite_zeros(), 5))
    print("  degree:", cs.degree())
    seeds = [0.1, 0.3 + 0.2j, 1.0 + 0.15j]
    for seed, line in zip(seeds, sample_trajectories(q, seeds, 1e-3, 2.0)):
        print(f"  seed {seed!s:>12}: {len(line)} points, radius range "
              f"[{np.abs(line).min():.3f}, {np.abs(line).max():.3f}]")
