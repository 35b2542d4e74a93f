"""
A data-dependent confidence interval
====================================

The interval width shrinks like sqrt(d / N_min) on each skipped chain, with
a 1/S bias term from truncating the scan. Smoothing (lambda > 0) keeps rows
that were never visited from dominating.
"""

from tmixest import confidence_interval, heuristic_S, pimin_plugin, accumulate_counts, sample_trajectory
from tmixest.harness import ChainSpec, generate_chain

M = generate_chain(ChainSpec("random-dirichlet", 4, (), 7))
for m in (10_000, 100_000, 1_000_000):
    traj = sample_trajectory(M, [1.0, 0.0, 0.0, 0.0], m=m, seed=3)
    S = heuristic_S(m, 4, pimin_plugin(accumulate_counts(traj, 1)))
    ci = confidence_interval(traj, S=S, delta=0.1)
    print(f"m={m:>9}  S={S:<4d} kappa_hat={ci.center:.4f}  "
          f"[{ci.lower:.4f}, {ci.upper:.4f}]  width={ci.width:.4f}")

# a very short path leaves some state unvisited: the interval is vacuous
short = sample_trajectory(M, [1.0, 0.0, 0.0, 0.0], m=5, seed=3)
ci = confidence_interval(short, S=2, delta=0.1)
print("degenerate:", ci.degenerate, (ci.lower, ci.upper))
print("smoothed center:", confidence_interval(short, S=2, delta=0.1, lam=0.5).center)
