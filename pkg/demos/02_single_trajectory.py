"""
Estimating kappa_gen from one trajectory
========================================

Sample a path from the two-state chain, then recover the contraction
coefficient and the mixing time without looking at the kernel.
"""

from tmixest import (
    estimate_absolute,
    estimate_kappa_gen,
    estimate_mixing_time,
    exact_generalized_contraction,
    exact_mixing_time,
    sample_trajectory,
    stationary_distribution,
)
from tmixest.harness import ChainSpec, generate_chain

M = generate_chain(ChainSpec("two-state", 2, (0.25, 0.25)))
print("true kappa_gen:", exact_generalized_contraction(M).kappa_gen)
print("true t_mix:    ", exact_mixing_time(M))

traj = sample_trajectory(M, stationary_distribution(M), m=200_000, seed=1)
print("trajectory:", traj.states[:20], "...")

# A fixed scan bound
est = estimate_kappa_gen(traj, S=10)
print(f"S=10:       kappa_hat={est.kappa_hat:.4f} at s={est.arg_s}")

# Scan bound from a target accuracy, S = ceil(2 / eps)
est = estimate_absolute(traj, eps=0.1)
print(f"eps=0.1:    kappa_hat={est.kappa_hat:.4f} (S={est.S})")

# Scan bound chosen from the data
mt = estimate_mixing_time(traj)
print(f"adaptive:   kappa_hat={mt.estimate.kappa_hat:.4f} (S={mt.estimate.S}), "
      f"t_hat={mt.t_hat:.3f}, rounded up {mt.t_hat_int}")
