"""
Seeded Monte Carlo experiments
==============================

Coverage of the interval, the error curve in m, and how often a skipped
chain under-visits its rarest state. Every replicate draws from its own
sub-stream of the master seed, so reruns are identical.
"""

from tmixest.harness import (
    ChainSpec,
    ExperimentConfig,
    run_coverage,
    run_error_curve,
    run_visit_concentration,
)

two = ChainSpec("two-state", 2, (0.25, 0.25))

cfg = ExperimentConfig(two, m=50_000, replicates=50, delta=0.1, S_mode="heuristic", master_seed=1)
print("coverage:", run_coverage(cfg).summary())

cfg = ExperimentConfig(ChainSpec("three-state-funnel", 3), m=1000, replicates=10, S_mode="adaptive")
for row in run_error_curve(cfg, [10**3, 10**4, 10**5]):
    print(f"m={row['m']:>7}  median |kappa_hat - kappa_gen| = {row['median']:.4f}")

cfg = ExperimentConfig(two, m=10**5, replicates=50, mu="stationary")
for row in run_visit_concentration(cfg, [1, 2, 3]):
    print(f"s={row['s']}  threshold={row['threshold']:.0f}  bad-event rate={row['frequency']:.2f}")
