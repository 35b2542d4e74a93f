"""Mixing-time estimation for finite ergodic Markov chains from one trajectory.

The estimators target the generalized contraction coefficient
``1 - max_s (1 - kappa(M^s)) / s``, where ``kappa`` is the Dobrushin
coefficient; ``1 / (1 - kappa_gen)`` traps the mixing time within constant
factors.
"""

from .chain_core import (
    MarkovKernel,
    as_distribution,
    as_kernel,
    beta_ratio,
    dobrushin_coefficient,
    is_ergodic,
    kernel_power,
    load_kernel,
    save_kernel,
    stationary_distribution,
    total_variation,
)
from .errors import ArgumentError, GenerationError, NonConvergenceError
from .estimator import (
    ConfidenceInterval,
    ContractionEstimate,
    EmpiricalKernel,
    MixingTimeEstimate,
    SkipCounts,
    accumulate_counts,
    adaptive_S,
    confidence_interval,
    empirical_dobrushin,
    empirical_kernel,
    estimate_absolute,
    estimate_kappa_gen,
    estimate_mixing_time,
    estimate_relative,
    heuristic_S,
    pimin_plugin,
    solve_log_factor,
)
from .oracle import (
    ExactContraction,
    SandwichBounds,
    distance_to_stationarity,
    exact_generalized_contraction,
    exact_kappa_s,
    exact_mixing_time,
    sandwich_bounds,
    skipped_mixing_time,
)
from .sampler import (
    Trajectory,
    load_trajectory,
    make_rng,
    sample_trajectory,
    save_trajectory,
    skip_subsample,
)

__version__ = "0.1.0"
