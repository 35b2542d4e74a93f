"""Chain corpus and Monte Carlo experiments."""

from .experiments import (
    CoverageReport,
    ExperimentConfig,
    ReplicateRecord,
    Truth,
    coverage_rows,
    estimate_for_mode,
    oracle_truth,
    run_coverage,
    run_error_curve,
    run_visit_concentration,
    select_S,
    write_csv,
)
from .generators import FAMILIES, ChainSpec, generate_chain
