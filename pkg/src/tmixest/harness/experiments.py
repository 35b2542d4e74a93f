"""Seeded Monte Carlo experiments checked against the exact oracles.

Replicate ``k`` always draws its trajectory from the sub-stream
``(master_seed, ..., k)``, and records are aggregated in replicate order, so
every report is a pure function of its configuration.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..chain_core import MarkovKernel, stationary_distribution
from ..errors import ArgumentError
from ..estimator import (
    ConfidenceInterval,
    ContractionEstimate,
    absolute_scan_bound,
    accumulate_counts,
    adaptive_S,
    confidence_interval,
    estimate_kappa_gen,
    heuristic_S,
    pimin_plugin,
)
from ..oracle import exact_generalized_contraction, exact_mixing_time
from ..sampler import Trajectory, sample_trajectory
from .generators import ChainSpec, generate_chain

S_MODES = ("fixed", "heuristic", "adaptive", "absolute")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce an experiment.

    ``S_mode`` picks the scan bound per replicate: ``fixed`` uses ``S``,
    ``heuristic`` the balancing rule with the plug-in minimum stationary
    probability, ``adaptive`` the data-driven ``ceil(sqrt(N_min / d))`` and
    ``absolute`` uses ``ceil(2 / eps)``.  ``mu`` is ``"stationary"``,
    ``"uniform"`` or ``"point:i"``.
    """

    spec: ChainSpec
    m: int
    replicates: int = 100
    delta: float = 0.1
    eps: float = 0.1
    lam: float = 0.0
    xi: float = 0.25
    S_mode: str = "heuristic"
    S: int | None = None
    heuristic_n: int = 3
    master_seed: int = 0
    mu: str = "stationary"
    m_grid: tuple = ()
    s_list: tuple = (1, 2, 3)

    def __post_init__(self):
        if self.replicates < 1:
            raise ArgumentError("replicates must be >= 1")
        if self.m < 2:
            raise ArgumentError("m must be >= 2")
        if self.S_mode not in S_MODES:
            raise ArgumentError(f"S_mode must be one of {S_MODES}, got {self.S_mode!r}")
        if self.S_mode == "fixed" and (self.S is None or self.S < 1):
            raise ArgumentError("fixed S_mode needs a positive S")
        if not 0.0 < self.delta < 1.0:
            raise ArgumentError("delta must lie in (0, 1)")
        if not 0.0 < self.xi < 0.5:
            raise ArgumentError("xi must lie in (0, 1/2)")
        if self.lam < 0:
            raise ArgumentError("lambda must be >= 0")

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        obj = dict(obj)
        try:
            spec = ChainSpec.from_dict(obj.pop("chain"))
        except KeyError as exc:
            raise ArgumentError("config needs a 'chain' object") from exc
        if "lambda" in obj:
            obj["lam"] = obj.pop("lambda")
        for key in ("m_grid", "s_list"):
            if key in obj:
                obj[key] = tuple(int(v) for v in obj[key])
        known = set(cls.__dataclass_fields__) - {"spec"}
        unknown = set(obj) - known
        if unknown:
            raise ArgumentError(f"unknown config keys: {sorted(unknown)}")
        return cls(spec=spec, **obj)


@dataclass(frozen=True)
class Truth:
    kappa_gen: float
    k_gen: int
    tmix: int
    pimin: float


@dataclass(frozen=True)
class ReplicateRecord:
    replicate: int
    S: int
    kappa_hat: float
    interval: ConfidenceInterval
    t_hat: float
    covered: bool
    bracket_hit: bool

    @property
    def n_min(self) -> list:
        return [n for _, _, n, _ in self.interval.per_s_terms]


@dataclass(frozen=True)
class CoverageReport:
    config: ExperimentConfig
    truth: Truth
    records: list = field(repr=False)

    @property
    def coverage(self) -> float:
        return sum(r.covered for r in self.records) / len(self.records)

    @property
    def bracket_hit_rate(self) -> float:
        return sum(r.bracket_hit for r in self.records) / len(self.records)

    @property
    def median_abs_error(self) -> float:
        return float(np.median([abs(r.kappa_hat - self.truth.kappa_gen) for r in self.records]))

    @property
    def degenerate_rate(self) -> float:
        return sum(r.interval.degenerate for r in self.records) / len(self.records)

    def summary(self) -> dict:
        return {
            "kappa_gen": self.truth.kappa_gen,
            "k_gen": self.truth.k_gen,
            "tmix": self.truth.tmix,
            "pimin": self.truth.pimin,
            "replicates": len(self.records),
            "coverage": self.coverage,
            "median_abs_error": self.median_abs_error,
            "bracket_hit_rate": self.bracket_hit_rate,
            "degenerate_rate": self.degenerate_rate,
        }


def oracle_truth(M: MarkovKernel, xi: float = 0.25) -> Truth:
    exact = exact_generalized_contraction(M)
    pi = stationary_distribution(M)
    return Truth(exact.kappa_gen, exact.k_gen, exact_mixing_time(M, xi), float(pi.min()))


def initial_distribution(M: MarkovKernel, mu: str) -> np.ndarray:
    if mu == "stationary":
        return stationary_distribution(M)
    if mu == "uniform":
        return np.full(M.d, 1.0 / M.d)
    if mu.startswith("point:"):
        try:
            i = int(mu.split(":", 1)[1])
        except ValueError as exc:
            raise ArgumentError(f"bad point mass {mu!r}") from exc
        if not 0 <= i < M.d:
            raise ArgumentError(f"point mass state {i} outside [0, {M.d - 1}]")
        p = np.zeros(M.d)
        p[i] = 1.0
        return p
    raise ArgumentError(f"mu must be stationary, uniform or point:i, got {mu!r}")


def select_S(traj: Trajectory, config: ExperimentConfig) -> int:
    """Scan bound for one trajectory under ``config.S_mode``, capped at ``m - 1``."""
    if config.S_mode == "fixed":
        S = config.S
    elif config.S_mode == "absolute":
        S = absolute_scan_bound(config.eps)
    else:
        counts = accumulate_counts(traj, 1)
        if config.S_mode == "adaptive":
            S = adaptive_S(counts, traj.d)
        else:
            pimin_hat = pimin_plugin(counts)
            if pimin_hat > 0:
                S = heuristic_S(traj.m, traj.d, pimin_hat, config.heuristic_n)
            else:
                S = config.heuristic_n
    return min(int(S), traj.m - 1)


def _replicate(M, mu, config, truth, stream, index) -> ReplicateRecord:
    traj = sample_trajectory(M, mu, config.m, config.master_seed, stream)
    S = select_S(traj, config)
    ci = confidence_interval(traj, S, config.delta, config.lam)
    t_hat = 1.0 / (1.0 - ci.center) if ci.center < 1.0 else math.inf
    return ReplicateRecord(
        replicate=index,
        S=S,
        kappa_hat=ci.center,
        interval=ci,
        t_hat=t_hat,
        covered=ci.contains(truth.kappa_gen),
        bracket_hit=truth.tmix / 3.0 <= t_hat <= 3.0 * truth.tmix,
    )


def run_coverage(config: ExperimentConfig) -> CoverageReport:
    """Interval coverage of the exact coefficient and the factor-3 mixing-time bracket."""
    M = generate_chain(config.spec)
    truth = oracle_truth(M, config.xi)
    mu = initial_distribution(M, config.mu)
    records = [
        _replicate(M, mu, config, truth, (0, k), k) for k in range(config.replicates)
    ]
    return CoverageReport(config, truth, records)


def _estimates_at(M, mu, config: ExperimentConfig, m: int) -> list:
    cfg = replace(config, m=m)
    out = []
    for k in range(cfg.replicates):
        traj = sample_trajectory(M, mu, m, cfg.master_seed, (1, m, k))
        out.append(estimate_for_mode(traj, cfg))
    return out


def estimate_for_mode(traj: Trajectory, config: ExperimentConfig) -> ContractionEstimate:
    return estimate_kappa_gen(traj, select_S(traj, config), config.lam)


def run_error_curve(config: ExperimentConfig, m_grid=None) -> list:
    """Median and quartiles of ``|kappa_hat - kappa_gen|`` for each length in the grid."""
    m_grid = tuple(m_grid if m_grid is not None else config.m_grid) or (config.m,)
    M = generate_chain(config.spec)
    truth = oracle_truth(M, config.xi)
    mu = initial_distribution(M, config.mu)
    rows = []
    for m in m_grid:
        errors = [abs(e.kappa_hat - truth.kappa_gen) for e in _estimates_at(M, mu, config, m)]
        q25, med, q75 = np.quantile(errors, [0.25, 0.5, 0.75])
        rows.append(
            {
                "m": m,
                "median": float(med),
                "q25": float(q25),
                "q75": float(q75),
                "replicates": config.replicates,
                "kappa_gen": truth.kappa_gen,
            }
        )
    return rows


def run_visit_concentration(config: ExperimentConfig, s_list=None) -> list:
    """Frequency of ``N_min^(s) < floor((m-1)/s) * pimin / 2`` from a stationary start."""
    s_list = tuple(s_list if s_list is not None else config.s_list)
    M = generate_chain(config.spec)
    pi = stationary_distribution(M)
    pimin = float(pi.min())
    bad = {s: 0 for s in s_list}
    for k in range(config.replicates):
        traj = sample_trajectory(M, pi, config.m, config.master_seed, (2, k))
        for s in s_list:
            if accumulate_counts(traj, s).n_min < 0.5 * ((config.m - 1) // s) * pimin:
                bad[s] += 1
    return [
        {
            "s": s,
            "threshold": 0.5 * ((config.m - 1) // s) * pimin,
            "bad_events": bad[s],
            "replicates": config.replicates,
            "frequency": bad[s] / config.replicates,
        }
        for s in s_list
    ]


def coverage_rows(report: CoverageReport) -> list:
    rows = []
    for r in report.records:
        ci = r.interval
        rows.append(
            {
                "replicate": r.replicate,
                "S": r.S,
                "kappa_hat": r.kappa_hat,
                "lower": ci.lower,
                "upper": ci.upper,
                "width": ci.width,
                "degenerate": int(ci.degenerate),
                "covered": int(r.covered),
                "t_hat": r.t_hat,
                "bracket_hit": int(r.bracket_hit),
                "n_min": ";".join(map(str, r.n_min)),
                "kappa_gen": report.truth.kappa_gen,
                "tmix": report.truth.tmix,
            }
        )
    return rows


def write_csv(rows: list, path) -> None:
    if not rows:
        raise ArgumentError("nothing to write")
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
