"""Command-line entry point: ``tmixest <command> ...``.

Exit codes: 0 on success, 2 on bad arguments or input files, 3 when an
iterative computation or chain generator gives up.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .chain_core import beta_ratio, load_kernel, save_kernel, stationary_distribution
from .errors import ArgumentError, GenerationError, NonConvergenceError
from .estimator import (
    confidence_interval,
    estimate_absolute,
    estimate_kappa_gen,
    estimate_relative,
    mixing_time_from_kappa,
)
from .harness.experiments import (
    ExperimentConfig,
    coverage_rows,
    initial_distribution,
    run_coverage,
    run_error_curve,
    run_visit_concentration,
    write_csv,
)
from .harness.generators import FAMILIES, ChainSpec, generate_chain
from .oracle import exact_generalized_contraction, sandwich_bounds
from .sampler import load_trajectory, sample_trajectory, save_trajectory

log = logging.getLogger("tmixest")

EXIT_ARGUMENT = 2
EXIT_NONCONVERGENCE = 3


def _emit(obj: dict, out) -> None:
    text = json.dumps(obj, indent=2, allow_nan=False) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args):
    spec = ChainSpec(args.family, args.d, tuple(args.params or ()), args.seed)
    save_kernel(generate_chain(spec), args.out)


def cmd_sample(args):
    M = load_kernel(args.kernel)
    mu = initial_distribution(M, args.mu)
    save_trajectory(sample_trajectory(M, mu, args.m, args.seed), args.out)


def cmd_oracle(args):
    M = load_kernel(args.kernel)
    exact = exact_generalized_contraction(M)
    bounds = sandwich_bounds(M, args.xi)
    pi = stationary_distribution(M)
    _emit(
        {
            "kappa_gen": exact.kappa_gen,
            "k_gen": exact.k_gen,
            "tmix": bounds.tmix,
            "pimin": float(pi.min()),
            "beta": beta_ratio(pi) if pi.min() > 0 else None,
            "bracket_lower": bounds.lower,
            "bracket_upper": bounds.upper,
            "xi": args.xi,
        },
        args.out,
    )


def cmd_estimate(args):
    traj = load_trajectory(args.traj)
    if args.adaptive:
        est = estimate_relative(traj, args.lam)
    elif args.eps is not None:
        est = estimate_absolute(traj, args.eps, args.lam)
    else:
        est = estimate_kappa_gen(traj, args.S, args.lam)
    tm = mixing_time_from_kappa(est)
    obj = est.to_dict()
    obj["t_hat"] = None if tm.insufficient_data else tm.t_hat
    obj["t_hat_int"] = tm.t_hat_int
    obj["insufficient_data"] = tm.insufficient_data
    _emit(obj, args.out)


def cmd_ci(args):
    traj = load_trajectory(args.traj)
    _emit(confidence_interval(traj, args.S, args.delta, args.lam).to_dict(), args.out)


def cmd_bench(args):
    try:
        with open(args.config) as fh:
            config = ExperimentConfig.from_dict(json.load(fh))
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"{args.config}: invalid JSON ({exc})") from exc
    if args.kind == "coverage":
        report = run_coverage(config)
        write_csv(coverage_rows(report), args.out)
        summary = report.summary()
    elif args.kind == "error-curve":
        rows = run_error_curve(config)
        write_csv(rows, args.out)
        summary = {"rows": len(rows)}
    else:
        rows = run_visit_concentration(config)
        write_csv(rows, args.out)
        summary = {"rows": len(rows)}
    _emit(summary, None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmixest",
        description="Estimate Markov chain mixing times from a single trajectory.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a kernel from a chain family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--params", type=float, nargs="*")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sample", help="simulate a trajectory from a kernel file")
    p.add_argument("--kernel", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mu", default="stationary", help="uniform | stationary | point:i")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("oracle", help="exact contraction and mixing quantities")
    p.add_argument("--kernel", required=True)
    p.add_argument("--xi", type=float, default=0.25)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("estimate", help="estimate the generalized contraction coefficient")
    p.add_argument("--traj", required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--S", type=int)
    mode.add_argument("--eps", type=float)
    mode.add_argument("--adaptive", action="store_true")
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("ci", help="confidence interval for the coefficient")
    p.add_argument("--traj", required=True)
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("bench", help="run a Monte Carlo experiment")
    p.add_argument("kind", choices=("coverage", "error-curve", "visits"))
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.command == "gen" and args.d is None:
        args.d = 3 if args.family == "three-state-funnel" else 2
    try:
        args.func(args)
    except (ArgumentError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_ARGUMENT
    except (NonConvergenceError, GenerationError) as exc:
        log.error("%s", exc)
        return EXIT_NONCONVERGENCE
    return 0


if __name__ == "__main__":
    sys.exit(main())
