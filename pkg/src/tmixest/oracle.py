"""Brute-force population quantities: mixing times and contraction coefficients.

These are exact up to floating point and serve as ground truth for the
single-trajectory estimators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chain_core import (
    _step_power,
    as_kernel,
    dobrushin_coefficient,
    is_ergodic,
    kernel_power,
    stationary_distribution,
    wielandt_index,
)
from .errors import ArgumentError, NonConvergenceError

MIXING_TIME_CAP = 10**7
CONTRACTION_SCAN_CAP = 10**6
DEFAULT_XI = 0.25


@dataclass(frozen=True)
class ExactContraction:
    """Generalized contraction coefficient of a kernel and its scan record.

    Attributes
    ----------
    kappa_gen : float
        ``1 - max_s (1 - kappa_s) / s``.
    k_gen : int
        Smallest skip rate attaining the maximum.
    scanned_up_to : int
        Last skip rate examined.
    per_s : list of (s, kappa_s, (1 - kappa_s) / s)
    """

    kappa_gen: float
    k_gen: int
    scanned_up_to: int
    per_s: list = field(repr=False)


@dataclass(frozen=True)
class SandwichBounds:
    lower: float
    upper: float
    tmix: int
    holds: bool


def _check_xi(xi):
    if not 0.0 < xi < 0.5:
        raise ArgumentError(f"xi must lie in (0, 1/2), got {xi!r}")


def _worst_start_distance(P: np.ndarray, pi: np.ndarray) -> float:
    # sup over the simplex is attained at a point mass (TV is convex)
    return 0.5 * float(np.abs(P - pi[None, :]).sum(axis=1).max())


def distance_to_stationarity(M, t: int) -> float:
    """Worst-case total variation distance to stationarity after ``t`` steps."""
    M = as_kernel(M)
    pi = stationary_distribution(M)
    return _worst_start_distance(kernel_power(M, t).rows, pi)


def exact_mixing_time(M, xi: float = DEFAULT_XI) -> int:
    """Smallest ``t >= 1`` with ``h(t) < xi`` (strict inequality)."""
    _check_xi(xi)
    M = as_kernel(M)
    pi = stationary_distribution(M)
    P = M.rows
    for t in range(1, MIXING_TIME_CAP + 1):
        if _worst_start_distance(P, pi) < xi:
            return t
        P = _step_power(P, M.rows)
    raise NonConvergenceError(f"mixing time exceeds {MIXING_TIME_CAP}")


def exact_kappa_s(M, s: int) -> float:
    """Dobrushin coefficient of the ``s``-step kernel."""
    return dobrushin_coefficient(kernel_power(M, s))


def exact_generalized_contraction(M) -> ExactContraction:
    """Scan skip rates until no larger one can improve ``(1 - kappa_s) / s``.

    Since ``(1 - kappa_s) / s <= 1 / s``, once the running best ``v`` is
    positive every ``s > ceil(1 / v)`` is dominated; the scan also covers
    the Wielandt index, past which ``kappa_s < 1`` for a primitive kernel.
    Non-primitive input fails fast instead of exhausting the scan cap.
    """
    M = as_kernel(M)
    if not is_ergodic(M):
        raise NonConvergenceError("kernel is not primitive; no skipped chain contracts")
    floor_s = wielandt_index(M.d)
    per_s = []
    best, best_s = 0.0, 1
    P = M.rows
    for s in range(1, CONTRACTION_SCAN_CAP + 1):
        if s > 1:
            P = _step_power(P, M.rows)
        kappa = dobrushin_coefficient(P)
        value = (1.0 - kappa) / s
        per_s.append((s, kappa, value))
        if value > best:
            best, best_s = value, s
        if best > 0.0 and s >= max(floor_s, math.ceil(1.0 / best)):
            return ExactContraction(1.0 - best, best_s, s, per_s)
    raise NonConvergenceError(
        f"no contracting power found within {CONTRACTION_SCAN_CAP} steps; "
        "is the chain ergodic?"
    )


def sandwich_bounds(M, xi: float = DEFAULT_XI) -> SandwichBounds:
    """Bracket ``t_mix(xi)`` between ``(1 - 2 xi)`` and ``(1 + ln(1/xi))``
    times ``1 / (1 - kappa_gen)`` and check the exact mixing time against it.
    """
    _check_xi(xi)
    gap = 1.0 - exact_generalized_contraction(M).kappa_gen
    lower = (1.0 - 2.0 * xi) / gap
    upper = (1.0 + math.log(1.0 / xi)) / gap
    tmix = exact_mixing_time(M, xi)
    return SandwichBounds(lower, upper, tmix, lower <= tmix <= upper)


def skipped_mixing_time(M, s: int, xi: float = DEFAULT_XI) -> int:
    """Mixing time of the chain observed every ``s`` steps."""
    return exact_mixing_time(kernel_power(M, s), xi)
