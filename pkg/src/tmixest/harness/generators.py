"""Chain families used as a test corpus."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..chain_core import MarkovKernel, is_ergodic
from ..errors import ArgumentError, GenerationError
from ..sampler import make_rng

FAMILIES = (
    "random-dirichlet",
    "lazy-cycle",
    "biased-cycle",
    "three-state-funnel",
    "rank-one",
    "two-state",
)
MAX_ATTEMPTS = 100

FUNNEL = ((0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (0.5, 0.5, 0.0))


@dataclass(frozen=True)
class ChainSpec:
    """Family name, state count, family parameters and seed.

    Parameters per family (all optional, defaults in brackets):

    * ``random-dirichlet``: ``(alpha,)`` [1.0], each row ~ Dirichlet(alpha)
    * ``lazy-cycle``: ``(hold,)`` [0.5], stay with prob ``hold`` else step +1
    * ``biased-cycle``: ``(forward, backward)`` [0.6, 0.2], remainder holds
    * ``three-state-funnel``: none, ``d`` must be 3
    * ``rank-one``: the common row (length ``d``) [drawn from Dirichlet(1)]
    * ``two-state``: ``(p, q)`` [0.25, 0.25], kernel ``[[1-p, p], [q, 1-q]]``
    """

    family: str
    d: int = 2
    params: tuple = ()
    seed: int = 0

    @classmethod
    def from_dict(cls, obj: dict) -> "ChainSpec":
        family = obj.get("family")
        if family is None:
            raise ArgumentError("chain spec needs a 'family'")
        d = obj.get("d", 3 if family == "three-state-funnel" else 2)
        return cls(family, int(d), tuple(obj.get("params", ())), int(obj.get("seed", 0)))

    def to_dict(self) -> dict:
        return {"family": self.family, "d": self.d, "params": list(self.params), "seed": self.seed}


def _params(spec: ChainSpec, defaults: tuple) -> tuple:
    if len(spec.params) > len(defaults):
        raise ArgumentError(f"{spec.family} takes at most {len(defaults)} parameters")
    return tuple(spec.params) + defaults[len(spec.params):]


def _dirichlet_rows(spec: ChainSpec, alpha: float, attempt: int, n_rows: int) -> np.ndarray:
    if alpha <= 0:
        raise ArgumentError(f"Dirichlet concentration must be > 0, got {alpha}")
    rng = make_rng(spec.seed, attempt)
    return rng.dirichlet(np.full(spec.d, float(alpha)), size=n_rows)


def _build(spec: ChainSpec, attempt: int) -> np.ndarray:
    d = spec.d
    if spec.family == "random-dirichlet":
        (alpha,) = _params(spec, (1.0,))
        return _dirichlet_rows(spec, alpha, attempt, d)
    if spec.family == "lazy-cycle":
        (hold,) = _params(spec, (0.5,))
        P = np.diag(np.full(d, float(hold)))
        P[np.arange(d), (np.arange(d) + 1) % d] += 1.0 - hold
        return P
    if spec.family == "biased-cycle":
        fwd, back = _params(spec, (0.6, 0.2))
        if fwd < 0 or back < 0 or fwd + back > 1:
            raise ArgumentError("biased-cycle needs forward, backward >= 0 with sum <= 1")
        idx = np.arange(d)
        P = np.diag(np.full(d, 1.0 - fwd - back))
        P[idx, (idx + 1) % d] += fwd
        P[idx, (idx - 1) % d] += back
        return P
    if spec.family == "three-state-funnel":
        if d != 3 or spec.params:
            raise ArgumentError("three-state-funnel is fixed: d=3, no parameters")
        return np.array(FUNNEL)
    if spec.family == "rank-one":
        if spec.params:
            if len(spec.params) != d:
                raise ArgumentError(f"rank-one row must have {d} entries")
            row = np.asarray(spec.params, dtype=np.float64)
        else:
            row = _dirichlet_rows(spec, 1.0, attempt, 1)[0]
        return np.tile(row, (d, 1))
    if spec.family == "two-state":
        if d != 2:
            raise ArgumentError("two-state chains have d=2")
        p, q = _params(spec, (0.25, 0.25))
        return np.array([[1.0 - p, p], [q, 1.0 - q]])
    raise ArgumentError(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")


def generate_chain(spec: ChainSpec) -> MarkovKernel:
    """Build an ergodic kernel from ``spec``.

    Randomized families are redrawn (from fresh sub-streams of the seed) until
    the result is ergodic; deterministic ones fail on the first miss.
    """
    if spec.d < 2:
        raise ArgumentError("chains need d >= 2")
    randomized = spec.family == "random-dirichlet" or (
        spec.family == "rank-one" and not spec.params
    )
    for attempt in range(MAX_ATTEMPTS if randomized else 1):
        M = MarkovKernel(_build(spec, attempt))
        if is_ergodic(M):
            return M
    raise GenerationError(f"could not generate an ergodic {spec.family} chain for {spec}")
