"""Seeded trajectory simulation and skip sub-sampling.

Randomness comes from numpy's Philox generator (counter-based, 64-bit
keys).  Independent sub-streams are derived from a master seed plus an
arbitrary tuple of stream indices, so replicate ``k`` of an experiment
always sees the same draws regardless of how many replicates run.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .chain_core import as_distribution, as_kernel
from .errors import ArgumentError

SEED_MAX = 2**64 - 1


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Observed path ``X_1, ..., X_m`` stored 0-based (``X_t == states[t-1]``)."""

    states: np.ndarray
    d: int

    def __post_init__(self):
        states = np.asarray(self.states)
        if states.ndim != 1:
            raise ArgumentError("trajectory must be one-dimensional")
        if states.shape[0] < 2:
            raise ArgumentError("trajectory needs at least 2 states (m >= 2)")
        if int(self.d) != self.d or self.d < 2:
            raise ArgumentError(f"state-space size must be an integer >= 2, got {self.d!r}")
        if not np.issubdtype(states.dtype, np.integer):
            if not np.all(np.mod(states, 1) == 0):
                raise ArgumentError("trajectory states must be integers")
        states = states.astype(np.int64)
        if states.min() < 0 or states.max() >= self.d:
            raise ArgumentError(f"trajectory states must lie in [0, {self.d - 1}]")
        states.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "d", int(self.d))

    @property
    def m(self) -> int:
        return self.states.shape[0]

    def __len__(self):
        return self.m

    def __eq__(self, other):
        if not isinstance(other, Trajectory):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.states, other.states)

    def __repr__(self):
        return f"Trajectory(d={self.d}, m={self.m})"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Philox generator for ``seed`` and an optional sub-stream path."""
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise ArgumentError(f"seed must be a 64-bit unsigned integer, got {seed}")
    ss = np.random.SeedSequence([seed, *map(int, stream)])
    return np.random.Generator(np.random.Philox(ss))


def _cdf(P: np.ndarray) -> np.ndarray:
    # zero-probability states get a repeated cdf value and can never be drawn
    c = np.cumsum(P, axis=-1)
    return c / c[..., -1:]


def _follow(maps: np.ndarray, x0: int, block: int = 256) -> np.ndarray:
    """Path ``x_{t+1} = maps[t, x_t]`` started at ``x0``.

    ``maps[t, i]`` is the successor of state ``i`` at step ``t``.  Within
    fixed-size blocks the prefix compositions of the maps are built with a
    vectorized Hillis-Steele scan; only the block boundaries are followed
    one by one.
    """
    n, d = maps.shape
    nb = -(-n // block)
    F = np.empty((nb * block, d), dtype=maps.dtype)
    F[:n] = maps
    F[n:] = np.arange(d, dtype=maps.dtype)
    F = F.reshape(nb, block, d)
    k = 1
    while k < block:
        F[:, k:] = np.take_along_axis(F[:, k:], F[:, :-k], axis=2)
        k *= 2
    ends = F[:, -1, :].tolist()
    starts = np.empty(nb, dtype=np.intp)
    x = x0
    for b in range(nb):
        starts[b] = x
        x = ends[b][x]
    path = np.take_along_axis(F, starts[:, None, None], axis=2)
    return path.reshape(-1)[:n]


def sample_trajectory(M, mu, m: int, seed: int, stream: tuple = ()) -> Trajectory:
    """Simulate ``X_1 ~ mu`` and ``X_{t+1} ~ M(X_t, .)`` for ``m`` steps.

    Each step consumes one uniform draw and inverts the row CDF, so the
    output is a deterministic function of ``(M, mu, m, seed, stream)``.
    """
    M = as_kernel(M)
    mu = as_distribution(mu, M.d)
    if int(m) != m or m < 2:
        raise ArgumentError(f"trajectory length must be an integer >= 2, got {m!r}")
    m = int(m)
    u = make_rng(seed, *stream).random(m)
    x0 = int(np.searchsorted(_cdf(mu), u[0], side="right"))
    cdf = _cdf(M.rows)
    dtype = np.int16 if M.d < 2**15 else np.int64
    maps = np.empty((m - 1, M.d), dtype=dtype)
    for i in range(M.d):
        maps[:, i] = np.searchsorted(cdf[i], u[1:], side="right")
    states = np.empty(m, dtype=np.int64)
    states[0] = x0
    states[1:] = _follow(maps, x0)
    return Trajectory(states, M.d)


def skip_subsample(traj: Trajectory, s: int) -> Trajectory:
    """Keep ``X_1, X_{1+s}, ..., X_{1 + floor((m-1)/s) s}``."""
    if int(s) != s or not 1 <= s <= traj.m - 1:
        raise ArgumentError(f"skip rate must be an integer in [1, {traj.m - 1}], got {s!r}")
    if s == 1:
        return traj
    return Trajectory(traj.states[:: int(s)], traj.d)


def save_trajectory(traj: Trajectory, path) -> None:
    body = " ".join(map(str, traj.states.tolist()))
    Path(path).write_text(f"d={traj.d} m={traj.m}\n{body}\n")


def load_trajectory(path) -> Trajectory:
    lines = Path(path).read_text().split("\n", 1)
    header = dict(tok.split("=", 1) for tok in lines[0].split() if "=" in tok)
    try:
        d, m = int(header["d"]), int(header["m"])
    except (KeyError, ValueError) as exc:
        raise ArgumentError(f"{path}: header must read 'd=<int> m=<int>'") from exc
    body = lines[1] if len(lines) > 1 else ""
    try:
        states = np.array(body.split(), dtype=np.int64)
    except ValueError as exc:
        raise ArgumentError(f"{path}: states must be integers") from exc
    if states.shape[0] != m:
        raise ArgumentError(f"{path}: header says m={m} but found {states.shape[0]} states")
    return Trajectory(states, d)
