"""Exact primitives on finite Markov kernels and distributions.

Kernels are stored as read-only ``float64`` arrays wrapped in
:class:`MarkovKernel`; distributions are plain validated 1-d arrays.
Every function here is pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ArgumentError, NonConvergenceError

STOCHASTIC_TOL = 1e-12
STATIONARY_TOL = 1e-13
STATIONARY_MAX_ITER = 10**6


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MarkovKernel:
    """Row-stochastic ``d x d`` transition matrix.

    Construction rejects matrices with entries outside ``[0, 1]`` or rows
    whose sums deviate from 1 by more than ``1e-12``; nothing is silently
    renormalized.
    """

    rows: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[0] != rows.shape[1]:
            raise ArgumentError(f"kernel must be a square matrix, got shape {rows.shape}")
        if rows.shape[0] < 2:
            raise ArgumentError("kernel needs at least 2 states")
        if not np.all(np.isfinite(rows)):
            raise ArgumentError("kernel has non-finite entries")
        if rows.min() < 0.0 or rows.max() > 1.0:
            raise ArgumentError("kernel entries must lie in [0, 1]")
        drift = np.abs(rows.sum(axis=1) - 1.0).max()
        if drift > STOCHASTIC_TOL:
            raise ArgumentError(f"kernel rows must sum to 1 (max drift {drift:.3g})")
        object.__setattr__(self, "rows", _frozen(rows))

    @property
    def d(self) -> int:
        return self.rows.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.rows, dtype=dtype)

    def __repr__(self):
        return f"MarkovKernel(d={self.d}, rows={self.rows.tolist()!r})"

    def to_dict(self) -> dict:
        return {"d": self.d, "rows": self.rows.tolist()}

    @classmethod
    def from_dict(cls, obj: dict) -> "MarkovKernel":
        try:
            d = int(obj["d"])
            rows = obj["rows"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ArgumentError(f"malformed kernel object: {exc}") from exc
        k = cls(np.asarray(rows, dtype=np.float64))
        if k.d != d:
            raise ArgumentError(f"declared d={d} but matrix is {k.d}x{k.d}")
        return k


def as_kernel(M) -> MarkovKernel:
    """Coerce an array-like into a validated :class:`MarkovKernel`."""
    if isinstance(M, MarkovKernel):
        return M
    return MarkovKernel(np.asarray(M, dtype=np.float64))


def as_distribution(p, d: int | None = None) -> np.ndarray:
    """Validate a probability vector and return it as a read-only array."""
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.shape[0] < 2:
        raise ArgumentError("distribution must be a vector over at least 2 states")
    if d is not None and p.shape[0] != d:
        raise ArgumentError(f"distribution has {p.shape[0]} states, expected {d}")
    if not np.all(np.isfinite(p)) or p.min() < 0.0:
        raise ArgumentError("distribution entries must be finite and non-negative")
    if abs(p.sum() - 1.0) > STOCHASTIC_TOL:
        raise ArgumentError("distribution must sum to 1")
    return _frozen(p)


def load_kernel(path) -> MarkovKernel:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ArgumentError(f"{path}: invalid JSON ({exc})") from exc
    return MarkovKernel.from_dict(obj)


def save_kernel(M: MarkovKernel, path) -> None:
    Path(path).write_text(json.dumps(as_kernel(M).to_dict()) + "\n")


def total_variation(p, q) -> float:
    """Half the l1 distance between two distributions."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ArgumentError(f"dimension mismatch: {p.shape} vs {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())


def _renormalize(P: np.ndarray) -> np.ndarray:
    sums = P.sum(axis=1, keepdims=True)
    if np.abs(sums - 1.0).max() > STOCHASTIC_TOL:
        P = P / sums
    return P


def _step_power(P: np.ndarray, M: np.ndarray) -> np.ndarray:
    """``P @ M`` with the rows pulled back onto the simplex."""
    return _renormalize(np.clip(P @ M, 0.0, 1.0))


def kernel_power(M, s: int) -> MarkovKernel:
    """Return ``M**s`` by repeated multiplication (``s >= 1``)."""
    M = as_kernel(M)
    if int(s) != s or s < 1:
        raise ArgumentError(f"power must be a positive integer, got {s!r}")
    if s == 1:
        return M
    P = M.rows
    for _ in range(int(s) - 1):
        P = _step_power(P, M.rows)
    return MarkovKernel(P)


def stationary_distribution(M) -> np.ndarray:
    """Stationary distribution by power iteration from the uniform vector.

    Raises
    ------
    NonConvergenceError
        If successive iterates are still more than ``1e-13`` apart in total
        variation after ``10**6`` steps (typically a periodic or reducible
        chain).
    """
    M = as_kernel(M)
    R = M.rows
    pi = np.full(M.d, 1.0 / M.d)
    for _ in range(STATIONARY_MAX_ITER):
        nxt = pi @ R
        nxt /= nxt.sum()
        if 0.5 * np.abs(nxt - pi).sum() < STATIONARY_TOL:
            return _frozen(nxt)
        pi = nxt
    raise NonConvergenceError(
        f"power iteration did not converge in {STATIONARY_MAX_ITER} steps; "
        "is the chain ergodic?"
    )


def wielandt_index(d: int) -> int:
    return (d - 1) ** 2 + 1


def is_ergodic(M) -> bool:
    """True iff the kernel is primitive (some power is entrywise positive).

    Works on the boolean support pattern, so tiny probabilities never
    underflow to zero.
    """
    M = as_kernel(M)
    B = M.rows > 0.0
    P = B.copy()
    for _ in range(wielandt_index(M.d)):
        if P.all():
            return True
        P = (P.astype(np.int64) @ B.astype(np.int64)) > 0
    return bool(P.all())


def dobrushin_coefficient(M) -> float:
    """Largest total variation distance between two rows of ``M``."""
    R = np.asarray(M, dtype=np.float64)
    diffs = np.abs(R[:, None, :] - R[None, :, :]).sum(axis=-1)
    return 0.5 * float(diffs.max())


def beta_ratio(pi) -> float:
    """``max_i pi(i) / min_j pi(j)``; measures departure from uniformity."""
    pi = np.asarray(pi, dtype=np.float64)
    if pi.min() <= 0.0:
        raise ArgumentError("beta_ratio needs a strictly positive distribution")
    return float(pi.max() / pi.min())


def operator_inf_norm(A, B) -> float:
    """Max-row l1 distance ``||A - B||_inf`` between two matrices."""
    return float(np.abs(np.asarray(A) - np.asarray(B)).sum(axis=1).max())
