"""Eigenvalues of symmetric tridiagonal operators by Sturm-sequence bisection.

The Sturm count at t (number of negative pivots of the LDL^T factorization of
T - tI) is the number of eigenvalues below t, which is exactly the zero
counting function of the polynomial whose zeros are the eigenvalues.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .recurrence import TridiagonalOperator

DEFAULT_REL_TOL = 1e-13
MAX_STEPS = 200
_EPS = np.finfo(float).eps


def gershgorin_interval(op: TridiagonalOperator) -> tuple[float, float]:
    d, e = op.diag, np.abs(op.offdiag)
    r = np.zeros_like(d)
    r[:-1] += e
    r[1:] += e
    return float(np.min(d - r)), float(np.max(d + r))


def gershgorin_radius(op: TridiagonalOperator) -> float:
    lo, hi = gershgorin_interval(op)
    return max(0.5 * (hi - lo), max(abs(lo), abs(hi)) * _EPS, sys.float_info.min)


@dataclass(frozen=True)
class SpectrumRequest:
    operator: TridiagonalOperator
    abs_tol: float | None = None
    mode: str = "all"

    def __post_init__(self):
        if self.mode not in ("all", "extreme_only"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.abs_tol is not None and not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol}")

    @property
    def tolerance(self) -> float:
        if self.abs_tol is not None:
            return self.abs_tol
        return DEFAULT_REL_TOL * gershgorin_radius(self.operator)

    @classmethod
    def precise(cls, op: TridiagonalOperator, mode: str = "all") -> "SpectrumRequest":
        """Request refinement down to a few ulps of the spectral scale."""
        lo, hi = gershgorin_interval(op)
        return cls(op, abs_tol=4 * _EPS * max(abs(lo), abs(hi), gershgorin_radius(op)), mode=mode)


def _pivmin(op: TridiagonalOperator) -> float:
    e2max = float(np.max(op.offdiag**2)) if op.size > 1 else 0.0
    return sys.float_info.min * max(1.0, e2max)


def sturm_count(op: TridiagonalOperator, t) -> np.ndarray | int:
    """Number of eigenvalues strictly below each threshold in ``t``."""
    scalar = np.ndim(t) == 0
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(np.isnan(ts)):
        raise DomainError("NaN threshold")
    if ts.size <= 4:
        counts = np.array([_count_scalar(op, float(x)) for x in ts])
    else:
        counts = _count_vector(op, ts)
    return int(counts[0]) if scalar else counts


def _count_scalar(op: TridiagonalOperator, t: float) -> int:
    pivmin = _pivmin(op)
    d = op.diag.tolist()
    e2 = (op.offdiag**2).tolist()
    q = d[0] - t
    if abs(q) < pivmin:
        q = -pivmin
    count = 1 if q < 0 else 0
    for i in range(1, len(d)):
        q = (d[i] - t) - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def _count_vector(op: TridiagonalOperator, ts: np.ndarray) -> np.ndarray:
    pivmin = _pivmin(op)
    d, e2 = op.diag, op.offdiag**2
    q = d[0] - ts
    q[np.abs(q) < pivmin] = -pivmin
    count = (q < 0).astype(np.int64)
    for i in range(1, d.size):
        q = (d[i] - ts) - e2[i - 1] / q
        q[np.abs(q) < pivmin] = -pivmin
        count += q < 0
    return count


def _bisect(op: TridiagonalOperator, indices: np.ndarray, tol: float) -> np.ndarray:
    lo0, hi0 = gershgorin_interval(op)
    pad = 2 * _EPS * max(abs(lo0), abs(hi0)) + tol
    lo = np.full(indices.size, lo0 - pad)
    hi = np.full(indices.size, hi0 + pad)
    for _ in range(MAX_STEPS):
        mid = 0.5 * (lo + hi)
        active = (hi - lo > tol) & (mid > lo) & (mid < hi)
        if not np.any(active):
            return 0.5 * (lo + hi)
        m = mid[active]
        below = sturm_count(op, m) > indices[active]
        lo_a, hi_a = lo[active], hi[active]
        hi_a[below] = m[below]
        lo_a[~below] = m[~below]
        lo[active], hi[active] = lo_a, hi_a
    raise ConvergenceError(f"bisection did not reach tolerance {tol:g} in {MAX_STEPS} steps")


def eigenvalues(req: SpectrumRequest) -> np.ndarray:
    """All eigenvalues, strictly increasing, each within ``req.tolerance``."""
    op = req.operator
    if req.mode == "extreme_only":
        return np.array(extreme_eigenvalues(req))
    if op.size == 1:
        return op.diag.copy()
    vals = _bisect(op, np.arange(op.size), req.tolerance)
    if not np.all(np.diff(vals) > 0):
        raise ConvergenceError("eigenvalues not separated at the requested tolerance")
    return vals


def extreme_eigenvalues(req: SpectrumRequest) -> tuple[float, float]:
    op = req.operator
    if op.size == 1:
        v = float(op.diag[0])
        return v, v
    lo, hi = _bisect(op, np.array([0, op.size - 1]), req.tolerance)
    return float(lo), float(hi)
