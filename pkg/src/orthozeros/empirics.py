"""Empirical zero distributions against their limit laws."""
from __future__ import annotations

import bisect
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, NumericalError, SubUnitMass
from .extremes import predict_extremes
from .limitlaw import GeneralLaw, Law, law_for_regime
from .params import ParamSchedule, Regime, ScalingMap, classify, scaling_for
from .zeros import family_zeros

KS_TOL = 1e-9

COLUMNS = ("n", "ks", "min_zero", "max_zero", "scaled_min", "scaled_max",
           "pred_min", "pred_max", "err_min", "err_max")


@dataclass(frozen=True)
class ZeroSample:
    n: int
    raw: np.ndarray
    scaled: np.ndarray
    family: str
    params: dict = field(default_factory=dict)
    map: ScalingMap = field(default_factory=ScalingMap)

    def __post_init__(self):
        if self.raw.shape != (self.n,) or self.scaled.shape != (self.n,):
            raise DomainError(f"expected {self.n} zeros, got {self.raw.shape} / {self.scaled.shape}")
        # raw doubles may merge zeros lying within one ulp of each other (e.g. all
        # crowded next to -1); the scaled coordinates must still separate them
        if self.n > 1 and not np.all(np.diff(self.raw) >= 0):
            raise NumericalError("raw zeros are not sorted")
        if self.n > 1 and self.map.kind == "affine" and not np.all(np.diff(self.scaled) > 0):
            raise NumericalError("scaled zeros are not strictly increasing")

    def values(self, scaled: bool = True) -> np.ndarray:
        return self.scaled if scaled else self.raw


def param_values(family: str, schedules: Sequence[ParamSchedule], n: int) -> dict:
    if family == "jacobi":
        return {"alpha": schedules[0].value(n), "beta": schedules[1].value(n)}
    if family == "laguerre":
        return {"alpha": schedules[0].value(n)}
    return {"gamma": schedules[0].value(n)}


def sample_from_values(family: str, n: int, params: dict, map: ScalingMap | None = None) -> ZeroSample:
    """Zeros for explicit parameter values at degree n (no regime needed)."""
    map = map or ScalingMap()
    raw, scaled = family_zeros(family, n, params, map)
    return ZeroSample(n, np.asarray(raw), np.sort(scaled), family, dict(params), map)


def zero_sample(family: str, schedules: Sequence[ParamSchedule], n: int,
                regime: Regime | None = None) -> ZeroSample:
    """Zeros at degree n, standardized for the schedules' regime."""
    regime = regime or classify(schedules[0], schedules[1] if family == "jacobi" else None, family)
    return sample_from_values(family, n, param_values(family, schedules, n), scaling_for(regime, schedules, n))


def zero_counting(sample: ZeroSample, xi: float, scaled: bool = True) -> int:
    """Number of zeros <= xi."""
    return bisect.bisect_right(sample.values(scaled).tolist(), xi)


def empirical_cdf(sample: ZeroSample, xi: float, scaled: bool = True) -> float:
    return zero_counting(sample, xi, scaled) / sample.n


def _require_probability(law: Law):
    if isinstance(law, GeneralLaw) and law.sub_unit_mass:
        raise SubUnitMass(f"{law.describe()} has mass {law.total_mass():.6g} < 1 (possible atoms outside the support)")


def ks_values(values: np.ndarray, law: Law, tol: float = KS_TOL) -> float:
    """sup |F_n - F| for the empirical law of ``values`` against ``law``.

    Both distribution functions are piecewise monotone between the sample
    points and the law's atoms, so the supremum is attained at a one-sided
    limit at one of those points.
    """
    _require_probability(law)
    v = np.sort(np.asarray(values, dtype=float))
    n = v.size
    points = sorted(set(v.tolist()) | {p for p, _ in law.atoms()})
    vals = v.tolist()
    worst = 0.0
    for x in points:
        below = bisect.bisect_left(vals, x) / n
        upto = bisect.bisect_right(vals, x) / n
        worst = max(worst, abs(upto - law.cdf(x, tol)), abs(below - law.cdf_left(x, tol)))
    return worst


def ks_distance(sample: ZeroSample, law: Law, scaled: bool = True, tol: float = KS_TOL) -> float:
    return ks_values(sample.values(scaled), law, tol)


@dataclass
class CompareReport:
    family: str
    schedules: tuple[str, ...]
    regime: str
    law: str
    rows: list[dict]

    @property
    def n_list(self) -> list[int]:
        return [r["n"] for r in self.rows]

    @property
    def ks(self) -> list[float]:
        return [r["ks"] for r in self.rows]


def _row(family, schedules, regime, law, n) -> dict:
    try:
        sample = zero_sample(family, schedules, n, regime)
        pred = predict_extremes(regime, schedules, n)
        lo, hi = pred.scaled_limits
        smin, smax = float(sample.scaled[0]), float(sample.scaled[-1])
        return {
            "n": n,
            "ks": ks_distance(sample, law),
            "min_zero": float(sample.raw[0]),
            "max_zero": float(sample.raw[-1]),
            "scaled_min": smin,
            "scaled_max": smax,
            "pred_min": pred.predicted_min,
            "pred_max": pred.predicted_max,
            "err_min": abs(smin - lo),
            "err_max": abs(smax - hi),
        }
    except (DomainError, NumericalError) as exc:
        row = {k: math.nan for k in COLUMNS}
        row["n"] = n
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row


def convergence_table(family: str, schedules: Sequence[ParamSchedule], n_list: Sequence[int],
                      workers: int = 1) -> CompareReport:
    """KS distance and extreme-zero errors for each n, rows ordered as ``n_list``."""
    if list(n_list) != sorted(set(n_list)):
        raise DomainError(f"n_list must be strictly increasing, got {list(n_list)}")
    regime = classify(schedules[0], schedules[1] if family == "jacobi" else None, family)
    law = law_for_regime(regime)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda n: _row(family, schedules, regime, law, n), n_list))
    else:
        rows = [_row(family, schedules, regime, law, n) for n in n_list]
    return CompareReport(family, tuple(str(s) for s in schedules), str(regime), law.describe(), rows)
