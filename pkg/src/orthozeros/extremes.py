"""Largest and smallest zeros: first-order limits, finite-n predictions, upper bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, UnsupportedRegime
from .limitlaw import HermiteQuartic, HermiteTwoArc, law_for_regime
from .params import ParamSchedule, Regime, RegimeTag, scaling_for


def msv_limits(A: float, B: float) -> tuple[float, float]:
    """Limits of the extreme zeros when alpha_n/(2n+alpha_n+beta_n) -> A and beta_n/(...) -> B.

    r, s = B^2 - A^2 -+ sqrt((A^2 + B^2 - 1)^2 - 4 A^2 B^2)
    """
    if A < 0 or B < 0 or A + B > 1 + 1e-12:
        raise DomainError(f"need A, B >= 0 and A + B <= 1, got ({A}, {B})")
    # the discriminant factors as ((A-B)^2 - 1)((A+B)^2 - 1) >= 0
    disc = ((A - B) ** 2 - 1) * ((A + B) ** 2 - 1)
    if disc < 0:
        if disc < -1e-14:
            raise DomainError(f"negative discriminant {disc} for ({A}, {B})")
        disc = 0.0
    root = math.sqrt(disc)
    center = B * B - A * A
    return max(-1.0, center - root), min(1.0, center + root)


@dataclass(frozen=True)
class IsmailLiBound:
    n: int
    alpha: float
    beta: float
    per_k: np.ndarray  # s_n(k) for k = 1..n-1
    s1: float
    s2: float

    @property
    def bound(self) -> float:
        return float(np.max(self.per_k))

    @property
    def envelope(self) -> float:
        return max(self.s1, self.s2)


def ismail_li_terms(n: int, alpha: float, beta: float) -> np.ndarray:
    """s_n(k), k = 1..n-1, an upper bound family for the largest zero of P_n^(alpha, beta).

    At k = 1 the factors (alpha + beta) and (1 + alpha + beta) cancel between
    numerator and denominator; the cancelled form is used there so that
    alpha + beta = 0 or -1 does not produce 0/0.
    """
    s = alpha + beta
    k = np.arange(1, n, dtype=float)
    first = np.empty_like(k)
    spread = np.empty_like(k)
    first[0] = (beta - alpha) / (4 + s)
    spread[0] = 4 * (1 + alpha) * (1 + beta) / (3 + s)
    kk = k[1:]
    first[1:] = (beta * beta - alpha * alpha) / ((2 * kk - 2 + s) * (2 * kk + 2 + s))
    spread[1:] = 4 * kk * (kk + alpha) * (kk + beta) * (kk + s) / ((2 * kk - 1 + s) * (2 * kk + 1 + s))
    return first + 2 / (2 * k + s) * np.sqrt(first * first + spread)


def ismail_li_bound(n: int, alpha: float, beta: float) -> IsmailLiBound:
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if not (alpha > -1 and beta > -1):
        raise DomainError(f"need alpha, beta > -1, got ({alpha}, {beta})")
    per_k = ismail_li_terms(n, alpha, beta)
    s = alpha + beta
    ratio = 0.0 if beta == alpha else (beta - alpha) / (beta + alpha)
    g = ratio * ratio
    h = 4 * n * (n + alpha) * (n + beta) * (n + s) / ((s + 1) * (s + 3))
    tail = 2 / (2 + s) * math.sqrt(g + h) if g + h >= 0 else math.nan
    s1 = ratio + tail
    s2 = (beta * beta - alpha * alpha) / (s + 2 * n) ** 2 + tail
    return IsmailLiBound(n, alpha, beta, per_k, s1, s2)


@dataclass(frozen=True)
class ExtremePrediction:
    """Predicted extreme zeros at degree n, in raw coordinates.

    ``scaled_limits`` are the limit points of the standardized extremes.  For
    Hermite regimes ``inner`` holds the predicted largest negative and smallest
    positive zeros.
    """

    regime: Regime
    n: int
    predicted_min: float
    predicted_max: float
    scaled_limits: tuple[float, float]
    inner: tuple[float, float] | None = None


def scaled_limits(regime: Regime) -> tuple[float, float]:
    return law_for_regime(regime).support


def predict_extremes(regime: Regime, schedules: Sequence[ParamSchedule], n: int) -> ExtremePrediction:
    """Invert the regime's standardization at its limiting constants."""
    if regime.tag not in RegimeTag:
        raise UnsupportedRegime(f"unknown regime {regime}")
    law = law_for_regime(regime)
    lo, hi = law.support
    smap = scaling_for(regime, schedules, n)
    raw = sorted(float(v) for v in smap.inverse(np.array([lo, hi])))
    inner = None
    if regime.tag is RegimeTag.HERMITE_LINEAR:
        rho = HermiteTwoArc(regime.c).rho * math.sqrt(n)
        inner = (-rho, rho)
    elif regime.tag is RegimeTag.HERMITE_SUPER:
        assert isinstance(law, HermiteQuartic)
        g = schedules[0].value(n)
        # squared inner zeros sit near the lower Laguerre edge g - sqrt(2 n g)
        r = math.sqrt(max(0.0, g - math.sqrt(2.0) * math.sqrt(n * g)))
        inner = (-r, r)
    return ExtremePrediction(regime, n, raw[0], raw[1], (lo, hi), inner)
