"""Parameter schedules, asymptotic regimes and standardizing maps.

A schedule is the power law ``c*n^p + d`` with its three constants stored as
exact fractions, so every limit such as ``lim alpha_n / n`` or
``lim alpha_n / beta_n`` is decided by comparing exponents, never by
extrapolating numbers.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError, UnsupportedRegime

FAMILIES = ("jacobi", "laguerre", "hermite")

_NUM = r"[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?(?:/[0-9]+)?"
_SCHEDULE_RE = re.compile(
    rf"^\s*(?P<c>{_NUM})\s*\*\s*n\s*\^\s*(?P<p>{_NUM})\s*(?:(?P<sign>[+-])\s*(?P<d>[+-]?{_NUM}))?\s*$"
)
_CONST_RE = re.compile(rf"^\s*(?P<d>[+-]?{_NUM})\s*$")


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite schedule constant {x!r}")
        # repr round-trips, so 0.1 becomes 1/10 rather than its binary expansion
        return Fraction(repr(x))
    return Fraction(x)


def _decimal(q: Fraction) -> str:
    """Exact decimal literal for q (falls back to ``num/den`` when none exists)."""
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    k = max(twos, fives)
    scaled = abs(q.numerator) * (10**k // q.denominator)
    digits = str(scaled).rjust(k + 1, "0")
    sign = "-" if q < 0 else ""
    return f"{sign}{digits[:-k]}.{digits[-k:]}"


@dataclass(frozen=True)
class ParamSchedule:
    """The sequence ``n -> coefficient * n**exponent + offset``."""

    coefficient: Fraction
    exponent: Fraction
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("coefficient", "exponent", "offset"):
            object.__setattr__(self, name, _fraction(getattr(self, name)))
        if self.coefficient < 0:
            raise DomainError(f"schedule coefficient must be >= 0, got {self.coefficient}")
        if self.exponent < 0:
            raise DomainError(f"schedule exponent must be >= 0, got {self.exponent}")

    @classmethod
    def constant(cls, value) -> "ParamSchedule":
        return cls(0, 0, value)

    @classmethod
    def parse(cls, text: str) -> "ParamSchedule":
        """Parse ``c*n^p+d`` (or a bare number, read as a constant schedule)."""
        m = _SCHEDULE_RE.match(text)
        if m:
            d = Fraction(m["d"]) if m["d"] is not None else Fraction(0)
            if m["sign"] == "-":
                d = -d
            return cls(Fraction(m["c"]), Fraction(m["p"]), d)
        m = _CONST_RE.match(text)
        if m:
            return cls.constant(Fraction(m["d"]))
        raise DomainError(f"cannot parse schedule {text!r}; expected the form c*n^p+d")

    def __str__(self) -> str:
        d = _decimal(self.offset)
        if not d.startswith("-"):
            d = "+" + d
        return f"{_decimal(self.coefficient)}*n^{_decimal(self.exponent)}{d}"

    def value(self, n: int) -> float:
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        return float(self.coefficient) * float(n) ** float(self.exponent) + float(self.offset)

    @property
    def order(self) -> Fraction:
        """Growth exponent of the sequence (0 for bounded schedules)."""
        if self.coefficient == 0 or self.exponent == 0:
            return Fraction(0)
        return self.exponent

    def limit_over_n(self) -> float:
        """``lim value(n)/n`` (``inf`` for super-linear growth)."""
        if self.order < 1:
            return 0.0
        if self.order == 1:
            return float(self.coefficient)
        return math.inf


def eval_schedule(sched: ParamSchedule, n: int) -> float:
    return sched.value(n)


class RegimeTag(str, enum.Enum):
    JACOBI_LINEAR = "JacobiLinear"
    JACOBI_BALANCED_SUPER = "JacobiBalancedSuper"
    JACOBI_ONE_SUPER = "JacobiOneSuper"
    JACOBI_DOMINANT_SUPER = "JacobiDominantSuper"
    LAGUERRE_LINEAR = "LaguerreLinear"
    LAGUERRE_SUPER = "LaguerreSuper"
    HERMITE_LINEAR = "HermiteLinear"
    HERMITE_SUPER = "HermiteSuper"


@dataclass(frozen=True)
class Regime:
    """An asymptotic regime with its limit constants.

    ``reflected`` means the roles of alpha and beta were swapped so that the
    alpha parameter dominates; zeros of P_n^(a,b)(x) are the negated zeros of
    P_n^(b,a)(x).
    """

    tag: RegimeTag
    a: float | None = None
    b: float | None = None
    c: float | None = None
    reflected: bool = False

    @property
    def family(self) -> str:
        return _FAMILY_OF[self.tag]

    @property
    def super_linear(self) -> bool:
        return self.tag not in (RegimeTag.JACOBI_LINEAR, RegimeTag.LAGUERRE_LINEAR, RegimeTag.HERMITE_LINEAR)

    def __str__(self) -> str:
        consts = [f"{k}={getattr(self, k):.17g}" for k in ("a", "b", "c") if getattr(self, k) is not None]
        s = f"{self.tag.value}({', '.join(consts)})"
        return s + " [reflected]" if self.reflected else s


_FAMILY_OF = {
    RegimeTag.JACOBI_LINEAR: "jacobi",
    RegimeTag.JACOBI_BALANCED_SUPER: "jacobi",
    RegimeTag.JACOBI_ONE_SUPER: "jacobi",
    RegimeTag.JACOBI_DOMINANT_SUPER: "jacobi",
    RegimeTag.LAGUERRE_LINEAR: "laguerre",
    RegimeTag.LAGUERRE_SUPER: "laguerre",
    RegimeTag.HERMITE_LINEAR: "hermite",
    RegimeTag.HERMITE_SUPER: "hermite",
}


def classify(alpha: ParamSchedule, beta: ParamSchedule | None = None, family: str = "jacobi") -> Regime:
    """Decide which limit theorem applies to the given schedules.

    For Laguerre and Hermite only ``alpha`` is used (it holds gamma for Hermite).
    """
    if family not in FAMILIES:
        raise UnsupportedRegime(f"unknown family {family!r}")
    if not isinstance(alpha, ParamSchedule) or (family == "jacobi" and not isinstance(beta, ParamSchedule)):
        raise UnsupportedRegime("regime classification needs power-law schedules")

    if family == "laguerre":
        if alpha.order <= 1:
            return Regime(RegimeTag.LAGUERRE_LINEAR, a=alpha.limit_over_n())
        return Regime(RegimeTag.LAGUERRE_SUPER)
    if family == "hermite":
        if alpha.order <= 1:
            return Regime(RegimeTag.HERMITE_LINEAR, c=alpha.limit_over_n())
        return Regime(RegimeTag.HERMITE_SUPER)

    sa, sb = alpha.order > 1, beta.order > 1
    if not sa and not sb:
        return Regime(RegimeTag.JACOBI_LINEAR, a=alpha.limit_over_n(), b=beta.limit_over_n())
    if sa and not sb:
        return Regime(RegimeTag.JACOBI_ONE_SUPER, b=beta.limit_over_n())
    if sb and not sa:
        return Regime(RegimeTag.JACOBI_ONE_SUPER, b=alpha.limit_over_n(), reflected=True)
    if alpha.order == beta.order:
        return Regime(RegimeTag.JACOBI_BALANCED_SUPER, c=float(alpha.coefficient / beta.coefficient))
    if alpha.order > beta.order:
        return Regime(RegimeTag.JACOBI_DOMINANT_SUPER)
    return Regime(RegimeTag.JACOBI_DOMINANT_SUPER, reflected=True)


@dataclass(frozen=True)
class ScalingMap:
    """Standardization from raw zeros ``x`` to limit-law coordinates ``z``.

    affine:            z = (s*x - shift) / scale,  s = -1 if reflect else 1
    hermite-quadratic: z = sign(x) * sqrt(max(0, (x**2 - center) / spread))
    """

    kind: str = "affine"
    scale: float = 1.0
    shift: float = 0.0
    reflect: bool = False
    center: float = 0.0
    spread: float = 1.0

    def __post_init__(self):
        if self.kind == "affine":
            if not (self.scale > 0 and math.isfinite(self.scale)):
                raise DomainError(f"scale must be positive and finite, got {self.scale}")
        elif self.kind == "hermite-quadratic":
            if not self.spread > 0:
                raise DomainError(f"spread must be positive, got {self.spread}")
        else:
            raise DomainError(f"unknown map kind {self.kind!r}")

    @classmethod
    def identity(cls) -> "ScalingMap":
        return cls()

    @classmethod
    def hermite_quadratic(cls, center: float, spread: float) -> "ScalingMap":
        return cls(kind="hermite-quadratic", center=center, spread=spread)

    @property
    def epsilon(self) -> float:
        """Jacobi location parameter: the map reads x = scale*z + 2*epsilon - 1."""
        return (self.shift + 1.0) / 2.0

    def forward(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "affine":
            y = -x if self.reflect else x
            return (y - self.shift) / self.scale
        u = (x * x - self.center) / self.spread
        return np.sign(x) * np.sqrt(np.maximum(u, 0.0))

    def inverse(self, z):
        """Raw coordinate of z.  For the quadratic map, z = 0 returns +-0 (not unique)."""
        z = np.asarray(z, dtype=float)
        if self.kind == "affine":
            y = self.scale * z + self.shift
            return -y if self.reflect else y
        return np.sign(z) * np.sqrt(self.center + self.spread * z * z)


def _oriented(regime: Regime, schedules: Sequence[ParamSchedule], n: int) -> tuple[float, float]:
    alpha, beta = schedules[0].value(n), schedules[1].value(n)
    return (beta, alpha) if regime.reflected else (alpha, beta)


def scaling_for(regime: Regime, schedules: Sequence[ParamSchedule], n: int) -> ScalingMap:
    """The map sending raw zeros at degree n into the regime's limit-law coordinates."""
    tag = regime.tag
    refl = regime.reflected
    if tag is RegimeTag.JACOBI_LINEAR:
        return ScalingMap()
    if tag is RegimeTag.JACOBI_BALANCED_SUPER:
        a, b = _oriented(regime, schedules, n)
        return ScalingMap(scale=math.sqrt(n / a), shift=(b - a) / (a + b), reflect=refl)
    if tag is RegimeTag.JACOBI_ONE_SUPER:
        a, _ = _oriented(regime, schedules, n)
        return ScalingMap(scale=n / a, shift=-1.0, reflect=refl)
    if tag is RegimeTag.JACOBI_DOMINANT_SUPER:
        a, b = _oriented(regime, schedules, n)
        root = math.sqrt(n * b)
        return ScalingMap(scale=root / a, shift=-(a + 2 * root - b) / (2 * n + a + b), reflect=refl)
    if tag is RegimeTag.LAGUERRE_LINEAR:
        return ScalingMap(scale=float(n))
    if tag is RegimeTag.LAGUERRE_SUPER:
        a = schedules[0].value(n)
        return ScalingMap(scale=math.sqrt(n * a), shift=a)
    if tag is RegimeTag.HERMITE_LINEAR:
        return ScalingMap(scale=math.sqrt(n))
    if tag is RegimeTag.HERMITE_SUPER:
        g = schedules[0].value(n)
        return ScalingMap.hermite_quadratic(center=g, spread=math.sqrt(n * g))
    raise UnsupportedRegime(f"no scaling for {regime}")
