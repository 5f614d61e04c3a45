"""Limiting zero distributions: densities, distribution functions, quantiles.

Every law is a finite union of arcs [lo, hi] on which the density factors as
``rest(x) * sqrt((x - lo) * (hi - x))``, plus optional point masses.  Integrals
over an arc use x = mid + half * sin(theta), which turns the square-root
endpoint behaviour (including inverse square-root singularities carried by
``rest``) into a smooth integrand in theta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import quadrature
from .errors import DomainError, SingularEndpoint, UnsupportedRegime
from .params import Regime, RegimeTag

HALF_PI = 0.5 * math.pi
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class Arc:
    lo: float
    hi: float
    rest: Callable  # rest(x, x - lo, hi - x), vectorized

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def half(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def theta_integrand(self, theta):
        s = np.sin(theta)
        c2 = np.cos(theta) ** 2
        r = self.half
        # x - lo = r (1 + s) and hi - x = r (1 - s), each formed without cancellation
        dl = np.where(s < 0, r * c2 / (1 - s), r * (1 + s))
        dh = np.where(s > 0, r * c2 / (1 + s), r * (1 - s))
        x = np.where(s < 0, self.lo + dl, self.hi - dh)
        return self.rest(x, dl, dh) * dl * dh

    def theta_of(self, x: float) -> float:
        if x <= self.lo:
            return -HALF_PI
        if x >= self.hi:
            return HALF_PI
        return math.asin(min(1.0, max(-1.0, (x - self.mid) / self.half)))

    def mass_below(self, theta: float, tol: float) -> float:
        return quadrature.integrate(self.theta_integrand, -HALF_PI, theta, tol)


class Law:
    """Base class: a probability law (or sub-probability, for GeneralLaw)."""

    tag = "Law"

    def arcs(self) -> list[Arc]:
        raise NotImplementedError

    def atoms(self) -> list[tuple[float, float]]:
        return []

    @property
    def support(self) -> tuple[float, float]:
        arcs = self.arcs()
        pts = [a.lo for a in arcs] + [a.hi for a in arcs] + [p for p, _ in self.atoms()]
        return min(pts), max(pts)

    def params(self) -> dict:
        return {}

    def describe(self) -> str:
        ps = ", ".join(f"{k}={v:.17g}" for k, v in self.params().items())
        return f"{self.tag}({ps})"

    # -- evaluation -------------------------------------------------------

    def _arc_density(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        for arc in self.arcs():
            inside = (x >= arc.lo) & (x <= arc.hi)
            if not np.any(inside):
                continue
            xi = x[inside]
            dl, dh = xi - arc.lo, arc.hi - xi
            with np.errstate(divide="ignore", invalid="ignore"):
                val = arc.rest(xi, dl, dh) * np.sqrt(dl * dh)
            out[inside] += self._endpoint_fix(val, dl * dh)
        return out

    def _endpoint_fix(self, val: np.ndarray, prod: np.ndarray) -> np.ndarray:
        # 0 * inf at an endpoint where the density itself diverges
        return np.where(np.isnan(val) & (prod == 0), np.inf, val)

    def density(self, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = self._arc_density(xs)
        return float(out[0]) if np.ndim(x) == 0 else out

    def cdf(self, xi: float, tol: float = DEFAULT_TOL) -> float:
        """P(X <= xi) with absolute error at most ``tol``."""
        return self._cdf(xi, tol, inclusive=True)

    def cdf_left(self, xi: float, tol: float = DEFAULT_TOL) -> float:
        """P(X < xi)."""
        return self._cdf(xi, tol, inclusive=False)

    def _cdf(self, xi: float, tol: float, inclusive: bool) -> float:
        if not 1e-14 < tol < 1e-3:
            raise DomainError(f"tol must lie in (1e-14, 1e-3), got {tol}")
        arcs = self.arcs()
        share = tol / max(1, len(arcs))
        total = 0.0
        for arc in arcs:
            if xi <= arc.lo:
                continue
            total += arc.mass_below(arc.theta_of(xi), share)
        for pos, mass in self.atoms():
            if pos < xi or (inclusive and pos == xi):
                total += mass
        return min(1.0, max(0.0, total))

    def total_mass(self) -> float:
        arcs = self.arcs()
        share = DEFAULT_TOL / max(1, len(arcs))
        return sum(a.mass_below(HALF_PI, share) for a in arcs) + sum(m for _, m in self.atoms())

    def quantile(self, q: float, tol: float = 1e-13) -> float:
        """Smallest x with cdf(x) >= q, by bisection in the arc angle."""
        if not 0 < q < 1:
            raise DomainError(f"q must lie in (0, 1), got {q}")
        items = [(a.lo, "arc", a) for a in self.arcs()] + [(p, "atom", m) for p, m in self.atoms()]
        items.sort(key=lambda t: (t[0], t[1] == "arc"))
        share = 1e-12
        cum = 0.0
        for pos, kind, obj in items:
            if kind == "atom":
                if cum + obj >= q:
                    return pos
                cum += obj
                continue
            mass = obj.mass_below(HALF_PI, share)
            if cum + mass >= q:
                lo, hi = -HALF_PI, HALF_PI
                while hi - lo > tol:
                    mid = 0.5 * (lo + hi)
                    if cum + obj.mass_below(mid, share) >= q:
                        hi = mid
                    else:
                        lo = mid
                theta = 0.5 * (lo + hi)
                return obj.mid + obj.half * math.sin(theta)
            cum += mass
        return self.support[1]


# -- the general four-parameter law --------------------------------------------


@dataclass(frozen=True)
class GeneralLaw(Law):
    """Density (b1/2pi) sqrt(4 b2 - (x - a2)^2) / Q(x) on |x - a2| <= 2 sqrt(b2), where

    Q(x) = (b2 - b1) x^2 + (b1 a2 + b1 a1 - 2 b2 a1) x + b2 a1^2 - a1 a2 b1 + b1^2.
    """

    a1: float
    a2: float
    b1: float
    b2: float
    tag = "GeneralLaw"

    def __post_init__(self):
        if not (self.b1 > 0 and self.b2 > 0):
            raise DomainError(f"need b1, b2 > 0, got ({self.b1}, {self.b2})")

    def params(self) -> dict:
        return {"a1": self.a1, "a2": self.a2, "b1": self.b1, "b2": self.b2}

    @property
    def coefficients(self) -> tuple[float, float, float]:
        a1, a2, b1, b2 = self.a1, self.a2, self.b1, self.b2
        return b2 - b1, b1 * a2 + b1 * a1 - 2 * b2 * a1, b2 * a1 * a1 - a1 * a2 * b1 + b1 * b1

    def denominator(self, x):
        qa, qb, qc = self.coefficients
        return (qa * x + qb) * x + qc

    def denominator_roots_on_support(self) -> list[float]:
        qa, qb, qc = self.coefficients
        lo, hi = self.support
        coeffs = [qa, qb, qc] if qa != 0 else [qb, qc]
        if all(c == 0 for c in coeffs[:-1]):
            roots = np.array([]) if coeffs[-1] != 0 else np.array([lo])
        else:
            roots = np.roots(coeffs)
        slack = 1e-12 * max(1.0, abs(lo), abs(hi))
        return sorted(float(r.real) for r in np.atleast_1d(roots)
                      if abs(r.imag) <= slack and lo - slack <= r.real <= hi + slack)

    @property
    def support(self) -> tuple[float, float]:
        w = 2 * math.sqrt(self.b2)
        return self.a2 - w, self.a2 + w

    def arcs(self) -> list[Arc]:
        lo, hi = self.support
        k = self.b1 / (2 * math.pi)
        return [Arc(lo, hi, lambda x, dl, dh: k / self.denominator(x))]

    def density(self, x):
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.support
        on = (xs >= lo) & (xs <= hi)
        den = self.denominator(xs[on])
        if np.any(den == 0):
            raise SingularEndpoint(f"denominator vanishes on the support of {self.describe()}")
        out = np.zeros_like(xs)
        out[on] = self.b1 / (2 * math.pi) * np.sqrt(np.maximum(4 * self.b2 - (xs[on] - self.a2) ** 2, 0.0)) / den
        return float(out[0]) if np.ndim(x) == 0 else out

    def _check_regular(self):
        roots = self.denominator_roots_on_support()
        if roots:
            raise SingularEndpoint(f"denominator of {self.describe()} vanishes at {roots}")

    def _cdf(self, xi, tol, inclusive):
        self._check_regular()
        return super()._cdf(xi, tol, inclusive)

    def total_mass(self) -> float:
        self._check_regular()
        return super().total_mass()

    @property
    def sub_unit_mass(self) -> bool:
        """True when mass is missing from the density (possible atoms outside the support)."""
        return self.total_mass() < 1 - 1e-6


def semicircle_general(b: float, a: float = 0.0) -> GeneralLaw:
    return GeneralLaw(a, a, b, b)


# -- named laws --------------------------------------------------------------


def _const(k):
    return lambda x, dl, dh: np.full_like(x, k)


@dataclass(frozen=True)
class JacobiArc(Law):
    """(2+a+b)/(2 pi) sqrt((r2 - x)(x - r1)) / (1 - x^2) on [r1, r2]; arcsine when a = b = 0."""

    a: float
    b: float
    tag = "JacobiArc"

    def __post_init__(self):
        if not (self.a >= 0 and self.b >= 0):
            raise DomainError(f"need a, b >= 0, got ({self.a}, {self.b})")

    def params(self):
        return {"a": self.a, "b": self.b}

    @property
    def endpoints(self) -> tuple[float, float]:
        a, b = self.a, self.b
        root = 4 * math.sqrt((a + 1) * (b + 1) * (a + b + 1))
        den = (2 + a + b) ** 2
        r1 = -1.0 if b == 0 else max(-1.0, (b * b - a * a - root) / den)
        r2 = 1.0 if a == 0 else min(1.0, (b * b - a * a + root) / den)
        return r1, r2

    def arcs(self):
        r1, r2 = self.endpoints
        k = (2 + self.a + self.b) / (2 * math.pi)
        return [Arc(r1, r2, lambda x, dl, dh: k / ((dh + (1 - r2)) * (dl + (1 + r1))))]

    def density(self, x):
        if self.a == 0 and self.b == 0:
            xs = np.atleast_1d(np.asarray(x, dtype=float))
            out = np.zeros_like(xs)
            on = np.abs(xs) <= 1
            with np.errstate(divide="ignore"):
                out[on] = 1 / (math.pi * np.sqrt((1 - xs[on]) * (1 + xs[on])))
            return float(out[0]) if np.ndim(x) == 0 else out
        return super().density(x)


@dataclass(frozen=True)
class Semicircle(Law):
    """2/(pi sigma^2) sqrt(sigma^2 - x^2) on [-sigma, sigma]."""

    sigma: float
    tag = "Semicircle"

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"need sigma > 0, got {self.sigma}")

    @classmethod
    def from_ratio(cls, c: float) -> "Semicircle":
        return cls(4 * c / (1 + c) ** 1.5)

    def params(self):
        return {"sigma": self.sigma}

    def arcs(self):
        return [Arc(-self.sigma, self.sigma, _const(2 / (math.pi * self.sigma**2)))]


@dataclass(frozen=True)
class MPType(Law):
    """1/(4 pi) sqrt((s2 - x)(x - s1)) / x on [s1, s2], s_{1,2} = 2(2+b) -+ 4 sqrt(1+b)."""

    b: float
    tag = "MPType"

    def __post_init__(self):
        if not self.b >= 0:
            raise DomainError(f"need b >= 0, got {self.b}")

    def params(self):
        return {"b": self.b}

    @property
    def endpoints(self):
        b = self.b
        r = 4 * math.sqrt(1 + b)
        return (0.0 if b == 0 else 2 * (2 + b) - r), 2 * (2 + b) + r

    def arcs(self):
        s1, s2 = self.endpoints
        return [Arc(s1, s2, lambda x, dl, dh: 1 / (4 * math.pi * (dl + s1)))]


@dataclass(frozen=True)
class ShiftedSemicircle(Law):
    """1/(8 pi) sqrt((6 - x)(x + 2)) on [-2, 6]."""

    tag = "ShiftedSemicircle"

    def arcs(self):
        return [Arc(-2.0, 6.0, _const(1 / (8 * math.pi)))]


@dataclass(frozen=True)
class LaguerreMP(Law):
    """1/(2 pi) sqrt((r2 - x)(x - r1)) / x on [r1, r2], r_{1,2} = 2 + a -+ 2 sqrt(1+a)."""

    a: float
    tag = "LaguerreMP"

    def __post_init__(self):
        if not self.a >= 0:
            raise DomainError(f"need a >= 0, got {self.a}")

    def params(self):
        return {"a": self.a}

    @property
    def endpoints(self):
        a = self.a
        r = 2 * math.sqrt(1 + a)
        return (0.0 if a == 0 else 2 + a - r), 2 + a + r

    def arcs(self):
        r1, r2 = self.endpoints
        return [Arc(r1, r2, lambda x, dl, dh: 1 / (2 * math.pi * (dl + r1)))]


@dataclass(frozen=True)
class LaguerreSemicircle(Law):
    """1/(2 pi) sqrt(4 - x^2) on [-2, 2]."""

    tag = "LaguerreSemicircle"

    def arcs(self):
        return [Arc(-2.0, 2.0, _const(1 / (2 * math.pi)))]


@dataclass(frozen=True)
class HermiteTwoArc(Law):
    """(1/pi) sqrt((x^2 - rho^2)(sigma^2 - x^2)) / |x| on rho <= |x| <= sigma."""

    c: float
    tag = "HermiteTwoArc"

    def __post_init__(self):
        if not self.c >= 0:
            raise DomainError(f"need c >= 0, got {self.c}")

    def params(self):
        return {"c": self.c}

    @property
    def sigma(self) -> float:
        return math.sqrt(1 + self.c + math.sqrt(1 + 2 * self.c))

    @property
    def rho(self) -> float:
        if self.c == 0:
            return 0.0
        # 1 + c - sqrt(1 + 2c) = c^2 / (1 + c + sqrt(1 + 2c))
        return self.c / self.sigma

    def arcs(self):
        s, r = self.sigma, self.rho

        def right(x, dl, dh):
            ax = dl + r
            return np.sqrt((ax + r) * (s + ax)) / (math.pi * ax)

        def left(x, dl, dh):
            ax = dh + r
            return np.sqrt((ax + r) * (s + ax)) / (math.pi * ax)

        return [Arc(-s, -r, left), Arc(r, s, right)]


@dataclass(frozen=True)
class HermiteQuartic(Law):
    """Limit law of the quadratic Hermite standardization.

    Symmetric density (1/pi) |x| sqrt(2 - x^4) on 0 < |x| <= 2^(1/4), carrying
    mass 1/4 on each side, plus a point mass 1/2 at 0 collecting the zeros whose
    square lies below the centering constant.
    """

    tag = "HermiteQuartic"
    EDGE = 2**0.25

    def atoms(self):
        return [(0.0, 0.5)]

    def arcs(self):
        r = self.EDGE
        sq2 = math.sqrt(2.0)

        def right(x, dl, dh):
            return np.sqrt(dl * (r + dl) * (sq2 + dl * dl)) / math.pi

        def left(x, dl, dh):
            return np.sqrt(dh * (r + dh) * (sq2 + dh * dh)) / math.pi

        return [Arc(-r, 0.0, left), Arc(0.0, r, right)]

    def density(self, x):
        """Density of the continuous part (the atom at 0 is not included)."""
        return super().density(x)


NAMED_LAWS = (JacobiArc, Semicircle, MPType, ShiftedSemicircle, LaguerreMP, LaguerreSemicircle,
              HermiteTwoArc, HermiteQuartic)


# -- functional interface ------------------------------------------------------


def general_density(law: GeneralLaw, x):
    return law.density(x)


def named_density(law: Law, x):
    return law.density(x)


def cdf(law: Law, xi: float, tol: float = DEFAULT_TOL) -> float:
    return law.cdf(xi, tol)


def quantile(law: Law, q: float) -> float:
    return law.quantile(q)


def total_mass(law: Law) -> float:
    return law.total_mass()


def law_for_regime(regime: Regime) -> Law:
    tag = regime.tag
    if tag is RegimeTag.JACOBI_LINEAR:
        return JacobiArc(regime.a, regime.b)
    if tag is RegimeTag.JACOBI_BALANCED_SUPER:
        return Semicircle.from_ratio(regime.c)
    if tag is RegimeTag.JACOBI_ONE_SUPER:
        return MPType(regime.b)
    if tag is RegimeTag.JACOBI_DOMINANT_SUPER:
        return ShiftedSemicircle()
    if tag is RegimeTag.LAGUERRE_LINEAR:
        return LaguerreMP(regime.a)
    if tag is RegimeTag.LAGUERRE_SUPER:
        return LaguerreSemicircle()
    if tag is RegimeTag.HERMITE_LINEAR:
        return HermiteTwoArc(regime.c)
    if tag is RegimeTag.HERMITE_SUPER:
        return HermiteQuartic()
    raise UnsupportedRegime(f"no limit law for {regime}")

