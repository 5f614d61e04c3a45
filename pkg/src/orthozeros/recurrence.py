"""Chain sequences and the tridiagonal operators built from them.

The zeros of P_n^(alpha, beta) are the eigenvalues of a Jacobi operator whose
entries are products of the chain quantities p_j.  Entries are formed directly
in standardized coordinates z = (x - shift) / scale, so that regimes where all
zeros crowd into a tiny window near -1 keep their significant digits.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .params import ScalingMap


@dataclass(frozen=True)
class ChainProfile:
    """p_1, ..., p_{2n-1} for one (n, alpha, beta); ``values[j-1]`` holds p_j."""

    n: int
    values: np.ndarray

    def p(self, j: int) -> float:
        """p_j with the conventions p_{-1} = p_0 = 0 and p_{2n} = 0."""
        if j <= 0 or j == 2 * self.n:
            return 0.0
        return float(self.values[j - 1])

    def padded(self) -> np.ndarray:
        """Array ``q`` with ``q[j + 1] == p_j`` for j = -1, ..., 2n."""
        return np.concatenate(([0.0, 0.0], self.values, [0.0]))


@dataclass(frozen=True)
class TridiagonalOperator:
    diag: np.ndarray
    offdiag: np.ndarray
    map: ScalingMap = field(default_factory=ScalingMap)

    def __post_init__(self):
        d = np.ascontiguousarray(self.diag, dtype=float)
        e = np.ascontiguousarray(self.offdiag, dtype=float)
        if d.ndim != 1 or d.size < 1 or e.shape != (d.size - 1,):
            raise DomainError(f"need n diagonal and n-1 off-diagonal entries, got {d.shape} and {e.shape}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise DomainError("operator entries must be finite")
        if np.any(e <= 0):
            raise DomainError("off-diagonal entries must be strictly positive")
        d.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def unscale(self, z):
        return self.map.inverse(z)


def jacobi_chain(n: int, alpha: float, beta: float) -> ChainProfile:
    """Chain sequence of the uniform distribution on the zeros of P_n^(alpha, beta).

    With i = 1..n the formula gives p_{2i-1} (odd slots 1..2n-1) and p_{2i}
    (even slots 2..2n, where p_{2n} = 0 and is not stored).
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if not (alpha > -1 and beta > -1):
        raise DomainError(f"need alpha, beta > -1, got ({alpha}, {beta})")
    s = alpha + beta
    i = np.arange(1, n + 1, dtype=float)
    p = np.empty(2 * n - 1)
    p[0::2] = (beta + n - i + 1) / (2 * (n - i + 1) + s)
    ie = i[:-1]
    p[1::2] = (n - ie) / (2 * (n - ie) + 1 + s)
    if not np.all((p > 0) & (p < 1)):
        raise DomainError(f"chain sequence left (0, 1) for n={n}, alpha={alpha}, beta={beta}")
    p.setflags(write=False)
    return ChainProfile(n, p)


def chain_to_tridiagonal(profile: ChainProfile, map: ScalingMap) -> TridiagonalOperator:
    """Jacobi operator of the standardized zero distribution.

    eta_j  = (2/d) [(1 - p_{2j-3}) p_{2j-2} + (1 - p_{2j-2}) p_{2j-1} - eps]
    lam_j  = (4/d^2) (1 - p_{2j-2}) p_{2j-1} (1 - p_{2j-1}) p_{2j}
    with d the map's scale and eps = (shift + 1) / 2.
    """
    if map.kind != "affine":
        raise DomainError("Jacobi operators need an affine map")
    n = profile.n
    q = profile.padded()
    j = np.arange(1, n + 1)
    p = lambda k: q[k + 1]  # noqa: E731
    d = map.scale
    diag = (2.0 / d) * (((1 - p(2 * j - 3)) * p(2 * j - 2) + (1 - p(2 * j - 2)) * p(2 * j - 1)) - map.epsilon)
    jj = j[:-1]
    lam = (1 - p(2 * jj - 2)) * p(2 * jj - 1) * (1 - p(2 * jj - 1)) * p(2 * jj)
    off = (2.0 / d) * np.sqrt(lam)
    return TridiagonalOperator(diag, off, map)


def laguerre_tridiagonal(n: int, alpha: float, map: ScalingMap) -> TridiagonalOperator:
    """Operator for L_n^(alpha) from the monic recurrence.

    x L_k = L_{k+1} + (2k + 1 + alpha) L_k + k (k + alpha) L_{k-1}, scaled by the map.
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if not alpha > -1:
        raise DomainError(f"need alpha > -1, got {alpha}")
    if map.kind != "affine" or map.reflect:
        raise DomainError("Laguerre operators need a non-reflecting affine map")
    k = np.arange(1, n + 1, dtype=float)
    diag = ((2 * k - 1) + (alpha - map.shift)) / map.scale
    kk = k[:-1]
    off = np.sqrt(kk * (kk + alpha)) / map.scale
    return TridiagonalOperator(diag, off, map)


@dataclass(frozen=True)
class HermiteSplit:
    """Generalized Hermite zeros as +-sqrt(zeros of L_m^(laguerre_alpha)), plus 0 for odd degree."""

    m: int
    laguerre_alpha: float
    include_zero: bool


def hermite_zeros_support(n: int, gamma: float) -> HermiteSplit:
    """Reduce H_n^(gamma) (weight |x|^(2 gamma) e^(-x^2)) to a Laguerre problem.

    H_{2m} ~ L_m^(gamma - 1/2)(x^2) and H_{2m+1} ~ x L_m^(gamma + 1/2)(x^2).
    """
    if n < 1:
        raise DomainError(f"degree must be >= 1, got {n}")
    if not gamma > -0.5:
        raise DomainError(f"need gamma > -1/2, got {gamma}")
    m, odd = divmod(n, 2)
    return HermiteSplit(m, gamma + 0.5 if odd else gamma - 0.5, bool(odd))


def hermite_laguerre_map(map: ScalingMap) -> ScalingMap:
    """Affine map on y = x^2 matching a Hermite standardization.

    An affine Hermite map z = x / s becomes z^2 = y / s^2; the quadratic map
    becomes (y - center) / spread.
    """
    if map.kind == "hermite-quadratic":
        return ScalingMap(scale=map.spread, shift=map.center)
    if map.shift != 0 or map.reflect:
        raise DomainError("Hermite affine maps must be pure rescalings")
    return ScalingMap(scale=map.scale * map.scale)


def generalized_hermite_recurrence(n: int, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """Monic recurrence x h_k = h_{k+1} + b_k h_{k-1}: zero diagonal and sqrt(b_k).

    b_k = k/2 for even k and (k + 2 gamma)/2 for odd k.  Used to cross-check the
    Laguerre reduction.
    """
    if not gamma > -0.5:
        raise DomainError(f"need gamma > -1/2, got {gamma}")
    k = np.arange(1, n, dtype=float)
    b = np.where(k % 2 == 1, (k + 2 * gamma) / 2, k / 2)
    return np.zeros(n), np.sqrt(b)


__all__ = [
    "ChainProfile",
    "TridiagonalOperator",
    "HermiteSplit",
    "jacobi_chain",
    "chain_to_tridiagonal",
    "laguerre_tridiagonal",
    "hermite_zeros_support",
    "hermite_laguerre_map",
    "generalized_hermite_recurrence",
]
