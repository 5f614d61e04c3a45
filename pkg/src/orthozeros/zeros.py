"""Zeros of Jacobi, Laguerre and generalized Hermite polynomials in chosen coordinates.

Each routine returns ``(raw, scaled)``: the sorted zeros and their images under
the map, with the operator assembled directly in scaled coordinates.
"""
from __future__ import annotations

import numpy as np

from .eig import SpectrumRequest, eigenvalues
from .params import ScalingMap
from .recurrence import (
    TridiagonalOperator,
    chain_to_tridiagonal,
    hermite_laguerre_map,
    hermite_zeros_support,
    jacobi_chain,
    laguerre_tridiagonal,
)


def jacobi_operator(n: int, alpha: float, beta: float, map: ScalingMap | None = None) -> TridiagonalOperator:
    """Operator whose eigenvalues are map.forward(zeros of P_n^(alpha, beta)).

    A reflecting map is built from the chain of P_n^(beta, alpha).
    """
    map = map or ScalingMap()
    if map.reflect:
        alpha, beta = beta, alpha
    return chain_to_tridiagonal(jacobi_chain(n, alpha, beta), map)


def _spectrum(op: TridiagonalOperator) -> np.ndarray:
    return eigenvalues(SpectrumRequest.precise(op))


def jacobi_zeros(n: int, alpha: float, beta: float, map: ScalingMap | None = None):
    op = jacobi_operator(n, alpha, beta, map)
    z = _spectrum(op)
    return np.sort(op.unscale(z)), z


def laguerre_zeros(n: int, alpha: float, map: ScalingMap | None = None):
    op = laguerre_tridiagonal(n, alpha, map or ScalingMap())
    z = _spectrum(op)
    return op.unscale(z), z


def hermite_zeros(n: int, gamma: float, map: ScalingMap | None = None):
    """Zeros of H_n^(gamma) through the Laguerre reduction in squared coordinates."""
    map = map or ScalingMap()
    split = hermite_zeros_support(n, gamma)
    if split.m:
        lmap = hermite_laguerre_map(map)
        op = laguerre_tridiagonal(split.m, split.laguerre_alpha, lmap)
        zl = _spectrum(op)
        raw_pos = np.sqrt(np.maximum(op.unscale(zl), 0.0))
        scaled_pos = np.sqrt(np.maximum(zl, 0.0))
    else:
        raw_pos = scaled_pos = np.empty(0)
    mid = [0.0] if split.include_zero else []
    raw = np.concatenate((-raw_pos[::-1], mid, raw_pos))
    scaled = np.concatenate((-scaled_pos[::-1], mid, scaled_pos))
    return raw, scaled


def family_zeros(family: str, n: int, params: dict, map: ScalingMap | None = None):
    if family == "jacobi":
        return jacobi_zeros(n, params["alpha"], params["beta"], map)
    if family == "laguerre":
        return laguerre_zeros(n, params["alpha"], map)
    if family == "hermite":
        return hermite_zeros(n, params["gamma"], map)
    raise ValueError(f"unknown family {family!r}")
