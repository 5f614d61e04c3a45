"""Zeros of Jacobi, Laguerre and Hermite polynomials with degree-dependent parameters.

Zeros come from tridiagonal operators assembled in limit-law coordinates and
solved by Sturm bisection; ``limitlaw`` holds the limiting zero distributions,
``extremes`` the extreme-zero limits and bounds, ``empirics`` the comparisons.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DomainError,
    NumericalError,
    QuadratureFailure,
    SingularEndpoint,
    SubUnitMass,
    UnsupportedRegime,
)
from .params import ParamSchedule, Regime, RegimeTag, ScalingMap, classify, scaling_for
from .recurrence import TridiagonalOperator, jacobi_chain, chain_to_tridiagonal, laguerre_tridiagonal
from .eig import SpectrumRequest, eigenvalues, extreme_eigenvalues, sturm_count
from .limitlaw import GeneralLaw, law_for_regime
from .extremes import ismail_li_bound, msv_limits, predict_extremes
from .zeros import hermite_zeros, jacobi_zeros, laguerre_zeros
from .empirics import convergence_table, ks_distance, zero_counting, zero_sample
