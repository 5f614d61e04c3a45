import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

import oracles
from orthozeros.eig import SpectrumRequest, eigenvalues
from orthozeros.errors import DomainError
from orthozeros.params import ScalingMap
from orthozeros.recurrence import (
    TridiagonalOperator,
    chain_to_tridiagonal,
    generalized_hermite_recurrence,
    hermite_laguerre_map,
    hermite_zeros_support,
    jacobi_chain,
    laguerre_tridiagonal,
)
from orthozeros.zeros import hermite_zeros, jacobi_zeros, laguerre_zeros

# z = x + 1: the chain's own coordinates, where eps = 0
CHAIN = ScalingMap(scale=1.0, shift=-1.0)


def test_chain_n1_symmetric():
    prof = jacobi_chain(1, 0.0, 0.0)
    assert prof.values.tolist() == [0.5]


@pytest.mark.parametrize("alpha, beta", [(0, 0), (2, 0), (0.5, 3.25), (-0.5, 7)])
def test_chain_n1_general(alpha, beta):
    prof = jacobi_chain(1, alpha, beta)
    assert prof.p(1) == pytest.approx((beta + 1) / (2 + alpha + beta), rel=1e-15)
    assert 2 * prof.p(1) - 1 == pytest.approx((beta - alpha) / (alpha + beta + 2), abs=1e-15)


def test_chain_n2_legendre():
    # direct plug-in: p_1 = (0+2)/(4+0), p_2 = 1/(2+1), p_3 = (0+1)/(2+0)
    prof = jacobi_chain(2, 0.0, 0.0)
    np.testing.assert_allclose(prof.values, [1 / 2, 1 / 3, 1 / 2], rtol=1e-15)
    assert prof.p(0) == prof.p(-1) == prof.p(4) == 0.0


def test_chain_rejects_bad_parameters():
    with pytest.raises(DomainError):
        jacobi_chain(3, -1.0, 0.0)
    with pytest.raises(DomainError):
        jacobi_chain(0, 0.0, 0.0)


def test_tridiagonal_n1_chain_coordinates():
    op = chain_to_tridiagonal(jacobi_chain(1, 0.0, 0.0), CHAIN)
    assert op.diag.tolist() == [1.0]
    assert op.unscale(op.diag)[0] == 0.0


def test_tridiagonal_n1_alpha2():
    op = chain_to_tridiagonal(jacobi_chain(1, 2.0, 0.0), CHAIN)
    assert op.diag[0] == pytest.approx(0.5, abs=1e-15)
    assert op.unscale(op.diag)[0] == pytest.approx(-0.5, abs=1e-15)


def test_tridiagonal_n2_legendre():
    op = chain_to_tridiagonal(jacobi_chain(2, 0.0, 0.0), CHAIN)
    z = eigenvalues(SpectrumRequest.precise(op))
    r = 1 / math.sqrt(3)
    np.testing.assert_allclose(z, [1 - r, 1 + r], atol=1e-15)
    np.testing.assert_allclose(op.unscale(z), oracles.jacobi2_zeros(0.0, 0.0), atol=1e-15)


@pytest.mark.parametrize("alpha, beta", [(0.0, 0.0), (1.5, 3.0), (-0.7, 12.0), (20.0, -0.3)])
def test_jacobi_against_explicit_polynomial(alpha, beta):
    for n in range(1, 6):
        raw, _ = jacobi_zeros(n, alpha, beta)
        np.testing.assert_allclose(raw, oracles.jacobi_zeros(n, alpha, beta), atol=1e-12)


def test_jacobi_against_scipy_nodes():
    from scipy.special import roots_jacobi

    for n, a, b in [(30, 0.5, 2.0), (64, 3.0, 7.0), (100, -0.5, -0.5)]:
        raw, _ = jacobi_zeros(n, a, b)
        np.testing.assert_allclose(raw, roots_jacobi(n, a, b)[0], atol=1e-13)


def test_laguerre_small():
    assert laguerre_zeros(1, 0.0)[0].tolist() == [1.0]
    assert laguerre_zeros(1, 5.0)[0].tolist() == [6.0]
    s = math.sqrt(2)
    np.testing.assert_allclose(laguerre_zeros(2, 0.0)[0], [2 - s, 2 + s], rtol=4e-15)


def test_laguerre_against_explicit_polynomial():
    for n, a in [(3, 0.0), (4, 2.5), (5, -0.5)]:
        raw, _ = laguerre_zeros(n, a)
        ref = oracles.bisect_roots(lambda x: oracles.laguerre_value(n, a, x), 0.0, 40.0, n, grid=20000)
        np.testing.assert_allclose(raw, ref, rtol=1e-12)


def test_laguerre_against_scipy_nodes():
    from scipy.special import roots_genlaguerre

    raw, _ = laguerre_zeros(80, 1.5)
    ref = roots_genlaguerre(80, 1.5)[0]
    np.testing.assert_allclose(raw, ref, atol=1e-14 * ref[-1])


def test_hermite_split():
    assert hermite_zeros_support(2, 0.0) == type(hermite_zeros_support(2, 0.0))(1, -0.5, False)
    assert hermite_zeros_support(3, 0.0).laguerre_alpha == 0.5
    assert hermite_zeros_support(3, 0.0).include_zero
    assert hermite_zeros_support(1, 4.0).m == 0


def test_hermite_small():
    np.testing.assert_allclose(hermite_zeros(2, 0.0)[0], [-1 / math.sqrt(2), 1 / math.sqrt(2)], rtol=1e-15)
    np.testing.assert_allclose(hermite_zeros(3, 0.0)[0], [-math.sqrt(1.5), 0.0, math.sqrt(1.5)], rtol=1e-15)
    assert hermite_zeros(1, 2.5)[0].tolist() == [0.0]


@pytest.mark.parametrize("n, gamma", [(3, 1.0), (8, 0.0), (11, 2.5), (20, -0.25), (41, 7.0)])
def test_hermite_reduction_against_direct_recurrence(n, gamma):
    d, e = generalized_hermite_recurrence(n, gamma)
    ref = eigh_tridiagonal(d, e, eigvals_only=True)
    np.testing.assert_allclose(hermite_zeros(n, gamma)[0], ref, atol=1e-12 * max(1, ref[-1]))


def test_hermite_matches_physicists_nodes():
    from scipy.special import roots_hermite

    np.testing.assert_allclose(hermite_zeros(40, 0.0)[0], roots_hermite(40)[0], atol=1e-13)


def test_hermite_laguerre_map():
    m = hermite_laguerre_map(ScalingMap(scale=3.0))
    assert (m.scale, m.shift) == (9.0, 0.0)
    m = hermite_laguerre_map(ScalingMap.hermite_quadratic(5.0, 2.0))
    assert (m.scale, m.shift) == (2.0, 5.0)
    with pytest.raises(DomainError):
        hermite_laguerre_map(ScalingMap(scale=1.0, shift=1.0))


def test_operator_validation():
    with pytest.raises(DomainError):
        TridiagonalOperator(np.zeros(3), np.array([1.0, 0.0]))
    with pytest.raises(DomainError):
        TridiagonalOperator(np.array([0.0, np.nan]), np.array([1.0]))
    with pytest.raises(DomainError):
        TridiagonalOperator(np.zeros(3), np.ones(3))
    op = TridiagonalOperator(np.zeros(2), np.ones(1))
    with pytest.raises(ValueError):
        op.diag[0] = 1.0


def test_laguerre_rejects_reflecting_map():
    with pytest.raises(DomainError):
        laguerre_tridiagonal(3, 0.0, ScalingMap(reflect=True))
    with pytest.raises(DomainError):
        chain_to_tridiagonal(jacobi_chain(3, 0.0, 0.0), ScalingMap.hermite_quadratic(1.0, 1.0))


def test_scaled_coordinates_keep_digits():
    # all zeros of P_n^(n^4, n^3) lie within ~1e-6 of -1; raw shifting would keep ~10 digits
    from orthozeros.zeros import jacobi_operator

    n = 40
    a, b = float(n**4), float(n**3)
    root = math.sqrt(n * b)
    m = ScalingMap(scale=root / a, shift=-(a + 2 * root - b) / (2 * n + a + b))
    z = eigenvalues(SpectrumRequest.precise(jacobi_operator(n, a, b, m)))
    ref = eigh_tridiagonal(*_dense_reference(n, a, b, m), eigvals_only=True)
    np.testing.assert_allclose(z, ref, atol=1e-12 * (z[-1] - z[0]))


def _dense_reference(n, a, b, m):
    op = chain_to_tridiagonal(jacobi_chain(n, a, b), m)
    return np.array(op.diag), np.array(op.offdiag)
