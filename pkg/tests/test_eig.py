import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

import oracles
from orthozeros.eig import (
    SpectrumRequest,
    eigenvalues,
    extreme_eigenvalues,
    gershgorin_interval,
    sturm_count,
)
from orthozeros.errors import DomainError
from orthozeros.params import ScalingMap
from orthozeros.recurrence import TridiagonalOperator, laguerre_tridiagonal
from orthozeros.zeros import jacobi_operator

LEGENDRE5 = np.array([-0.906179845938664, -0.538469310105683, 0.0, 0.538469310105683, 0.906179845938664])


def op_of(d, e):
    return TridiagonalOperator(np.asarray(d, float), np.asarray(e, float))


def test_one_by_one():
    op = op_of([1.0], [])
    assert eigenvalues(SpectrumRequest(op)).tolist() == [1.0]
    assert extreme_eigenvalues(SpectrumRequest(op_of([3.5], []))) == (3.5, 3.5)


def test_two_by_two():
    vals = eigenvalues(SpectrumRequest.precise(op_of([0.0, 0.0], [1.0])))
    np.testing.assert_allclose(vals, [-1.0, 1.0], atol=1e-15)


def test_legendre5_against_polynomial_oracle():
    op = jacobi_operator(5, 0.0, 0.0)
    vals = eigenvalues(SpectrumRequest.precise(op))
    np.testing.assert_allclose(vals, oracles.legendre_zeros(5), atol=1e-12)
    np.testing.assert_allclose(vals, LEGENDRE5, atol=1e-14)
    lo, hi = extreme_eigenvalues(SpectrumRequest.precise(op))
    assert lo == pytest.approx(LEGENDRE5[0], abs=1e-14)
    assert hi == pytest.approx(LEGENDRE5[-1], abs=1e-14)


def test_laguerre2_extremes():
    lo, hi = extreme_eigenvalues(SpectrumRequest.precise(laguerre_tridiagonal(2, 0.0, ScalingMap())))
    assert lo == pytest.approx(2 - np.sqrt(2), abs=4e-15)
    assert hi == pytest.approx(2 + np.sqrt(2), abs=4e-15)


def test_extreme_only_mode():
    op = jacobi_operator(9, 1.0, 2.0)
    both = eigenvalues(SpectrumRequest.precise(op, mode="extreme_only"))
    full = eigenvalues(SpectrumRequest.precise(op))
    np.testing.assert_allclose(both, full[[0, -1]], atol=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_against_lapack(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 200))
    d = rng.normal(size=n) * 10 ** rng.uniform(-3, 3)
    e = rng.uniform(0.01, 2.0, size=n - 1) * np.abs(d).max()
    op = op_of(d, e)
    req = SpectrumRequest(op)
    ref = eigh_tridiagonal(d, e, eigvals_only=True)
    np.testing.assert_allclose(eigenvalues(req), ref, atol=4 * req.tolerance + 1e-14 * np.abs(ref).max())


def test_jacobi_operator_against_lapack():
    op = jacobi_operator(400, 3.0, 7.0)
    ref = eigh_tridiagonal(np.array(op.diag), np.array(op.offdiag), eigvals_only=True)
    np.testing.assert_allclose(eigenvalues(SpectrumRequest.precise(op)), ref, atol=5e-15)


def test_sturm_count_consistency():
    rng = np.random.default_rng(7)
    op = jacobi_operator(40, 2.5, 0.5)
    vals = eigenvalues(SpectrumRequest.precise(op))
    ts = rng.uniform(-1.1, 1.1, size=100)
    ts = ts[np.min(np.abs(ts[:, None] - vals[None, :]), axis=1) > 1e-10]
    expected = np.searchsorted(vals, ts, side="left")
    np.testing.assert_array_equal(sturm_count(op, ts), expected)
    # the scalar path agrees with the vectorized one
    assert [sturm_count(op, float(t)) for t in ts[:10]] == expected[:10].tolist()


def test_spectrum_inside_gershgorin():
    for op in (jacobi_operator(30, 5.0, 0.2), laguerre_tridiagonal(30, 3.0, ScalingMap(scale=30.0))):
        lo, hi = gershgorin_interval(op)
        vals = eigenvalues(SpectrumRequest(op))
        assert lo <= vals[0] and vals[-1] <= hi


def test_interlacing():
    a, b = 1.7, -0.4
    prev = eigenvalues(SpectrumRequest.precise(jacobi_operator(10, a, b)))
    nxt = eigenvalues(SpectrumRequest.precise(jacobi_operator(11, a, b)))
    assert np.all(nxt[:-1] < prev) and np.all(prev < nxt[1:])


def test_rejects_bad_requests():
    op = op_of([0.0, 0.0], [1.0])
    with pytest.raises(DomainError):
        SpectrumRequest(op, mode="some")
    with pytest.raises(DomainError):
        SpectrumRequest(op, abs_tol=0.0)
    with pytest.raises(DomainError):
        sturm_count(op, np.nan)
