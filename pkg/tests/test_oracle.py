import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minstab import oracle
from minstab.errors import OracleFailure, ParameterError
from minstab.page import mu_eigenvalue


@pytest.mark.parametrize("n,m,expected", [(0, 3, [0, 8, 24]), (1, 1, [2]), (4, 1, [8])])
def test_page_examples(n, m, expected):
    spec = oracle.page_oracle_spectrum(n, m, 2000)
    assert np.allclose(spec.eigenvalues, expected, atol=1e-2)
    assert np.all(np.diff(spec.eigenvalues) > 0)


@pytest.mark.parametrize("charges,expected", [((0, 0), [0, 2, 6]), ((1, 0), [0.75]), ((1, 1), [2, 6])])
def test_ypq_examples(charges, expected):
    spec = oracle.ypq_oracle_spectrum(*charges, len(expected), 2000)
    assert np.allclose(spec.eigenvalues, expected, atol=1e-2)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_second_order_convergence(n):
    spec = oracle.page_oracle_spectrum(n, 3, 1000)
    r = spec.ratio[np.isfinite(spec.ratio)]
    assert r.size >= 2 and np.all((3.5 <= r) & (r <= 4.5))
    # the constant mode is exact on every grid and carries no ratio
    assert np.isnan(spec.ratio[0]) == (n == 0)


def test_error_estimate_bounds_grid_doubling():
    a = oracle.page_oracle_spectrum(2, 4, 400)
    b = oracle.page_oracle_spectrum(2, 4, 800)
    assert np.all(np.abs(a.eigenvalues - b.eigenvalues) < a.error)
    exact = np.array([mu_eigenvalue(2, k) for k in range(4)])
    assert np.all(np.abs(a.extrapolated - exact) < np.abs(a.eigenvalues - exact))


def test_charge_symmetry():
    assert np.allclose(oracle.page_oracle_spectrum(3, 3, 500).eigenvalues,
                       oracle.page_oracle_spectrum(-3, 3, 500).eigenvalues, atol=1e-12)
    assert np.allclose(oracle.ypq_oracle_spectrum(2, 1, 3, 500).eigenvalues,
                       oracle.ypq_oracle_spectrum(-2, -1, 3, 500).eigenvalues, atol=1e-12)


def test_phi_mode_selects_tower_tail():
    # m = n/2 + 1 drops the lowest level of the n-tower
    spec = oracle.page_oracle_spectrum(2, 2, 1000, phi_mode=2)
    assert np.allclose(spec.eigenvalues, [mu_eigenvalue(2, 1), mu_eigenvalue(2, 2)], atol=1e-2)
    with pytest.raises(ParameterError):
        oracle.page_problem(1, phi_mode=1)


def test_preconditions():
    with pytest.raises(ParameterError):
        oracle.page_oracle_spectrum(0, 0, 2000)
    with pytest.raises(ParameterError):
        oracle.page_oracle_spectrum(0, 1, 100)


def test_non_convergence_reported():
    # a potential that grows with the grid has no continuum limit
    def q(x):
        return np.full_like(x, float(x.size)) * np.sin(x)

    prob = oracle.SturmLiouvilleProblem("runaway", lambda x: np.sin(x), q, np.sin, 0.0, np.pi)
    with pytest.raises(OracleFailure):
        oracle.solve_sturm_liouville(prob, 2, 200)


def test_matrix_is_symmetric_tridiagonal():
    d, e = oracle.ypq_problem(1, 2).matrix(300)
    assert d.shape == (300,) and e.shape == (299,)
    assert np.all(np.isfinite(d)) and np.all(e < 0)


@pytest.mark.parametrize("triple,ok", [((0, 0, 0), True), ((1, 1, 2), True), ((3, -2, 5), True)])
def test_truncation_examples(triple, ok):
    assert oracle.hypergeometric_truncation_check(*triple) is ok


def test_truncation_rejects_perturbed_energy():
    e = oracle.aux_energy(1, 1, 2)
    assert e == 12
    assert not oracle.hypergeometric_truncation_check(1, 1, 2, energy=e + 0.1)
    with pytest.raises(ParameterError):
        oracle.hypergeometric_truncation_check(0, 0, -1)


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(0, 30))
def test_truncation_holds_for_all_labels(a, b, k):
    assert oracle.hypergeometric_truncation_check(a, b, k)
