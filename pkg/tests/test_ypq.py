import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minstab import ypq
from minstab.errors import ParameterError
from minstab.oracle import page_oracle_spectrum
from minstab.stability import YpqLabel
from minstab.tensor import invert_metric, normal_ricci, second_fundamental_form

PAIRS = [(2, 1), (3, 1), (3, 2), (5, 4)]


@st.composite
def coprime(draw, p_max=60):
    p = draw(st.integers(2, p_max))
    q = draw(st.integers(1, p - 1).filter(lambda q: math.gcd(p, q) == 1))
    return p, q


# --- parameters -----------------------------------------------------------

def test_reference_values(ypq21):
    m = ypq21
    assert m.b == pytest.approx(0.3873265, abs=1e-7)
    assert (m.y1, m.y2) == pytest.approx((-0.3256939, 0.4243061), abs=1e-7)
    assert m.ybar == pytest.approx(-0.0563713, abs=1e-7)
    assert m.ell == pytest.approx(0.4522631, abs=1e-7)


@given(coprime())
def test_stable_forms_match_textbook(pq):
    p, q = pq
    m = ypq.ypq_model(p, q)
    eps = q / p
    b = 0.5 - (1 - 3 * eps**2) * math.sqrt(4 - 3 * eps**2) / 4
    ell = q / (3 * q * q - 2 * p * p + p * math.sqrt(4 * p * p - 3 * q * q))
    assert m.b == pytest.approx(b, rel=1e-9)
    assert m.ell == pytest.approx(ell, rel=1e-9)
    r = math.sqrt(4 - 3 * eps**2)
    assert (m.y1, m.y2) == pytest.approx(((2 - r - 3 * eps) / 4, (2 - r + 3 * eps) / 4), abs=1e-12)


@settings(max_examples=200)
@given(coprime(200))
def test_ell_sandwich(pq):
    p, q = pq
    m = ypq.ypq_model(p, q)
    assert 4 * q * q < 1 / m.ell**2 < 81 / 16 * q * q


@pytest.mark.parametrize("p,q", [(1, 1), (2, 2), (4, 2), (2, 3), (3, 0)])
def test_invalid_pairs(p, q):
    with pytest.raises(ParameterError):
        ypq.ypq_model(p, q)


def test_non_integer_rejected():
    with pytest.raises(ParameterError):
        ypq.ypq_model(2.0, 1)


def test_discriminant_matches_generic_formula():
    for b in np.linspace(0.01, 0.99, 25):
        a3, a2, a1, a0 = 8.0, -15.0, 6.0, b
        generic = (18 * a3 * a2 * a1 * a0 - 4 * a2**3 * a0 + a2**2 * a1**2
                   - 4 * a3 * a1**3 - 27 * a3**2 * a0**2)
        assert ypq.cubic_discriminant(b) == pytest.approx(generic, rel=1e-12)
        assert ypq.cubic_discriminant(b) > 0


@pytest.mark.parametrize("p,q", PAIRS)
def test_ybar(p, q):
    m = ypq.ypq_model(p, q)
    assert abs(m.H(m.ybar)) < 1e-12
    assert -0.125 < m.ybar < 0
    roots = ypq.cubic_roots(m)
    assert roots[0] == pytest.approx(m.ybar, abs=1e-12)
    assert roots[1] > 0 and roots[2] > 0


@pytest.mark.parametrize("p,q", PAIRS)
def test_q_sign_facts(p, q):
    m = ypq.ypq_model(p, q)
    roots = ypq.cubic_roots(m)
    for y in roots:
        assert m.Q(y) == pytest.approx(-6 * y * (1 - y) ** 2, abs=1e-12)
    assert m.Q(roots[0]) > 0
    assert m.Q(roots[1]) < 0


def test_epsilon_one_limit():
    m = ypq.ypq_model_from_epsilon(1.0)
    assert m.degenerate
    assert m.ybar == pytest.approx(-0.125, abs=1e-12)
    with pytest.raises(ParameterError):
        ypq.ypq_chart(m)
    with pytest.raises(ParameterError):
        ypq.ypq_stability_report(m)


@given(st.floats(0.01, 0.98), st.floats(0.001, 0.01))
def test_ybar_decreasing_in_epsilon(eps, step):
    a = ypq.ypq_model_from_epsilon(eps).ybar
    b = ypq.ypq_model_from_epsilon(eps + step).ybar
    assert -0.125 < b < a < 0


def test_ybar_curve():
    curve = np.array(ypq.ybar_curve(100))
    assert np.all(np.diff(curve[:, 1]) < 0)
    assert curve[-1] == pytest.approx((1.0, -0.125), abs=1e-12)


# --- extrinsic geometry against the curvature engine ----------------------

@pytest.mark.parametrize("p,q", PAIRS)
@pytest.mark.parametrize("theta", [0.7, math.pi / 2])
def test_extrinsic_closed_forms(p, q, theta):
    m = ypq.ypq_model(p, q)
    fol = ypq.ypq_foliation(m)
    tp = [theta, 0.3, 1.1, 0.5]
    s = second_fundamental_form(fol, m.ybar, tp)
    assert abs(s.mean_curvature) < 1e-10
    assert s.trace_k2 == pytest.approx(ypq.trace_k2(m), abs=1e-8)
    assert np.abs(s.lapse * s.second_ff - ypq.ktilde_closed_form(m, theta)).max() < 1e-8
    shift = normal_ricci(fol, m.ybar, tp) + s.trace_k2
    assert shift == pytest.approx(ypq.jacobi_shift(m), abs=1e-8)
    assert shift > 0


def test_ktilde_spot_values(ypq21):
    kt = ypq.ktilde_closed_form(ypq21, math.pi / 2)
    assert kt[0, 0] == pytest.approx(-1 / 12)
    assert kt[3, 3] == pytest.approx(-8 * ypq21.ybar)


# --- spectrum -------------------------------------------------------------

@pytest.mark.parametrize("p,q", [(2, 1), (3, 1), (5, 4)])
def test_fibre_coefficients_from_inverse_metric(p, q):
    """|k|^2 from the inverse induced metric, minus the charged base part,
    must be the theta-independent fibre term of ``laplace_eigenvalue``."""
    m = ypq.ypq_model(p, q)
    fol = ypq.ypq_foliation(m)
    y = m.ybar
    for lab in [(0, 1, 0, 0), (0, 1, 1, 0), (0, 2, -1, 1), (0, 0, 1, 1), (0, -3, 2, -1)]:
        _, na, npsi, nphi = lab
        base_gap = ypq.aux_energy_gap(0, npsi - nphi, npsi + nphi)
        fibre = ypq.laplace_eigenvalue(m, *lab) - 6 * base_gap / (1 - y)
        for theta in (0.4, 1.3, 2.5):
            hinv = invert_metric(fol.induced(y, [theta, 0.0, 0.0, 0.0]))
            kv = np.array([0.0, nphi, npsi, na / m.ell])
            base = 6 * (nphi + npsi * math.cos(theta)) ** 2 / ((1 - y) * math.sin(theta) ** 2)
            assert kv @ hinv @ kv - base == pytest.approx(fibre, rel=1e-11, abs=1e-11)
    printed = ypq.laplace_eigenvalue_printed(m, 0, 1, 0, 0)
    assert abs(printed - ypq.laplace_eigenvalue(m, 0, 1, 0, 0)) > 1e-3


@pytest.mark.parametrize("n_psi_cap,n_phi_cap", [(0, 1), (0, -1), (1, 0), (1, 1), (-1, 1), (2, 1)])
def test_charged_base_gap_from_oracle(n_psi_cap, n_phi_cap):
    """``E - N_psi^2`` is the lowest eigenvalue of the charged sphere operator
    with potential (N_phi + N_psi cos)^2 / sin^2, solved numerically."""
    spec = page_oracle_spectrum(-2 * n_psi_cap, 2, 2000, phi_mode=n_phi_cap)
    gap = ypq.aux_energy_gap(np.arange(2), n_psi_cap - n_phi_cap, n_psi_cap + n_phi_cap)
    assert spec.eigenvalues / 4 == pytest.approx(gap, abs=1e-4)


def test_gap_never_below_one_except_constant_direction():
    k, na, npsi, nphi = ypq._box(4, 0, 4, 4)
    gap = ypq.aux_energy_gap(k, npsi - nphi, npsi + nphi)
    assert gap.min() == 0
    ones = {(int(a), int(b)) for a, b, g in zip(npsi, nphi, gap) if g == 1}
    assert all(abs(a) == 1 for a, _ in ones)
    zero_psi = gap[(npsi == 0) & ((k > 0) | (nphi != 0))]
    assert zero_psi.min() == 2


def test_stability_report_21(ypq21):
    rep = ypq.ypq_stability_report(ypq21)
    y = ypq21.ybar
    assert rep.index == 1
    (lab, val), = rep.negatives
    assert tuple(lab) == (0, 0, 0, 0)
    assert val == pytest.approx(-ypq.jacobi_shift(ypq21))
    assert rep.nullity_certified
    pub = rep.extra["published_negative_labels"]
    assert pub["(0, 0, 0, 1)"] == pytest.approx(6 * (1 + 4 * y) / (1 - y), abs=1e-12)
    assert pub["(0, 0, 0, 1)"] == pytest.approx(ypq.lambda_tilde(ypq21, (1, 0, 0, 0)), abs=1e-12)
    assert rep.truncation["outside_n_alpha_lower_bound"] > 0
    assert rep.truncation["gap_ge_2_lower_bound"] > 0


@pytest.mark.parametrize("printed", [False, True])
def test_index_over_small_pairs(printed):
    for p, q in ypq.coprime_pairs(12):
        rep = ypq.ypq_stability_report(ypq.ypq_model(p, q), printed=printed)
        assert rep.index == 1 and rep.nullity_certified


def test_report_rejects_small_box(ypq21):
    with pytest.raises(ParameterError):
        ypq.ypq_stability_report(ypq21, k_max=3)


def test_label_algebra():
    lab = YpqLabel(1, 0, 2, -1)
    assert (lab.n_psi, lab.n_phi) == (3, 1)
    assert lab.J == 3 and lab.E == 12


# --- scans ----------------------------------------------------------------

def test_exceptional_labels():
    assert len(ypq.exceptional_labels(2)) == 6
    assert len(ypq.exceptional_labels(1)) == 6 + 2 * 7
    assert YpqLabel(0, 1, 0, 0) in ypq.exceptional_labels(1)


def test_exceptional_scan_positive_and_parallel_safe():
    rows = ypq.exceptional_scan(30)
    assert len(rows) == len(ypq.coprime_pairs(30))
    assert not ypq.scan_failures(rows)
    assert min(r.lambda_tilde for r in rows) == pytest.approx(1.8964647840665947, rel=1e-12)
    assert ypq.exceptional_scan(30, workers=2) == rows


def test_alpha_mode_curve_on_admissible_epsilons():
    eps = 1.0 / np.arange(2, 200)
    assert np.all(ypq.alpha_mode_curve(eps) > 0)
    # beyond the admissible range the derived coefficients let it turn negative
    assert ypq.alpha_mode_curve([0.9])[0] < 0
