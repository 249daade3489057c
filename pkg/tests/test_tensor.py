import math

import numpy as np
import pytest

from minstab import charts, page, ypq
from minstab.errors import DegenerateMetricError, DomainError, ParameterError
from minstab.tensor import (
    Axis,
    FoliationChart,
    MetricChart,
    christoffel,
    christoffel_fd,
    invert_metric,
    mean_curvature,
    mean_curvature_logdet,
    normal_ricci,
    ricci,
    ricci_fd,
    second_fundamental_form,
    verify_einstein,
)


@pytest.fixture(scope="module")
def test_charts(page_mod):
    return {
        "page": page.page_chart(page_mod),
        "ypq21": ypq.ypq_chart(ypq.ypq_model(2, 1)),
        "ypq54": ypq.ypq_chart(ypq.ypq_model(5, 4)),
    }


# --- textbook cases -------------------------------------------------------

def test_euclidean_is_flat():
    ch = charts.euclidean_chart(4)
    p = ch.sample(3)
    assert verify_einstein(ch, p) == 0.0
    assert np.all(christoffel(ch, p[0]) == 0.0)


@pytest.mark.parametrize("radius", [0.5, 1.0, 3.0])
def test_round_sphere_curvature(radius):
    ch = charts.round_sphere_chart(radius)
    b = ricci(ch, [1.1, 0.3])
    assert b.scalar == pytest.approx(2.0 / radius**2, rel=1e-13)
    assert verify_einstein(ch, ch.sample(10)) < 1e-13


def test_spherical_coordinates_christoffel():
    ch = charts.spherical_euclidean_chart()
    r, th = 2.0, 0.9
    g = christoffel(ch, [r, th, 0.4])
    assert g[0, 1, 1] == pytest.approx(-r)
    assert g[0, 2, 2] == pytest.approx(-r * math.sin(th) ** 2)
    assert g[1, 0, 1] == pytest.approx(1.0 / r)
    assert g[2, 1, 2] == pytest.approx(1.0 / math.tan(th))
    assert np.abs(ricci(ch, [r, th, 0.4]).ricci).max() < 1e-13


@pytest.mark.parametrize("r", [0.5, 1.0, 4.0])
def test_concentric_spheres(r):
    fol = charts.sphere_foliation()
    s = second_fundamental_form(fol, r, [1.0, 2.0])
    assert np.allclose(s.second_ff, s.induced / r, atol=1e-14)
    assert s.mean_curvature == pytest.approx(2.0 / r)
    assert s.trace_k2 == pytest.approx(2.0 / r**2)
    assert mean_curvature_logdet(fol, r, [1.0, 2.0]) == pytest.approx(2.0 / r)
    assert normal_ricci(fol, r, [1.0, 2.0]) == pytest.approx(0.0, abs=1e-13)


# --- guards ---------------------------------------------------------------

def test_invert_metric_rejects_degenerate_and_asymmetric():
    with pytest.raises(DegenerateMetricError):
        invert_metric(np.diag([1.0, 1e-14]))
    with pytest.raises(DegenerateMetricError):
        invert_metric(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_validate_domain(test_charts):
    ch = test_charts["page"]
    with pytest.raises(DomainError):
        ch.validate([1.0, 0.0, 1.0, 0.0])  # x on the bolt
    with pytest.raises(DomainError):
        ch.validate([0.0, 0.0, 1e-4, 0.0])  # theta inside the margin
    with pytest.raises(DomainError):
        ch.validate([0.0, 0.0, 1.0])
    with pytest.raises(DomainError):
        ch.validate([0.0, float("nan"), 1.0, 0.0])
    ch.validate([0.0, 100.0, 1.0, -7.0])  # periodic axes are free


def test_sample_is_reproducible_and_interior(test_charts):
    ch = test_charts["ypq21"]
    a, b = ch.sample(30, seed=3), ch.sample(30, seed=3)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, ch.sample(30, seed=4))
    for p in a:
        ch.validate(p)


def test_nonzero_shift_rejected():
    axes = (Axis("u", -1, 1, singular=False), Axis("v", -1, 1, singular=False))
    ch = MetricChart("sheared", axes, lambda c: [[1.0, 0.1], [0.1, 1.0]])
    with pytest.raises(ParameterError):
        second_fundamental_form(FoliationChart(ch, 0), 0.0, [0.2])


# --- finite-difference oracle ---------------------------------------------

def test_page_christoffel_matches_fd_at_reference_point(test_charts):
    p = [0.3, 1.0, 1.2, 0.5]
    ch = test_charts["page"]
    assert np.abs(christoffel(ch, p) - christoffel_fd(ch, p, 1e-4)).max() < 1e-6


@pytest.mark.parametrize("name", ["page", "ypq21", "ypq54"])
def test_curvature_matches_fd_at_50_points(test_charts, name):
    ch = test_charts[name]
    worst = 0.0
    for p in ch.sample(50, seed=11, margin=0.2):
        a, b = ricci(ch, p), ricci_fd(ch, p, 1e-4)
        worst = max(worst, np.abs(a.christoffel - b.christoffel).max(),
                    np.abs(a.ricci - b.ricci).max())
    assert worst < 1e-5


@pytest.mark.parametrize("name,lam", [("page", 3.0), ("ypq21", 4.0), ("ypq54", 4.0)])
def test_einstein(test_charts, name, lam):
    ch = test_charts[name]
    assert ch.einstein_constant == lam
    assert verify_einstein(ch, ch.sample(20)) < 1e-8


# --- foliations -----------------------------------------------------------

def _tangential(fol, rng, n):
    pts = []
    for _ in range(n):
        pts.append([rng.uniform(a.lo + 0.1, a.hi - 0.1) if a.singular and not a.periodic
                    else rng.uniform(a.lo, a.hi) for a in fol.tangential_axes])
    return pts


@pytest.mark.parametrize("family", ["page", "ypq"])
def test_mean_curvature_is_homogeneous(page_mod, family):
    rng = np.random.default_rng(5)
    if family == "page":
        fol, level = page.page_foliation(page_mod), 0.5
    else:
        m = ypq.ypq_model(3, 1)
        fol, level = ypq.ypq_foliation(m), 0.5 * (m.y1 + m.ybar)
    vals = [mean_curvature(fol, level, tp) for tp in _tangential(fol, rng, 20)]
    assert np.ptp(vals) < 1e-10
    assert mean_curvature_logdet(fol, level, _tangential(fol, rng, 1)[0]) == pytest.approx(vals[0], abs=1e-12)


@pytest.mark.parametrize("family", ["page", "ypq21", "ypq32"])
def test_gauss_equation_at_minimal_level(page_mod, family):
    if family == "page":
        fol, level, tp = page.page_foliation(page_mod), 0.0, [0.3, 1.1, 0.4]
    else:
        m = ypq.ypq_model(*{"ypq21": (2, 1), "ypq32": (3, 2)}[family])
        fol, level, tp = ypq.ypq_foliation(m), m.ybar, [1.1, 0.3, 0.4, 0.5]
    shape = second_fundamental_form(fol, level, tp)
    assert abs(shape.mean_curvature) < 1e-10
    r_h = ricci(fol.induced_chart(level), tp).scalar
    r_g = ricci(fol.ambient, fol.full_point(level, tp)).scalar
    lhs = 0.5 * (r_h - r_g - shape.trace_k2)
    rhs = -(normal_ricci(fol, level, tp) + shape.trace_k2)
    assert lhs == pytest.approx(rhs, abs=1e-8)
