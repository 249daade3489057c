"""Sasaki-Einstein metrics Y^{p,q} on S^2 x S^3 and their minimal level set.

Coordinates are ``(y, theta, phi, psi, alpha)`` with

    g = (1 - y)/6 (dtheta^2 + sin^2 dphi^2) + dy^2 / (w q)
        + q/9 (dpsi - cos(theta) dphi)^2 + w (dalpha + f (dpsi - cos(theta) dphi))^2

and ``Ric = 4 g``. The level sets ``y = const`` are homogeneous; exactly one
of them, ``y = ybar``, is minimal.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, NamedTuple

import numpy as np

from . import dual
from .errors import ConsistencyError, ParameterError
from .roots import bisect, count_sign_changes
from .stability import (
    TOL_ZERO,
    StabilityEigenvalue,
    StabilityReport,
    YpqLabel,
    sign_class,
)
from .tensor import Axis, FoliationChart, MetricChart

EINSTEIN = 4.0
PUBLISHED_NEGATIVE_LABELS = (YpqLabel(0, 0, 0, 0), YpqLabel(0, 0, 0, 1), YpqLabel(0, 0, 0, -1))


def b_of_epsilon(eps):
    """``1/2 - (1 - 3 eps^2) sqrt(4 - 3 eps^2) / 4``, evaluated without cancellation."""
    u = np.asarray(eps, dtype=float) ** 2
    r = np.sqrt(4.0 - 3.0 * u)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = 27.0 * u * (1.0 - u) ** 2 / (4.0 * (2.0 + (1.0 - 3.0 * u) * r))
    out = np.where(u < 1.0 / 3.0, small, 0.5 - (1.0 - 3.0 * u) * r / 4.0)
    return float(out) if out.ndim == 0 else out


def inverse_ell_squared_over_q2(eps):
    """``1 / (q ell)^2`` as a function of ``eps = q/p``; lies in (4, 81/16)."""
    r = np.sqrt(4.0 - 3.0 * np.asarray(eps, dtype=float) ** 2)
    return (3.0 * (1.0 + r) / (2.0 + r)) ** 2


def _interval(eps: float) -> tuple[float, float]:
    r = math.sqrt(4.0 - 3.0 * eps * eps)
    two_minus_r = 3.0 * eps * eps / (2.0 + r)
    return (two_minus_r - 3.0 * eps) / 4.0, (two_minus_r + 3.0 * eps) / 4.0


def cubic_discriminant(b):
    """Discriminant of ``H(y) = 8y^3 - 15y^2 + 6y + b`` in factored form."""
    return 108.0 * (16.0 * b + 11.0) * (1.0 - b)


def _ybar_from(b: float, y1: float, n_scan: int = 2001) -> float:
    lo, hi = y1 + 1e-12, -1e-12

    def H(y):
        return b + y * (6.0 + y * (-15.0 + 8.0 * y))

    grid = np.linspace(lo, hi, n_scan)
    changes = count_sign_changes(H(grid))
    if changes != 1:
        raise ConsistencyError(f"H has {changes} sign changes on (y1, 0), expected 1")
    return bisect(H, lo, hi, xtol=1e-16)


@dataclass(frozen=True)
class YpqModel:
    """Parameters of one Y^{p,q} metric.

    ``p`` is ``None`` for models built from a continuous ``epsilon``; ``q``
    then only scales ``ell``. ``epsilon = 1`` is the degenerate limit
    (``b = 1``, ``y2 = 1``) and only its ``ybar`` is meaningful.
    """

    p: int | None
    q: int
    epsilon: float
    b: float
    ell: float
    y1: float
    y2: float
    ybar: float

    @property
    def degenerate(self) -> bool:
        return self.epsilon >= 1.0

    # profile functions accept floats, arrays and hyper-duals
    def Q(self, y):
        return self.b - 3.0 * y * y + 2.0 * y * y * y

    def w(self, y):
        return 2.0 * (self.b - y * y) / (1.0 - y)

    def q_fn(self, y):
        return self.Q(y) / (self.b - y * y)

    def f(self, y):
        return (self.b - 2.0 * y + y * y) / (6.0 * (self.b - y * y))

    def H(self, y):
        return self.b + 6.0 * y - 15.0 * y * y + 8.0 * y * y * y

    def check(self) -> YpqModel:
        if not 0.0 < self.b <= 1.0:
            raise ConsistencyError(f"b={self.b} not in (0, 1)")
        if not (-0.5 <= self.y1 < 0.0 < self.y2 <= 1.0):
            raise ConsistencyError(f"bad interval ({self.y1}, {self.y2})")
        if abs(self.Q(self.y1)) > 1e-12 or abs(self.Q(self.y2)) > 1e-12:
            raise ConsistencyError("y1, y2 are not roots of b - 3y^2 + 2y^3")
        if abs(self.H(self.ybar)) > 1e-12:
            raise ConsistencyError(f"|H(ybar)| = {abs(self.H(self.ybar)):.3g}")
        if not self.y1 < self.ybar < 0.0:
            raise ConsistencyError(f"ybar={self.ybar} not in (y1, 0)")
        if self.degenerate:
            if abs(self.ybar + 0.125) > 1e-12:
                raise ConsistencyError("epsilon = 1 limit must give ybar = -1/8")
            return self
        if not self.b < 1.0:
            raise ConsistencyError(f"b={self.b} not below 1")
        if not (-0.5 < self.y1 and self.y2 < 1.0):
            raise ConsistencyError(f"bad interval ({self.y1}, {self.y2})")
        if min(self.b - self.y1**2, self.b - self.y2**2) <= 0.0:
            raise ConsistencyError("b - y^2 must be positive on [y1, y2]")
        if abs(self.q_fn(self.y1)) > 1e-12 or abs(self.q_fn(self.y2)) > 1e-12:
            raise ConsistencyError("q(y) does not vanish at y1, y2")
        if not self.ybar > -0.125:
            raise ConsistencyError(f"ybar={self.ybar} not above -1/8")
        return self


def ypq_model(p: int, q: int) -> YpqModel:
    if not (isinstance(p, (int, np.integer)) and isinstance(q, (int, np.integer))):
        raise ParameterError("p and q must be integers")
    p, q = int(p), int(q)
    if not 0 < q < p:
        raise ParameterError(f"need 0 < q < p, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise ParameterError(f"p={p} and q={q} are not coprime")
    return _build(q / p, q, p)


def ypq_model_from_epsilon(eps: float, q: int = 1) -> YpqModel:
    """Model with ``epsilon`` treated as a continuous parameter in (0, 1]."""
    if not 0.0 < eps <= 1.0:
        raise ParameterError(f"epsilon={eps} not in (0, 1]")
    if q < 1:
        raise ParameterError("q must be a positive integer")
    return _build(float(eps), int(q), None)


def _build(eps: float, q: int, p: int | None) -> YpqModel:
    # ell = q / (3q^2 - 2p^2 + p sqrt(4p^2 - 3q^2)) rewritten in eps
    r = math.sqrt(4.0 - 3.0 * eps * eps)
    ell = (2.0 + r) / (3.0 * q * (1.0 + r))
    b = b_of_epsilon(eps)
    y1, y2 = _interval(eps)
    return YpqModel(p, q, eps, b, ell, y1, y2, _ybar_from(b, y1)).check()


def minimal_cubic(model: YpqModel, y):
    """``H(y) = b + 6y - 15y^2 + 8y^3``; level ``y`` is minimal iff ``H(y) = 0``."""
    return model.H(np.asarray(y, dtype=float)) if not np.isscalar(y) else model.H(float(y))


def find_ybar(model: YpqModel) -> float:
    return _ybar_from(model.b, model.y1)


def cubic_roots(model: YpqModel) -> np.ndarray:
    """The three real roots of ``H``, ascending."""
    r = np.roots([8.0, -15.0, 6.0, model.b])
    if np.any(np.abs(r.imag) > 1e-10):
        raise ConsistencyError("H has complex roots")
    return np.sort(r.real)


def ypq_chart(model: YpqModel, margin: float = 1e-3) -> MetricChart:
    if model.degenerate:
        raise ParameterError("the epsilon = 1 limit has no smooth chart")

    def metric(c):
        y, theta = c[0], c[1]
        w, qq, f = model.w(y), model.q_fn(y), model.f(y)
        ct, st = dual.cos(theta), dual.sin(theta)
        base = (1.0 - y) / 6.0
        # sigma = dpsi - cos dphi, eta = dalpha + f sigma; components on (phi, psi, alpha)
        sigma = [-ct, 1.0, 0.0]
        eta = [-f * ct, f, 1.0]
        g = [[0.0] * 5 for _ in range(5)]
        g[0][0] = 1.0 / (w * qq)
        g[1][1] = base
        for a in range(3):
            for b in range(3):
                g[2 + a][2 + b] = qq / 9.0 * sigma[a] * sigma[b] + w * eta[a] * eta[b]
        g[2][2] = g[2][2] + base * st * st
        return g

    axes = (
        Axis("y", model.y1, model.y2),
        Axis("theta", 0.0, math.pi),
        Axis("phi", 0.0, 2 * math.pi, periodic=True),
        Axis("psi", 0.0, 2 * math.pi, periodic=True),
        Axis("alpha", 0.0, 2 * math.pi * model.ell, periodic=True),
    )
    name = f"ypq({model.p},{model.q})" if model.p else f"ypq(eps={model.epsilon:g})"
    return MetricChart(name, axes, metric, einstein_constant=EINSTEIN, margin=margin)


def ypq_foliation(model: YpqModel, margin: float = 1e-3) -> FoliationChart:
    return FoliationChart(ypq_chart(model, margin), transverse_index=0)


def ktilde_closed_form(model: YpqModel, theta: float) -> np.ndarray:
    """``sqrt(g_yy) K_ij`` at ``y = ybar`` on tangential coordinates (theta, phi, psi, alpha)."""
    y = model.ybar
    c = math.cos(theta)
    c2 = math.cos(2 * theta)
    aa = -8.0 * y
    apsi = -(1.0 + 4.0 * y) / 3.0
    psipsi = -(1.0 + 2.0 * y) / 9.0
    phiphi = -(7.0 + c2 + 8.0 * y * (1.0 + c2)) / 72.0
    return np.array([
        [-1.0 / 12.0, 0.0, 0.0, 0.0],
        [0.0, phiphi, -psipsi * c, -apsi * c],
        [0.0, -psipsi * c, psipsi, apsi],
        [0.0, -apsi * c, apsi, aa],
    ])


def trace_k2(model: YpqModel) -> float:
    y = model.ybar
    return 2.0 * (1.0 - 10.0 * y) / (1.0 - y)


def jacobi_shift(model: YpqModel) -> float:
    """``Ric(n, n) + Tr K^2`` at the minimal level."""
    y = model.ybar
    return 6.0 * (1.0 - 4.0 * y) / (1.0 - y)


def extrinsic_geometry(model: YpqModel) -> tuple[float, float]:
    return trace_k2(model), jacobi_shift(model)


# ---------------------------------------------------------------------------
# Spectrum

def aux_energy_gap(k, n_psi, n_phi):
    """``E - N_psi^2`` written in the (k, n_psi, n_phi) variables; never negative."""
    k = np.asarray(k)
    a, b = np.abs(n_psi), np.abs(n_phi)
    return k * (k + 1) + (k + 0.5) * (a + b) + 0.5 * (a * b - np.asarray(n_psi) * np.asarray(n_phi))


def _lambda_parts(model: YpqModel, k, N_alpha, N_psi, N_phi):
    k, Na, Np, Nf = (np.asarray(v, dtype=float) for v in (k, N_alpha, N_psi, N_phi))
    y = model.ybar
    npsi, nphi = Np - Nf, Np + Nf
    J = k + 0.5 * (np.abs(npsi) + np.abs(nphi))
    E = J * (J + 1.0)
    fiber_alpha = Na / model.ell
    return y, E, Np, fiber_alpha


def laplace_eigenvalue(model: YpqModel, k, N_alpha, N_psi, N_phi):
    """Eigenvalue of ``-Laplacian`` on the minimal level set (vectorised over labels).

    The fibre part is ``h^{ij} k_i k_j`` restricted to the (psi, alpha)
    directions: ``(N_alpha/ell)^2 / w + 9/q (N_psi - f N_alpha/ell)^2``.
    """
    y, E, Np, fa = _lambda_parts(model, k, N_alpha, N_psi, N_phi)
    w, qq, f = model.w(y), model.q_fn(y), model.f(y)
    return fa * fa / w + 9.0 / qq * (Np - f * fa) ** 2 + 6.0 * (E - Np * Np) / (1.0 - y)


def laplace_eigenvalue_printed(model: YpqModel, k, N_alpha, N_psi, N_phi):
    """The published fibre coefficients ``N_alpha^2/ell^2 + 9 f/w (N_alpha/ell - N_psi/f)^2``.

    These disagree with the inverse induced metric (see the tests); kept
    only to show that the index does not depend on which form is used.
    """
    y, E, Np, fa = _lambda_parts(model, k, N_alpha, N_psi, N_phi)
    w, f = model.w(y), model.f(y)
    return fa * fa + 9.0 * f / w * (fa - Np / f) ** 2 + 6.0 * (E - Np * Np) / (1.0 - y)


def lambda_tilde(model: YpqModel, label: YpqLabel | Iterable[int], printed: bool = False) -> float:
    lab = YpqLabel(*label)
    lap = laplace_eigenvalue_printed if printed else laplace_eigenvalue
    return float(lap(model, *lab) - jacobi_shift(model))


def _box(k_max, na_max, np_max, nf_max):
    k, na, npsi, nphi = np.meshgrid(
        np.arange(k_max + 1), np.arange(-na_max, na_max + 1),
        np.arange(-np_max, np_max + 1), np.arange(-nf_max, nf_max + 1), indexing="ij")
    return k.ravel(), na.ravel(), npsi.ravel(), nphi.ravel()


def ypq_stability_report(model: YpqModel, k_max: int = 6, n_alpha_max: int = 6,
                         n_psi_max: int = 4, n_phi_max: int = 4, tol_zero: float = TOL_ZERO,
                         n_lowest: int = 12, printed: bool = False) -> StabilityReport:
    """Jacobi spectrum of ``y = ybar`` enumerated over a label box.

    Positivity outside the box follows from two bounds, both checked here:

    * ``E - N_psi^2 >= 2`` whenever ``k >= 1``, ``|N_psi| >= 2`` or
      ``|N_phi| >= 2``, and then ``lambda~ >= 6 (1 + 4 ybar) / (1 - ybar) > 0``;
    * the remaining labels differ only in ``N_alpha``, and
      ``(N_alpha/ell)^2 / w`` alone exceeds the shift once
      ``|N_alpha| > n_alpha_max``.
    """
    if min(k_max, n_alpha_max, n_psi_max, n_phi_max) < 4:
        raise ParameterError("every enumeration bound must be >= 4")
    if model.degenerate:
        raise ParameterError("the epsilon = 1 limit has no minimal hypersurface spectrum")
    y = model.ybar
    shift = jacobi_shift(model)
    lap_fn = laplace_eigenvalue_printed if printed else laplace_eigenvalue

    k, na, npsi, nphi = _box(k_max, n_alpha_max, n_psi_max, n_phi_max)
    lap = lap_fn(model, k, na, npsi, nphi)
    lt = lap - shift
    gap = aux_energy_gap(k, npsi - nphi, npsi + nphi)

    if np.any(gap < -1e-12):
        raise ConsistencyError("E - N_psi^2 negative for some label")
    gap_floor = 6.0 * (1.0 + 4.0 * y) / (1.0 - y)
    if not gap_floor > 0.0:
        raise ConsistencyError("ybar <= -1/4: the E - N_psi^2 >= 2 exclusion fails")
    high = gap >= 2.0 - 1e-12
    if np.any(lt[high] < gap_floor - 1e-9 * max(1.0, shift)):
        raise ConsistencyError("label with E - N_psi^2 >= 2 falls below its analytic bound")
    alpha_coeff = 1.0 / (model.ell**2 * model.w(y)) if not printed else 1.0 / model.ell**2
    alpha_bound = (n_alpha_max + 1) ** 2 * alpha_coeff - shift
    if not alpha_bound > 0.0:
        raise ConsistencyError("N_alpha bound too small to certify positivity outside the box")

    order = np.lexsort((nphi, npsi, na, k, lt))
    eigs = [
        StabilityEigenvalue(YpqLabel(int(k[i]), int(na[i]), int(npsi[i]), int(nphi[i])),
                            float(lap[i]), float(lt[i]), sign_class(float(lt[i]), tol_zero))
        for i in order[:max(n_lowest, int(np.count_nonzero(lt < 0)))]
    ]
    neg_idx = [i for i in order if lt[i] <= -tol_zero]
    negatives = [(YpqLabel(int(k[i]), int(na[i]), int(npsi[i]), int(nphi[i])), float(lt[i]))
                 for i in neg_idx]

    truncation = {
        "k_max": k_max,
        "n_alpha_max": n_alpha_max,
        "n_psi_max": n_psi_max,
        "n_phi_max": n_phi_max,
        "gap_ge_2_lower_bound": gap_floor,
        "outside_n_alpha_lower_bound": alpha_bound,
        "certificate": "E - N_psi^2 >= 2 outside the N_alpha slab; N_alpha^2/(ell^2 w) beyond it",
    }
    if model.p is not None:
        ratio = float(inverse_ell_squared_over_q2(model.epsilon))
        truncation["inverse_ell_squared_over_q2"] = ratio
    published = {str(tuple(lab)): lambda_tilde(model, lab, printed) for lab in PUBLISHED_NEGATIVE_LABELS}
    return StabilityReport(
        surface=f"ypq({model.p},{model.q}):y={y:.15g}",
        shift=shift,
        index=len(negatives),
        min_abs_eig=float(np.min(np.abs(lt))),
        negatives=negatives,
        lowest=eigs,
        truncation=truncation,
        tol_zero=tol_zero,
        n_enumerated=int(lt.size),
        extra={"ybar": y, "fiber_coefficients": "printed" if printed else "derived",
               "published_negative_labels": published},
    )


# ---------------------------------------------------------------------------
# Sweeps over (p, q) and epsilon

class ScanRow(NamedTuple):
    p: int
    q: int
    label: YpqLabel
    lambda_tilde: float


def coprime_pairs(p_max: int) -> list[tuple[int, int]]:
    return [(p, q) for p in range(2, p_max + 1) for q in range(1, p) if math.gcd(p, q) == 1]


def exceptional_labels(q: int) -> list[YpqLabel]:
    """Labels not covered by the general positivity argument."""
    labs = [YpqLabel(0, 0, s, 0) for s in (1, -1)]
    labs += [YpqLabel(0, 0, s, t) for s, t in product((1, -1), repeat=2)]
    if q == 1:
        for a in (1, -1):
            labs += [YpqLabel(0, a, s, 0) for s in (1, -1)]
            labs += [YpqLabel(0, a, s, t) for s, t in product((1, -1), repeat=2)]
            labs.append(YpqLabel(0, a, 0, 0))
    return labs


def _scan_one(pq: tuple[int, int]) -> ScanRow:
    p, q = pq
    model = ypq_model(p, q)
    labs = exceptional_labels(q)
    vals = laplace_eigenvalue(model, *np.array(labs).T) - jacobi_shift(model)
    i = int(np.argmin(vals))
    return ScanRow(p, q, labs[i], float(vals[i]))


def parallel_map(func: Callable, items: list, workers: int | None = None) -> list:
    """Ordered map; uses a process pool when ``workers > 1``."""
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * workers))))
    return [func(x) for x in items]


def exceptional_scan(p_max: int, workers: int | None = None) -> list[ScanRow]:
    """Worst ``lambda~`` over the exceptional labels for every coprime ``q < p <= p_max``."""
    if p_max < 2:
        raise ParameterError("p_max must be >= 2")
    return parallel_map(_scan_one, coprime_pairs(p_max), workers)


def scan_failures(rows: Iterable[ScanRow], tol: float = 0.0) -> list[ScanRow]:
    return [r for r in rows if not r.lambda_tilde > tol]


def _curve_point(eps: float) -> tuple[float, float]:
    return float(eps), ypq_model_from_epsilon(float(eps)).ybar


def ybar_curve(num_samples: int, eps_min: float = 0.01, eps_max: float = 1.0,
               workers: int | None = None) -> list[tuple[float, float]]:
    if num_samples < 2:
        raise ParameterError("num_samples must be >= 2")
    eps = np.linspace(eps_min, eps_max, num_samples)
    return parallel_map(_curve_point, list(eps), workers)


def alpha_mode_curve(eps_values) -> np.ndarray:
    """``lambda~`` of the label (0, 1, 0, 0) at ``q = 1`` for continuous ``epsilon``."""
    out = []
    for e in eps_values:
        m = ypq_model_from_epsilon(float(e), q=1)
        out.append(lambda_tilde(m, (0, 1, 0, 0)))
    return np.array(out)
