"""The Page metric on CP^2 # -CP^2 and its equatorial minimal Berger sphere.

Coordinates are ``(x, psi, theta, phi)`` with

    g = S [dx^2 / A + 4 alpha^2 A (dpsi + cos(theta)/2 dphi)^2
           + B (dtheta^2 + sin(theta)^2 dphi^2)]

and the volume normalised so that ``Ric = 3 g``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import groupby

import numpy as np

from . import dual
from .errors import ConsistencyError, DomainError, ParameterError
from .roots import bisect, count_sign_changes
from .stability import (
    TOL_ZERO,
    PageLabel,
    StabilityEigenvalue,
    StabilityReport,
    sign_class,
)
from .tensor import Axis, FoliationChart, MetricChart

LAMBDA = 3.0
QUARTIC = (1.0, 4.0, -6.0, 12.0, -3.0)


def quartic(nu):
    """``nu^4 + 4 nu^3 - 6 nu^2 + 12 nu - 3``; its root in (0, 1) fixes the metric."""
    return np.polyval(QUARTIC, nu)


def solve_nu(n_scan: int = 10_000, xtol: float = 1e-15) -> float:
    grid = np.linspace(0.0, 1.0, n_scan + 1)
    vals = quartic(grid)
    if count_sign_changes(vals) != 1:
        raise ConsistencyError("quartic does not have exactly one root in (0, 1)")
    i = int(np.flatnonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0])
    return bisect(lambda v: float(quartic(v)), grid[i], grid[i + 1], xtol=xtol)


@dataclass(frozen=True)
class PageModel:
    nu: float
    lambda_const: float = LAMBDA

    def __post_init__(self):
        if not 0.0 < self.nu < 1.0:
            raise ParameterError(f"nu={self.nu} not in (0, 1)")
        if abs(quartic(self.nu)) > 1e-12:
            raise ParameterError(f"nu={self.nu} is not a root of the quartic")
        if self.lambda_const <= 0:
            raise ParameterError("Einstein constant must be positive")

    @property
    def S(self) -> float:
        return 3.0 * (1.0 + self.nu**2) / self.lambda_const

    @property
    def alpha(self) -> float:
        return 1.0 / (2.0 * (3.0 + self.nu**2))

    # A and B accept floats, arrays and hyper-duals alike
    def A(self, x):
        n2 = self.nu**2
        return (3.0 - n2 - n2 * (1.0 + n2) * x * x) * (1.0 - x * x) / (1.0 - n2 * x * x)

    def B(self, x):
        n2 = self.nu**2
        return (1.0 - n2 * x * x) / (3.0 + 6.0 * n2 - n2 * n2)


def page_model(lambda_const: float = LAMBDA) -> PageModel:
    return PageModel(nu=solve_nu(), lambda_const=lambda_const)


def page_chart(model: PageModel, margin: float = 1e-3) -> MetricChart:
    S, a2 = model.S, model.alpha**2

    def metric(c):
        x, _, theta, _ = c
        A = model.A(x)
        B = model.B(x)
        ct = dual.cos(theta)
        st = dual.sin(theta)
        fib = 4.0 * a2 * A
        return [
            [S / A, 0.0, 0.0, 0.0],
            [0.0, S * fib, 0.0, S * fib * ct / 2.0],
            [0.0, 0.0, S * B, 0.0],
            [0.0, S * fib * ct / 2.0, 0.0, S * (fib * ct * ct / 4.0 + B * st * st)],
        ]

    axes = (
        Axis("x", -1.0, 1.0),
        Axis("psi", 0.0, 2 * math.pi, periodic=True),
        Axis("theta", 0.0, math.pi),
        Axis("phi", 0.0, 2 * math.pi, periodic=True),
    )
    return MetricChart("page", axes, metric, einstein_constant=model.lambda_const, margin=margin)


def page_foliation(model: PageModel, margin: float = 1e-3) -> FoliationChart:
    return FoliationChart(page_chart(model, margin), transverse_index=0)


def _check_levels(x) -> np.ndarray:
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) >= 1.0):
        raise DomainError("level x must lie in (-1, 1)")
    return xa


def page_mean_curvature(model: PageModel, x):
    """Closed-form mean curvature of the level set ``x = const``.

    Equals ``(1 / 2 beta) d/dx log det h`` with ``det h`` proportional to
    ``A B^2`` (the round-base factor ``B`` enters twice).
    """
    xa = _check_levels(x)
    nu2 = model.nu**2
    x2 = xa * xa
    poly = (3.0 * nu2 * nu2 * (1.0 + nu2) * x2 * x2
            - 2.0 * nu2 * (4.0 + nu2 + nu2 * nu2) * x2
            + 3.0 * (1.0 + nu2))
    out = -xa * poly / ((1.0 - nu2 * x2) ** 2 * np.sqrt(model.S * model.A(xa)))
    return float(out) if out.ndim == 0 else out


def page_mean_curvature_printed(model: PageModel, x):
    """The published closed form, which takes ``det h`` proportional to ``A B``.

    Kept for comparison only: it is odd in ``x`` and vanishes only at
    ``x = 0`` like the true mean curvature, but differs from it elsewhere.
    """
    xa = _check_levels(x)
    nu2 = model.nu**2
    num = xa * (-3.0 - nu2 * nu2 + 2.0 * nu2 * xa * xa * (1.0 + nu2))
    out = np.sqrt(1.0 / (model.S * model.A(xa))) * num / (1.0 - nu2 * xa * xa)
    return float(out) if out.ndim == 0 else out


def quadratic_factor_roots(model: PageModel) -> tuple[float, float]:
    """Roots of ``-3 - nu^4 + 2 nu^2 (1 + nu^2) x^2`` (printed form); outside [-1, 1]."""
    nu2 = model.nu**2
    r = math.sqrt((3.0 + nu2 * nu2) / (2.0 * nu2 * (1.0 + nu2)))
    return -r, r


def mean_curvature_factor_roots(model: PageModel) -> np.ndarray:
    """Real roots of the even quartic factor of :func:`page_mean_curvature`."""
    nu2 = model.nu**2
    c2 = np.roots([3.0 * nu2 * nu2 * (1.0 + nu2), -2.0 * nu2 * (4.0 + nu2 + nu2 * nu2),
                   3.0 * (1.0 + nu2)])
    c2 = np.real(c2[np.abs(np.imag(c2)) < 1e-12])
    r = np.sqrt(c2[c2 > 0])
    return np.sort(np.concatenate([-r, r]))


def find_minimal_level(model: PageModel, n_scan: int = 10_000, margin: float = 1e-3,
                       curvature=page_mean_curvature) -> float:
    """Unique zero of the level-set mean curvature, certified by a sign scan."""
    grid = np.linspace(-1.0 + margin, 1.0 - margin, n_scan)
    vals = curvature(model, grid)
    changes = count_sign_changes(vals)
    if changes != 1:
        raise ConsistencyError(f"mean curvature changes sign {changes} times, expected 1")
    i = int(np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0])
    return bisect(lambda v: curvature(model, v), grid[i], grid[i + 1], xtol=1e-15)


def mu_eigenvalue(n: int, k: int) -> int:
    """Eigenvalue of ``-D^2`` (charge ``n`` monopole harmonics, level ``k``)."""
    if k < 0:
        raise ParameterError("k must be non-negative")
    ell = 2 * k + abs(n)
    return ell * (ell + 2) - n * n


def page_laplace_eigenvalue(model: PageModel, n: int, k: int) -> float:
    """Eigenvalue of ``-Laplacian`` on the equatorial Berger sphere ``x = 0``."""
    S = model.S
    return (mu_eigenvalue(n, k) / (4.0 * S * model.B(0.0))
            + n * n / (4.0 * S * model.alpha**2 * model.A(0.0)))


def page_stability_report(model: PageModel, k_max: int = 10, n_max: int = 10,
                          tol_zero: float = TOL_ZERO, n_lowest: int = 10) -> StabilityReport:
    """Enumerate the Jacobi spectrum of the equatorial sphere over ``|n| <= n_max, k <= k_max``.

    The equatorial sphere is totally geodesic, so the Jacobi operator is
    ``-Laplacian - Lambda``. Labels outside the box are certified positive by
    monotonicity of the Laplace eigenvalue in ``k`` and ``|n|``.
    """
    if k_max < 2 or n_max < 2:
        raise ParameterError("k_max and n_max must both be >= 2")
    shift = model.lambda_const
    lam = np.array([[page_laplace_eigenvalue(model, n, k) for k in range(k_max + 2)]
                    for n in range(n_max + 2)])
    if not (np.all(np.diff(lam, axis=1) > 0) and np.all(np.diff(lam, axis=0) > 0)):
        raise ConsistencyError("Laplace eigenvalues are not monotone in k and |n|")
    outside_min = float(min(lam[n_max + 1, 0], lam[0, k_max + 1]))
    if outside_min - shift <= tol_zero:
        raise ConsistencyError("enumeration box too small to certify positivity outside it")

    eigs = []
    for n in range(-n_max, n_max + 1):
        for k in range(k_max + 1):
            le = float(lam[abs(n), k])
            se = le - shift
            eigs.append(StabilityEigenvalue(PageLabel(n, k), le, se, sign_class(se, tol_zero)))
    eigs.sort(key=lambda e: (e.stability_eig, e.label))
    negatives = [(e.label, e.stability_eig) for e in eigs if e.sign_class == "negative"]

    coincident = []
    for _, grp in groupby(eigs[:n_lowest * 3], key=lambda e: round(e.laplace_eig, 9)):
        grp = list(grp)
        if len(grp) > 1:
            coincident.append([list(e.label) for e in grp])

    return StabilityReport(
        surface="page:x=0",
        shift=shift,
        index=len(negatives),
        min_abs_eig=min(abs(e.stability_eig) for e in eigs),
        negatives=negatives,
        lowest=eigs[:n_lowest],
        truncation={
            "k_max": k_max,
            "n_max": n_max,
            "outside_min_laplace_eig": outside_min,
            "outside_min_stability_eig": outside_min - shift,
            "certificate": "Laplace eigenvalue strictly increasing in k and |n|",
        },
        tol_zero=tol_zero,
        n_enumerated=len(eigs),
        extra={"degenerate_groups": coincident},
    )
