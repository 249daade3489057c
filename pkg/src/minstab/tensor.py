"""Point-wise curvature of coordinate metrics and of their level-set foliations.

Metric derivatives are taken exactly with hyper-dual numbers; a central
finite-difference jet is kept alongside as an independent cross-check.

Index conventions used throughout::

    dg[m, i, j]      = d_m g_ij
    ddg[m, n, i, j]  = d_m d_n g_ij
    gamma[k, i, j]   = Gamma^k_ij
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import dual
from .dual import HyperDual
from .errors import DegenerateMetricError, DomainError, ParameterError

DEFAULT_SEED = 20240601
DEFAULT_MARGIN = 1e-3
MAX_CONDITION = 1e12

MetricFunction = Callable[[Sequence], Sequence[Sequence]]


@dataclass(frozen=True)
class Axis:
    """One chart coordinate.

    ``singular`` marks an interval whose endpoints are coordinate
    singularities (poles, bolts); such coordinates must stay ``margin`` away
    from both ends. Periodic coordinates are never range-checked.
    """

    name: str
    lo: float
    hi: float
    singular: bool = True
    periodic: bool = False


@dataclass(frozen=True)
class MetricChart:
    name: str
    axes: tuple[Axis, ...]
    metric: MetricFunction
    einstein_constant: float = 0.0
    margin: float = DEFAULT_MARGIN

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def coordinate_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.axes)

    def validate(self, p: Sequence[float]) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,):
            raise DomainError(f"{self.name}: expected {self.dim} coordinates, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise DomainError(f"{self.name}: non-finite coordinate in {p}")
        for c, ax in zip(p, self.axes):
            if ax.periodic:
                continue
            m = self.margin if ax.singular else 0.0
            if not (ax.lo + m < c < ax.hi - m):
                raise DomainError(
                    f"{self.name}: {ax.name}={c!r} outside ({ax.lo + m!r}, {ax.hi - m!r})"
                )
        return p

    def metric_at(self, p: Sequence[float], check: bool = True) -> np.ndarray:
        if check:
            p = self.validate(p)
        rows = self.metric([float(c) for c in p])
        return np.array([[dual.value(v) for v in row] for row in rows], dtype=float)

    def sample(self, n: int, seed: int = DEFAULT_SEED, margin: float | None = None) -> np.ndarray:
        """Uniform pseudo-random interior points, shape ``(n, dim)``.

        ``margin`` shrinks every singular interval from both ends; it is
        never allowed below the chart's own margin.
        """
        rng = np.random.default_rng(seed)
        m = self.margin if margin is None else max(margin, self.margin)
        lo = np.array([a.lo + (m if a.singular and not a.periodic else 0.0) for a in self.axes])
        hi = np.array([a.hi - (m if a.singular and not a.periodic else 0.0) for a in self.axes])
        pts = rng.uniform(lo, hi, size=(n, self.dim))
        # uniform() may return lo exactly on open intervals
        return np.clip(pts, np.nextafter(lo, hi), np.nextafter(hi, lo))

    def restrict(self, index: int, level: float, name: str | None = None) -> MetricChart:
        """The induced metric on the level set ``x_index = level`` as a chart."""
        axes = tuple(a for i, a in enumerate(self.axes) if i != index)
        keep = [i for i in range(self.dim) if i != index]
        outer = self.metric

        def induced(c):
            full = list(c[:index]) + [level] + list(c[index:])
            g = outer(full)
            return [[g[i][j] for j in keep] for i in keep]

        return MetricChart(
            name=name or f"{self.name}|{self.axes[index].name}={level:g}",
            axes=axes,
            metric=induced,
            einstein_constant=float("nan"),
            margin=self.margin,
        )


@dataclass(frozen=True)
class CurvatureBundle:
    metric: np.ndarray
    inverse: np.ndarray
    christoffel: np.ndarray
    ricci: np.ndarray
    scalar: float


def invert_metric(g: np.ndarray) -> np.ndarray:
    if not np.allclose(g, g.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(g).max())):
        raise DegenerateMetricError("metric matrix is not symmetric")
    cond = np.linalg.cond(g)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise DegenerateMetricError(f"metric condition number {cond:.3g} exceeds {MAX_CONDITION:g}")
    ginv = np.linalg.inv(g)
    return 0.5 * (ginv + ginv.T)


def metric_jet(chart: MetricChart, p: Sequence[float]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Metric, first and second derivatives at ``p`` via hyper-dual seeding."""
    p = chart.validate(p)
    d = chart.dim
    g = chart.metric_at(p, check=False)
    dg = np.zeros((d, d, d))
    ddg = np.zeros((d, d, d, d))
    for m in range(d):
        for n in range(m, d):
            coords = [dual.seed(c, i == m, i == n) for i, c in enumerate(p)]
            rows = chart.metric(coords)
            for i in range(d):
                for j in range(d):
                    v = rows[i][j]
                    if isinstance(v, HyperDual):
                        if n == m:
                            dg[m, i, j] = v.e1
                        ddg[m, n, i, j] = ddg[n, m, i, j] = v.e12
    return g, dg, ddg


def metric_jet_fd(chart: MetricChart, p: Sequence[float], step: float = 1e-4):
    """Central finite-difference version of :func:`metric_jet` (oracle only)."""
    p = chart.validate(p)
    d = chart.dim
    h = step

    def f(q):
        return chart.metric_at(q, check=False)

    g = f(p)
    e = np.eye(d) * h
    plus = [f(p + e[m]) for m in range(d)]
    minus = [f(p - e[m]) for m in range(d)]
    dg = np.array([(plus[m] - minus[m]) / (2 * h) for m in range(d)])
    ddg = np.zeros((d, d, d, d))
    for m in range(d):
        ddg[m, m] = (plus[m] - 2 * g + minus[m]) / h**2
        for n in range(m + 1, d):
            mixed = (f(p + e[m] + e[n]) - f(p + e[m] - e[n])
                     - f(p - e[m] + e[n]) + f(p - e[m] - e[n])) / (4 * h**2)
            ddg[m, n] = ddg[n, m] = mixed
    return g, dg, ddg


def _christoffel_from_jet(ginv: np.ndarray, dg: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # lowered[l, i, j] = d_i g_jl + d_j g_il - d_l g_ij
    lowered = dg.transpose(2, 0, 1) + dg.transpose(2, 1, 0) - dg
    return 0.5 * np.einsum("kl,lij->kij", ginv, lowered), lowered


def curvature_from_jet(g: np.ndarray, dg: np.ndarray, ddg: np.ndarray) -> CurvatureBundle:
    ginv = invert_metric(g)
    gamma, lowered = _christoffel_from_jet(ginv, dg)
    gamma = 0.5 * (gamma + gamma.transpose(0, 2, 1))
    dlowered = (ddg.transpose(0, 3, 1, 2) + ddg.transpose(0, 3, 2, 1) - ddg)
    dginv = -np.einsum("ka,mab,bl->mkl", ginv, dg, ginv)
    dgamma = 0.5 * (np.einsum("mkl,lij->mkij", dginv, lowered)
                    + np.einsum("kl,mlij->mkij", ginv, dlowered))
    ric = (np.einsum("kkij->ij", dgamma)
           - np.einsum("jkik->ij", dgamma)
           + np.einsum("kkl,lij->ij", gamma, gamma)
           - np.einsum("kjl,lik->ij", gamma, gamma))
    ric = 0.5 * (ric + ric.T)
    return CurvatureBundle(
        metric=g,
        inverse=ginv,
        christoffel=gamma,
        ricci=ric,
        scalar=float(np.einsum("ij,ij->", ginv, ric)),
    )


def christoffel(chart: MetricChart, p: Sequence[float]) -> np.ndarray:
    """Levi-Civita symbols ``gamma[k, i, j]`` at ``p`` (exact derivatives)."""
    g, dg, _ = metric_jet(chart, p)
    gamma, _ = _christoffel_from_jet(invert_metric(g), dg)
    return 0.5 * (gamma + gamma.transpose(0, 2, 1))


def christoffel_fd(chart: MetricChart, p: Sequence[float], step: float = 1e-4) -> np.ndarray:
    g, dg, _ = metric_jet_fd(chart, p, step)
    gamma, _ = _christoffel_from_jet(invert_metric(g), dg)
    return gamma


def ricci(chart: MetricChart, p: Sequence[float]) -> CurvatureBundle:
    return curvature_from_jet(*metric_jet(chart, p))


def ricci_fd(chart: MetricChart, p: Sequence[float], step: float = 1e-4) -> CurvatureBundle:
    return curvature_from_jet(*metric_jet_fd(chart, p, step))


def einstein_residual(chart: MetricChart, p: Sequence[float]) -> float:
    b = ricci(chart, p)
    return float(np.abs(b.ricci - chart.einstein_constant * b.metric).max())


def verify_einstein(chart: MetricChart, sample_points) -> float:
    """Largest ``|R_ij - Lambda g_ij|`` over the sample points."""
    pts = np.atleast_2d(np.asarray(sample_points, dtype=float))
    if pts.shape[0] == 0:
        raise ValueError("verify_einstein needs at least one sample point")
    return max(einstein_residual(chart, p) for p in pts)


# ---------------------------------------------------------------------------
# Foliations by coordinate level sets

@dataclass(frozen=True)
class ShapeReport:
    level: float
    lapse: float
    induced: np.ndarray
    second_ff: np.ndarray
    mean_curvature: float
    trace_k2: float


@dataclass(frozen=True)
class FoliationChart:
    """Level sets of coordinate ``transverse_index`` of ``ambient``.

    The ambient metric must have no cross terms between the transverse
    coordinate and the rest (zero shift), so it reads
    ``beta**2 dx**2 + h_ij dy^i dy^j``.
    """

    ambient: MetricChart
    transverse_index: int
    shift_tol: float = field(default=1e-12, repr=False)

    @property
    def level_axis(self) -> Axis:
        return self.ambient.axes[self.transverse_index]

    @property
    def tangential_axes(self) -> tuple[Axis, ...]:
        return tuple(a for i, a in enumerate(self.ambient.axes) if i != self.transverse_index)

    def check_level(self, level: float) -> float:
        ax = self.level_axis
        m = self.ambient.margin if ax.singular else 0.0
        if not (ax.lo + m < level < ax.hi - m):
            raise DomainError(f"level {ax.name}={level!r} outside ({ax.lo + m!r}, {ax.hi - m!r})")
        return float(level)

    def full_point(self, level, tp: Sequence) -> list:
        t = self.transverse_index
        tp = list(tp)
        if len(tp) != self.ambient.dim - 1:
            raise DomainError(f"expected {self.ambient.dim - 1} tangential coordinates, got {len(tp)}")
        return tp[:t] + [level] + tp[t:]

    def _split(self, g: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
        t = self.transverse_index
        keep = [i for i in range(self.ambient.dim) if i != t]
        return g[t, t], g[t, keep], g[np.ix_(keep, keep)]

    def _checked_metric(self, level: float, tp) -> np.ndarray:
        self.check_level(level)
        p = self.ambient.validate(self.full_point(level, tp))
        g = self.ambient.metric_at(p, check=False)
        gtt, cross, _ = self._split(g)
        scale = max(1.0, abs(gtt))
        if np.abs(cross).max(initial=0.0) > self.shift_tol * scale:
            raise ParameterError(f"{self.ambient.name}: nonzero shift {cross} at {p}")
        return g

    def lapse(self, level: float, tp) -> float:
        gtt, _, _ = self._split(self._checked_metric(level, tp))
        return float(np.sqrt(gtt))

    def induced(self, level: float, tp) -> np.ndarray:
        _, _, h = self._split(self._checked_metric(level, tp))
        return h

    def induced_chart(self, level: float) -> MetricChart:
        self.check_level(level)
        return self.ambient.restrict(self.transverse_index, level)

    def induced_derivative(self, level: float, tp) -> np.ndarray:
        """``d h_ij / d level`` by dual-number seeding of the level coordinate."""
        t = self.transverse_index
        keep = [i for i in range(self.ambient.dim) if i != t]
        coords = [float(c) for c in self.full_point(level, tp)]
        coords[t] = dual.seed(level, d1=True)
        rows = self.ambient.metric(coords)
        return np.array([[rows[i][j].e1 if isinstance(rows[i][j], HyperDual) else 0.0
                          for j in keep] for i in keep])


def second_fundamental_form(fol: FoliationChart, level: float, tp) -> ShapeReport:
    """``K_ij = d_level h_ij / (2 beta)`` with the level-increasing unit normal.

    With this sign the unit sphere ``r = 1`` in Euclidean space has
    ``K = h``.
    """
    g = fol._checked_metric(level, tp)
    gtt, _, h = fol._split(g)
    beta = float(np.sqrt(gtt))
    K = fol.induced_derivative(level, tp) / (2.0 * beta)
    K = 0.5 * (K + K.T)
    hinv = invert_metric(h)
    hk = hinv @ K
    return ShapeReport(
        level=float(level),
        lapse=beta,
        induced=h,
        second_ff=K,
        mean_curvature=float(np.trace(hk)),
        trace_k2=float(np.trace(hk @ hk)),
    )


def mean_curvature(fol: FoliationChart, level: float, tp) -> float:
    return second_fundamental_form(fol, level, tp).mean_curvature


def _hyperdual_logdet(rows) -> HyperDual:
    # Gaussian elimination without pivoting; fine for positive-definite input
    a = [list(r) for r in rows]
    n = len(a)
    out = HyperDual(0.0)
    for c in range(n):
        piv = a[c][c]
        out = out + dual.log(piv if isinstance(piv, HyperDual) else HyperDual(piv))
        for r in range(c + 1, n):
            factor = a[r][c] / piv
            for k in range(c, n):
                a[r][k] = a[r][k] - factor * a[c][k]
    return out


def mean_curvature_logdet(fol: FoliationChart, level: float, tp) -> float:
    """``(1 / 2 beta) d_level log det h``, computed without inverting ``h``."""
    beta = fol.lapse(level, tp)
    t = fol.transverse_index
    keep = [i for i in range(fol.ambient.dim) if i != t]
    coords = [float(c) for c in fol.full_point(level, tp)]
    coords[t] = dual.seed(level, d1=True)
    rows = fol.ambient.metric(coords)
    h = [[rows[i][j] for j in keep] for i in keep]
    return _hyperdual_logdet(h).e1 / (2.0 * beta)


def normal_ricci(fol: FoliationChart, level: float, tp) -> float:
    """``Ric(n, n)`` for the unit normal of the level set."""
    fol.check_level(level)
    b = ricci(fol.ambient, fol.full_point(level, tp))
    t = fol.transverse_index
    return float(b.ricci[t, t] / b.metric[t, t])
