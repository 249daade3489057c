"""Textbook charts used as sanity checks for the curvature engine."""
import math

from . import dual
from .tensor import Axis, FoliationChart, MetricChart


def euclidean_chart(dim: int = 3, extent: float = 10.0) -> MetricChart:
    axes = tuple(Axis(f"x{i}", -extent, extent, singular=False) for i in range(dim))

    def metric(c):
        return [[1.0 if i == j else 0.0 for j in range(dim)] for i in range(dim)]

    return MetricChart("euclidean", axes, metric, einstein_constant=0.0)


def round_sphere_chart(radius: float = 1.0) -> MetricChart:
    """``r**2 (dtheta**2 + sin(theta)**2 dphi**2)``; Einstein with constant ``1/r**2``."""
    r2 = radius * radius

    def metric(c):
        theta = c[0]
        s = dual.sin(theta)
        return [[r2, 0.0], [0.0, r2 * s * s]]

    axes = (Axis("theta", 0.0, math.pi), Axis("phi", 0.0, 2 * math.pi, periodic=True))
    return MetricChart("round-sphere", axes, metric, einstein_constant=1.0 / r2)


def spherical_euclidean_chart(r_max: float = 10.0) -> MetricChart:
    """Flat 3-space in spherical coordinates ``(r, theta, phi)``."""

    def metric(c):
        r, theta = c[0], c[1]
        s = dual.sin(theta)
        return [[1.0, 0.0, 0.0], [0.0, r * r, 0.0], [0.0, 0.0, r * r * s * s]]

    axes = (
        Axis("r", 0.0, r_max),
        Axis("theta", 0.0, math.pi),
        Axis("phi", 0.0, 2 * math.pi, periodic=True),
    )
    return MetricChart("euclidean-spherical", axes, metric, einstein_constant=0.0)


def sphere_foliation() -> FoliationChart:
    """Concentric spheres ``r = const`` in flat 3-space."""
    return FoliationChart(spherical_euclidean_chart(), transverse_index=0)
