"""Eigenvalue records and index/nullity summaries for Jacobi operators."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, NamedTuple

TOL_ZERO = 1e-8


class PageLabel(NamedTuple):
    """Mode ``Y_{n,k}(theta, phi) exp(i n psi)`` on the Berger sphere."""

    n: int
    k: int


class YpqLabel(NamedTuple):
    """Mode ``U_k(theta) exp(i (N_psi psi + N_phi phi + N_alpha alpha / ell))``."""

    k: int
    N_alpha: int
    N_psi: int
    N_phi: int

    @property
    def n_psi(self) -> int:
        return self.N_psi - self.N_phi

    @property
    def n_phi(self) -> int:
        return self.N_psi + self.N_phi

    @property
    def J(self) -> float:
        return self.k + 0.5 * (abs(self.n_psi) + abs(self.n_phi))

    @property
    def E(self) -> float:
        j = self.J
        return j * (j + 1.0)


def sign_class(value: float, tol_zero: float = TOL_ZERO) -> str:
    if abs(value) < tol_zero:
        return "near_zero"
    return "negative" if value < 0 else "positive"


@dataclass(frozen=True)
class StabilityEigenvalue:
    label: tuple
    laplace_eig: float
    stability_eig: float
    sign_class: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": list(self.label),
            "laplace_eig": self.laplace_eig,
            "stability_eig": self.stability_eig,
            "sign_class": self.sign_class,
        }


@dataclass(frozen=True)
class StabilityReport:
    """Index and nullity witness of a Jacobi operator over an enumerated label box.

    ``truncation`` records the box and the analytic bound that certifies
    positivity of every label outside it.
    """

    surface: str
    shift: float
    index: int
    min_abs_eig: float
    negatives: list[tuple[tuple, float]]
    lowest: list[StabilityEigenvalue]
    truncation: dict[str, Any]
    tol_zero: float = TOL_ZERO
    n_enumerated: int = 0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def nullity_certified(self) -> bool:
        return self.min_abs_eig > self.tol_zero

    def to_dict(self) -> dict[str, Any]:
        return {
            "surface": self.surface,
            "shift": self.shift,
            "index": self.index,
            "min_abs_eig": self.min_abs_eig,
            "nullity_certified": self.nullity_certified,
            "tol_zero": self.tol_zero,
            "negatives": [{"label": list(lab), "stability_eig": v} for lab, v in self.negatives],
            "lowest": [e.to_dict() for e in self.lowest],
            "truncation": self.truncation,
            "n_enumerated": self.n_enumerated,
            **({"extra": self.extra} if self.extra else {}),
        }
