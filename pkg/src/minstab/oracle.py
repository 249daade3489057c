"""Finite-volume Sturm-Liouville eigensolver used as an independent spectral oracle.

Problems have the self-adjoint form

    -(1/w) (p U')' + (V / w) U = E U    on (a, b),

with ``p`` and ``w`` vanishing at the endpoints (regular singular points).
Unknowns live at cell centres and the fluxes at the two end faces are set to
zero, which selects the bounded branch at each end without any indicial
bookkeeping. After the similarity transform ``w^{1/2}`` the matrix is
symmetric tridiagonal and goes straight to LAPACK.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import OracleFailure, ParameterError

MIN_GRID = 200
TRUNCATION_TOL = 1e-12


@dataclass(frozen=True)
class SturmLiouvilleProblem:
    """``p`` is the stiffness, ``q`` the potential times the density, ``w`` the density."""

    name: str
    p: Callable[[np.ndarray], np.ndarray]
    q: Callable[[np.ndarray], np.ndarray]
    w: Callable[[np.ndarray], np.ndarray]
    a: float
    b: float
    charges: tuple = ()
    scale: float = 1.0  # reported eigenvalue = raw eigenvalue / scale

    def matrix(self, n_grid: int) -> tuple[np.ndarray, np.ndarray]:
        """Diagonal and off-diagonal of the symmetrised operator."""
        h = (self.b - self.a) / n_grid
        xc = self.a + (np.arange(n_grid) + 0.5) * h
        xf = self.a + np.arange(n_grid + 1) * h
        pf = np.asarray(self.p(xf), dtype=float).copy()
        pf[0] = pf[-1] = 0.0
        wc = np.asarray(self.w(xc), dtype=float)
        qc = np.asarray(self.q(xc), dtype=float)
        if np.any(wc <= 0) or np.any(pf[1:-1] <= 0):
            raise ParameterError(f"{self.name}: density or stiffness not positive inside")
        if not np.all(np.isfinite(qc)):
            raise ParameterError(f"{self.name}: potential not finite on the grid")
        s = 1.0 / np.sqrt(wc)
        d = ((pf[:-1] + pf[1:]) / h**2 + qc) * s * s
        e = -pf[1:-1] / h**2 * s[:-1] * s[1:]
        return d, e

    def eigenvalues(self, n_grid: int, m: int) -> np.ndarray:
        return self._solve(n_grid, m)[0]

    def _solve(self, n_grid: int, m: int) -> tuple[np.ndarray, float]:
        d, e = self.matrix(n_grid)
        vals = eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(0, m - 1))
        norm = float(np.max(np.abs(d)) + 2.0 * np.max(np.abs(e), initial=0.0))
        return np.sort(vals) / self.scale, norm / self.scale


@dataclass(frozen=True)
class OracleSpectrum:
    """Lowest ``m`` eigenvalues on ``n_grid`` cells with grid-doubling diagnostics.

    ``error`` is the Richardson estimate ``4/3 |E_N - E_2N|`` (plus a round-off
    floor), ``ratio`` is ``(E_N - E_2N) / (E_2N - E_4N)``, which tends to 4 for a
    second-order scheme. Eigenvalues whose grid differences are at round-off
    level (exact zero modes) carry ``nan`` as ratio.
    """

    problem: str
    charges: tuple
    n_grid: int
    eigenvalues: np.ndarray
    error: np.ndarray
    ratio: np.ndarray
    extrapolated: np.ndarray

    def tolerance(self, floor: float = 1e-2) -> np.ndarray:
        return np.maximum(floor, 10.0 * self.error)

    def matches(self, expected: Sequence[float], floor: float = 1e-2) -> bool:
        exp = np.asarray(expected, dtype=float)
        return bool(np.all(np.abs(self.eigenvalues - exp) <= self.tolerance(floor)))

    def to_dict(self) -> dict:
        def clean(a):
            return [None if not np.isfinite(v) else float(v) for v in a]

        return {
            "problem": self.problem,
            "charges": list(self.charges),
            "n_grid": self.n_grid,
            "eigenvalues": clean(self.eigenvalues),
            "error": clean(self.error),
            "ratio": clean(self.ratio),
            "extrapolated": clean(self.extrapolated),
        }


def solve_sturm_liouville(problem: SturmLiouvilleProblem, m: int, n_grid: int) -> OracleSpectrum:
    """Solve on ``N``, ``2N`` and ``4N`` cells and report the ``N`` values."""
    if m < 1:
        raise ParameterError("m must be >= 1")
    if n_grid < MIN_GRID:
        raise ParameterError(f"n_grid must be >= {MIN_GRID}")
    (e1, _), (e2, _), (e4, norm) = (problem._solve(k * n_grid, m) for k in (1, 2, 4))
    d1, d2 = e1 - e2, e2 - e4
    # backward-stable eigensolve: absolute round-off ~ eps * ||A|| on the finest grid
    floor = 16.0 * np.finfo(float).eps * norm
    resolved = np.abs(d1) > floor
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(resolved, d1 / d2, np.nan)
    bad = resolved & ~(np.abs(d2) < np.abs(d1))
    if np.any(bad):
        idx = np.flatnonzero(bad).tolist()
        raise OracleFailure(f"{problem.name}{problem.charges}: eigenvalues {idx} do not "
                            "converge under grid doubling")
    return OracleSpectrum(
        problem=problem.name,
        charges=problem.charges,
        n_grid=n_grid,
        eigenvalues=e1,
        error=4.0 / 3.0 * np.abs(d1) + floor,
        ratio=ratio,
        extrapolated=e2 + (e2 - e1) / 3.0,
    )


def page_problem(n: int, phi_mode: float | None = None) -> SturmLiouvilleProblem:
    """``-D^2`` on charge-``n`` sections with ``exp(i m phi)`` dependence.

    The potential is ``(2m - n cos(theta))^2 / sin(theta)^2``; the default
    ``m = n/2`` gives ``n^2 tan(theta/2)^2`` and the full tower ``mu_{n,k}``.
    """
    m_phi = 0.5 * n if phi_mode is None else float(phi_mode)
    if abs((m_phi - 0.5 * n) - round(m_phi - 0.5 * n)) > 1e-12:
        raise ParameterError("phi_mode must lie in n/2 + Z")

    def q(t):
        st = np.sin(t)
        return (2.0 * m_phi - n * np.cos(t)) ** 2 / st

    return SturmLiouvilleProblem(
        name="page-D2",
        p=lambda t: 4.0 * np.sin(t),
        q=q,
        w=np.sin,
        a=0.0,
        b=math.pi,
        charges=(n,) if phi_mode is None else (n, m_phi),
    )


def page_oracle_spectrum(n: int, m: int, n_grid: int = 2000,
                         phi_mode: float | None = None) -> OracleSpectrum:
    return solve_sturm_liouville(page_problem(n, phi_mode), m, n_grid)


def ypq_problem(n_psi: int, n_phi: int) -> SturmLiouvilleProblem:
    """Auxiliary angular problem in ``vartheta = theta/2`` with ``A = n_phi``, ``B = n_psi``.

    Raw eigenvalue is ``4E``; ``scale=4`` reports ``E`` directly.
    """
    A2, B2 = float(n_phi) ** 2, float(n_psi) ** 2

    def sc(t):
        return np.sin(t) * np.cos(t)

    def q(t):
        s, c = np.sin(t), np.cos(t)
        return (A2 / (s * s) + B2 / (c * c)) * s * c

    return SturmLiouvilleProblem(
        name="ypq-aux",
        p=sc,
        q=q,
        w=sc,
        a=0.0,
        b=0.5 * math.pi,
        charges=(n_psi, n_phi),
        scale=4.0,
    )


def ypq_oracle_spectrum(n_psi: int, n_phi: int, m: int, n_grid: int = 2000) -> OracleSpectrum:
    return solve_sturm_liouville(ypq_problem(n_psi, n_phi), m, n_grid)


def aux_energy(n_psi: int, n_phi: int, k: int) -> float:
    j = k + 0.5 * (abs(n_psi) + abs(n_phi))
    return j * (j + 1.0)


def hypergeometric_truncation_check(n_psi: int, n_phi: int, k: int,
                                    energy: float | None = None,
                                    tol: float = TRUNCATION_TOL) -> bool:
    """True iff the first hypergeometric parameter equals ``-k``.

    The bounded solution ``sin^|A| cos^|B| 2F1(a, b; |A|+1; sin^2)`` is a
    polynomial exactly when ``a = (1 + |A| + |B| - sqrt(1 + 4E)) / 2`` is a
    non-positive integer.
    """
    if k < 0:
        raise ParameterError("k must be non-negative")
    E = aux_energy(n_psi, n_phi, k) if energy is None else float(energy)
    if 1.0 + 4.0 * E < 0:
        return False
    a = 0.5 * (1.0 + abs(n_phi) + abs(n_psi) - math.sqrt(1.0 + 4.0 * E))
    return abs(a + k) < tol
