"""Bracketing root helpers: sign-change counting and plain bisection."""
from __future__ import annotations

from typing import Callable

import numpy as np


def count_sign_changes(values) -> int:
    """Number of roots visible on a sampled grid.

    A run of exact zeros counts once and is not also counted as a sign
    change, so ``[-1, 0, 1]`` gives one root and ``[-1, 0, -1]`` gives one
    as well (a touching zero is still a root of the sampled function).
    """
    v = np.asarray(values, dtype=float)
    if np.any(~np.isfinite(v)):
        raise ValueError("non-finite value in sign scan")
    z = v == 0.0
    zero_runs = int(np.count_nonzero(z & ~np.concatenate(([False], z[:-1]))))
    return zero_runs + int(np.count_nonzero(v[:-1] * v[1:] < 0.0))


def bisect(f: Callable[[float], float], a: float, b: float, xtol: float = 1e-15,
           maxiter: int = 200) -> float:
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return float(a)
    if fb == 0.0:
        return float(b)
    if np.sign(fa) == np.sign(fb):
        raise ValueError(f"no sign change on [{a}, {b}]")
    for _ in range(maxiter):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0 or 0.5 * abs(b - a) < xtol:
            return float(m)
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b = m
    return float(0.5 * (a + b))
