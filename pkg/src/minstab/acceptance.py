"""Acceptance criteria as executable verdicts.

Each ``criterion_N`` returns a list of :class:`Verdict` records together with
a JSON-ready payload. Timings go into verdict values only, so payloads are
reproducible byte for byte.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import oracle, page, ypq
from .roots import count_sign_changes
from .stability import YpqLabel
from .tensor import DEFAULT_SEED, second_fundamental_form, verify_einstein

NU_REFERENCE = 0.281702
PAGE_REFERENCE = {(1, 0): 4.61536, (2, 0): 15.2467, (0, 1): 6.42946}
STANDARD_PAIRS = ((2, 1), (3, 1), (3, 2), (5, 4))
SCAN_TOL = 1e-10


@dataclass(frozen=True)
class Verdict:
    name: str
    value: Any
    tolerance: str
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "value": self.value, "tolerance": self.tolerance,
                "pass": bool(self.passed)}


def best_time(func: Callable[[], Any], repeat: int = 5) -> tuple[Any, float]:
    """Result of ``func`` and its fastest wall time over ``repeat`` calls."""
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = func()
        best = min(best, time.perf_counter() - t0)
    return out, best


def _timed(func: Callable[[], Any]) -> tuple[Any, float]:
    t0 = time.perf_counter()
    out = func()
    return out, time.perf_counter() - t0


def criterion_1(seed: int = DEFAULT_SEED):
    nu, dt = best_time(page.solve_nu)
    return [
        Verdict("page nu root", nu, f"|nu - {NU_REFERENCE}| <= 1e-5",
                abs(nu - NU_REFERENCE) <= 1e-5),
        Verdict("page nu runtime [s]", dt, "< 1e-3 (best of 5)", dt < 1e-3),
    ], {"nu": nu}


def criterion_2(seed: int = DEFAULT_SEED, samples: int = 20):
    model = page.page_model()
    chart = page.page_chart(model)
    pts = chart.sample(samples, seed=seed)
    res, dt = _timed(lambda: verify_einstein(chart, pts))
    return [
        Verdict(f"page Einstein residual ({samples} samples)", res, "< 1e-8", res < 1e-8),
        Verdict("page Einstein runtime [s]", dt, "< 1", dt < 1.0),
    ], {"samples": samples}


def criterion_3(seed: int = DEFAULT_SEED):
    model = page.page_model()
    grid = np.linspace(-1.0 + 1e-3, 1.0 - 1e-3, 10_000)
    out, payload = [], {}
    for tag, fn in (("", page.page_mean_curvature), (" (published form)", page.page_mean_curvature_printed)):
        changes = count_sign_changes(fn(model, grid))
        x0 = page.find_minimal_level(model, curvature=fn)
        out.append(Verdict(f"page H sign changes{tag}", changes, "== 1", changes == 1))
        out.append(Verdict(f"page minimal level{tag}", x0, "|x0| <= 1e-12", abs(x0) <= 1e-12))
        payload[f"x0{tag.strip()}"] = x0
    fol = page.page_foliation(model)
    rng = np.random.default_rng(seed)
    kmax = 0.0
    for _ in range(5):
        tp = [rng.uniform(0, 2 * math.pi), rng.uniform(0.1, math.pi - 0.1), rng.uniform(0, 2 * math.pi)]
        kmax = max(kmax, float(np.abs(second_fundamental_form(fol, 0.0, tp).second_ff).max()))
    out.append(Verdict("page max |K_ij| at x=0", kmax, "< 1e-10", kmax < 1e-10))
    return out, payload


def criterion_4(seed: int = DEFAULT_SEED):
    model = page.page_model()
    out = []
    vals = {}
    for (n, k), ref in PAGE_REFERENCE.items():
        lam = page.page_laplace_eigenvalue(model, n, k)
        vals[f"lambda_{n},{k}"] = lam
        out.append(Verdict(f"page lambda_({n},{k})", lam, f"|x - {ref}| <= 1e-4", abs(lam - ref) <= 1e-4))
    rep = page.page_stability_report(model)
    out.append(Verdict("page index", rep.index, "== 1", rep.index == 1))
    neg = rep.negatives[0][1] if rep.negatives else float("nan")
    sole = rep.index == 1 and tuple(rep.negatives[0][0]) == (0, 0)
    out.append(Verdict("page lambda^L_(0,0)", neg, "sole negative, |x + 3| <= 1e-12",
                       sole and abs(neg + 3.0) <= 1e-12))
    rest = min(abs(e.stability_eig) for e in rep.lowest if tuple(e.label) != (0, 0))
    out.append(Verdict("page min |lambda^L| over nonzero labels", rest, "> 1", rest > 1.0))
    return out, {"eigenvalues": vals, "index": rep.index}


def criterion_5(seed: int = DEFAULT_SEED, n_grid: int = 2000):
    out, payload = [], {}
    t0 = time.perf_counter()
    worst_dev, ratios = 0.0, []
    for n in (0, 1, 2):
        spec = oracle.page_oracle_spectrum(n, 3, n_grid)
        exact = np.array([page.mu_eigenvalue(n, k) for k in range(3)], dtype=float)
        worst_dev = max(worst_dev, float(np.max(np.abs(spec.eigenvalues - exact))))
        ratios += [float(r) for r in spec.ratio if np.isfinite(r)]
        payload[f"n={n}"] = spec.to_dict()
    dt = time.perf_counter() - t0
    lo, hi = min(ratios), max(ratios)
    out.append(Verdict(f"page oracle max |mu_oracle - mu| (N={n_grid})", worst_dev, "<= 1e-2",
                       worst_dev <= 1e-2))
    out.append(Verdict("page oracle convergence ratio range", [lo, hi], "within [3.5, 4.5]",
                       3.5 <= lo and hi <= 4.5))
    out.append(Verdict("page oracle runtime [s]", dt, "< 30", dt < 30.0))
    return out, payload


def criterion_6(seed: int = DEFAULT_SEED, samples: int = 20):
    out = []
    for p, q in ((2, 1), (3, 2)):
        chart = ypq.ypq_chart(ypq.ypq_model(p, q))
        res = verify_einstein(chart, chart.sample(samples, seed=seed))
        out.append(Verdict(f"Y^({p},{q}) Einstein residual ({samples} samples)", res, "< 1e-8", res < 1e-8))
    return out, {"samples": samples}


def criterion_7(seed: int = DEFAULT_SEED, p_max: int = 50, samples: int = 100):
    models = [ypq.ypq_model(p, q) for p, q in ypq.coprime_pairs(p_max)]
    worst_h = max(abs(m.H(m.ybar)) for m in models)
    inside = all(-0.125 < m.ybar < 0.0 for m in models)
    limit = ypq.ypq_model_from_epsilon(1.0).ybar
    curve = np.array(ypq.ybar_curve(samples))
    decreasing = bool(np.all(np.diff(curve[:, 1]) < 0))
    return [
        Verdict(f"Y^(p,q) max |H(ybar)| (p <= {p_max})", worst_h, "< 1e-12", worst_h < 1e-12),
        Verdict(f"Y^(p,q) ybar in (-1/8, 0) (p <= {p_max})", inside, "all", inside),
        Verdict("ybar at epsilon = 1", limit, "|x + 1/8| <= 1e-10", abs(limit + 0.125) <= 1e-10),
        Verdict(f"ybar(epsilon) strictly decreasing ({samples} samples)", decreasing, "strict",
                decreasing),
    ], {"n_models": len(models), "ybar_at_1": limit}


def criterion_8(seed: int = DEFAULT_SEED):
    out = []
    rng = np.random.default_rng(seed)
    for p, q in STANDARD_PAIRS:
        m = ypq.ypq_model(p, q)
        fol = ypq.ypq_foliation(m)
        tp = [rng.uniform(0.2, math.pi - 0.2)] + list(rng.uniform(0, 2 * math.pi, 3))
        num = second_fundamental_form(fol, m.ybar, tp).trace_k2
        diff = abs(num - ypq.trace_k2(m))
        out.append(Verdict(f"Y^({p},{q}) Tr K^2 closed form vs engine", diff, "<= 1e-8", diff <= 1e-8))
    return out, {}


def criterion_9(seed: int = DEFAULT_SEED, p_max: int = 50):
    published = set(ypq.PUBLISHED_NEGATIVE_LABELS)
    t0 = time.perf_counter()
    indices, label_ok, value_err, in_range = [], 0, 0.0, True
    pairs = ypq.coprime_pairs(p_max)
    for p, q in pairs:
        m = ypq.ypq_model(p, q)
        rep = ypq.ypq_stability_report(m)
        indices.append(rep.index)
        label_ok += {YpqLabel(*lab) for lab, _ in rep.negatives} == published
        target = 24.0 * m.ybar / (1.0 - m.ybar)
        for s in (1, -1):
            lt = ypq.lambda_tilde(m, (0, 0, 0, s))
            value_err = max(value_err, abs(lt - target))
            in_range &= -8.0 / 3.0 < lt < 0.0
    dt = time.perf_counter() - t0
    n3 = sum(i == 3 for i in indices)
    return [
        Verdict(f"Y^(p,q) index == 3 (p <= {p_max})", f"{n3}/{len(pairs)} pairs; observed {sorted(set(indices))}",
                "all pairs", n3 == len(pairs)),
        Verdict("Y^(p,q) negative labels == {(0,0,0,0),(0,0,0,+-1)}", f"{label_ok}/{len(pairs)} pairs",
                "all pairs", label_ok == len(pairs)),
        Verdict("lambda~_(0,0,0,+-1) vs 24 ybar/(1 - ybar)", value_err, "<= 1e-10", value_err <= 1e-10),
        Verdict("lambda~_(0,0,0,+-1) in (-8/3, 0)", in_range, "all pairs", in_range),
        Verdict("Y^(p,q) index sweep runtime [s]", dt, "< 60", dt < 60.0),
    ], {"observed_indices": sorted(set(indices)), "n_pairs": len(pairs)}


def criterion_10(seed: int = DEFAULT_SEED, p_max: int = 200, workers: int | None = None):
    rows, dt = _timed(lambda: ypq.exceptional_scan(p_max, workers))
    worst = min(rows, key=lambda r: r.lambda_tilde)
    fails = ypq.scan_failures(rows, SCAN_TOL)
    return [
        Verdict(f"exceptional minima > 0 (p <= {p_max})", worst.lambda_tilde,
                "min > 1e-10", not fails),
        Verdict("exceptional scan runtime [s]", dt, "< 300", dt < 300.0),
    ], {"n_pairs": len(rows), "worst": {"p": worst.p, "q": worst.q, "label": list(worst.label),
                                        "lambda_tilde": worst.lambda_tilde}}


def criterion_11(seed: int = DEFAULT_SEED, n_grid: int = 2000, n_triples: int = 50):
    out, payload = [], {}
    worst = 0.0
    ok = True
    for n_psi, n_phi in ((0, 0), (1, 0), (1, 1)):
        spec = oracle.ypq_oracle_spectrum(n_psi, n_phi, 3, n_grid)
        exact = [oracle.aux_energy(n_psi, n_phi, k) for k in range(3)]
        worst = max(worst, float(np.max(np.abs(spec.eigenvalues - exact))))
        ok &= spec.matches(exact)
        payload[f"({n_psi},{n_phi})"] = spec.to_dict()
    out.append(Verdict("Y^(p,q) oracle max |E_oracle - J(J+1)|", worst, "<= 1e-2", ok and worst <= 1e-2))
    rng = np.random.default_rng(seed)
    triples = [(int(a), int(b), int(k)) for a, b, k in
               zip(rng.integers(-10, 11, n_triples), rng.integers(-10, 11, n_triples),
                   rng.integers(0, 11, n_triples))]
    good = sum(oracle.hypergeometric_truncation_check(*t) for t in triples)
    out.append(Verdict(f"hypergeometric truncation ({n_triples} random triples)", f"{good}/{n_triples}",
                       "all true", good == n_triples))
    return out, payload


CRITERIA = {
    1: ("Page quartic root", criterion_1),
    2: ("Page Einstein condition", criterion_2),
    3: ("Page minimal level", criterion_3),
    4: ("Page spectrum", criterion_4),
    5: ("Page oracle", criterion_5),
    6: ("Y^{p,q} Einstein condition", criterion_6),
    7: ("Y^{p,q} minimal level", criterion_7),
    8: ("Y^{p,q} extrinsic oracle", criterion_8),
    9: ("Y^{p,q} index", criterion_9),
    10: ("Exceptional-case scan", criterion_10),
    11: ("Y^{p,q} oracle", criterion_11),
}


def run_criterion(number: int, seed: int = DEFAULT_SEED, **kwargs):
    """Verdicts for one criterion with names prefixed ``C<number>``."""
    title, func = CRITERIA[number]
    verdicts, payload = func(seed=seed, **kwargs)
    named = [Verdict(f"C{number} {v.name}", v.value, v.tolerance, v.passed) for v in verdicts]
    return title, named, payload
