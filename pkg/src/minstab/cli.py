"""Command-line front end.

Every run emits one envelope::

    {version, config, timestamp, verdicts: [{name, value, tolerance, pass}], payload}

and exits 0 iff every verdict passes. ``--format csv`` is available for the
``ypq --scan`` and ``ypq --ybar-curve`` tables only. Without ``--output`` the
document goes to ``$MINSTAB_OUTPUT_DIR/<command>.<ext>`` when that variable is
set, and to stdout otherwise.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__, acceptance, oracle, page, ypq
from .acceptance import Verdict
from .errors import MinstabError
from .tensor import DEFAULT_SEED, verify_einstein

OUTPUT_DIR_ENV = "MINSTAB_OUTPUT_DIR"
SCAN_COLUMNS = ("p", "q", "label", "lambda_tilde")
CURVE_COLUMNS = ("epsilon", "ybar")


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def envelope(command: str, config: dict, verdicts: list[Verdict], payload: dict) -> dict:
    return {
        "version": __version__,
        "command": command,
        "config": _jsonable(config),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "verdicts": [_jsonable(v.to_dict()) for v in verdicts],
        "passed": all(v.passed for v in verdicts),
        "payload": _jsonable(payload),
    }


# ---------------------------------------------------------------------------
# Commands

def cmd_page(args) -> tuple[dict, list[dict] | None]:
    model = page.page_model()
    x0 = page.find_minimal_level(model)
    rep = page.page_stability_report(model, k_max=args.k_max, n_max=args.n_max)
    verdicts = [
        Verdict("nu", model.nu, "|nu - 0.281702| <= 1e-5", abs(model.nu - 0.281702) <= 1e-5),
        Verdict("minimal level x0", x0, "|x0| <= 1e-12", abs(x0) <= 1e-12),
        Verdict("index", rep.index, "== 1", rep.index == 1),
        Verdict("nullity", 0 if rep.nullity_certified else None, f"min |lambda^L| > {rep.tol_zero}",
                rep.nullity_certified),
    ]
    payload: dict[str, Any] = {"nu": model.nu, "S": model.S, "alpha": model.alpha,
                               "minimal_level": x0, "stability": rep.to_dict()}
    if args.verify_einstein:
        chart = page.page_chart(model)
        res = verify_einstein(chart, chart.sample(args.samples, seed=args.seed))
        verdicts.append(Verdict(f"Einstein residual ({args.samples} samples)", res, "< 1e-8", res < 1e-8))
        payload["einstein_residual"] = res
    if args.oracle:
        spec = oracle.page_oracle_spectrum(args.n, args.m, args.n_grid)
        exact = [page.mu_eigenvalue(args.n, k) for k in range(args.m)]
        tol = spec.tolerance()
        dev = np.abs(spec.eigenvalues - exact)
        verdicts.append(Verdict(f"oracle mu_(n={args.n}) vs closed form", dev.max(),
                                f"<= max(1e-2, 10 x error) = {tol.max():.3g}", bool(np.all(dev <= tol))))
        payload["oracle"] = {**spec.to_dict(), "closed_form": exact}
    return envelope("page", _config(args), verdicts, payload), None


def _ypq_single(args, verdicts, payload):
    model = ypq.ypq_model(args.p, args.q)
    rep = ypq.ypq_stability_report(model, k_max=args.k_max, n_alpha_max=args.n_alpha_max,
                                   n_psi_max=args.n_psi_max, n_phi_max=args.n_phi_max)
    hres = abs(model.H(model.ybar))
    neg = {tuple(lab) for lab, _ in rep.negatives}
    published = {tuple(lab) for lab in ypq.PUBLISHED_NEGATIVE_LABELS}
    verdicts += [
        Verdict("|H(ybar)|", hres, "< 1e-12", hres < 1e-12),
        Verdict("ybar in (-1/8, 0)", model.ybar, "open interval", -0.125 < model.ybar < 0.0),
        Verdict("index == 3 (published)", rep.index, "== 3", rep.index == 3),
        Verdict("negative labels (published)", sorted(neg), "== {(0,0,0,0),(0,0,0,+-1)}", neg == published),
        Verdict("nullity", 0 if rep.nullity_certified else None, f"min |lambda~| > {rep.tol_zero}",
                rep.nullity_certified),
    ]
    tk2, shift = ypq.extrinsic_geometry(model)
    payload["model"] = {"p": model.p, "q": model.q, "epsilon": model.epsilon, "b": model.b,
                        "ell": model.ell, "y1": model.y1, "y2": model.y2, "ybar": model.ybar,
                        "trace_k2": tk2, "ric_nn_plus_trace_k2": shift}
    payload["stability"] = rep.to_dict()
    if args.verify_einstein:
        chart = ypq.ypq_chart(model)
        res = verify_einstein(chart, chart.sample(args.samples, seed=args.seed))
        verdicts.append(Verdict(f"Einstein residual ({args.samples} samples)", res, "< 1e-8", res < 1e-8))
        payload["einstein_residual"] = res


def cmd_ypq(args) -> tuple[dict, list[dict] | None]:
    verdicts: list[Verdict] = []
    payload: dict[str, Any] = {}
    table = None
    if args.p is not None:
        _ypq_single(args, verdicts, payload)
    if args.scan:
        rows = ypq.exceptional_scan(args.p_max, args.workers)
        worst = min(rows, key=lambda r: r.lambda_tilde)
        verdicts.append(Verdict(f"exceptional minima > 0 (p <= {args.p_max})", worst.lambda_tilde,
                                "min > 1e-10", not ypq.scan_failures(rows, 1e-10)))
        table = [{"p": r.p, "q": r.q, "label": "(" + ",".join(map(str, r.label)) + ")",
                  "lambda_tilde": r.lambda_tilde} for r in rows]
        payload["scan"] = {"columns": list(SCAN_COLUMNS), "rows": table,
                           "worst": {"p": worst.p, "q": worst.q, "label": list(worst.label),
                                     "lambda_tilde": worst.lambda_tilde}}
    if args.ybar_curve:
        curve = np.array(ypq.ybar_curve(args.samples, workers=args.workers))
        dec = bool(np.all(np.diff(curve[:, 1]) < 0))
        verdicts.append(Verdict(f"ybar(epsilon) strictly decreasing ({args.samples} samples)", dec,
                                "strict", dec))
        verdicts.append(Verdict("ybar at epsilon = 1", curve[-1, 1], "|x + 1/8| <= 1e-10",
                                abs(curve[-1, 1] + 0.125) <= 1e-10))
        table = [{"epsilon": float(e), "ybar": float(y)} for e, y in curve]
        payload["ybar_curve"] = {"columns": list(CURVE_COLUMNS), "rows": table}
    return envelope("ypq", _config(args), verdicts, payload), table


def cmd_verify_all(args) -> tuple[dict, list[dict] | None]:
    verdicts, payload = [], {}
    for number in acceptance.CRITERIA:
        title, vs, pl = acceptance.run_criterion(number, seed=args.seed)
        verdicts += vs
        payload[f"C{number}"] = {"title": title, "passed": all(v.passed for v in vs), "detail": pl}
    return envelope("verify-all", _config(args), verdicts, payload), None


# ---------------------------------------------------------------------------
# Plumbing

def _config(args) -> dict:
    skip = {"func", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _positive(kind):
    def conv(raw):
        val = kind(raw)
        if val <= 0:
            raise argparse.ArgumentTypeError(f"expected a positive value, got {raw}")
        return val
    return conv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", type=Path, default=None,
                        help=f"output file (default: ${OUTPUT_DIR_ENV}/<command>.<ext> or stdout)")

    parser = argparse.ArgumentParser(
        prog="minstab",
        description="Stability spectra of the homogeneous minimal hypersurfaces in the Page "
                    "space and in Y^{p,q}.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pg = sub.add_parser("page", parents=[common], help="Page space: minimal sphere and its spectrum")
    pg.add_argument("--k-max", type=int, default=10)
    pg.add_argument("--n-max", type=int, default=10)
    pg.add_argument("--verify-einstein", action="store_true")
    pg.add_argument("--samples", type=_positive(int), default=20)
    pg.add_argument("--oracle", action="store_true", help="finite-difference check of mu_{n,k}")
    pg.add_argument("--n", type=int, default=1, help="charge for --oracle")
    pg.add_argument("--m", type=_positive(int), default=3, help="number of oracle eigenvalues")
    pg.add_argument("--n-grid", type=int, default=2000)
    pg.set_defaults(func=cmd_page)

    yp = sub.add_parser("ypq", parents=[common], help="Y^{p,q}: minimal level set, scan, ybar curve")
    yp.add_argument("--p", type=int)
    yp.add_argument("--q", type=int)
    yp.add_argument("--k-max", type=int, default=6)
    yp.add_argument("--n-alpha-max", type=int, default=6)
    yp.add_argument("--n-psi-max", type=int, default=4)
    yp.add_argument("--n-phi-max", type=int, default=4)
    yp.add_argument("--verify-einstein", action="store_true")
    yp.add_argument("--scan", action="store_true", help="exceptional-label scan over coprime (p, q)")
    yp.add_argument("--p-max", type=int, default=200)
    yp.add_argument("--ybar-curve", action="store_true", help="ybar as a function of epsilon")
    yp.add_argument("--samples", type=_positive(int), default=100,
                    help="curve points, or Einstein sample points")
    yp.add_argument("--workers", type=int, default=None, help="process pool size for sweeps")
    yp.set_defaults(func=cmd_ypq)

    va = sub.add_parser("verify-all", parents=[common], help="run every acceptance criterion")
    va.set_defaults(func=cmd_verify_all)
    return parser


def _check(parser, args) -> None:
    if args.command == "ypq":
        if (args.p is None) != (args.q is None):
            parser.error("--p and --q go together")
        if args.p is None and not (args.scan or args.ybar_curve):
            parser.error("give --p/--q, --scan or --ybar-curve")
    if args.format == "csv":
        tables = args.command == "ypq" and (args.scan + args.ybar_curve) == 1 and args.p is None
        if not tables:
            parser.error("--format csv needs exactly one of ypq --scan / --ybar-curve (without --p)")


def render(doc: dict, table: list[dict] | None, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(table[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in table:
        writer.writerow({k: (repr(float(v)) if isinstance(v, (float, np.floating)) else v)
                         for k, v in row.items()})
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check(parser, args)
    try:
        doc, table = args.func(args)
    except MinstabError as exc:
        doc = envelope(args.command, _config(args),
                       [Verdict("run", type(exc).__name__, "no error", False)],
                       {"error": str(exc)})
        table = None
        args.format = "json"
    text = render(doc, table, args.format)

    out = args.output
    if out is None and os.environ.get(OUTPUT_DIR_ENV):
        out = Path(os.environ[OUTPUT_DIR_ENV]) / f"{args.command}.{args.format}"
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    for v in doc["verdicts"]:
        if not v["pass"]:
            print(f"FAIL {v['name']}: {v['value']} (want {v['tolerance']})", file=sys.stderr)
    return 0 if doc["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
