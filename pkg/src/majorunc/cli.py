"""Command-line interface.

Commands: ``bound``, ``subcoeffs``, ``sweep-qubit``, ``simplex-qutrit``,
``verify``. Errors are printed to stderr as JSON ``{"error": code, "message": ...}``
with exit status 2; ``verify`` exits 1 when any claim has violations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import bounds as B
from . import figures, oracle
from .errors import InvalidArgumentsError, InvalidInputError, MajorUncError
from .majorize import shannon
from .states import Spectrum
from .unitaries import matrix_to_json, resolve

TOL_ENV = "MAJORUNC_SLACK"
LN2 = math.log(2.0)


def _default_slack() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return oracle.SLACK
    try:
        return float(raw)
    except ValueError as exc:
        raise InvalidInputError(f"{TOL_ENV}={raw!r} is not a number") from exc


def _parse_lambda(text: str, n: int | None, renormalize: bool) -> Spectrum:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse spectrum {text!r}") from exc
    if n is not None:
        if len(vals) > n:
            raise InvalidArgumentsError(f"spectrum has {len(vals)} entries for dimension {n}")
        vals += [0.0] * (n - len(vals))
    return Spectrum(vals, renormalize=renormalize)


def _parse_entropy(text: str) -> tuple[str, float | None]:
    name, _, arg = text.partition(":")
    if name == "shannon" and not arg:
        return name, None
    if name in ("renyi", "tsallis"):
        try:
            return name, float(arg)
        except ValueError as exc:
            raise InvalidInputError(f"{name} needs an order, e.g. {name}:0.5") from exc
    raise InvalidArgumentsError(f"unknown entropy selector {text!r}")


def _fmt(x) -> str:
    return f"{x:.12g}"


def _write_csv(rows, columns, out, scale_cols=(), scale=1.0) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(
            _fmt(row[c] * scale if c in scale_cols else row[c]) for c in columns
        )
    _emit(buf.getvalue(), out)


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _unitary(args, dimension=None):
    return resolve(args.unitary, dimension)


def cmd_bound(args) -> int:
    hint = len([v for v in args.spectrum.split(",") if v.strip()])
    u = _unitary(args, hint)
    n = u.shape[0]
    lam = _parse_lambda(args.spectrum, n, args.renormalize)
    kind, alpha = _parse_entropy(args.entropy)
    s = B.sub_coefficients(u)
    wl = B.w_lambda(s, lam)
    scale = 1.0 / LN2 if args.base == "bits" else 1.0
    if args.conditional:
        if kind != "shannon":
            raise InvalidArgumentsError("the conditional bound is Shannon-only")
        value, log_valued = B.conditional_bound(lam, s), True
    elif kind == "shannon":
        value, log_valued = B.shannon_bound(wl), True
    elif kind == "renyi":
        value, log_valued = B.renyi_bound(wl, alpha), True
    else:
        value, log_valued = B.tsallis_bound(wl, alpha), False
    baselines = B.comparison_bounds(lam, u, s=s)
    report = {
        "unitary": args.unitary,
        "dimension": n,
        "lambda": lam.values.tolist(),
        "s": s.s.tolist(),
        "W": B.w_vector(s).tolist(),
        "W_lambda": wl.values.tolist(),
        "entropy": kind,
        "alpha": alpha,
        "conditional": bool(args.conditional),
        "base": args.base if log_valued else "unitless",
        "bound": value * scale if log_valued else value,
        "baselines": {
            **{k: v * scale for k, v in baselines.items()},
            **{k: None for k in B.UNAVAILABLE},
        },
        "baseline_notes": {**B.PROVENANCE, **B.UNAVAILABLE},
    }
    print(json.dumps(report, indent=2, ensure_ascii=False))
    return 0


def cmd_subcoeffs(args) -> int:
    u = _unitary(args, args.dim)
    s = B.sub_coefficients(u, workers=args.workers)
    print(json.dumps({
        "unitary": args.unitary,
        "matrix": matrix_to_json(u),
        "s": s.s.tolist(),
        "c": s.c,
        "W": B.w_vector(s).tolist(),
        "H_W": shannon(B.w_vector(s)) / (LN2 if args.base == "bits" else 1.0),
    }, indent=2))
    return 0


def _triple(text: str) -> tuple[float, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidArgumentsError(f"grid must be min,max,steps; got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse grid {text!r}") from exc


def cmd_sweep_qubit(args) -> int:
    lo, hi, steps = _triple(args.grid)
    rows = figures.qubit_sweep(args.mode, args.fixed, figures.grid(lo, hi, steps))
    scale = 1.0 / LN2 if args.base == "bits" else 1.0
    _write_csv(rows, figures.QUBIT_COLUMNS, args.out, figures.QUBIT_COLUMNS[1:], scale)
    return 0


def cmd_simplex_qutrit(args) -> int:
    u = _unitary(args, 3)
    rows = figures.qutrit_simplex(u, args.resolution)
    scale = 1.0 / LN2 if args.base == "bits" else 1.0
    _write_csv(rows, figures.QUTRIT_COLUMNS, args.out, figures.QUTRIT_COLUMNS[3:], scale)
    return 0


def cmd_verify(args) -> int:
    reports = oracle.run_suite(args.suite, args.n, args.trials, args.seed, _default_slack())
    payload = {
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "suite": args.suite,
        "ok": all(r.ok for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    text = json.dumps(payload, indent=2, default=float)
    _emit(text + "\n", args.out)
    return 0 if payload["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--base", choices=("nats", "bits"), default="nats")
    common.add_argument("--out", default=None, help="output file (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="majorunc",
        description="Majorization uncertainty bounds for mixed states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[common], help="evaluate bounds for one (U, lambda)")
    p.add_argument("--unitary", required=True)
    p.add_argument("--lambda", dest="spectrum", required=True, help="comma-separated spectrum")
    p.add_argument("--entropy", default="shannon", help="shannon | renyi:<a> | tsallis:<a>")
    p.add_argument("--conditional", action="store_true")
    p.add_argument("--renormalize", action="store_true", help="rescale spectra that sum to 1 within 1e-6")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("subcoeffs", parents=[common], help="print s_k and W for a unitary")
    p.add_argument("--unitary", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_subcoeffs)

    p = sub.add_parser("sweep-qubit", parents=[common], help="qubit bound curves as CSV")
    p.add_argument("--mode", choices=("theta", "lambda"), required=True)
    p.add_argument("--fixed", type=float, required=True)
    p.add_argument("--grid", required=True, help="min,max,steps")
    p.set_defaults(func=cmd_sweep_qubit)

    p = sub.add_parser("simplex-qutrit", parents=[common], help="qutrit simplex bounds as CSV")
    p.add_argument("--unitary", default="o3")
    p.add_argument("--resolution", type=int, default=50)
    p.set_defaults(func=cmd_simplex_qutrit)

    p = sub.add_parser("verify", parents=[common], help="run brute-force verification suites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--suite", choices=oracle.SUITES, default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MajorUncError as exc:
        json.dump({"error": exc.code, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
