"""Command-line front end: ``parahbt {pfact,transition,dist,coherent,hbt,verify}``.

Exit codes: 0 success, 1 verification failure, 2 numeric or domain failure
(for ``hbt`` sweeps, any failed point; the other rows are still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import algebra, coherent, hbt, verify
from .quadrature import QuadratureSpec

HBT_HEADER = ("p", "mean_n", "order", "method", "value", "err_est", "lambda_p", "status")
MEAN_FLOOR = 1e-9
EXIT_OK, EXIT_VERIFY, EXIT_NUMERIC = 0, 1, 2


def fmt(v) -> str:
    """17 significant digits for floats so CSV values round-trip exactly."""
    if isinstance(v, float):
        return f"{v:.17g}"
    return "" if v is None else str(v)


def emit(rows: list[dict], columns: tuple[str, ...], out: str | None, form: str) -> None:
    if form == "json":
        text = json.dumps([{k: r.get(k) for k in columns} for r in rows], indent=1) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([fmt(r.get(k)) for k in columns])
        text = buf.getvalue()
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# hbt sweeps


@dataclass(frozen=True)
class SweepConfig:
    p_list: tuple[int, ...]
    mean_list: tuple[float, ...]
    orders: tuple[int, ...] = (1, 2, 3, 4)
    methods: tuple[str, ...] = hbt.METHODS
    c_bar: float = 1.0
    rel_tol: float = 1e-10
    workers: int = 1
    out: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if not (self.p_list and self.mean_list and self.orders and self.methods):
            raise ValueError("p, mean, order and method lists must all be non-empty")
        for p in self.p_list:
            algebra.check_order(p)
        bad = [m for m in self.methods if m not in hbt.METHODS]
        if bad:
            raise ValueError(f"unknown method(s) {bad}; choose from {list(hbt.METHODS)}")
        if any(n < 1 for n in self.orders):
            raise ValueError("orders must be >= 1")
        if any(not m > 0 for m in self.mean_list):
            raise ValueError("mean_list must be positive (clamp before building the config)")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")


def _sweep_point(args: tuple[int, float, int, str, float, float]) -> dict:
    p, mean, order, method, c_bar, rel_tol = args
    row = {"p": p, "mean_n": mean, "order": order, "method": method,
           "value": None, "err_est": None, "lambda_p": None, "status": "ok"}
    try:
        state = hbt.ThermalState(mean, p, c_bar)
        cv = hbt.correlation(order, state, method, QuadratureSpec(rel_tol=rel_tol))
        row["value"], row["err_est"] = cv.value, cv.err_est
        if order == 2:
            row["lambda_p"] = hbt.lambda_p(state)
    except (ArithmeticError, ValueError) as exc:
        row["status"] = f"error: {type(exc).__name__}: {exc}"
    return row


def run_sweep(cfg: SweepConfig) -> list[dict]:
    points = [
        (p, mean, order, method, cfg.c_bar, cfg.rel_tol)
        for p, mean, order, method in itertools.product(
            sorted(set(cfg.p_list)), sorted(set(cfg.mean_list)),
            sorted(set(cfg.orders)), sorted(set(cfg.methods)))
    ]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            rows = list(pool.map(_sweep_point, points, chunksize=4))
    else:
        rows = [_sweep_point(pt) for pt in points]
    # map preserves submission order, but sort anyway so the contract is explicit
    return sorted(rows, key=lambda r: (r["p"], r["mean_n"], r["order"], r["method"]))


def max_pairwise_spread(rows: list[dict]) -> float:
    """Largest relative difference between methods at any (p, mean, order)."""
    worst = 0.0
    key = lambda r: (r["p"], r["mean_n"], r["order"])  # noqa: E731
    for _, group in itertools.groupby(sorted(rows, key=key), key=key):
        vals = [r["value"] for r in group if r["status"] == "ok"]
        for a, b in itertools.combinations(vals, 2):
            worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    return worst


# ---------------------------------------------------------------------------
# subcommands


def cmd_pfact(a) -> int:
    if a.parafermion:
        value = algebra.pf_factorial(a.n, a.p)
    else:
        value = algebra.p_factorial(a.n, a.p)
    if a.format == "json":
        emit([{"n": a.n, "p": a.p, "parafermion": a.parafermion, "value": value}],
             ("n", "p", "parafermion", "value"), a.out, "json")
    else:
        if a.out:
            Path(a.out).write_text(f"{value}\n")
        else:
            print(value)
    return EXIT_OK


def cmd_transition(a) -> int:
    if a.parafermion:
        ratio = algebra.pf_transition_ratio(a.n, a.p)
        row = {"species": "parafermion", "n": a.n, "p": a.p, "quantity": "emission/absorption",
               "exact": str(ratio), "value": float(ratio)}
    else:
        spec = algebra.TransitionSpec("paraboson", a.n, a.direction)
        value = algebra.pb_transition_prob(spec, a.p, a.scale)
        row = {"species": "paraboson", "n": a.n, "p": a.p, "quantity": a.direction,
               "exact": "", "value": float(value)}
    emit([row], ("species", "n", "p", "quantity", "exact", "value"), a.out, a.format)
    return EXIT_OK


def cmd_dist(a) -> int:
    x, p = a.x, a.p
    cutoff = 0 if x == 0 else coherent.pmf_cutoff(x, p)
    probs = coherent.pmf_table(x, p, cutoff)
    columns = ["n", "pmf"]
    if a.gaussian:
        columns.append("gaussian")
    if a.correction:
        columns.append("corrected")
    rows = []
    for n, w in enumerate(probs):
        row = {"n": n, "pmf": w}
        if a.gaussian:
            row["gaussian"] = coherent.p_gaussian_pdf(n, x, p)
        if a.correction:
            row["corrected"] = coherent.p_gaussian_correction(n, x, p, a.coefficients)
        rows.append(row)
    emit(rows, tuple(columns), a.out, a.format)
    return EXIT_OK


def cmd_coherent(a) -> int:
    x, p = a.x, a.p
    split = coherent.mode_split(x, p)
    closed = coherent.coherent_moments(x, p)
    direct = coherent.pmf_moments(x, p)
    row = {"x": x, "p": p, "p_even": split.p_even, "p_odd": split.p_odd, "d": split.d,
           "mean": closed.mean, "variance": closed.variance,
           "mean_direct": direct.mean, "variance_direct": direct.variance}
    emit([row], tuple(row), a.out, a.format)
    return EXIT_OK


def _mean_values(a) -> list[float]:
    means = list(a.mean or [])
    if a.mean_log:
        start, stop, num = a.mean_log
        means.extend(float(v) for v in np.logspace(math.log10(start), math.log10(stop), int(num)))
    if not means:
        raise ValueError("give --mean and/or --mean-log")
    out = []
    for m in means:
        if not m > 0:
            print(f"warning: mean {m} clamped to {MEAN_FLOOR:g} (the thermal state needs <N> > 0)",
                  file=sys.stderr)
            m = MEAN_FLOOR
        out.append(m)
    return out


def cmd_hbt(a) -> int:
    cfg = SweepConfig(
        p_list=tuple(a.p), mean_list=tuple(_mean_values(a)), orders=tuple(a.order),
        methods=tuple(a.methods), c_bar=a.cbar, rel_tol=a.tol, workers=a.workers,
        out=a.out, format=a.format,
    )
    rows = run_sweep(cfg)
    emit(rows, HBT_HEADER, cfg.out, cfg.format)
    print(f"max pairwise relative spread: {max_pairwise_spread(rows):.3e}", file=sys.stderr)
    return EXIT_NUMERIC if any(r["status"] != "ok" for r in rows) else EXIT_OK


def cmd_verify(a) -> int:
    checks = verify.run_suites(a.suite, quad_tol=a.tol)
    table = verify.format_table(checks)
    if a.format == "json":
        emit([asdict(c) for c in checks], ("suite", "name", "passed", "detail"), a.out, "json")
    elif a.out:
        Path(a.out).write_text(table + "\n")
    print(table)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing and key=value config files


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--config", help="key=value file; command-line flags win")

    parser = argparse.ArgumentParser(prog="parahbt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("pfact", parents=[common], help="exact (n)_p! or parafermion {n}_p!")
    sp.add_argument("n", type=int)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--parafermion", action="store_true")
    sp.set_defaults(func=cmd_pfact)

    sp = sub.add_parser("transition", parents=[common], help="emission/absorption factors")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--direction", choices=("emission", "absorption"), default="emission")
    sp.add_argument("--parafermion", action="store_true",
                    help="print the parafermion emission/absorption ratio instead")
    sp.add_argument("--scale", type=float, default=1.0, help="dynamics constant A")
    sp.set_defaults(func=cmd_transition)

    sp = sub.add_parser("dist", parents=[common], help="p-Poisson law of a coherent state")
    sp.add_argument("x", type=float, help="|alpha|^2")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--gaussian", action="store_true")
    sp.add_argument("--correction", action="store_true")
    sp.add_argument("--coefficients", choices=("consistent", "printed"), default="consistent")
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("coherent", parents=[common], help="parity split and moments")
    sp.add_argument("x", type=float, help="|alpha|^2")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_coherent)

    sp = sub.add_parser("hbt", parents=[common], help="G^(n)(0) sweep over p, <N>, n, method")
    sp.add_argument("--p", type=int, nargs="+", required=True)
    sp.add_argument("--mean", type=float, nargs="+")
    sp.add_argument("--mean-log", type=float, nargs=3, metavar=("START", "STOP", "NUM"))
    sp.add_argument("--order", type=int, nargs="+", default=[1, 2, 3, 4])
    sp.add_argument("--methods", nargs="+", default=list(hbt.METHODS))
    sp.add_argument("--cbar", type=float, default=1.0)
    sp.add_argument("--tol", type=float, default=1e-10, help="quadrature relative tolerance")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_hbt)

    sp = sub.add_parser("verify", parents=[common], help="run invariant suites")
    sp.add_argument("--suite", nargs="+", choices=list(verify.SUITES))
    sp.add_argument("--tol", type=float, default=None,
                    help="quadrature agreement threshold for the hbt suite")
    sp.set_defaults(func=cmd_verify)
    return parser


_COMMANDS = ("pfact", "transition", "dist", "coherent", "hbt", "verify")


def read_config(path: str) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.ArgumentParser:
    # only the command name and --config matter here; required flags may live in the file
    early = argparse.ArgumentParser(add_help=False)
    early.add_argument("command", nargs="?")
    early.add_argument("--config")
    pre, _ = early.parse_known_args(argv)
    if not pre.config or pre.command not in _COMMANDS:
        return parser
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    target = sub.choices[pre.command]
    actions = {a.dest: a for a in target._actions}
    defaults = {}
    for key, raw in read_config(pre.config).items():
        if key not in actions:
            raise ValueError(f"config key {key!r} is not an option of {pre.command!r}")
        act = actions[key]
        conv = act.type or str
        if isinstance(act, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        elif act.nargs in ("+", "*") or isinstance(act.nargs, int):
            defaults[key] = [conv(v) for v in raw.replace(",", " ").split()]
        else:
            defaults[key] = conv(raw)
        act.required = False  # supplied by the file
    target.set_defaults(**defaults)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        parser = _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
