"""Command-line front end: ``zetabound verify|bound|zeros|minorant``."""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import bounds, explicit_formula, extremal
from .arithmetic import MangoldtTable, required_limit, sieve_mangoldt
from .errors import ZeroFileError, ZetaBoundError
from .extremal import ExtremalParams
from .zeros import ZeroList, find_zeros, load_zeros, save_zeros

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("minorant", "fourier", "l1", "explicit", "hadamard", "all")


class UsageError(Exception):
    pass


def parse_range(spec: str):
    """``start:end:step`` -> start, start+step, ... < end."""
    try:
        start, end, step = (float(p) for p in spec.split(":"))
    except ValueError:
        raise UsageError(f"range must look like start:end:step, got {spec!r}") from None
    if not (step > 0 and start < end):
        raise UsageError(f"range needs start < end and step > 0, got {spec!r}")
    n = int(math.ceil((end - start) / step - 1e-9))
    return [start + k * step for k in range(n)]


def fmt(v) -> str:
    return f"{float(v):.12g}"


def round12(v):
    return float(fmt(v))


@dataclass
class RunConfig:
    delta: float | None = None
    t_values: list = field(default_factory=list)
    zeros_path: str | None = None
    sieve_limit: int | None = None
    tol: float = 1e-9
    format: str = "csv"
    seed: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.delta is not None and not self.delta > 0:
            raise UsageError("--delta must be positive")

    def table_for(self, params: ExtremalParams) -> MangoldtTable:
        need = required_limit(params)
        if self.sieve_limit is not None:
            if self.sieve_limit < math.ceil(params.prime_cutoff):
                raise UsageError(f"--sieve-limit {self.sieve_limit} below the required {need}")
            return sieve_mangoldt(self.sieve_limit)
        return sieve_mangoldt(max(2, need))

    def zeros(self, required: bool, flag_hint: str = "--zeros-file") -> ZeroList | None:
        if self.zeros_path is None:
            if required:
                raise UsageError(f"this command needs zeros; pass {flag_hint} PATH")
            return None
        try:
            return load_zeros(self.zeros_path)
        except ZeroFileError as exc:
            raise UsageError(f"{self.zeros_path}: {exc}") from exc


def _config(args) -> RunConfig:
    ts = []
    if getattr(args, "t", None):
        ts.extend(args.t)
    if getattr(args, "t_range", None):
        ts.extend(parse_range(args.t_range))
    return RunConfig(delta=getattr(args, "delta", None), t_values=sorted(ts),
                     zeros_path=getattr(args, "zeros_file", None),
                     sieve_limit=getattr(args, "sieve_limit", None),
                     tol=1e-9 if getattr(args, "tol", None) is None else args.tol,
                     format=getattr(args, "format", "csv"), seed=getattr(args, "seed", 0))


# --- verify -------------------------------------------------------------------

def _check(rows, name, value, limit, ok):
    rows.append((name, value, limit, bool(ok)))


def _verify_minorant(cfg, rows):
    d = cfg.delta or 1.0
    p = ExtremalParams(d)
    x = np.arange(-50000, 50001) * 1e-3
    x = x[x != 0]
    excess = float(np.max(extremal.g_values(p, x, method="series") - extremal.f(x)))
    _check(rows, f"minorant g<=f delta={d:g}", excess, 1e-9, excess <= 1e-9)


def _verify_fourier(cfg, rows):
    d = cfg.delta or 1.0
    p = ExtremalParams(d)
    for k in (1.05, 1.5):
        v, b = extremal.direct_transform(p, k * d)
        _check(rows, f"support |g_hat({k:g} delta)|", abs(v), 1e-3, abs(v) <= 1e-3 and b <= 1e-3)
    for k in (0.0, 0.25, 0.5):
        v, _ = extremal.direct_transform(p, k * d)
        diff = abs(v - extremal.g_hat(p, k * d))
        _check(rows, f"direct vs kernel at {k:g} delta", diff, 1e-5, diff <= 1e-5)


def _verify_l1(cfg, rows):
    d = cfg.delta or 1.0
    p = ExtremalParams(d)
    closed = extremal.l1_distance(p)
    num = extremal.l1_numeric(p).value
    rel = abs(num - closed) / closed
    _check(rows, f"L1 closed form delta={d:g}", rel, 1e-6, rel <= 1e-6)


def _verify_explicit(cfg, rows):
    zl = cfg.zeros(required=True)
    d = cfg.delta or 1.0
    p = ExtremalParams(d)
    table = cfg.table_for(p)
    for t in cfg.t_values or [50.0]:
        led = explicit_formula.check_balance(p, t, zl, table)
        _check(rows, f"explicit formula t={t:g} delta={d:g}", abs(led.residual), led.budget, led.balanced)


def _away_from_zeros(zl, ts):
    g = zl.ordinates
    i = np.clip(np.searchsorted(g, ts), 1, g.size - 1)
    return np.minimum(np.abs(g[i] - ts), np.abs(g[i - 1] - ts)) > 0.05


def _verify_hadamard(cfg, rows):
    zl = cfg.zeros(required=True)
    ts = np.asarray(cfg.t_values, dtype=float)
    if ts.size == 0:
        rng = np.random.default_rng(cfg.seed)
        ts = rng.uniform(20.0, 1000.0, 200)
        ts = np.sort(ts[_away_from_zeros(zl, ts)][:50])
    for t in ts:
        resid, budget = bounds.hadamard_check(float(t), zl, zl.height_covered - abs(t))
        _check(rows, f"hadamard t={t:.6g}", abs(resid), budget, abs(resid) <= budget)


VERIFY = {"minorant": _verify_minorant, "fourier": _verify_fourier, "l1": _verify_l1,
          "explicit": _verify_explicit, "hadamard": _verify_hadamard}


def cmd_verify(args, out) -> int:
    cfg = _config(args)
    suites = list(VERIFY) if args.suite == "all" else [args.suite]
    if any(s in ("explicit", "hadamard") for s in suites) and cfg.zeros_path is None:
        raise UsageError("suites explicit and hadamard need zeros; pass --zeros-file PATH")
    rows = []
    for s in suites:
        VERIFY[s](cfg, rows)
    if cfg.format == "json":
        out.write(json.dumps([{"check": n, "value": round12(v), "limit": round12(lim), "pass": ok}
                              for n, v, lim, ok in rows]) + "\n")
    else:
        width = max(len(r[0]) for r in rows)
        for n, v, lim, ok in rows:
            out.write(f"{n:<{width}}  {fmt(v):>20}  <= {fmt(lim):<20} {'PASS' if ok else 'FAIL'}\n")
    return EXIT_OK if all(r[3] for r in rows) else EXIT_FAIL


# --- bound --------------------------------------------------------------------

def cmd_bound(args, out) -> int:
    cfg = _config(args)
    if not cfg.t_values:
        raise UsageError("give --t or --t-range")
    if any(t <= math.e for t in cfg.t_values):
        raise UsageError("every t must exceed e")
    cfg.zeros(required=False)  # a given zeros file must at least parse
    reports = []
    tables = {}
    for t in cfg.t_values:
        d = cfg.delta if cfg.delta is not None else bounds.delta_rule(t)
        if d not in tables:
            tables[d] = cfg.table_for(ExtremalParams(d))
        reports.append(bounds.compare(t, bounds.BoundConfig(delta=d, table=tables[d])))
    if cfg.format == "json":
        out.write(json.dumps([{k: round12(v) for k, v in r.to_dict().items()} for r in reports]) + "\n")
    else:
        out.write(",".join(bounds.BoundReport.header()) + "\n")
        for r in reports:
            out.write(r.to_csv_row(12))
    return EXIT_OK


# --- zeros --------------------------------------------------------------------

def cmd_zeros(args, out) -> int:
    if args.action == "find":
        if args.t_max is None:
            raise UsageError("zeros find needs --t-max")
        if args.tol is not None and not args.tol > 0:
            raise UsageError("--tol must be positive")
        zl = find_zeros(args.t_max, tol=args.tol or 1e-9)
        if args.zeros_file:
            save_zeros(zl, args.zeros_file)
        else:
            for g in zl.ordinates:
                out.write(f"{g:.12f}\n")
        print(f"{len(zl)} zeros, complete to height {fmt(zl.height_covered)}", file=sys.stderr)
        return EXIT_OK
    if not args.zeros_file:
        raise UsageError("zeros import needs --zeros-file")
    try:
        zl = load_zeros(args.zeros_file)
    except ZeroFileError as exc:
        print(f"error: {args.zeros_file}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out.write(f"{len(zl)} zeros, height covered {fmt(zl.height_covered)}\n")
    return EXIT_OK


# --- minorant -----------------------------------------------------------------

def cmd_minorant(args, out) -> int:
    if args.delta is None:
        raise UsageError("minorant needs --delta")
    p = ExtremalParams(args.delta)
    xs = np.array(parse_range(args.x_range))
    step = float(args.x_range.split(":")[2])
    keep = np.abs(xs) > 1e-9 * step
    if not np.all(keep):
        print("note: x = 0 omitted (f is singular there)", file=sys.stderr)
    xs = xs[keep]
    fx = extremal.f(xs)
    gx = extremal.g_values(p, xs, method="series")
    l1 = extremal.l1_distance(p)
    if args.format == "json":
        rows = [{"x": round12(a), "f": round12(b), "g": round12(c), "gap": round12(b - c)}
                for a, b, c in zip(xs, fx, gx)]
        out.write(json.dumps({"rows": rows, "l1_distance": round12(l1)}) + "\n")
    else:
        out.write("x,f,g,gap\n")
        for a, b, c in zip(xs, fx, gx):
            out.write(f"{fmt(a)},{fmt(b)},{fmt(c)},{fmt(b - c)}\n")
        out.write(f"l1_distance,{fmt(l1)},,\n")
    return EXIT_OK


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zetabound", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, t=True):
        p.add_argument("--delta", type=float)
        p.add_argument("--zeros-file")
        p.add_argument("--sieve-limit", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=0)
        if t:
            p.add_argument("--t", type=float, action="append", help="height (repeatable)")
            p.add_argument("--t-range", help="start:end:step, end excluded")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    common(v)
    b = sub.add_parser("bound", help="bound rows for given heights")
    common(b)
    z = sub.add_parser("zeros", help="find or import zero ordinates")
    z.add_argument("action", choices=("find", "import"))
    z.add_argument("--t-max", type=float)
    common(z, t=False)
    m = sub.add_parser("minorant", help="tabulate f, g and f - g")
    m.add_argument("--x-range", default="-10:10.005:0.01",
                   help="start:end:step; write --x-range=-5:5:0.1 when start is negative")
    common(m, t=False)
    return ap


COMMANDS = {"verify": cmd_verify, "bound": cmd_bound, "zeros": cmd_zeros, "minorant": cmd_minorant}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZetaBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE if isinstance(exc, ValueError) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
