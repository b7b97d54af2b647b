"""Command-line interface: ``iml <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails in the produced
output, 2 on usage errors and 3 on computational or store faults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict
from datetime import datetime, timezone
from fractions import Fraction
from functools import partial
from typing import Callable, Optional, Sequence

from . import __version__
from .checks import (bounds_ratios, chain_report, compose_witness, lemma1_sides,
                     theorem_parameters)
from .model import lcm_upto, verify_witness
from .oracle import BRUTE_GUARD, brute_force_f, hall_check
from .pool import pmap
from .search import exhaustive_max, sampled_max
from .solver import SolverFault, f_value, solve_f
from .store import ENV_VAR, ResultStore, StoreError, merge_stores

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_FAULT = 0, 1, 2, 3

Table = tuple[list[str], list[dict]]


# -- argument parsing --------------------------------------------------------

def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _n_list(text: str) -> list[int]:
    """Accepts ``8``, ``3,5,8`` or ``3..8`` (inclusive)."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = (_positive(x) for x in part.split("..", 1))
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(_positive(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")
    common.add_argument("--no-meta", action="store_true", help="omit the timestamp header")
    common.add_argument("--cache", metavar="PATH", help=f"f-value store (default ${ENV_VAR})")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes")

    parser = argparse.ArgumentParser(prog="iml", description="Exact f(n, m) solver and checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("f", parents=[common], help="solve one instance")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_nonnegative, required=True)

    p = sub.add_parser("scan", parents=[common], help="exhaustive max over residues")
    p.add_argument("--n", type=_n_list, required=True)
    p.add_argument("--residue-cap", type=_positive, default=10**6)
    p.add_argument("--plot-data", metavar="PATH", help="two-column 'n gap' file")

    p = sub.add_parser("hunt", parents=[common], help="sampled max over residues")
    p.add_argument("--n", type=_n_list, required=True)
    p.add_argument("--budget", type=_positive, default=500)
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--plot-data", metavar="PATH", help="two-column 'n gap' file")

    p = sub.add_parser("lemma1", parents=[common], help="verify kn + f(kn,kn) <= k^2 n + f(n,k^2 n)")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--k-max", type=_positive, required=True)

    p = sub.add_parser("chain", parents=[common], help="evaluate the gap chain at n")
    p.add_argument("--n", type=_positive, required=True)

    p = sub.add_parser("bounds", parents=[common], help="f(n,n) against the envelopes")
    p.add_argument("--n-list", type=_n_list, required=True)
    p.add_argument("--plot-data", metavar="PATH", help="two-column 'n f_nn' file")

    p = sub.add_parser("oracle", parents=[common], help="cross-check solver and brute force")
    p.add_argument("--n", type=_positive)
    p.add_argument("--m", type=_nonnegative)
    p.add_argument("--n-max", type=_positive, help="sweep n <= N over m in [0, min(lcm, --m-count))")
    p.add_argument("--m-count", type=_positive, default=60)

    p = sub.add_parser("cache", help="store maintenance")
    cache_sub = p.add_subparsers(dest="cache_command", required=True)
    q = cache_sub.add_parser("merge", help="merge stores into one")
    q.add_argument("sources", nargs="+", metavar="STORE")
    q.add_argument("-o", "--output", required=True, metavar="OUT")
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace):
    if args.command == "chain" and args.n < 3:
        parser.error("--n: chain needs n >= 3")
    if args.command == "bounds" and min(args.n_list) < 3:
        parser.error("--n-list: envelopes need n >= 3")
    if args.command == "oracle":
        single = args.n is not None or args.m is not None
        if single and args.n_max is not None:
            parser.error("--n/--m and --n-max are mutually exclusive")
        if args.n_max is None and (args.n is None or args.m is None):
            parser.error("oracle needs --n and --m, or --n-max")
        limit = args.n_max if args.n_max is not None else args.n
        if limit > BRUTE_GUARD:
            parser.error(f"oracle is limited to n <= {BRUTE_GUARD}")


# -- output ------------------------------------------------------------------

def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    return str(value)


def _json_value(value):
    if isinstance(value, Fraction):
        return _cell(value)
    if isinstance(value, float):
        return float(f"{value:.6g}")
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return value


def _meta(args) -> dict:
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return {"tool": f"iml {__version__}", "command": args.command, "generated": stamp}


def render(table: Table, fmt: str, meta: Optional[dict]) -> str:
    columns, rows = table
    if fmt == "json":
        doc = {}
        if meta is not None:
            doc["meta"] = meta
        doc["rows"] = [{c: _json_value(r.get(c)) for c in columns} for r in rows]
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    if meta is not None:
        buf.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _write_plot(path: str, pairs):
    with open(path, "w", encoding="utf-8") as fh:
        for x, y in pairs:
            fh.write(f"{_cell(x)} {_cell(y)}\n")


# -- f-value plumbing --------------------------------------------------------

def _f_pair(pair: tuple[int, int]) -> int:
    return f_value(*pair)


class FTable:
    """f-values for a known set of instances, filled from the store or a pool."""

    def __init__(self, pairs, store: Optional[ResultStore], jobs: int):
        pairs = list(dict.fromkeys(pairs))
        self.values: dict[tuple[int, int], int] = {}
        missing = []
        for nm in pairs:
            hit = store.get(*nm) if store is not None else None
            if hit is None:
                missing.append(nm)
            else:
                self.values[nm] = hit
        for nm, f in zip(missing, pmap(_f_pair, missing, jobs)):
            self.values[nm] = f
            if store is not None:
                store.put(*nm, f)

    def __call__(self, n: int, m: int) -> int:
        return self.values[(n, m)]


# -- subcommands -------------------------------------------------------------

def cmd_f(args, store) -> tuple[Table, bool]:
    res = solve_f(args.n, args.m)
    if store is not None:
        store.put(args.n, args.m, res.f_value)
    ok = bool(verify_witness(args.n, args.m, res.f_value, res.witness)) and \
        res.certificate.holds_for(args.n, args.m, res.f_value - 1)
    row = res.to_dict()
    return (["n", "m", "f", "witness", "violator"], [row]), ok


def _scan_one(n: int, cap: int, store, jobs: int):
    period = lcm_upto(n)
    if period > cap:
        raise ValueError(f"lcm(1..{n}) = {period} exceeds --residue-cap {cap}")
    table = FTable([(n, m) for m in range(period)] + [(n, n)], store, jobs)
    return exhaustive_max(n, cap=cap, f=table), table(n, n)


def _search_row(report, f_nn) -> dict:
    return {"n": report.n, "strategy": report.strategy, "best_m": report.best_m,
            "best_f": report.best_f, "f_nn": f_nn, "gap": report.best_f - f_nn,
            "evaluations": report.evaluations, "seed": report.seed}


SEARCH_COLUMNS = ["n", "strategy", "best_m", "best_f", "f_nn", "gap", "evaluations", "seed"]


def cmd_scan(args, store):
    rows = []
    for n in args.n:
        report, f_nn = _scan_one(n, args.residue_cap, store, args.jobs)
        rows.append(_search_row(report, f_nn))
    if args.plot_data:
        _write_plot(args.plot_data, [(r["n"], r["gap"]) for r in rows])
    ok = all(r["gap"] >= 0 for r in rows)
    return (SEARCH_COLUMNS, rows), ok


def _hunt_one(n: int, budget: int, seed: int):
    return sampled_max(n, budget, seed), f_value(n, n)


def cmd_hunt(args, store):
    results = pmap(partial(_hunt_one, budget=args.budget, seed=args.seed), args.n, args.jobs)
    rows = []
    for report, f_nn in results:
        if store is not None:
            store.put(report.n, report.best_m, report.best_f)
            store.put(report.n, report.n, f_nn)
        rows.append(_search_row(report, f_nn))
    if args.plot_data:
        _write_plot(args.plot_data, [(r["n"], r["gap"]) for r in rows])
    ok = all(r["gap"] >= 0 for r in rows)
    return (SEARCH_COLUMNS, rows), ok


def _lemma1_row(kn: tuple[int, int]) -> dict:
    k, n = kn
    inner = solve_f(n, k * k * n)
    outer = solve_f(k * n, k * n)
    lhs, rhs = lemma1_sides(k, n, f=lambda a, b: (outer if (a, b) == (k * n, k * n) else inner).f_value)
    composed, L = compose_witness(k, n, inner.witness, inner.f_value)
    composed_ok = bool(verify_witness(k * n, k * n, L, composed))
    return {"k": k, "n": n, "f_kn_kn": outer.f_value, "f_n_kkn": inner.f_value,
            "lhs": lhs, "rhs": rhs, "holds": lhs <= rhs,
            "equal_when_k1": (lhs == rhs) if k == 1 else None,
            "composed_L": L, "composed_ok": composed_ok}


def cmd_lemma1(args, store):
    grid = [(k, n) for n in range(1, args.n_max + 1) for k in range(1, args.k_max + 1)]
    rows = pmap(_lemma1_row, grid, args.jobs)
    if store is not None:
        for r in rows:
            k, n = r["k"], r["n"]
            store.put(k * n, k * n, r["f_kn_kn"])
            store.put(n, k * k * n, r["f_n_kkn"])
    ok = all(r["holds"] and r["composed_ok"] and r["equal_when_k1"] is not False for r in rows)
    columns = ["k", "n", "f_kn_kn", "f_n_kkn", "lhs", "rhs", "holds", "equal_when_k1",
               "composed_L", "composed_ok"]
    return (columns, rows), ok


def cmd_chain(args, store):
    n = args.n
    k = theorem_parameters(n).k
    table = FTable([(n, k * k * n), (k * n, k * n), (n, n)], store, args.jobs)
    links = chain_report(n, f=table)
    rows = [{"n": n, "k": k, "link": i, "inequality": l.name, "lhs": l.lhs, "rhs": l.rhs,
             "holds": l.holds} for i, l in enumerate(links, start=1)]
    # later links are reported, not asserted; only the definitional first link must hold
    return (["n", "k", "link", "inequality", "lhs", "rhs", "holds"], rows), links[0].holds


def cmd_bounds(args, store):
    table = FTable([(n, n) for n in args.n_list], store, args.jobs)
    rows = [asdict(r) for r in bounds_ratios(args.n_list, f=table)]
    ok = all(r["n"] <= r["f_nn"] <= r["n"] ** 2 for r in rows)
    if args.plot_data:
        _write_plot(args.plot_data, [(r["n"], r["f_nn"]) for r in rows])
    columns = ["n", "f_nn", "lower_env", "upper_env", "ratio_lower", "ratio_upper"]
    return (columns, rows), ok


def _oracle_row(nm: tuple[int, int]) -> dict:
    n, m = nm
    res = solve_f(n, m)
    brute = brute_force_f(n, m)
    at_f = hall_check(n, m, res.f_value)
    below = hall_check(n, m, res.f_value - 1)
    cert = res.certificate.holds_for(n, m, res.f_value - 1)
    witness = bool(verify_witness(n, m, res.f_value, res.witness))
    agree = res.f_value == brute and at_f and not below and cert and witness
    return {"n": n, "m": m, "f": res.f_value, "brute_f": brute, "hall_at_f": at_f,
            "hall_below_f": below, "witness_ok": witness, "certificate_ok": cert,
            "agree": agree}


def cmd_oracle(args, store):
    if args.n_max is not None:
        pairs = [(n, m) for n in range(1, args.n_max + 1)
                 for m in range(min(lcm_upto(n), args.m_count))]
    else:
        pairs = [(args.n, args.m)]
    rows = pmap(_oracle_row, pairs, args.jobs)
    if store is not None:
        for r in rows:
            store.put(r["n"], r["m"], r["f"])
    columns = ["n", "m", "f", "brute_f", "hall_at_f", "hall_below_f", "witness_ok",
               "certificate_ok", "agree"]
    return (columns, rows), all(r["agree"] for r in rows)


COMMANDS: dict[str, Callable] = {
    "f": cmd_f, "scan": cmd_scan, "hunt": cmd_hunt, "lemma1": cmd_lemma1,
    "chain": cmd_chain, "bounds": cmd_bounds, "oracle": cmd_oracle,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "cache":
            count = merge_stores(args.sources, args.output)
            print(f"merged {count} records into {args.output}", file=sys.stderr)
            return EXIT_OK
        cache = args.cache or os.environ.get(ENV_VAR)
        store = ResultStore(cache) if cache else None
        table, ok = COMMANDS[args.command](args, store)
    except (SolverFault, StoreError) as exc:
        print(f"iml: error: {exc}", file=sys.stderr)
        return EXIT_FAULT
    except ValueError as exc:
        print(f"iml: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = render(table, args.format, None if args.no_meta else _meta(args))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        print("iml: verification failed; see rows above", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK
