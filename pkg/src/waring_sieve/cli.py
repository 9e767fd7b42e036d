"""Command-line front end.

Every subcommand expands its flags into a grid of independent cells
(p, m, k, ...), evaluates each cell, and writes one row per result in
(p, m, k, b) order. ``sweep`` runs any other subcommand with the cells
spread over a process pool; the merge is ordered, so output does not depend
on the worker count.

Exit codes: 0 success, 1 an asserted (unconditional) bound failed,
2 usage or precondition error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import bounds, combinatorics, counters, waring
from .domain import ValuedDomain
from .field import character_profile, divisors, is_prime, make_modulus
from .report import SCHEMA_VERSION, BoundReport, format_real

__all__ = ["main", "build_parser", "Cell", "CellResult", "run_cell", "EXIT_OK", "EXIT_VIOLATION", "EXIT_USAGE"]

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

COMMANDS = ("count", "total", "phi", "check", "waring", "identity", "audit")
BOUNDS = ("os", "zhuwan", "lemma31", "expsum", "thm11", "open")
IDENTITIES = ("cycle-index", "box", "sieve")


class UsageError(Exception):
    pass


@dataclass
class Cell:
    command: str
    p: int | None = None
    m: int | None = None
    k: int | None = None
    domain: tuple[int, ...] | None = None
    domain_tag: dict[str, Any] = field(default_factory=dict)
    opts: dict[str, Any] = field(default_factory=dict)


@dataclass
class CellResult:
    rows: list[dict]
    violated: bool = False


# ---------------------------------------------------------------- parsing


def _int_range(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("WARING_SIEVE_JOBS", "1")))
    except ValueError:
        return 1


def _common(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("grid")
    g.add_argument("--p", type=_int_list, action="extend", dest="p_list", metavar="P[,P...]")
    g.add_argument("--p-range", type=_int_range, metavar="LO:HI", help="every prime in [LO, HI]")
    g.add_argument("--m", type=_int_list, action="extend", dest="m_list", metavar="M[,M...]")
    g.add_argument("--m-all-divisors", action="store_true", help="every m dividing p-1")
    g.add_argument("--k", type=_int_list, action="extend", dest="k_list", metavar="K[,K...]")
    g.add_argument("--k-range", type=_int_range, metavar="LO:HI")
    g.add_argument("--b", type=int)
    g.add_argument("--all-b", action="store_true", help="emit every b (the default)")
    g.add_argument("--set", type=_int_list, dest="domain", metavar="V[,V...]",
                   help="explicit domain D, a subset of F_p* (instead of m-th powers)")
    g.add_argument("--random-domains", type=int, default=0, metavar="N",
                   help="N seeded random domains per p (phi, check --bound lemma31)")
    g.add_argument("--all-domains", action="store_true",
                   help="every nonempty subset of F_p* (phi, check --bound lemma31)")
    g.add_argument("--seed", type=int, default=0)
    o = parser.add_argument_group("output")
    o.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    o.add_argument("--out", metavar="PATH")
    o.add_argument("--jobs", type=int, default=_default_jobs())
    o.add_argument("--digits", type=int, default=bounds.DEFAULT_DIGITS)


def _command_options(parser: argparse.ArgumentParser, command: str) -> None:
    if command == "count":
        parser.add_argument("--algo", choices=("dp", "genfun", "newton", "all"), default="newton")
    elif command == "check":
        parser.add_argument("--bound", choices=BOUNDS, required=True)
        parser.add_argument("--delta", type=float)
        parser.add_argument("--epsilon", type=float)
        parser.add_argument("--log-base", choices=("e", "2"), default="e")
    elif command == "waring":
        parser.add_argument("--distinct", action="store_true")
        parser.add_argument("--exclude-zero", action="store_true")
        parser.add_argument("--suite", action="store_true", help="gamma and gamma' for every m | p-1, m < p-1")
    elif command == "identity":
        parser.add_argument("--which", choices=IDENTITIES, required=True)
        parser.add_argument("--q", type=Fraction, action="append", help="rational q (cycle-index)")
        parser.add_argument("--n", type=_int_list, action="extend", dest="n_list")
        parser.add_argument("--s", type=_int_list, action="extend", dest="s_list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="waring-sieve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "count": "N(k, b) for m-th powers or an explicit set",
        "total": "N*_m(b) summed over all subset sizes",
        "phi": "max nontrivial character sum of a domain",
        "check": "evaluate one family of bounds",
        "waring": "ordinary or distinct Waring numbers",
        "identity": "exact combinatorial identities",
        "audit": "lifting-formula decomposition audit (descriptive)",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        _common(p)
        _command_options(p, name)
    sw = sub.add_parser("sweep", help="run a subcommand over a grid with --jobs workers")
    sw.add_argument("--command", dest="target", choices=COMMANDS, required=True)
    _common(sw)
    # union of per-command options; irrelevant ones are ignored
    sw.add_argument("--algo", choices=("dp", "genfun", "newton", "all"), default="newton")
    sw.add_argument("--bound", choices=BOUNDS)
    sw.add_argument("--delta", type=float)
    sw.add_argument("--epsilon", type=float)
    sw.add_argument("--log-base", choices=("e", "2"), default="e")
    sw.add_argument("--distinct", action="store_true")
    sw.add_argument("--exclude-zero", action="store_true")
    sw.add_argument("--suite", action="store_true")
    sw.add_argument("--which", choices=IDENTITIES)
    sw.add_argument("--q", type=Fraction, action="append")
    sw.add_argument("--n", type=_int_list, action="extend", dest="n_list")
    sw.add_argument("--s", type=_int_list, action="extend", dest="s_list")
    return parser


# ---------------------------------------------------------------- grid


def _primes(args) -> list[int]:
    ps = list(args.p_list or [])
    if args.p_range:
        ps += [p for p in args.p_range if p >= 3 and is_prime(p)]
    if not ps:
        raise UsageError("need --p or --p-range")
    return sorted(set(ps))


def _ms(args, p: int) -> list[int]:
    if args.m_all_divisors:
        return divisors(p - 1)
    if args.m_list:
        return sorted(set(args.m_list))
    raise UsageError("need --m, --m-all-divisors or --set")


def _ks(args, lo: int, hi: int) -> list[int]:
    ks = list(args.k_list or []) + list(args.k_range or [])
    return sorted(set(ks)) if ks else list(range(lo, hi + 1))


def _opts(args) -> dict[str, Any]:
    keep = ("algo", "bound", "delta", "epsilon", "log_base", "distinct", "exclude_zero", "digits", "b", "seed")
    return {k: getattr(args, k, None) for k in keep}


def _domains(args, p: int) -> list[tuple[tuple[int, ...], dict]]:
    if args.domain is not None:
        return [(tuple(args.domain), {})]
    out = []
    if args.all_domains:
        for mask in range(1, 1 << (p - 1)):
            out.append((tuple(x for x in range(1, p) if mask >> (x - 1) & 1), {"domain_index": mask}))
    for i in range(args.random_domains):
        rng = random.Random(f"{args.seed}:{p}:{i}")
        D = ValuedDomain.random_subset(p, rng)
        out.append((tuple(D.values), {"seed": args.seed, "domain_index": i}))
    return out


def expand(command: str, args) -> list[Cell]:
    """Grid cells for ``command`` in deterministic (p, m, k) order."""
    opts = _opts(args)
    cells: list[Cell] = []
    if command == "identity":
        return _identity_cells(args, opts)
    if command == "waring" and args.suite:
        ps = _primes(args)
        for p in ps:
            cells += [Cell("waring-suite", p, m, opts=opts) for p_, m in waring.suite_cells(p, p) if p_ == p]
        return cells
    for p in _primes(args):
        make_modulus(p)
        if command in ("count", "check", "phi") and (
            args.domain is not None or args.random_domains or args.all_domains
        ):
            if command == "check" and opts["bound"] != "lemma31":
                raise UsageError("--set/--random-domains apply to count, phi and check --bound lemma31")
            for dom, tag in _domains(args, p):
                n = len(set(dom))
                ks = _ks(args, 0 if command == "count" else 1, n)
                if command == "phi":
                    cells.append(Cell(command, p, None, None, dom, tag, opts))
                else:
                    cells += [Cell(command, p, None, k, dom, tag, opts) for k in ks]
            continue
        for m in _ms(args, p):
            if command in ("total", "phi", "waring") or (command == "check" and opts["bound"] in ("os", "expsum")):
                cells.append(Cell(command, p, m, None, opts=opts))
            else:
                lo = 1 if command == "check" and opts["bound"] in ("zhuwan", "lemma31") else 0
                cells += [Cell(command, p, m, k, opts=opts) for k in _ks(args, lo, p - 1)]
    return cells


def _identity_cells(args, opts) -> list[Cell]:
    ks = list(args.k_list or []) + list(args.k_range or [])
    if not ks:
        raise UsageError("identity needs --k or --k-range")
    cells = []
    if args.which == "cycle-index":
        for k in ks:
            for q in args.q or [Fraction(1)]:
                cells.append(Cell("identity", k=k, opts={**opts, "which": "cycle-index", "q": str(q)}))
    elif args.which == "box":
        for n in args.n_list or []:
            for s in args.s_list or []:
                for k in ks:
                    cells.append(Cell("identity", k=k, opts={**opts, "which": "box", "n": n, "s": s}))
    else:
        for n in args.n_list or []:
            for k in ks:
                cells.append(Cell("identity", k=k, opts={**opts, "which": "sieve", "n": n}))
    if not cells:
        raise UsageError("identity --which box needs --n and --s; sieve needs --n")
    return cells


# ---------------------------------------------------------------- evaluation


def _wanted_b(opts, b: int) -> bool:
    return opts.get("b") is None or b == opts["b"]


def _bound_rows(reports: list[BoundReport], opts) -> CellResult:
    rows, violated = [], False
    for r in reports:
        violated |= r.violated
        b = r.instance.get("b")
        if b is None or _wanted_b(opts, b):
            rows.append(r.row())
    return CellResult(rows, violated)


def _count_cell(cell: Cell) -> CellResult:
    opts = cell.opts
    if cell.domain is not None:
        D = ValuedDomain.from_set(cell.p, cell.domain)
        set_label = D.describe()
    else:
        D = ValuedDomain.power_image(cell.p, cell.m)
        set_label = None
    if not 0 <= cell.k <= D.n:
        raise ValueError(f"k must lie in [0, {D.n}], got {cell.k}")
    algos = ("dp", "genfun", "newton") if opts["algo"] == "all" else (opts["algo"],)
    tables = [counters.count_tables(D, cell.k, a)[cell.k] for a in algos]
    agreement = all(t == tables[0] for t in tables) if len(tables) > 1 else None
    rows = []
    for b, c in enumerate(tables[0]):
        if _wanted_b(opts, b):
            rows.append({
                "command": "count", "p": cell.p, "m": cell.m, "set": set_label, "k": cell.k, "b": b,
                "count": str(c), "algo": opts["algo"], "agreement": agreement, **cell.domain_tag,
            })
    return CellResult(rows, agreement is False)


def _total_cell(cell: Cell) -> CellResult:
    totals = counters.total_count(cell.p, cell.m)
    rows = [
        {"command": "total", "p": cell.p, "m": cell.m, "set": None, "k": None, "b": b,
         "count": str(c), "algo": "dp", "agreement": None}
        for b, c in enumerate(totals) if _wanted_b(cell.opts, b)
    ]
    return CellResult(rows)


def _phi_cell(cell: Cell) -> CellResult:
    if cell.domain is not None:
        D = ValuedDomain.from_set(cell.p, cell.domain)
    else:
        D = ValuedDomain.power_image(cell.p, cell.m)
    prof = character_profile(D)
    row = {
        "command": "phi", "p": cell.p, "m": cell.m, "set": D.describe(), "n": D.n,
        "phi": format_real(prof.phi), "argmax": prof.argmax,
        "numeric_error": format_real(prof.error_bound, 6), "method": prof.method, **cell.domain_tag,
    }
    return CellResult([row])


def _check_cell(cell: Cell) -> CellResult:
    o, p, m, k = cell.opts, cell.p, cell.m, cell.k
    name, digits = o["bound"], o["digits"]
    if name == "os":
        reps = bounds.check_os_total(p, m, o["log_base"], digits)
    elif name == "zhuwan":
        reps = bounds.check_zhu_wan(p, m, k, digits)
    elif name == "lemma31":
        if cell.domain is not None:
            D = ValuedDomain.from_set(p, cell.domain)
        else:
            D = ValuedDomain.power_image(p, m)
        reps = bounds.check_lemma31(D, k, digits, extra=cell.domain_tag or None)
    elif name == "expsum":
        reps = bounds.check_exp_sum(p, m, digits)
    elif name == "thm11":
        if o["delta"] is None or o["epsilon"] is None:
            raise UsageError("check --bound thm11 needs --delta and --epsilon")
        reps = bounds.check_thm11(p, m, k, bounds.BoundParams(o["delta"], o["epsilon"]), digits)
    else:
        reps = bounds.check_open_problem(p, m, k, o["epsilon"], digits)
    return _bound_rows(reps, o)


def _waring_row(res: waring.WaringResult) -> dict:
    row = res.row()
    return {"kind": row["kind"], "p": row["p"], "m": row["m"], "value": row["value"],
            "coverage": row["coverage"], **{k: v for k, v in row.items() if k.startswith("check_")},
            "include_zero": row["include_zero"]}


def _waring_cell(cell: Cell) -> CellResult:
    o = cell.opts
    if o["distinct"]:
        res = waring.gamma_distinct(cell.p, cell.m)
    else:
        res = waring.gamma_ordinary(cell.p, cell.m, include_zero=not o["exclude_zero"])
    violated = False in res.bound_checks.values()
    return CellResult([_waring_row(res)], violated)


def _suite_cell(cell: Cell) -> CellResult:
    r = waring.suite_cell(cell.p, cell.m, distinct=cell.opts["distinct"])
    return CellResult([r.row()], not r.cauchy_ok or r.ordering_ok is False)


def _identity_cell(cell: Cell) -> CellResult:
    o = cell.opts
    if o["which"] == "cycle-index":
        rep = combinatorics.cycle_index_identity_check(cell.k, Fraction(o["q"]))
    elif o["which"] == "box":
        rep = combinatorics.box_identity_check(o["n"], o["s"], cell.k)
    else:
        rep = combinatorics.sieve_identity_check(o["n"], cell.k)
    row = {"bound": rep.name, **rep.instance, "lhs": format_real(rep.lhs), "rhs": format_real(rep.rhs),
           "holds": rep.holds}
    return CellResult([row], rep.violated)


def _audit_cell(cell: Cell) -> CellResult:
    rows = [
        {"command": "audit", "p": cell.p, "m": cell.m, "k": cell.k, "b": r.b,
         "claimed": str(r.claimed), "true": str(r.true), "diff": str(r.diff)}
        for r in counters.decomposition_audit(cell.p, cell.m, cell.k)
        if _wanted_b(cell.opts, r.b)
    ]
    return CellResult(rows)  # descriptive: never a violation


_HANDLERS = {
    "count": _count_cell,
    "total": _total_cell,
    "phi": _phi_cell,
    "check": _check_cell,
    "waring": _waring_cell,
    "waring-suite": _suite_cell,
    "identity": _identity_cell,
    "audit": _audit_cell,
}


def run_cell(cell: Cell) -> CellResult:
    res = _HANDLERS[cell.command](cell)
    for row in res.rows:
        row_items = list(row.items())
        row.clear()
        row["schema_version"] = SCHEMA_VERSION
        row.update(row_items)
    return res


def _run_cell_or_skip(cell: Cell) -> CellResult:
    """Sweep worker: precondition failures become skipped rows, not errors."""
    try:
        return run_cell(cell)
    except (ValueError, ArithmeticError) as exc:
        row = {"schema_version": SCHEMA_VERSION, "command": cell.command, "p": cell.p, "m": cell.m,
               "k": cell.k, "skipped": True, "reason": str(exc)}
        return CellResult([row])


# ---------------------------------------------------------------- output


def _cell_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "jsonl":
        return "".join(json.dumps(r, separators=(", ", ": ")) + "\n" for r in rows)
    columns: list[str] = []
    for r in rows:
        columns += [c for c in r if c not in columns]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell_text(r.get(c)) for c in columns])
    return buf.getvalue()


def execute(command: str, args, parallel: bool) -> tuple[list[dict], bool]:
    cells = expand(command, args)
    jobs = max(1, args.jobs) if parallel else 1
    worker = _run_cell_or_skip if parallel else run_cell
    if jobs == 1 or len(cells) < 2:
        results = [worker(c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, cells, chunksize=max(1, len(cells) // (4 * jobs))))
    rows = [row for r in results for row in r.rows]
    return rows, any(r.violated for r in results)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.digits < 50:
        parser.error("--digits must be at least 50")
    sweep = args.command == "sweep"
    command = args.target if sweep else args.command
    if command == "check" and not args.bound:
        parser.error("sweep --command check needs --bound")
    if command == "identity" and not args.which:
        parser.error("sweep --command identity needs --which")
    try:
        rows, violated = execute(command, args, parallel=sweep)
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"waring-sieve: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_VIOLATION if violated else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
