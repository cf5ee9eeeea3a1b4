"""fqrank command line.

    fqrank bound  --field 2 --pattern identity:3
    fqrank exact  --field 2 --pattern 11/11
    fqrank mc     --field 2^8 --pattern full:4x4 --trials 100000 --seed 7
    fqrank diag   --field 3 --pattern patterns/example.txt --algorithm both
    fqrank verify --field 2 --field 3 --n 3 --k 3

Exit codes: 0 success, 2 parse/precondition/budget failure, 3 verification
counterexample found.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import BoundInapplicable
from .diagonalize import PreconditionError
from .gf import FieldError, parse_field
from .kernels import BACKEND
from .oracle import DEFAULT_BUDGET, BudgetExceeded, exact_prob, mc_prob
from .pattern import PatternError, SupportPattern, has_full_rank_realization
from .report import build_report, fmt_decimal
from .verify import verify_sweep

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 2, 3
DEFAULT_SEED = 1
DEFAULT_TRIALS = 100_000

CSV_COLUMNS = [
    "field", "n", "k", "weight", "ho_bound", "upper_bound",
    "block_bound.single", "block_bound.parallel", "oracle_method", "oracle_value", "oracle_stderr",
]


def parse_pattern(spec: str) -> SupportPattern:
    """A file path, ``identity:N``, ``full:NxK``, ``zeros:NxK``, or rows like ``110/011``."""
    path = Path(spec)
    if path.is_file():
        return SupportPattern.from_text(path.read_text())
    m = re.fullmatch(r"(identity|full|zeros):(\d+)(?:x(\d+))?", spec.strip())
    if m:
        kind, a, b = m.group(1), int(m.group(2)), m.group(3)
        if kind == "identity":
            if b is not None and int(b) != a:
                raise PatternError("identity patterns are square")
            return SupportPattern.identity(a)
        k = a if b is None else int(b)
        return SupportPattern.full(a, k) if kind == "full" else SupportPattern.zeros(a, k)
    rows = [r for r in re.split(r"[/;,\s]+", spec.strip()) if r]
    return SupportPattern.from_text("\n".join(rows))


def _algorithms(choice: str) -> tuple[str, ...]:
    return ("single", "parallel") if choice == "both" else (choice,)


def _config(args) -> dict:
    cfg = {"command": args.command, "version": __version__, "backend": BACKEND}
    for key in ("field", "pattern", "trials", "seed", "budget", "algorithm", "oracle", "n", "k",
                "all_sizes", "format"):
        if hasattr(args, key):
            cfg[key] = getattr(args, key)
    return cfg


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _text_header(cfg: dict) -> list[str]:
    return ["# " + " ".join(f"{k}={v}" for k, v in cfg.items())]


def _text_body(d: dict, indent: str = "") -> list[str]:
    lines = []
    for key in sorted(d):
        v = d[key]
        if isinstance(v, dict):
            lines.append(f"{indent}{key}:")
            lines += _text_body(v, indent + "  ")
        elif isinstance(v, str) and re.fullmatch(r"\d+/\d+", v) and f"{key}_decimal" not in d and "decimal" not in d:
            lines.append(f"{indent}{key}: {v} = {fmt_decimal(Fraction(v))}")
        else:
            lines.append(f"{indent}{key}: {v}")
    return lines


def _csv(cfg: dict, rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    for line in _text_header(cfg):
        buf.write(line + "\n")
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _emit(args, cfg: dict, payload: dict, csv_rows: list[dict] | None = None,
          csv_columns: list[str] | None = None) -> str:
    if args.format == "json":
        return _dump_json({"config": cfg, "result": payload})
    if args.format == "csv":
        return _csv(cfg, csv_rows or [], csv_columns or [])
    return "\n".join(_text_header(cfg) + _text_body(payload)) + "\n"


def _decimal_or_blank(x) -> str:
    return "" if x is None else fmt_decimal(x)


# -- subcommands ---------------------------------------------------------------

def cmd_bound(args) -> tuple[int, str]:
    field, b = parse_field(args.field), parse_pattern(args.pattern)
    if not has_full_rank_realization(b):
        raise PreconditionError("no full-rank realization: the pattern has no matching of size min(n, k)")
    rep = build_report(b, field, _algorithms(args.algorithm), oracle=args.oracle,
                       budget=args.budget, trials=args.trials, seed=args.seed)
    d = rep.to_dict()
    row = {"field": d["field"], "n": d["n"], "k": d["k"], "weight": d["weight"],
           "ho_bound": _decimal_or_blank(rep.ho_bound), "upper_bound": _decimal_or_blank(rep.upper_bound)}
    for name, v in rep.block_bounds.items():
        row[f"block_bound.{name}"] = fmt_decimal(v)
    if rep.oracle is not None:
        row.update(oracle_method=rep.oracle.method, oracle_value=fmt_decimal(rep.oracle.estimate),
                   oracle_stderr=fmt_decimal(rep.oracle.stderr))
    return EXIT_OK, _emit(args, _config(args), d, [row], CSV_COLUMNS)


def _oracle_output(args, res) -> tuple[int, str]:
    b = parse_pattern(args.pattern)
    d = {"field": parse_field(args.field).designation, "n": b.rows, "k": b.cols,
         "weight": b.weight(), "pattern": str(b), **res.to_dict()}
    cols = ["field", "n", "k", "weight", "method", "trials", "successes", "decimal", "stderr"]
    row = {c: d.get(c, "") for c in cols}
    return EXIT_OK, _emit(args, _config(args), d, [row], cols)


def cmd_exact(args) -> tuple[int, str]:
    field, b = parse_field(args.field), parse_pattern(args.pattern)
    return _oracle_output(args, exact_prob(b, field, args.budget))


def cmd_mc(args) -> tuple[int, str]:
    field, b = parse_field(args.field), parse_pattern(args.pattern)
    return _oracle_output(args, mc_prob(b, field, args.trials, args.seed))


def cmd_diag(args) -> tuple[int, str]:
    field, b = parse_field(args.field), parse_pattern(args.pattern)
    rep = build_report(b, field, _algorithms(args.algorithm), oracle="none")
    full = rep.to_dict()
    d = {k: v for k, v in full.items() if k.startswith(("block_bound", "structure"))}
    d.update(field=full["field"], n=full["n"], k=full["k"], weight=full["weight"],
             pattern=full["pattern"], orientation=full["orientation"])
    row = {"field": d["field"], "n": d["n"], "k": d["k"], "weight": d["weight"]}
    for name, v in rep.block_bounds.items():
        row[f"block_bound.{name}"] = fmt_decimal(v)
    cols = ["field", "n", "k", "weight"] + [f"block_bound.{a}" for a in rep.block_bounds]
    return EXIT_OK, _emit(args, _config(args), d, [row], cols)


def _faulty_bound(s, field) -> Fraction:
    return Fraction(1)


def cmd_verify(args) -> tuple[int, str]:
    args.field = args.field or ["2"]
    fields = [parse_field(f) for f in args.field]
    if args.all_sizes:
        sizes = [(n, k) for n in range(1, args.n + 1) for k in range(1, args.k + 1)]
    else:
        sizes = [(args.n, args.k)]
    kwargs = {"bound": _faulty_bound} if args.inject_fault else {}
    summary = verify_sweep(sizes, fields, _algorithms(args.algorithm), args.budget, **kwargs)
    d = summary.to_dict()
    cfg = _config(args)
    if args.format == "json":
        out = _dump_json({"config": cfg, "result": d})
    elif args.format == "csv":
        rows = [{"suite": s, **v} for s, v in d["suites"].items()]
        out = _csv(cfg, rows, ["suite", "passed", "failed"])
    else:
        lines = _text_header(cfg)
        lines.append(f"patterns: {d['patterns']}")
        for s, v in d["suites"].items():
            lines.append(f"{s}: {v['passed']} passed, {v['failed']} failed")
        for ce in summary.counterexamples:
            lines.append(f"COUNTEREXAMPLE [{ce['suite']}] GF({ce['field']}): {ce['detail']}")
            lines += ["  " + ln for ln in ce["pattern"].splitlines()]
        lines.append(f"failures: {d['failures']}")
        out = "\n".join(lines) + "\n"
    return (EXIT_OK if summary.ok else EXIT_COUNTEREXAMPLE), out


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fqrank", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"fqrank {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, pattern=True):
        if pattern:
            p.add_argument("--field", default="2", help='field designation, e.g. "2", "2^8", "2^8:poly=1,0,1,1,1,0,0,0,1"')
            p.add_argument("--pattern", required=True, help="pattern file, identity:N, full:NxK, zeros:NxK or rows like 110/011")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max realizations to enumerate (default 2^26)")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", help="write output here instead of stdout")

    p = sub.add_parser("bound", help="all bounds for one pattern")
    common(p)
    p.add_argument("--algorithm", choices=("single", "parallel", "both"), default="both")
    p.add_argument("--oracle", choices=("auto", "exact", "mc", "none"), default="auto")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("exact", help="exact P_FR by enumeration")
    common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("mc", help="Monte Carlo estimate of P_FR")
    common(p)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("diag", help="block-diagonalize a pattern")
    common(p)
    p.add_argument("--algorithm", choices=("single", "parallel", "both"), default="both")
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("verify", help="exhaustive bound/oracle consistency sweep")
    common(p, pattern=False)
    p.add_argument("--field", action="append", help="repeatable; default 2")
    p.add_argument("--n", type=int, default=2, help="rows (default 2)")
    p.add_argument("--k", type=int, default=2, help="columns (default 2)")
    p.add_argument("--all-sizes", action="store_true", help="sweep every size up to n x k")
    p.add_argument("--algorithm", choices=("single", "parallel", "both"), default="both")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, out = args.func(args)
    except (PreconditionError, BoundInapplicable) as exc:
        print(f"fqrank: precondition failed: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FieldError, PatternError, BudgetExceeded, ValueError, OSError) as exc:
        print(f"fqrank: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
