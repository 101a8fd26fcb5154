"""Command line interface: ``powfactor factor | bench | selftest``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import engine
from .errors import InvariantError, ResiduePromiseError
from .forms import ConstraintError, ParseError, RawInteger, RawWithResidue, SpecialForm, parse_special_form
from .sieve import ResidueInfo

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3

_BIG_KEYS = {"p", "G", "g", "B"}


def _event_json(event: dict) -> dict:
    out = {}
    for k, v in event.items():
        if k in _BIG_KEYS:
            v = str(v)
        elif k == "removed":
            v = [str(x) for x in v]
        out[k] = v
    return out


def factorization_json(raw: str, f: engine.Factorization, elapsed_ms: float) -> dict:
    return {
        "input": raw,
        "value": str(f.input),
        "factors": [
            {"p": str(p), "e": e, "certification": f.certification[p]} for p, e in f.factors
        ],
        "stats": {
            "mulmods": f.stats.mulmods,
            "gcds": f.stats.gcds,
            "schedule": [_event_json(ev) for ev in f.schedule],
        },
        "elapsed_ms": round(elapsed_ms, 3),
    }


def _parse_input(raw: str, residue: int | None, modulus: int | None):
    expr = parse_special_form(raw)
    if (residue is None) != (modulus is None):
        raise ConstraintError("--residue and --modulus must be given together")
    if residue is not None:
        if not isinstance(expr, RawInteger):
            raise ConstraintError("--residue/--modulus only apply to a plain integer")
        ResidueInfo(modulus, residue)  # validates the pair
        expr = RawWithResidue(expr.N, modulus, residue)
    return expr


def cmd_factor(args) -> int:
    expr = _parse_input(args.expr, args.residue, args.modulus)
    on_event = None
    if args.trace:
        def on_event(ev):
            print(json.dumps(_event_json(ev)), file=sys.stderr, flush=True)
    t0 = time.perf_counter()
    f = engine.factor(expr, on_event=on_event)
    elapsed = (time.perf_counter() - t0) * 1000
    if args.json:
        print(json.dumps(factorization_json(args.expr, f, elapsed), indent=2))
    else:
        for p, e in f.factors:
            print(f"{p}^{e}")
    return EXIT_OK


def bench_rows(raw: str) -> list[dict]:
    """Run the residue-accelerated route and the m = 2 baseline on one input."""
    expr = parse_special_form(raw)
    value = expr.value if isinstance(expr, SpecialForm) else expr.N
    runs = []
    for mode in ("accelerated", "baseline"):
        t0 = time.perf_counter()
        if mode == "accelerated" and isinstance(expr, SpecialForm):
            f = engine.special_form_factor(expr)
            m = max((b.d for b in f.branches), default=None)
        else:
            f = engine.factor(value)
            m = 2
        runs.append({
            "input": raw,
            "mode": mode,
            "m": m,
            "mulmods": f.stats.mulmods,
            "gcds": f.stats.gcds,
            "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3),
        })
    acc, base = runs[0]["mulmods"], runs[1]["mulmods"]
    ratio = 1.0 if acc == base else (base / acc if acc else None)
    for row in runs:
        row["ratio"] = ratio
    return runs


def cmd_bench(args) -> int:
    rows = [row for raw in args.exprs for row in bench_rows(raw)]
    if args.json:
        print(json.dumps(rows, indent=2))
        return EXIT_OK
    header = f"{'input':<14} {'mode':<12} {'m':>5} {'mulmods':>10} {'gcds':>7} {'ms':>10} {'ratio':>7}"
    print(header)
    for row in rows:
        ratio = "n/a" if row["ratio"] is None else f"{row['ratio']:.2f}"
        m = "-" if row["m"] is None else row["m"]
        print(f"{row['input']:<14} {row['mode']:<12} {m:>5} {row['mulmods']:>10} "
              f"{row['gcds']:>7} {row['elapsed_ms']:>10.1f} {ratio:>7}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest

    ok, lines = run_selftest(args.seed, sabotage_shift=args.sabotage_shift)
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powfactor", description="Deterministic factorization of a^n +- b^n."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factor an expression or an integer")
    p.add_argument("expr", help="e.g. 2^67-1, 3^5-2^5, 2^32+1, 10403")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--trace", action="store_true", help="stream schedule events to stderr")
    p.add_argument("--residue", type=int, help="r: every large prime factor is r mod M")
    p.add_argument("--modulus", type=int, help="M for --residue")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("bench", help="compare residue-accelerated and baseline search")
    p.add_argument("exprs", nargs="+")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="run reduced oracle and invariant checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sabotage-shift", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConstraintError) as exc:
        print(f"powfactor: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvariantError, ResiduePromiseError) as exc:
        print(f"powfactor: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
