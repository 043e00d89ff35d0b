"""Command-line interface.

Exit codes: 0 certified / clean diff, 1 not certified / diff present,
2 input error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .arith import enumerate_deltas, minimal_generators
from .congruence import curve_invariants, projection_degree
from .facts import FactError, load_facts, parse_curve_ref
from .fields import ff
from .gonality import (format_certificate, gonality_lower_bound,
                       gonality_upper_search, gonality_upper_search_q)
from .koszul import betti_22
from .linalg import Budget, BudgetExceeded
from .model import ModelError, load_model, reduce_model
from .points import count_points, load_point_pool
from .engine import EngineError, canonical_label, propagate
from .report import (RENDERERS, compare_to_golden, parse_golden, table_rows)

EXIT_OK, EXIT_DIFF, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

DATA_ENV = "MODGON_DATA"


def default_data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else Path(__file__).parent / "data"


def _parse_levels(specs: list[str]) -> list[int]:
    levels: set[int] = set()
    for spec in specs:
        if "-" in spec:
            a, b = spec.split("-", 1)
            levels.update(range(int(a), int(b) + 1))
        else:
            levels.add(int(spec))
    if not levels or min(levels) < 1:
        raise ValueError(f"empty or invalid level range {specs}")
    return sorted(levels)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------


def cmd_lattice(args) -> int:
    levels = _parse_levels(args.level)

    def describe(n):
        lines = []
        deltas = enumerate_deltas(n, proper_only=True)
        for delta in deltas:
            inv = curve_invariants(n, delta)
            gens = ",".join(str(g) if g != n - 1 else "-1"
                            for g in minimal_generators(delta))
            lines.append(f"curve {n}:{gens} order={delta.order} "
                         f"genus={inv.genus} index={inv.mu}")
        for d1 in deltas:
            for d2 in deltas:
                if d1 is not d2 and d2.contains(d1):
                    lines.append(
                        f"edge {canonical_label(d1)} -> {canonical_label(d2)} "
                        f"degree={projection_degree(d1, d2)}")
        return lines

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        blocks = list(pool.map(describe, levels))
    out = []
    for block in blocks:
        out.extend(block)
    _emit("\n".join(out) + ("\n" if out else ""), args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    delta = parse_curve_ref(f"{args.level[0]}:{args.delta}")
    inv = curve_invariants(int(args.level[0]), delta)
    lines = [
        f"curve {canonical_label(delta)}",
        f"index {inv.mu}",
        f"nu2 {inv.nu2}",
        f"nu3 {inv.nu3}",
        f"cusps {inv.nu_inf}",
        f"genus {inv.genus}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _load_fixture(args):
    models_dir = Path(args.models) if args.models else default_data_dir() / "models"
    path = models_dir / f"{args.model}.model"
    if not path.exists():
        raise ModelError(f"no model file {path}")
    model = load_model(path)
    pool = hyperplane = None
    pool_path = path.with_suffix(".points")
    if args.prime:
        model = reduce_model(model, ff(args.prime, 1))
        if pool_path.exists():
            pool, hyperplane = load_point_pool(pool_path, model)
    return model, pool, hyperplane


def cmd_certify(args) -> int:
    budget = Budget(args.budget)
    model, pool, _ = _load_fixture(args)
    if args.kind == "count":
        if model.field is None:
            raise ModelError("count needs --prime")
        lines = [f"label {model.label}", f"model_hash {model.content_hash()}",
                 f"p {model.field.p}"]
        for k in range(1, args.ext + 1):
            lines.append(f"count {k} {count_points(model, k, budget)}")
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if args.kind == "betti":
        field = ff(args.prime, 1) if args.prime else None
        base = model if model.field is None else model
        result = betti_22(base, field=field, budget=budget)
        lines = [f"label {model.label}", f"model_hash {model.content_hash()}",
                 f"field {result.field_desc}", f"beta22 {result.beta22}",
                 f"rank_first {result.rank_first}",
                 f"rank_second {result.rank_second}",
                 f"dim_middle {result.dim_middle}"]
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK if result.beta22 == 0 else EXIT_DIFF
    if args.kind == "fp-lower":
        if model.field is None:
            raise ModelError("fp-lower needs --prime")
        cert = gonality_lower_bound(model, args.degree, budget, pool=pool)
    elif args.kind == "upper":
        if args.prime:
            cert = gonality_upper_search(model, args.degree, budget, pool=pool)
        else:
            cert = gonality_upper_search_q(model, args.degree,
                                           height=args.height, budget=budget)
    else:  # pragma: no cover - argparse restricts choices
        raise ModelError(f"unknown certify kind {args.kind}")
    _emit(format_certificate(cert), args.out)
    return EXIT_OK if cert.certified else EXIT_DIFF


def cmd_report(args) -> int:
    levels = _parse_levels(args.level)
    facts_path = Path(args.facts) if args.facts else (
        default_data_dir() / "facts" / "paper_facts.txt")
    facts = load_facts(facts_path)
    ledger = propagate(levels, facts)
    rows = table_rows(ledger)
    text = RENDERERS[args.format](rows)
    _emit(text, args.out)
    if not args.diff:
        return EXIT_OK
    golden_path = Path(args.golden) if args.golden else (
        default_data_dir() / "table1_golden.txt")
    golden = [r for r in parse_golden(golden_path.read_text())
              if int(r.curve.split(":", 1)[0]) in set(levels)]
    cmp = compare_to_golden(ledger, golden)
    for note in cmp.flagged:
        sys.stderr.write(f"flagged: {note}\n")
    for miss in cmp.mismatches:
        sys.stderr.write(f"diff: {miss}\n")
    return EXIT_OK if cmp.ok else EXIT_DIFF


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="modgon")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this file")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("lattice", help="list curves and projection edges")
    p.add_argument("--level", action="append", required=True,
                   help="level N or range A-B (repeatable)")
    common(p)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("invariants", help="congruence invariants of one curve")
    p.add_argument("--level", action="append", required=True)
    p.add_argument("--delta", required=True,
                   help="comma-separated generators, e.g. 6 or 5,8")
    common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("certify", help="run a certificate computation")
    p.add_argument("kind", choices=("fp-lower", "upper", "betti", "count"))
    p.add_argument("--model", required=True, help="model label in --models dir")
    p.add_argument("--models", help="directory of model files")
    p.add_argument("--prime", type=int, help="reduce mod p (omit for Q)")
    p.add_argument("--ext", type=int, default=3, help="max extension degree")
    p.add_argument("--degree", type=int, default=4, help="target divisor degree")
    p.add_argument("--height", type=int, default=30, help="Q point height bound")
    p.add_argument("--budget", type=int, default=10**8)
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("report", help="regenerate the gonality table")
    p.add_argument("--level", action="append", required=True)
    p.add_argument("--facts", help="facts file (default: shipped facts)")
    p.add_argument("--golden", help="golden table (default: shipped)")
    p.add_argument("--diff", action="store_true",
                   help="compare against the golden table")
    p.add_argument("--format", choices=sorted(RENDERERS), default="text")
    common(p)
    p.set_defaults(func=cmd_report)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "budget", 1) <= 0 or args.workers <= 0:
        sys.stderr.write("error: budgets and worker counts are positive\n")
        return EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return EXIT_BUDGET
    except (ModelError, FactError, EngineError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
