"""``sl2classes`` command line: products, classification, verification, grids, tables."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundaryAmbiguous, NotUnimodular, ParseError
from .ids import normalize_to_gplus
from .matrix_core import Mat2, classify
from .notation import format_notation, parse_product, to_json_obj

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    trials: int = 10**4
    tol: float = 1e-9
    snap_denominator_bound: int = 360
    output: str = "text"
    group: str = "SL2"

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("--trials must be at least 1")
        if not 0 < self.tol <= 1e-3:
            raise ValueError("--tol must lie in (0, 1e-3]")
        if self.snap_denominator_bound < 1:
            raise ValueError("--snap-bound must be positive")


def _factors(expr: str):
    from .product_engine import as_class_id

    sets = parse_product(expr)
    ids = [as_class_id(s) for s in sets]
    return sets, ids


def cmd_product(expr: str, cfg: RunConfig) -> str:
    from .notation import format_psl
    from .product_engine import product_n, product_sets, psl2_product, psl2_project

    sets, ids = _factors(expr)
    if all(i is not None for i in ids):
        result = product_n(ids)
    else:
        result = product_sets(sets)
    if cfg.group == "PSL2":
        proj = psl2_project(result) if None in ids else psl2_product(ids)
        text = format_psl(proj.rep)
        obj = {"expr": expr, "group": "PSL2", "result": text, "set": to_json_obj(proj.rep)}
    else:
        text = format_notation(result)
        obj = {"expr": expr, "group": "SL2", "result": text, "set": to_json_obj(result)}
    return json.dumps(obj) if cfg.output == "json" else text


def cmd_classify(text: str, cfg: RunConfig) -> str:
    try:
        entries = [float(p) for p in text.split(",")]
    except ValueError:
        raise ParseError("matrix entries must be decimals", text, 0) from None
    if len(entries) != 4:
        raise ParseError(f"expected 4 comma-separated entries, got {len(entries)}", text, 0)
    m = Mat2(*entries, det_tol=max(cfg.tol, 1e-9))
    cid = classify(m, tol=cfg.tol, angle_bound=cfg.snap_denominator_bound)
    label = str(cid)
    if cfg.group == "PSL2":
        label = str(normalize_to_gplus(cid)[0]) + "~"
    if cfg.output == "json":
        return json.dumps({"matrix": text, "class": label, "trace": m.trace})
    return label


def cmd_verify(expr: str, cfg: RunConfig, attempts: int = 10**5):
    from .mc_oracle import verify_product
    from .product_engine import product_n

    _, ids = _factors(expr)
    if any(i is None for i in ids):
        raise ValueError("verify needs every factor to be a single class")
    report = verify_product(ids, product_n(ids), cfg.trials, cfg.seed, cfg.tol, attempts=attempts)
    out = report.to_json() if cfg.output == "json" else report.summary()
    return out, report.ok


def cmd_figure1(step: str, cfg: RunConfig, signed: bool = False) -> str:
    from .product_engine import figure1_csv

    return figure1_csv(Fraction(step), signed).rstrip("\n")


def cmd_tables(cfg: RunConfig) -> str:
    from .product_engine import tables

    rows = tables()
    if cfg.output == "json":
        return json.dumps([
            {
                "table": name,
                "factors": r.factors,
                "condition": r.condition,
                "result": r.result,
                "example": " * ".join(str(c) for c in r.example),
                "example_result": format_notation(val),
                "provenance": r.provenance,
            }
            for name, r, val in rows
        ], indent=1)
    lines = []
    for name, r, val in rows:
        cond = f" [{r.condition}]" if r.condition else ""
        example = " * ".join(str(c) for c in r.example)
        lines.append(
            f"{name:9s} | {r.factors}{cond} = {r.result} | e.g. {example} = {format_notation(val)}"
            f" | {r.provenance}"
        )
    return "\n".join(lines)


def cmd_covering(cfg: RunConfig) -> str:
    from .product_engine import covering_numbers

    res = covering_numbers()
    if cfg.output == "json":
        return json.dumps({
            "cn": res.cn,
            "ecn": res.ecn,
            "cn_witness": str(res.cn_witness),
            "ecn_witness": [str(c) for c in res.ecn_witness],
        })
    return "\n".join([
        str(res),
        f"cn witness: {res.cn_witness}",
        "ecn witness: " + " * ".join(str(c) for c in res.ecn_witness),
    ])


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--trials", type=int, default=d(10**4))
    p.add_argument("--tol", type=float, default=d(1e-9))
    p.add_argument("--snap-bound", type=int, default=d(360), dest="snap_bound")
    p.add_argument("--json", action="store_true", default=d(False))
    p.add_argument("--group", choices=["SL2", "PSL2"], default=d("SL2"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sl2classes", description=__doc__)
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", parents=[common], help="product of '*'-separated classes")
    p.add_argument("expr")
    p = sub.add_parser("classify", parents=[common], help="class of the matrix 'a,b,c,d'")
    p.add_argument("matrix")
    p = sub.add_parser("verify", parents=[common], help="check a product against sampled matrices")
    p.add_argument("expr")
    p.add_argument("--attempts", type=int, default=10**5)
    p = sub.add_parser("figure1", parents=[common], help="CSV grid of I in C3[a]C3[b]C3[c]")
    p.add_argument("--step", default="1/12")
    p.add_argument("--signed", action="store_true", help="angles in ]-1,1[ instead of ]0,2[")
    sub.add_parser("tables", parents=[common], help="reconstructed product tables")
    sub.add_parser("covering", parents=[common], help="covering numbers of PSL(2,R)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            seed=args.seed,
            trials=args.trials,
            tol=args.tol,
            snap_denominator_bound=args.snap_bound,
            output="json" if args.json else "text",
            group=args.group,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    status = EXIT_OK
    try:
        if args.command == "product":
            out = cmd_product(args.expr, cfg)
        elif args.command == "classify":
            out = cmd_classify(args.matrix, cfg)
        elif args.command == "verify":
            out, ok = cmd_verify(args.expr, cfg, args.attempts)
            status = EXIT_OK if ok else EXIT_VERIFY
        elif args.command == "figure1":
            out = cmd_figure1(args.step, cfg, args.signed)
        elif args.command == "tables":
            out = cmd_tables(cfg)
        else:
            out = cmd_covering(cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        if exc.text:
            print("  " + exc.text, file=sys.stderr)
            print("  " + " " * exc.pos + "^", file=sys.stderr)
        return EXIT_PARSE
    except (NotUnimodular, BoundaryAmbiguous, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        print(out)
    except BrokenPipeError:  # pragma: no cover - e.g. piped into head
        sys.stderr.close()
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
