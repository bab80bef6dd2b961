"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 resource budget exceeded,
3 verification failure.

Environment overrides: FQZETA_MAX_ENUM caps the number of monic polynomials
enumerated per power sum, FQZETA_MAX_PREC caps the u-adic precision.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .families import (
    FAMILIES, FamilyParams, check_large_indices, check_prop1, check_s1_negN, recursion_small_a,
)
from .field import FieldCtx, FieldError, field_for_q, make_field
from .multizeta import zeta_trunc
from .polyring import BudgetError, enum_budget, render_ratfunc
from .powersum import power_sum
from .relations import derive_relation, verify_relation_exact

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_MAX_PREC = 2000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


@dataclass(frozen=True)
class RunConfig:
    field: FieldCtx
    precision: int = 30
    degree_budget: int | None = None
    fmt: str = "text"
    out: str | None = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        q, p, s = args.q, args.p, args.s
        try:
            if q is None and p is None:
                raise UsageError("give --q or --p (with optional --s)")
            if p is not None:
                field = make_field(p, s or 1)
                if q is not None and field.q != q:
                    raise UsageError(f"--q {q} does not match p^s = {field.q}")
            else:
                field = field_for_q(q)
        except FieldError as exc:
            raise UsageError(str(exc)) from exc
        prec = getattr(args, "prec", 30)
        cap = int(os.environ.get("FQZETA_MAX_PREC", DEFAULT_MAX_PREC))
        if prec < 1:
            raise UsageError("--prec must be >= 1")
        if prec > cap:
            raise BudgetError(f"precision {prec} exceeds cap {cap}")
        fmt = args.format or ("json" if args.command in ("relation", "zeta") else "text")
        return cls(field, prec, args.degree_budget, fmt, args.out)


def parse_range(text: str) -> list[int]:
    """'1..60', '7' or '1,2,5' -> list of ints."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_powersum(cfg: RunConfig, args) -> int:
    val = power_sum(cfg.field, args.d, args.k)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({
            "q": cfg.field.q, "d": args.d, "k": args.k, "value": render_ratfunc(val),
            "num": list(val.num.coeffs), "den": list(val.den.coeffs),
        }))
    else:
        _emit(cfg, render_ratfunc(val))
    return EXIT_OK


def cmd_relation(cfg: RunConfig, args) -> int:
    rel = derive_relation(cfg.field.q, args.a, args.b)
    depths = parse_range(args.verify) if args.verify else []
    verified = {}
    for d in depths:
        ok, _ = verify_relation_exact(rel, d, cfg.field)
        verified[str(d)] = ok
    if cfg.fmt == "json":
        data = rel.to_json()
        data["parity"] = rel.parity()
        if depths:
            data["verified"] = verified
        _emit(cfg, json.dumps(data))
    else:
        lines = [f"S({rel.a},{rel.b}) over F_{rel.q}: "
                 + (", ".join(f"({f},{ai})" for f, ai in rel.pairs) or "empty")]
        for d, ok in verified.items():
            lines.append(f"  d={d}: {'pass' if ok else 'FAIL'}")
        _emit(cfg, "\n".join(lines))
    return EXIT_OK if all(verified.values()) else EXIT_VERIFY


def cmd_zeta(cfg: RunConfig, args) -> int:
    index = tuple(parse_range(args.indices))
    if not index or min(index) < 1:
        raise UsageError("--indices must be positive integers")
    tail = zeta_trunc(cfg.field, index, cfg.precision)
    if cfg.fmt == "json":
        data = tail.to_json()
        data["index"] = list(index)
        _emit(cfg, json.dumps(data))
    else:
        _emit(cfg, f"zeta({','.join(map(str, index))}) = {tail}")
    return EXIT_OK


def _family_rows(cfg: RunConfig, args):
    q = cfg.field.q
    fid = args.id
    if fid in FAMILIES:
        if fid == "a3" and q != 2:
            raise UsageError("family a3 is defined for q = 2 only")
        for b in parse_range(args.b or "1..20"):
            ok = FAMILIES[fid](q, b) == derive_relation(q, {"a1": 1, "a2": 2, "a3": 3}[fid], b)
            yield {"family": fid, "q": q, "b": b, "pass": ok}
    elif fid == "rec":
        p = cfg.field.p
        avals = parse_range(args.a) if args.a else list(range(2, p + 1))
        for a in avals:
            if not 2 <= a <= p:
                raise UsageError(f"rec needs 2 <= a <= p = {p}")
            bs = parse_range(args.b) if args.b else range(1, 4 * FamilyParams(q, a).r + 1)
            for b in bs:
                ok = recursion_small_a(q, a, b) == derive_relation(q, a, b)
                yield {"family": fid, "q": q, "a": a, "b": b, "pass": ok}
    elif fid in ("large", "prop1", "negN"):
        check = {"large": check_large_indices, "prop1": check_prop1, "negN": check_s1_negN}[fid]
        for n in parse_range(args.n or "1..3"):
            if n < 1:
                raise UsageError("--n must be >= 1")
            yield {"family": fid, "q": q, "n": n, "pass": check(cfg.field, n)}
    else:
        raise UsageError(f"unknown family id {fid!r}")


def cmd_family(cfg: RunConfig, args) -> int:
    rows = list(_family_rows(cfg, args))
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(rows))
    else:
        lines = []
        for r in rows:
            key = " ".join(f"{k}={r[k]}" for k in ("a", "b", "n") if k in r)
            lines.append(f"{r['family']:6s} q={r['q']} {key:12s} {'pass' if r['pass'] else 'FAIL'}")
        lines.append(f"{sum(r['pass'] for r in rows)}/{len(rows)} passed")
        _emit(cfg, "\n".join(lines))
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_VERIFY


def _table_cell(args):
    q, a, b = args
    rel = derive_relation(q, a, b)
    rel.check()
    return rel.dumps()


def cmd_table(cfg: RunConfig, args) -> int:
    q = cfg.field.q
    cells = [(q, a, b) for a in range(1, args.a_max + 1) for b in range(1, args.b_max + 1)]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            lines = list(pool.map(_table_cell, cells, chunksize=16))
    else:
        lines = [_table_cell(c) for c in cells]
    _emit(cfg, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field size q = p^s")
    common.add_argument("--p", type=int, help="characteristic (alternative to --q)")
    common.add_argument("--s", type=int, help="extension degree, with --p")
    common.add_argument("--format", choices=("text", "json"), default=None,
                        help="json by default for relation and zeta, text otherwise")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--degree-budget", type=int, default=None,
                        help="largest degree d for which S_d may be enumerated")

    parser = _Parser(prog="fqzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("powersum", parents=[common], help="exact S_d(k)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("relation", parents=[common], help="derive S(a,b)")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--verify", help="depths d to verify exactly, e.g. 1,2,3")

    sp = sub.add_parser("zeta", parents=[common], help="truncated multizeta value")
    sp.add_argument("--indices", required=True, help="comma-separated s_1,...,s_r")
    sp.add_argument("--prec", type=int, default=30, help="absolute u-adic precision N")

    sp = sub.add_parser("family", parents=[common], help="check a family formula")
    sp.add_argument("--id", required=True,
                    help="a1, a2, a3, rec, large, prop1 or negN")
    sp.add_argument("--b", help="range of b, e.g. 1..60")
    sp.add_argument("--a", help="values of a for the rec family")
    sp.add_argument("--n", help="range of n for large/prop1/negN")

    sp = sub.add_parser("table", parents=[common], help="bulk S(a,b) as JSON lines")
    sp.add_argument("--a-max", type=int, required=True)
    sp.add_argument("--b-max", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {
    "powersum": cmd_powersum,
    "relation": cmd_relation,
    "zeta": cmd_zeta,
    "family": cmd_family,
    "table": cmd_table,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        if cfg.degree_budget is None:
            return COMMANDS[args.command](cfg, args)
        if cfg.degree_budget < 0:
            raise UsageError("--degree-budget must be >= 0")
        with enum_budget(cfg.field.q ** cfg.degree_budget):
            return COMMANDS[args.command](cfg, args)
    except UsageError as exc:
        print(f"fqzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"fqzeta: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"fqzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
