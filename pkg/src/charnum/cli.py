"""Command-line interface: every calculator as a batch command emitting JSON.

Exit codes: 0 when every assertion passes, 1 on an assertion failure,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable

from charnum import cobordism, divisibility, obstructions
from charnum.combinatorics import alpha, partitions
from charnum.manifolds import (
    COMPLEX,
    char_vector,
    evaluate_linear,
    format_polynomial,
    parse_manifold,
    segre_number,
    segre_polynomial,
)

PASS, FAIL, INFO = "pass", "fail", "info"


class UsageError(Exception):
    pass


def jsonable(value: Any) -> Any:
    """Integers become decimal strings; containers are converted recursively."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        raise TypeError(f"refusing to serialize float {value!r}")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def make_report(command: str, parameters: dict, status: str, payload: Any) -> dict:
    return {
        "command": command,
        "parameters": jsonable(parameters),
        "status": status,
        "payload": jsonable(payload),
    }


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


# -- individual commands ------------------------------------------------------

def cmd_alpha(args):
    if args.m < 0:
        raise UsageError("alpha needs M >= 0")
    return INFO, {"value": alpha(args.m)}


def cmd_partitions(args):
    if args.n < 0:
        raise UsageError("partitions needs N >= 0")
    parts = partitions(args.n)
    return INFO, {
        "count": len(parts),
        "partitions": [
            {"exponents": list(p.exponents), "parts": list(p.parts()), "label": p.label()}
            for p in parts
        ],
    }


def _manifold(spec: str):
    try:
        return parse_manifold(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_chern(args):
    M = _manifold(args.manifold)
    v = char_vector(M)
    return INFO, {
        "manifold": M.label,
        "kind": M.kind,
        "dimension": M.dim,
        "domain": v.domain,
        "labels": v.labels(),
        "vector": list(v.values),
    }


def cmd_segre(args):
    if args.poly is not None:
        if args.poly < 1:
            raise UsageError("--poly needs D >= 1")
        coeffs = segre_polynomial(args.poly)
        return INFO, {
            "degree": args.poly,
            "polynomial": format_polynomial(coeffs),
            "coefficients": {p.label(): c for p, c in coeffs.items()},
        }
    M = _manifold(args.manifold)
    if M.kind != COMPLEX or M.dim < 1:
        raise UsageError("segre --manifold needs a complex manifold of dimension >= 1")
    direct = segre_number(M)
    via_poly = evaluate_linear(segre_polynomial(M.dim), char_vector(M))
    return _status(direct == via_poly), {
        "manifold": M.label,
        "dimension": M.dim,
        "segre_number": direct,
        "via_polynomial": via_poly,
    }


def _bound(args, kind=COMPLEX):
    return args.desk_bound if args.desk_bound is not None else cobordism.desk_bound(kind)


def _check_d(d, bound):
    if d < 1 or d > bound:
        raise UsageError(f"degree {d} outside the supported range 1..{bound}")


def cmd_mu_lattice(args):
    bound = _bound(args)
    _check_d(args.d, bound)
    model = cobordism.mu_model(args.d, bound)
    lat = model.lattice
    return INFO, {
        "degree": args.d,
        "labels": [p.label() for p in partitions(args.d)],
        "generators": [
            {"label": g.label, "chern": list(g.char_vector.values), "segre": g.segre_number}
            for g in model.generators
        ],
        "hnf": [list(r) for r in lat.basis],
        "rank": lat.dimension,
        "index": lat.index(),
    }


def cmd_mo_rank(args):
    bound = _bound(args, "real")
    _check_d(args.d, bound)
    model = cobordism.mo_model(args.d, bound)
    rank = model.space.dimension
    expected = cobordism.expected_mo_rank(args.d)
    return _status(rank == expected), {
        "degree": args.d,
        "rank": rank,
        "expected": expected,
        "generators": [g.label for g in model.generators],
    }


def psi_payload(d: int, bound: int, vector: list[int] | None = None) -> tuple[bool, dict]:
    mu = cobordism.mu_model(d, bound)
    mo = cobordism.mo_model(d, bound)
    images, outside = [], []
    for g in mu.generators:
        red = g.char_vector.mod2().values
        images.append({"label": g.label, "image": list(red)})
        if not mo.space.contains(red):
            outside.append(g.label)
    surjective = cobordism.mu_reduction_space(d, bound).span_equals(mo.space)
    payload = {
        "degree": d,
        "images": images,
        "outside_span": outside,
        "surjective": surjective,
        "mo_rank": mo.space.dimension,
    }
    ok = not outside
    if vector is not None:
        try:
            payload["vector_image"] = list(cobordism.psi_vector(tuple(vector), d, bound).values)
        except cobordism.PsiError as exc:
            payload["vector_error"] = str(exc)
            ok = False
    return ok, payload


def cmd_psi(args):
    bound = min(_bound(args), _bound(args, "real")) if args.desk_bound is None else args.desk_bound
    _check_d(args.d, bound)
    vec = None
    if args.vector:
        try:
            vec = [int(x) for x in args.vector.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --vector {args.vector!r}") from exc
        if len(vec) != len(partitions(args.d)):
            raise UsageError(f"--vector needs {len(partitions(args.d))} entries")
    ok, payload = psi_payload(args.d, bound, vec)
    return _status(ok), payload


def rt_payload(d: int, bound: int) -> tuple[bool, dict]:
    r = divisibility.rt_verify(d, bound)
    return r.ok, {"degree": d, "gcd": r.gcd, "computed_v2": r.computed_v2,
                  "predicted_v2": r.predicted_v2, "witness": r.witness}


def cmd_rt_verify(args):
    bound = _bound(args)
    _check_d(args.d, bound)
    ok, payload = rt_payload(args.d, bound)
    return _status(ok), payload


def cor4_payload(d: int, bound: int) -> tuple[bool, dict]:
    r = divisibility.cor4_check(d, bound)
    return r.ok, {
        "degree": d,
        "values": [{"label": lbl, "segre": s} for lbl, s in r.values],
        "odd": list(r.odd),
        "decomposable_not_div4": list(r.decomposable_not_div4),
        "decomposable_count": r.decomposable_count,
    }


def cmd_cor4(args):
    bound = _bound(args)
    _check_d(args.d, bound)
    ok, payload = cor4_payload(args.d, bound)
    return _status(ok), payload


def divtop_payload(d: int, e: int, bound: int) -> tuple[bool, dict]:
    predicate = divisibility.divtop_predicate(d, e)
    w = divisibility.divtop_solve(d, e, bound)
    witness = None
    if w is not None:
        witness = {"coefficients": list(w.coefficients), "polynomial": w.polynomial, "note": w.note}
    return (w is not None) == predicate, {"degree": d, "e": e, "predicate": predicate, "witness": witness}


def cmd_divtop(args):
    bound = _bound(args)
    _check_d(args.d, bound)
    if args.e < 1:
        raise UsageError("divtop needs E >= 1")
    try:
        ok, payload = divtop_payload(args.d, args.e, bound)
    except divisibility.PreconditionError as exc:
        return FAIL, {"degree": args.d, "e": args.e, "predicate": divisibility.divtop_predicate(args.d, args.e),
                      "witness": None, "error": str(exc)}
    return _status(ok), payload


def _check_report_payload(r: obstructions.CheckReport) -> dict:
    return {
        "d": r.d,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in r.checks],
        "values": {k: list(v) if isinstance(v, tuple) else v for k, v in r.values.items()},
    }


def cmd_gram(args):
    if args.d < 1:
        raise UsageError("gram needs D >= 1")
    try:
        g = obstructions.abelian_gram(args.d)
    except (obstructions.CheckFailed, ValueError) as exc:
        return FAIL, {"d": args.d, "error": str(exc)}
    return PASS, {"d": args.d, "labels": list(g.labels), "matrix": [list(r) for r in g.matrix]}


def cmd_resab(args):
    if args.d < 1:
        raise UsageError("resab needs D >= 1")
    r = obstructions.resab_checks(args.d)
    return _status(r.ok), _check_report_payload(r)


def cmd_quotab(args):
    if args.d < 1:
        raise UsageError("quotab needs D >= 1")
    r = obstructions.quotab_checks(args.d)
    return _status(r.ok), _check_report_payload(r)


def _double_point_payload(r: obstructions.DoublePointReport) -> dict:
    return {"label": r.label, "d": r.d, "self_intersection": r.self_intersection,
            "normal_degree": r.normal_degree, "modulus": r.modulus}


def cmd_double_point(args):
    try:
        inp, modulus = obstructions.load_double_point(args.file)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from exc
    if args.mod is not None:
        modulus = args.mod
    if modulus < 0:
        raise UsageError("modulus must be >= 0")
    r = obstructions.double_point_check(inp, modulus)
    return _status(r.ok), _double_point_payload(r)


def cmd_predicates(args):
    if args.c < 0 or args.d < 0 or (args.e is not None and args.e < 1):
        raise UsageError("predicates needs C, D >= 0 and E >= 1")
    r = obstructions.predicate_report(args.c, args.d, args.e)
    payload = r.as_dict()
    limit = max(16, args.c)
    payload["thji_e1_c_values"] = obstructions.thji_values(limit, 1)
    payload["table_limit"] = limit
    return INFO, payload


def sweep_cells(max_d: int, mu_bound: int, mo_bound: int, e_cap: int) -> list[tuple[str, Callable]]:
    cells: list[tuple[str, Callable]] = []
    for d in range(1, max_d + 1):
        if d <= mu_bound:
            cells.append((f"rt-verify {d}", lambda d=d: rt_payload(d, mu_bound)))
            cells.append((f"cor4 {d}", lambda d=d: cor4_payload(d, mu_bound)))
            for e in range(1, e_cap + 1):
                if divisibility.rt_predicate(d, e):
                    cells.append((f"divtop {d} {e}", lambda d=d, e=e: divtop_payload(d, e, mu_bound)))
        if d <= min(mu_bound, mo_bound):
            cells.append((f"psi {d}", lambda d=d: psi_payload(d, min(mu_bound, mo_bound))))
        if d <= mo_bound:
            def mo(d=d):
                rank = cobordism.mo_rank(d, mo_bound)
                expected = cobordism.expected_mo_rank(d)
                return rank == expected, {"degree": d, "rank": rank, "expected": expected}
            cells.append((f"mo-rank {d}", mo))
        cells.append((f"resab {d}", lambda d=d: _ok_payload(obstructions.resab_checks(d))))
        cells.append((f"quotab {d}", lambda d=d: _ok_payload(obstructions.quotab_checks(d))))

    def double_points():
        reports = [obstructions.double_point_check(i) for i in obstructions.embedding_suite()]
        return all(r.ok for r in reports), {"cases": [_double_point_payload(r) for r in reports]}

    def c_values():
        vals = obstructions.thji_values(16, 1)
        return vals == [2, 4, 5, 8, 9, 11, 16], {"values": vals}

    cells.append(("double-point suite", double_points))
    cells.append(("predicates table", c_values))
    return cells


def _ok_payload(r: obstructions.CheckReport) -> tuple[bool, dict]:
    return r.ok, _check_report_payload(r)


def cmd_sweep(args):
    mu_bound = _bound(args)
    mo_bound = _bound(args, "real")
    if args.max_d < 1:
        raise UsageError("sweep needs --max-d >= 1")
    cells = sweep_cells(args.max_d, mu_bound, mo_bound, args.e_cap)

    def run(cell):
        name, fn = cell
        ok, payload = fn()
        return {"cell": name, "status": _status(ok), "payload": payload}

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run, cells))
    else:
        results = [run(c) for c in cells]
    failed = [r["cell"] for r in results if r["status"] == FAIL]
    return _status(not failed), {"max_d": args.max_d, "cells": results, "failed": failed}


# -- plumbing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charnum",
        description="Characteristic numbers, cobordism lattices and divisibility checks.",
    )
    parser.add_argument("--table", action="store_true", help="human-aligned text instead of JSON")
    parser.add_argument("--desk-bound", type=int, default=None,
                        help="largest supported degree (default 10 for MU, 8 for MO; env CHARNUM_MAX_D)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("alpha", help="number of 1-bits of M")
    p.add_argument("m", type=int, metavar="M")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("partitions", help="partitions of N in canonical column order")
    p.add_argument("n", type=int, metavar="N")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("chern", help="Chern or Stiefel-Whitney numbers of a manifold")
    p.add_argument("--manifold", required=True, metavar="SPEC",
                   help="cp(N), h(M,N), rp(N), dold(M,N), or '*'-products such as cp(1)*h(2,2)")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("segre", help="top Segre number of a manifold, or the universal polynomial s_D")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--manifold", metavar="SPEC")
    g.add_argument("--poly", type=int, metavar="D")
    p.set_defaults(func=cmd_segre)

    p = sub.add_parser("mu-lattice", help="Chern-number lattice of MU_{2D}")
    p.add_argument("d", type=int, metavar="D")
    p.set_defaults(func=cmd_mu_lattice)

    p = sub.add_parser("mo-rank", help="rank of the Stiefel-Whitney model of MO_D")
    p.add_argument("d", type=int, metavar="D")
    p.set_defaults(func=cmd_mo_rank)

    p = sub.add_parser("psi", help="mod-2 reduction MU_{2D} -> MO_D on generators")
    p.add_argument("d", type=int, metavar="D")
    p.add_argument("--vector", metavar="V1,V2,...", help="also map this Chern-number vector")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("rt-verify", help="2-adic valuation of s_D on MU_{2D}, computed vs predicted")
    p.add_argument("d", type=int, metavar="D")
    p.set_defaults(func=cmd_rt_verify)

    p = sub.add_parser("cor4", help="s_D even on generators, divisible by 4 on products")
    p.add_argument("d", type=int, metavar="D")
    p.set_defaults(func=cmd_cor4)

    p = sub.add_parser("divtop", help="parity witness for s_D / 2^E")
    p.add_argument("d", type=int, metavar="D")
    p.add_argument("e", type=int, metavar="E")
    p.set_defaults(func=cmd_divtop)

    p = sub.add_parser("gram", help="Gram matrix of the invariant classes delta_k")
    p.add_argument("d", type=int, metavar="D")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("resab", help="parity and beta^2 checks on the Weil-restriction model")
    p.add_argument("d", type=int, metavar="D")
    p.set_defaults(func=cmd_resab)

    p = sub.add_parser("quotab", help="checks on the Z/4 quotient model")
    p.add_argument("d", type=int, metavar="D")
    p.set_defaults(func=cmd_quotab)

    p = sub.add_parser("double-point", help="compare deg([W]^2) with deg c_d(N) from a JSON file")
    p.add_argument("file", metavar="FILE.json")
    p.add_argument("--mod", type=int, default=None, metavar="M", help="compare modulo M (0 = exact)")
    p.set_defaults(func=cmd_double_point)

    p = sub.add_parser("predicates", help="which obstruction regimes apply at (C, D[, E])")
    p.add_argument("c", type=int, metavar="C")
    p.add_argument("d", type=int, metavar="D")
    p.add_argument("e", type=int, metavar="E", nargs="?", default=None)
    p.set_defaults(func=cmd_predicates)

    p = sub.add_parser("sweep", help="run the whole invariant suite up to --max-d")
    p.add_argument("--max-d", type=int, required=True, metavar="D")
    p.add_argument("--e-cap", type=int, default=divisibility.DEFAULT_E_CAP, metavar="E")
    p.add_argument("--jobs", type=int, default=1, metavar="N", help="worker threads")
    p.set_defaults(func=cmd_sweep)
    return parser


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    elif isinstance(value, list):
        out.append((prefix, " ".join("-" if v is None else str(v) for v in value)))
    else:
        out.append((prefix, "null" if value is None else str(value)))


def render_table(report: dict) -> str:
    rows: list[tuple[str, str]] = [("command", report["command"]), ("status", report["status"])]
    _flatten("", report["payload"], rows)
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    # thread count must not leak into the output
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command", "table", "jobs")}
    try:
        status, payload = args.func(args)
    except (UsageError, cobordism.OutOfRange) as exc:
        print(f"charnum {args.command}: error: {exc}", file=sys.stderr)
        return 2
    report = make_report(args.command, params, status, payload)
    if args.table:
        stdout.write(render_table(report) + "\n")
    else:
        stdout.write(json.dumps(report, indent=2) + "\n")
    return 1 if status == FAIL else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
