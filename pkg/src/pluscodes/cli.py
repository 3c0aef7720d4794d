"""Command-line interface: ``pluscodes <command> ...``.

Exit codes: 0 pass or hit, 1 verified failure or no result, 2 usage or
data error.  Every command takes ``--json``.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from pathlib import Path

from .codes import DimensionTooLarge, DistanceTable, LinearCode, make_cyclic_check, min_distance, n_min_bound
from .cssplus import PlusCode, verify_plus
from .gf2 import GF2Error
from .qstate import (
    OracleScaleError,
    SignedCode,
    SignVector,
    format_listing,
    min_n_for,
    quantum_hamming_bound,
    sign_vector,
    verify_orthogonal,
    word_at,
)
from .registry import Entry, Registry, RegistryError, parse_entry
from .search import search_displacements, search_signs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SKELETON_ALIASES = {
    "g5": "laflamme-5-1-3",
    "g8": "steane-8-3-3",
    "g10": "signed-10-4-3",
    "g11": "signed-11-5-3",
}

MAX_EXPAND_TERMS = 1 << 20


class UsageError(Exception):
    pass


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text.rstrip("\n"))


def _lookup(ref: str, registry: Registry | None = None) -> Entry:
    """A registry name, an alias, or a path to a record file."""
    registry = registry or Registry.load()
    ref = SKELETON_ALIASES.get(ref, ref)
    if ref in registry:
        return registry[ref]
    path = Path(ref)
    if path.is_file():
        try:
            return parse_entry(path.read_text(), str(path))
        except RegistryError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown code {ref!r} (not a registry name or record file)")


# --------------------------------------------------------------------------
# registry


def cmd_registry(args) -> int:
    reg = Registry.load()
    if args.action == "list":
        entries = [reg[n] for n in reg.names() if args.kind is None or reg[n].kind == args.kind]
        rows = [e.params() for e in entries]
        lines = [f"{'name':24} {'kind':9} {'n':>4} {'k/K':>4} {'d':>3}  provenance"]
        for e in entries:
            dim = e.K if e.K is not None else e.k
            lines.append(
                f"{e.name:24} {e.kind:9} {e.n:4} {'' if dim is None else dim:>4} "
                f"{'' if e.d is None else e.d:>3}  {e.provenance}"
            )
        lines.append(f"{len(entries)} entries")
        _emit(args, {"entries": rows, "count": len(rows)}, "\n".join(lines))
        return EXIT_OK
    if not args.name:
        raise UsageError("registry show needs a name")
    e = _lookup(args.name, reg)
    data = e.params()
    data["blocks"] = e.blocks
    if e.offset:
        data["offset"] = e.offset
    if e.kind == "signed":
        code = e.build()
        data["signs_binary"] = [SignVector(code.w, s).to_binary() for s in code.sign_gen]
        data["sign_vectors"] = [sign_vector(code, b).to_binary() for b in range(1 << code.K)]
    _emit(args, data, e.to_text())
    return EXIT_OK


# --------------------------------------------------------------------------
# verify


def _budget(args, default: tuple[int, int] | None):
    if args.t is not None:
        if args.tx is not None or args.tz is not None:
            raise UsageError("give either --t or --tx/--tz")
        return {"t": args.t}
    if args.tx is not None or args.tz is not None:
        if args.tx is None or args.tz is None:
            raise UsageError("--tx and --tz go together")
        return {"tx": args.tx, "tz": args.tz}
    if default is None:
        raise UsageError("signed codes need an error budget (--t or --tx/--tz)")
    return {"tx": default[0], "tz": default[1]}


def _budget_text(b: dict) -> str:
    return f"t={b['t']}" if "t" in b else f"tx={b['tx']} tz={b['tz']}"


def _verify_one(e: Entry, args) -> tuple[bool, dict, list[str]]:
    out: dict = {"name": e.name, "kind": e.kind}
    lines = [f"{e.name} ({e.kind}, n={e.n})"]
    ok = True
    if e.kind == "catalog":
        raise UsageError(f"{e.name} is a catalog entry with no matrices to verify")
    if e.kind == "classical":
        code: LinearCode = e.build()
        d = min_distance(code)
        out.update({"n": code.n, "k": code.k, "d": d})
        lines.append(f"  [{code.n},{code.k},{d}]")
        if e.d is not None:
            out["declared_d"] = e.d
            ok = d == e.d
            lines.append(f"  declared d={e.d}: {'match' if ok else 'MISMATCH'}")
        out["pass"] = ok
        return ok, out, lines
    default = None
    if e.kind == "plus":
        p: PlusCode = e.build()
        params = verify_plus(p)
        out["classical"] = params.as_dict()
        lines.append(f"  classical: {params.label()}  d1={params.d1} d2={params.d2}")
        if e.d is not None:
            out["declared_d"] = e.d
            if min(params.d1, params.d2) < e.d:
                ok = False
                lines.append(f"  declared d={e.d}: NOT reached")
        default = (params.t1, params.t2)
    elif args.classical_only:
        raise UsageError(f"{e.name} is a signed code; it has no classical-only check")
    if not args.classical_only:
        code = e.signed()
        budget = _budget(args, default)
        try:
            rep = verify_orthogonal(code, method=args.method, **budget)
        except OracleScaleError as exc:
            if e.kind == "plus" and args.t is None and args.tx is None:
                out["oracle"] = {"skipped": str(exc)}
                lines.append(f"  oracle: skipped ({exc}); classical result stands")
                out["pass"] = ok
                return ok, out, lines
            raise UsageError(str(exc)) from None
        out["oracle"] = dict(rep.as_dict(), budget=budget)
        lines.append(
            f"  oracle {_budget_text(budget)}: {'pass' if rep.passed else 'FAIL'}"
            f"  ({rep.n_states} states, {rep.n_errors} errors, {rep.conflict_count} conflicts)"
        )
        for c in rep.first_conflicts:
            lines.append(f"    <v{c['a'][0]}|{c['a'][1]}|...|{c['b'][1]}|v{c['b'][0]}> = {c['inner']}")
        ok = ok and rep.passed
    out["pass"] = ok
    return ok, out, lines


def cmd_verify(args) -> int:
    reg = Registry.load()
    results = []
    text = []
    all_ok = True
    for ref in args.codes:
        ok, data, lines = _verify_one(_lookup(ref, reg), args)
        all_ok &= ok
        results.append(data)
        text.extend(lines)
    text.append("PASS" if all_ok else "FAIL")
    _emit(args, {"results": results, "pass": all_ok}, "\n".join(text))
    return EXIT_OK if all_ok else EXIT_FAIL


# --------------------------------------------------------------------------
# expand


def cmd_expand(args) -> int:
    e = _lookup(args.name)
    if e.kind not in ("plus", "signed"):
        raise UsageError(f"{e.name} is not a quantum code")
    code = e.signed()
    if (1 << code.K) * code.w > MAX_EXPAND_TERMS:
        raise UsageError(f"{e.name} has {(1 << code.K) * code.w} terms; expansion refused")
    if args.json:
        vectors = []
        for b in range(1 << code.K):
            s = sign_vector(code, b)
            vectors.append(
                {
                    "label": "v" + (format(b, f"0{code.K}b") if code.K else ""),
                    "terms": [
                        {"sign": "-" if s.sign(m) < 0 else "+", "word": str(word_at(code, b, m))}
                        for m in range(code.w)
                    ],
                }
            )
        print(json.dumps({"name": e.name, "n": code.n, "K": code.K, "w": code.w, "vectors": vectors}, indent=2))
    else:
        sys.stdout.write(format_listing(code))
    return EXIT_OK


# --------------------------------------------------------------------------
# table


def cmd_table(args) -> int:
    if args.which == "nmin":
        table = DistanceTable.load(args.dtable)
        ds = args.d or [3, 5, 7, 9, 11, 13, 15]
        dps = args.dperp or [3, 5, 7, 9, 11, 13, 15]
        cells = []
        lines = ["d_perp \\ d " + "".join(f"{d:>5}" for d in ds)]
        for dp in dps:
            row = f"{dp:>10} "
            for d in ds:
                if d > dp:
                    row += f"{'':>5}"
                    continue
                try:
                    n = n_min_bound(d, dp, table)
                except LookupError:
                    n = None
                cells.append({"d": d, "d_perp": dp, "n_min": n})
                row += f"{'>' + str(table.max_n) if n is None else n:>5}"
            lines.append(row)
        _emit(args, {"cells": cells, "max_n": table.max_n}, "\n".join(lines))
        return EXIT_OK
    if not args.K:
        raise UsageError("table bound needs --K")
    rows = []
    lines = [f"{'K':>3} {'t':>3} {'n_min':>6}"]
    for K in args.K:
        n = min_n_for(K, args.t)
        rep = quantum_hamming_bound(n, K, args.t)
        rows.append({"K": K, "t": args.t, "n_min": n, **rep.as_dict()})
        flag = "  perfect" if rep.perfect else ""
        lines.append(f"{K:>3} {args.t:>3} {n:>6}   {rep.lhs} <= {rep.rhs}{flag}")
    if args.n is not None:
        for K in args.K:
            rep = quantum_hamming_bound(args.n, K, args.t)
            rows.append({"K": K, "t": args.t, "n": args.n, **rep.as_dict()})
            lines.append(
                f"n={args.n} K={K} t={args.t}: {rep.lhs} vs {rep.rhs} "
                f"{'perfect' if rep.perfect else 'satisfied' if rep.satisfied else 'violated'}"
            )
    _emit(args, {"rows": rows}, "\n".join(lines))
    return EXIT_OK


# --------------------------------------------------------------------------
# search


def _record_signed(name: str, code: SignedCode, command: str) -> Entry:
    blocks = {"gcos": code.gcos.to_text().split(), "d": code.d_matrix.to_text().split()}
    w = code.w
    if code.sign_table:
        raise UsageError("non-linear sign tables cannot be written as registry records")
    blocks["signs"] = [SignVector(w, s).to_hex() for s in code.sign_gen]
    return Entry(
        name=name,
        kind="signed",
        n=code.n,
        K=code.K,
        provenance="derived",
        command=command,
        offset=SignVector(w, code.sign_offset).to_hex() if code.sign_offset else "",
        blocks=blocks,
    )


def cmd_search(args) -> int:
    command = "pluscodes " + " ".join(shlex.quote(a) for a in args.argv)
    if args.which == "signs":
        e = _lookup(args.skeleton)
        if e.kind == "signed":
            gcos, d = e.matrix("gcos"), e.matrix("d")
        elif e.kind == "plus":
            p = e.build()
            gcos, d = p.gcos, p.d_matrix
        else:
            raise UsageError(f"{e.name} has no (gcos, D) skeleton")
        given = any(v is not None for v in (args.t, args.tx, args.tz))
        budget = _budget(args, None) if given else {"t": 1}
        try:
            rep = search_signs(
                gcos,
                d,
                linear_only=not args.nonlinear,
                allow_offset=not args.no_offset,
                exhaustive=args.exhaustive,
                full_offsets=args.full_offsets,
                limit=args.limit,
                **budget,
            )
        except (OracleScaleError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        data = rep.as_dict()
        data["budget"] = budget
        data["skeleton"] = e.name
        lines = [
            f"skeleton {e.name}, {_budget_text(budget)}: space {rep.space_size}, "
            f"examined {rep.examined} (visited {rep.visited}, pruned {rep.pruned}) in {rep.elapsed:.2f}s"
        ]
        if rep.result is None:
            lines.append("no result" + ("" if rep.complete else " (candidate limit reached)"))
        else:
            res = data["result"]
            if "sign_gen" in res:
                lines.append("signs: " + " ".join(res["sign_gen"]) + f"  offset: {res['sign_offset']}")
            else:
                lines.append("sign table: " + " ".join(res["sign_table"]))
            if args.record:
                rec = _record_signed(args.record, rep.result, command)
                data["record"] = rec.to_text()
                lines.append("")
                lines.append(rec.to_text())
        _emit(args, data, "\n".join(lines))
        return EXIT_OK if rep.result is not None else EXIT_FAIL

    if args.cyclic:
        if args.r is None or args.n is None:
            raise UsageError("--cyclic needs --r and --n")
        poly = tuple(int(x) for x in args.cyclic.split(","))
        try:
            check = make_cyclic_check(poly, args.r, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        label = f"cyclic {args.cyclic} r={args.r} n={args.n}"
    elif args.check:
        e = _lookup(args.check)
        if e.kind != "classical":
            raise UsageError(f"{e.name} is not a classical code")
        check = e.build().check
        label = e.name
    else:
        raise UsageError("give --check NAME or --cyclic POLY --r R --n N")
    try:
        rep = search_displacements(check, args.K, args.target)
    except (ValueError, GF2Error) as exc:
        raise UsageError(str(exc)) from None
    data = rep.as_dict()
    data["check"] = label
    lines = [f"{label}: K={args.K} target d2>={args.target}, examined {rep.examined} in {rep.elapsed:.2f}s"]
    if rep.result is None:
        lines.append("no result")
    else:
        params = verify_plus(rep.result)
        lines.append(f"found {params.label()} using generator rows {data['rows_used']}")
        lines.extend("  " + r for r in data["d_matrix"])
        if args.record:
            rec = Entry(
                name=args.record,
                kind="plus",
                n=rep.result.n,
                K=rep.result.K,
                d=min(params.d1, params.d2),
                provenance="derived",
                command=command,
                blocks={"h1": rep.result.h1.to_text().split(), "d": data["d_matrix"]},
            )
            data["record"] = rec.to_text()
            lines.append("")
            lines.append(rec.to_text())
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if rep.result is not None else EXIT_FAIL


# --------------------------------------------------------------------------


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=int, help="joint budget: all Pauli errors of weight <= t")
    p.add_argument("--tx", type=int, help="amplitude (X) error weight budget")
    p.add_argument("--tz", type=int, help="phase (Z) error weight budget")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")

    ap = argparse.ArgumentParser(prog="pluscodes", description="Quantum codes from pairs of classical codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("registry", parents=[common], help="list or show bundled codes")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--kind", choices=["classical", "plus", "signed", "catalog"])
    p.set_defaults(func=cmd_registry)

    p = sub.add_parser("verify", parents=[common], help="verify codes classically and with the oracle")
    p.add_argument("codes", nargs="+", help="registry names or record files")
    _add_budget(p)
    p.add_argument("--classical-only", action="store_true")
    p.add_argument("--method", choices=["fast", "naive"], default="fast")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", parents=[common], help="write out every code vector")
    p.add_argument("name")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("table", parents=[common], help="distance-pair and Hamming-bound tables")
    p.add_argument("which", choices=["nmin", "bound"])
    p.add_argument("--dtable", help="distance table file (default: bundled)")
    p.add_argument("--d", type=int, nargs="+")
    p.add_argument("--dperp", type=int, nargs="+")
    p.add_argument("--K", type=int, nargs="+")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--n", type=int, help="also evaluate the bound at this n")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("search", parents=[common], help="search for signs or displacement rows")
    p.add_argument("which", choices=["signs", "displacements"])
    p.add_argument("--skeleton", help="signs: registry name, alias (g5, g8, g10, g11) or record file")
    _add_budget(p)
    p.add_argument("--nonlinear", action="store_true", help="signs: one candidate per code vector")
    p.add_argument("--no-offset", action="store_true", help="signs: fix the offset to zero")
    p.add_argument("--full-offsets", action="store_true", help="signs: try every w-bit offset")
    p.add_argument("--exhaustive", action="store_true", help="signs: every w-bit vector is a candidate")
    p.add_argument("--limit", type=int, help="signs: cap on candidates examined")
    p.add_argument("--check", help="displacements: classical registry entry or record file")
    p.add_argument("--cyclic", help="displacements: exponents of alpha^r, e.g. 0,3")
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--K", type=int, default=1)
    p.add_argument("--target", type=int, default=3)
    p.add_argument("--record", metavar="NAME", help="emit a registry record for the hit")
    p.set_defaults(func=cmd_search)
    return ap


def _strip_record(argv: list[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--record":
            skip = True
        elif not a.startswith("--record="):
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    args.argv = _strip_record(argv)
    if args.command == "search" and args.which == "signs" and not args.skeleton:
        print("pluscodes: search signs needs --skeleton", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, RegistryError, DimensionTooLarge, GF2Error, ValueError) as exc:
        print(f"pluscodes: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
