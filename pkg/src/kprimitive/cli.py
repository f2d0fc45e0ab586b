"""Command-line interface: ``kprim <command> ...``.

Exit codes: 0 success, 1 mathematical negative (violation found, or a
bound that would fail), 2 usage or input error, 3 internal invariant
failure.  JSON output carries ``schema_version``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import mpmath

from . import combinatorics, corpus, tables, zeta
from .errors import DomainError, InvariantError, KPrimitiveError, PreconditionError, SetFileError
from .precision import PrecisionContext
from .primitivity import find_violation, is_k_primitive, prime_relabel, replacement_reduction
from .search import SearchConfig, max_kprimitive_search
from .setfile import format_set, read_set_file

SCHEMA_VERSION = 1
EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _emit(payload: dict, out=None) -> None:
    out = out or sys.stdout
    json.dump({"schema_version": SCHEMA_VERSION, **payload}, out, indent=2, default=str)
    out.write("\n")


def _fmt(x, digits: int = 10) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False)


def cmd_check(args) -> int:
    A = read_set_file(args.set_file)
    res = is_k_primitive(A, args.k)
    payload = {"command": "check", "k": args.k, "size": len(A), "ok": res.ok, "vacuous": res.vacuous}
    if res.certificate is not None and (args.certificate or not res.ok):
        payload["certificate"] = res.certificate.to_dict()
    _emit(payload)
    return EXIT_OK if res.ok else EXIT_NEGATIVE


def cmd_reduce(args) -> int:
    A = read_set_file(args.set_file)
    cert = find_violation(A, 2)
    if cert is not None:
        _emit({"command": "reduce", "ok": False, "reason": "input is not 2-primitive", "certificate": cert.to_dict()})
        return EXIT_NEGATIVE
    reduced, steps = replacement_reduction(A, args.lam)
    payload = {
        "command": "reduce",
        "ok": True,
        "lambda": args.lam,
        "steps": [
            {"prime": s.prime, "removed": list(s.removed), "weight_before": _fmt(s.weight_before), "weight_after": _fmt(s.weight_after)}
            for s in steps
        ],
        "reduced": list(reduced),
    }
    if args.relabel:
        try:
            payload["relabeled"] = list(prime_relabel(reduced, args.lam))
        except PreconditionError as exc:
            payload.update(ok=False, reason=f"relabel not applicable: {exc}")
            _emit(payload)
            return EXIT_NEGATIVE
    _emit(payload)
    return EXIT_OK


def _parse_caps(text: str, n: int) -> tuple[int, ...]:
    caps = tuple(int(c) for c in text.split(","))
    if len(caps) == 1:
        caps = caps * n
    return caps


def cmd_search(args) -> int:
    cfg = SearchConfig(
        n=args.n,
        k=args.k,
        caps=_parse_caps(args.caps, args.n),
        budget=args.budget,
        checkpoint=args.checkpoint,
        symmetry=not args.no_symmetry,
    )
    res = max_kprimitive_search(cfg)
    payload = {"command": "search", "config": {"n": cfg.n, "k": cfg.k, "caps": list(cfg.caps)}, **res.to_dict()}
    # at most 19 vectors for k = 2 over four primes
    if cfg.k == 2 and cfg.n == 4 and res.cardinality > 19:
        payload["violates_bound"] = 19
        _emit(payload)
        return EXIT_NEGATIVE
    _emit(payload)
    return EXIT_OK


def cmd_constants(args) -> int:
    ctx = PrecisionContext(dps=args.precision, limit=args.limit, tail_mode=args.tail_mode)
    fn = {
        "C": zeta.erdos_constant,
        "tau1": zeta.tau1_root,
        "B": zeta.mertens_constant,
        "egamma": zeta.exp_euler_gamma,
    }[args.name]
    _emit({"command": "constants", **fn(ctx).to_dict()})
    return EXIT_OK


def cmd_tables(args) -> int:
    params = tables.Params()
    if args.section == "smallY":
        chain = tables.small_prime_chain(params, round_up=7)
        if args.format == "csv":
            sys.stdout.write("through,bound,published\n")
            for y, v, pv in zip((2, 3, 5, 7), chain, tables.PUBLISHED_CHAIN):
                sys.stdout.write(f"{y},{v:.7f},{pv}\n")
        else:
            _emit({"command": "tables", "section": "smallY", "values": [f"{v:.7f}" for v in chain], "published": list(tables.PUBLISHED_CHAIN)})
        return EXIT_OK
    if args.section == "3.1":
        rows = tables.reproduce_table31(params, as_printed=args.as_printed)
        if args.format == "csv":
            sys.stdout.write(tables.table31_csv(rows))
        else:
            _emit({"command": "tables", "section": "3.1", **tables.table31_json(rows, params)})
        return EXIT_OK if all(r.passed for r in rows) else EXIT_NEGATIVE
    report = tables.large_prime_budget(params, args.scheme)
    if args.format == "csv":
        sys.stdout.write("term,bound,published\n")
        sys.stdout.write(f"small,{report.small:.7f},0.27533\n")
        for p, v in report.middle.items():
            sys.stdout.write(f"p={p},{v:.7f},{tables.PUBLISHED_MIDDLE[p]}\n")
        sys.stdout.write(f"tail,{report.tail:.7f},{tables.PUBLISHED_TAIL}\n")
        sys.stdout.write(f"total,{report.total:.7f},{tables.PUBLISHED_TOTAL}\n")
        sys.stdout.write(f"prime_side,{report.prime_side:.7f},{tables.PUBLISHED_PRIME_SIDE}\n")
    else:
        _emit({"command": "tables", "section": "3.2", **report.to_dict()})
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        if args.kind == "steiner":
            if args.v is None:
                raise DomainError("--v is required for steiner")
            sts = combinatorics.steiner_triple_system(args.v)
            out.write(f"# Steiner triple system on {sts.v} points, {len(sts.triples)} triples\n")
            for t in sts.triples:
                out.write(" ".join(map(str, t)) + "\n")
            return EXIT_OK
        if args.kind == "corpus":
            sets = corpus.corpus(args.seed, args.count, args.corpus_kind)
            for i, A in enumerate(sets):
                out.write(format_set(A, header=f"set {i} (seed {args.seed}, {args.corpus_kind})"))
                out.write("\n")
            return EXIT_OK
        if args.x is None:
            raise DomainError(f"--x is required for {args.kind}")
        if args.kind == "erdos38":
            A, sts = combinatorics.erdos38_set(args.x)
            header = f"2-primitive; primes in (x^(1/3), x] plus {len(sts.triples)} triple products; x = {args.x}"
        else:
            A = combinatorics.omega_level_set(args.x)
            header = f"primitive; Omega(a) = {combinatorics.omega_level(args.x)}, a <= {args.x}"
        out.write(format_set(A, factored=args.factored, header=header))
        return EXIT_OK
    finally:
        if out is not sys.stdout:
            out.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kprim", description="k-primitive sets: checks, searches, constants and tables")
    parser.add_argument("--seed", type=int, default=0, help="seed for generated corpora (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test a set file for k-primitivity")
    p.add_argument("set_file")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--certificate", action="store_true", help="always include the certificate field")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="replace T_p by p while the weight does not drop")
    p.add_argument("set_file")
    p.add_argument("--lambda", dest="lam", default="1")
    p.add_argument("--relabel", action="store_true", help="then move the support onto the first primes")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("search", help="largest k-primitive set of capped exponent vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--caps", default="3", help="one cap or a comma list")
    p.add_argument("--budget", type=int)
    p.add_argument("--checkpoint")
    p.add_argument("--no-symmetry", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("constants", help="C, tau1, B or e^gamma")
    p.add_argument("--name", choices=["C", "tau1", "B", "egamma"], required=True)
    p.add_argument("--precision", type=int, default=30)
    p.add_argument("--limit", type=int, default=10**6)
    p.add_argument("--tail-mode", choices=["zeta-accelerated", "pnt-estimate"], default="zeta-accelerated")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("tables", help="small-prime table, small-prime chain or large-prime budget")
    p.add_argument("--section", choices=["3.1", "3.2", "smallY"], required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--scheme", choices=list(tables.SCHEMES), default="threshold")
    p.add_argument("--as-printed", action="store_true", help="use the variant closed form for the upper range")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("construct", help="write a constructed set (or triple system) as text")
    p.add_argument("--kind", choices=["erdos38", "omega-level", "steiner", "corpus"], required=True)
    p.add_argument("--x", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--corpus-kind", choices=["random", "smooth", "steiner"], default="random")
    p.add_argument("--factored", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SetFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (KPrimitiveError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
