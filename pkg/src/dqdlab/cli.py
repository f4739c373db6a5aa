"""Command-line front end.

Exit codes: 0 when the command succeeds or the property holds, 1 when a
property fails (a witness is printed), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraError, FiniteAlgebra, find_embeddings, read_algebra
from .catalog import UnknownAlgebra, catalog_get, catalog_list
from .classify import CLASSES, IDENTITIES, PREDICATES, classify
from .congruence import all_congruences, is_subdirectly_irreducible, principal_congruence
from .enumeration import (
    DEFAULT_DISCRIMINATOR_BOUND,
    EnumerationError,
    NotSimpleError,
    distributive_lattices,
    enumerate_dqd_upto,
    enumerate_sh_on_lattice,
    find_discriminator_term,
    sh_algebras_on_lattice,
    verify_discriminator,
)
from .algebra import chain_lattice, make_algebra
from .terms import CONDITIONS, ParseError, UnboundVariable, parse_identity, parse_term, pretty, satisfies, satisfies_condition
from .verify import DEFAULT_UNIVERSE, UnknownClaim, run_paper_suite

OK, FAILS, USAGE = 0, 1, 2


class CliError(Exception):
    pass


def resolve_algebra(spec: str) -> FiniteAlgebra:
    """A built-in name or a path to an algebra document."""
    p = Path(spec)
    if p.suffix == ".json" or p.exists():
        if not p.exists():
            raise CliError(f"no such file: {spec}")
        return read_algebra(p)
    return catalog_get(spec)


def _labelled(A: FiniteAlgebra, witness: dict | None) -> str:
    if witness is None:
        return "-"
    return " ".join(f"{k}={A.label(v)}" for k, v in witness.items())


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    A = resolve_algebra(args.algebra)
    given = [x for x in (args.identity, args.name, args.condition) if x is not None]
    if len(given) != 1:
        raise CliError("check needs exactly one of --identity, --name, --condition")
    if args.identity is not None:
        c, what = satisfies(A, parse_identity(args.identity)), args.identity
    elif args.name is not None:
        if args.name not in IDENTITIES:
            raise CliError(f"unknown identity name {args.name!r}; known: {', '.join(IDENTITIES)}")
        c, what = satisfies(A, IDENTITIES[args.name]), args.name
    else:
        if args.condition not in CONDITIONS:
            raise CliError(f"unknown condition {args.condition!r}; known: {', '.join(sorted(CONDITIONS))}")
        c, what = satisfies_condition(A, args.condition), args.condition
    if c.holds:
        _emit(f"holds\t{A.name}\t{what}")
        return OK
    _emit(f"fails\t{A.name}\t{what}\t{_labelled(A, c.witness)}")
    return FAILS


def cmd_classify(args) -> int:
    A = resolve_algebra(args.algebra)
    keys = None
    if args.keys:
        keys = [k.strip() for k in args.keys.split(",")]
        bad = [k for k in keys if k not in PREDICATES]
        if bad:
            raise CliError(f"unknown predicate(s): {', '.join(bad)}")
    p = classify(A, keys)
    if args.json:
        doc = {"algebra": A.name, "size": A.size, "predicates": p.to_dict(),
               "classes": {c: p.in_class(c) for c in CLASSES if all(k in p.results for k in CLASSES[c])}}
        _emit(json.dumps(doc, indent=2))
        return OK
    lines = ["predicate\tholds\twitness"]
    for k, r in p.results.items():
        wit = _labelled(A, r.witness)
        if r.failed:
            wit += f" (via {r.failed})"
        lines.append(f"{k}\t{str(r.holds).lower()}\t{wit}")
    classes = [c for c in CLASSES if all(k in p.results for k in CLASSES[c]) and p.in_class(c)]
    lines.append("classes\t" + ",".join(classes))
    _emit("\n".join(lines))
    return OK


def cmd_congruences(args) -> int:
    A = resolve_algebra(args.algebra)
    if args.principal:
        a, b = args.principal
        if not (0 <= a < A.size and 0 <= b < A.size):
            raise CliError(f"elements must lie in 0..{A.size - 1}")
        _emit(f"Cg({a},{b})\t{principal_congruence(A, a, b)}")
        return OK
    con = all_congruences(A)
    simple = len(con) == 2
    si = is_subdirectly_irreducible(A)
    if args.json:
        _emit(json.dumps({"algebra": A.name, "count": len(con), "simple": simple, "si": si,
                          "congruences": [list(c.leaders) for c in con],
                          "covers": [list(c) for c in con.covers]}, indent=2))
    else:
        lines = ["index\tblocks\tcongruence"]
        lines += [f"{i}\t{c.num_blocks}\t{c}" for i, c in enumerate(con)]
        lines.append(f"summary\tcount={len(con)}\tsimple={str(simple).lower()}\tsi={str(si).lower()}")
        _emit("\n".join(lines))
    if args.plot:
        from .figures import plot_congruences
        plot_congruences(A, con, args.plot)
    return OK


def _enumerate_stream(args):
    n = args.size
    if args.kind == "sh-chain":
        return sh_algebras_on_lattice(chain_lattice(n), name="chain")
    if args.kind == "sh-lattice":
        def gen():
            for i, L in enumerate(distributive_lattices(n)):
                yield from sh_algebras_on_lattice(L, name=f"lat{i}")
        return gen()
    if args.kind == "lattice":
        def gen():
            for i, L in enumerate(distributive_lattices(n)):
                yield make_algebra(f"lattice-{n}-{i}", L, [[L.one] * n for _ in range(n)], [L.zero] * n)
        return gen()
    return enumerate_dqd_upto(n, min_size=n)


def cmd_enumerate(args) -> int:
    if args.size < 1:
        raise CliError("--size must be at least 1")
    if args.count_only and args.kind == "sh-chain":
        _emit(str(sum(1 for _ in enumerate_sh_on_lattice(chain_lattice(args.size)))))
        return OK
    stream = _enumerate_stream(args)
    if args.count_only:
        _emit(str(sum(1 for _ in stream)))
        return OK
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    count = 0
    for i, A in enumerate(stream):
        doc = A.to_document()
        if out:
            (out / f"{i:06d}.json").write_text(json.dumps(doc) + "\n")
        else:
            sys.stdout.write(json.dumps(doc) + "\n")
        count += 1
    if out:
        _emit(f"wrote\t{count}\t{out}")
    return OK


def cmd_search(args) -> int:
    A = resolve_algebra(args.algebra)
    if args.verify:
        t = parse_term(args.verify)
        c = verify_discriminator(A, t)
        if c.holds:
            _emit(f"verified\t{A.name}\t{pretty(t)}")
            return OK
        _emit(f"fails\t{A.name}\t{pretty(t)}\t{_labelled(A, c.witness)}")
        return FAILS
    t = find_discriminator_term(A, args.max_size)
    if t is None:
        _emit(f"inconclusive\t{A.name}\tno discriminator term with at most {args.max_size} nodes")
        return FAILS
    _emit(f"found\t{A.name}\t{pretty(t)}")
    return OK


def cmd_embed(args) -> int:
    A = resolve_algebra(args.algebra)
    B = resolve_algebra(args.into)
    embs = find_embeddings(A, B)
    if not embs:
        _emit(f"none\t{A.name}\t{B.name}")
        return FAILS
    shown = embs if args.all else embs[:1]
    lines = [f"count\t{len(embs)}"]
    for f in shown:
        lines.append("embedding\t" + " ".join(f"{A.label(x)}->{B.label(y)}" for x, y in enumerate(f)))
    _emit("\n".join(lines))
    return OK


def cmd_catalog(args) -> int:
    if args.algebra:
        A = resolve_algebra(args.algebra)
        _emit(json.dumps(A.to_document(), indent=2))
        if args.plot:
            from .figures import plot_algebra
            plot_algebra(A, args.plot)
        return OK
    _emit("\n".join(f"{name}: {prov}" for name, prov in catalog_list()))
    return OK


def cmd_verify(args) -> int:
    report = run_paper_suite(args.filter, universe=args.universe)
    timing = not args.no_timing
    _emit(report.to_json(timing) if args.json else report.to_text(timing))
    if args.plot:
        from .figures import plot_report
        plot_report(report, args.plot)
    return OK if report.passed else FAILS


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dqdlab", description="Finite semi-Heyting and DQD algebra toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def algebra_arg(sp, required=True):
        sp.add_argument("--algebra", required=required, help="built-in name or path to an algebra document")

    sp = sub.add_parser("check", help="check an identity or condition")
    algebra_arg(sp)
    sp.add_argument("--identity", help="identity text, e.g. \"x'' = x\"")
    sp.add_argument("--name", help="named identity from the built-in catalog")
    sp.add_argument("--condition", help="named condition such as SC")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("classify", help="evaluate every named predicate")
    algebra_arg(sp)
    sp.add_argument("--keys", help="comma-separated predicate keys")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("congruences", help="list the congruence lattice")
    algebra_arg(sp)
    sp.add_argument("--principal", nargs=2, type=int, metavar=("A", "B"))
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--plot", metavar="PNG", help="write a Hasse diagram of Con(A)")
    sp.set_defaults(func=cmd_congruences)

    sp = sub.add_parser("enumerate", help="enumerate small algebras")
    sp.add_argument("--kind", choices=["sh-chain", "sh-lattice", "dqd", "lattice"], required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--out", metavar="DIR", help="write one document per result, named by order index")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("search-discriminator", help="search for or verify a discriminator term")
    algebra_arg(sp)
    sp.add_argument("--max-size", type=int, default=DEFAULT_DISCRIMINATOR_BOUND)
    sp.add_argument("--verify", metavar="TERM", help="check this term instead of searching")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("embed", help="find embeddings of one algebra into another")
    algebra_arg(sp)
    sp.add_argument("--into", required=True)
    sp.add_argument("--all", action="store_true")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("catalog", help="list built-ins or print one as a document")
    algebra_arg(sp, required=False)
    sp.add_argument("--plot", metavar="PNG", help="write a Hasse diagram of the lattice")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify-paper", help="run the claim registry")
    sp.add_argument("--filter", help="claim id, glob or section number; comma-separated")
    sp.add_argument("--universe", type=int, default=DEFAULT_UNIVERSE, help="size bound for enumerated algebras")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--no-timing", action="store_true", help="omit wall times for byte-stable output")
    sp.add_argument("--plot", metavar="PNG", help="write a per-claim summary figure")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (CliError, AlgebraError, ParseError, UnknownAlgebra, UnknownClaim, UnboundVariable,
            EnumerationError, NotSimpleError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"error: {msg}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
