"""Command-line entry point: ``syncmat <subcommand> ...``.

Exit status is 0 when every check a subcommand performs passed, 1 when
one failed, 2 for bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness, properties
from .automaton import (
    DfaError,
    NotSynchronizing,
    StateSet,
    format_word,
    greedy_sync_word,
    is_synchronizing,
    load,
    parse_word,
    shortest_sync_word,
    sync_state,
    validate,
)
from .exactla import Basis, canonical_basis, rank_of_family
from .lmatrix import independent_chain, solve_min
from .series import SeriesContext, evaluate
from .wordmatrix import WordMatrix, format_dense, format_row_image, matrix_of_word


def _emit(args, rows, obj):
    """Print ``rows`` (list of tuples) as TSV, or ``obj`` as JSON."""
    if args.format == "json":
        print(json.dumps(obj, indent=1))
    else:
        for r in rows:
            print("\t".join(str(x) for x in r))


def _parse_set(text: str, n: int) -> StateSet:
    text = text.strip()
    if len(text) == n and set(text) <= {"0", "1"}:
        return StateSet.from_bits(text)
    return StateSet.of(n, (int(x) - 1 for x in text.replace(",", " ").split()))


def cmd_check(args) -> int:
    checked = validate(load(args.file))
    dfa = checked.dfa
    sync = is_synchronizing(dfa)
    _emit(
        args,
        [("states", dfa.n), ("letters", " ".join(dfa.alphabet)),
         ("strongly_connected", checked.strongly_connected), ("synchronizing", sync)],
        {"states": dfa.n, "letters": list(dfa.alphabet),
         "strongly_connected": checked.strongly_connected, "synchronizing": sync},
    )
    if not checked.strongly_connected:
        logging.warning("underlying graph is not strongly connected")
    return 0


def cmd_sync_word(args) -> int:
    dfa = load(args.file)
    if args.greedy:
        word = greedy_sync_word(dfa)
    else:
        word = shortest_sync_word(dfa)
        if word is None:
            raise NotSynchronizing("DFA is not synchronizing")
    q = sync_state(dfa, word)
    _emit(
        args,
        [(format_word(word), len(word), q + 1)],
        {"word": format_word(word), "length": len(word), "state": q + 1,
         "method": "greedy" if args.greedy else "exact"},
    )
    return 0


def cmd_series(args) -> int:
    dfa = load(args.file)
    word = parse_word(args.word, dfa.alphabet)
    ctx = SeriesContext(dfa.n, _parse_set(args.set, dfa.n))
    value = evaluate(ctx, matrix_of_word(dfa, word))
    _emit(args, [(format_word(word), ctx.P.to_bits(), value)],
          {"word": format_word(word), "P": ctx.P.to_bits(), "value": value})
    return 0


def _chain_target(args):
    target = args.target
    if target in ("kari", "roman") or (target == "cerny" and args.n == 4 and not args.derive):
        name = "cerny4" if target == "cerny" else target
        dfa, table = harness.example(name)
        return dfa, harness.golden_chain(name), True
    if target == "cerny":
        if args.n is None:
            raise DfaError("chain cerny needs N")
        dfa = harness.build_cerny(args.n)
    elif target in ("kari", "roman"):
        dfa = harness.build_kari() if target == "kari" else harness.build_roman()
    else:
        dfa = load(target)
    s = shortest_sync_word(dfa)
    if s is None:
        raise NotSynchronizing("DFA is not synchronizing")
    return dfa, independent_chain(dfa, sync_state(dfa, s), s), False


def cmd_chain(args) -> int:
    dfa, report, golden = _chain_target(args)
    basis = Basis(dfa.n)
    basis.extend(report.basis_matrices)
    outside = basis.coefficients(WordMatrix.constant(dfa.n, report.q)) is None
    ok = outside
    if golden:
        ok = ok and report.rank == (dfa.n - 1) ** 2
    if args.format == "json":
        obj = json.loads(report.to_json())
        obj["reset_matrix_outside_span"] = outside
        print(json.dumps(obj, indent=1))
    else:
        sys.stdout.write(report.to_tsv())
        print(f"# rank {report.rank}; reset matrix outside span: {outside}")
    return 0 if ok else 1


def cmd_solve(args) -> int:
    dfa = load(args.file)
    s = shortest_sync_word(dfa)
    if s is None:
        raise NotSynchronizing("DFA is not synchronizing")
    q = sync_state(dfa, s)
    u = parse_word(args.u, dfa.alphabet)
    sol = solve_min(matrix_of_word(dfa, u), WordMatrix.constant(dfa.n, q), q)
    if args.format == "json":
        print(json.dumps({
            "u": format_word(u), "s": format_word(s), "q": q + 1,
            "column_q": sol.q_column.to_bits(), "series": sol.series,
            "row_image": [c + 1 for c in sol.matrix.rows],
        }, indent=1))
    else:
        print(f"# u={format_word(u)} s={format_word(s)} q={q + 1} series={sol.series}")
        print(format_dense(sol.matrix))
        print(format_row_image(sol.matrix))
    return 0


def cmd_census(args) -> int:
    report = harness.audit_small_dfas(args.n, args.k, budget=args.budget, workers=args.workers)
    d = report.as_dict()
    if args.format == "json":
        print(json.dumps(d, indent=1))
    else:
        for key, value in d.items():
            if key == "extremal":
                for e in value:
                    print(f"extremal\t{' '.join(str(x + 1) for x in e)}")
            elif key == "histogram":
                for length, count in value.items():
                    print(f"length {length}\t{count}")
            else:
                print(f"{key}\t{value}")
    return 0 if report.complete and report.within_cerny and report.within_frankl else 1


def cmd_basis(args) -> int:
    ms = canonical_basis(args.n, args.k)
    r = rank_of_family(ms)
    ok = r == len(ms) == args.n * (args.k - 1) + 1
    if args.format == "json":
        print(json.dumps({"n": args.n, "k": args.k, "rank": r,
                          "matrices": [[c + 1 for c in m.rows] for m in ms]}, indent=1))
    else:
        for m in ms:
            print(format_row_image(m))
        print(f"# rank {r} of {len(ms)}")
    return 0 if ok else 1


def cmd_props(args) -> int:
    results = properties.run_all(seed=args.seed, cases=args.cases, only=args.only or None)
    _emit(args, [(name, "ok" if not bad else f"FAIL {len(bad)}") for name, bad in results.items()],
          {name: len(bad) for name, bad in results.items()})
    return 0 if not any(results.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized property drivers")

    p = argparse.ArgumentParser(prog="syncmat", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", parents=[common], help="validate a DFA file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("sync-word", parents=[common], help="shortest or greedy reset word")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="breadth-first shortest word (default)")
    g.add_argument("--greedy", action="store_true", help="greedy pair-merging word")
    sp.set_defaults(func=cmd_sync_word)

    sp = sub.add_parser("series", parents=[common], help="evaluate (S, u) for a set P")
    sp.add_argument("file")
    sp.add_argument("--word", required=True)
    sp.add_argument("--set", required=True, help="0/1 vector or 1-based states, e.g. 1000 or 1,3")
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("chain", parents=[common], help="L-matrix chain and its rank")
    sp.add_argument("target", help="kari, roman, cerny N, or a DFA file")
    sp.add_argument("n", nargs="?", type=int)
    sp.add_argument("--derive", action="store_true",
                    help="use prefixes of a shortest reset word even where a table exists")
    sp.set_defaults(func=cmd_chain)

    sp = sub.add_parser("solve", parents=[common], help="minimal L solving M_u L = M_s")
    sp.add_argument("file")
    sp.add_argument("--u", required=True)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("census", parents=[common], help="exhaustive small-DFA audit")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("basis", parents=[common], help="canonical basis of n x k word matrices")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("props", parents=[common], help="seeded randomized identity checks")
    sp.add_argument("--cases", type=int, default=1000)
    sp.add_argument("--only", nargs="*", choices=sorted(properties.CHECKS))
    sp.set_defaults(func=cmd_props)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (DfaError, NotSynchronizing, ValueError, OSError) as exc:
        print(f"syncmat: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
