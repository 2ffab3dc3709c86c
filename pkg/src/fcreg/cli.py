"""Command-line interface: ``fcreg <subcommand> ...``.

``decide`` exits 0 when the language is FC-definable, 1 when it is not and
2 on errors or when the decision methods disagree.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fc, sfr
from .automata import AutomatonError, Dfa, enumerate_language, format_dfa_text, minimize, parse_dfa_text, to_dot
from .decide import decide
from .loopstep import DEFAULT_STATE_CAP, StateCapExceeded, algorithm1_exact, detect_loop_step, verify_witness
from .monoid import (
    DEFAULT_MONOID_CAP,
    MonoidTooLarge,
    index_period,
    non_primitivity_witness,
    transition_monoid,
    verify_non_primitivity,
)
from .oracles import brute_force_loop_step, enumerate_minimal_dfas, random_minimal_dfa

EXIT_ERROR = 2


class CliError(Exception):
    pass


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("dfa_file", nargs="?", help="DFA in the line-oriented text format")
    p.add_argument("--regex", help="star-free expression with word-star atoms")
    p.add_argument("--alphabet", default="ab", help="letters for --regex (default: ab)")
    p.add_argument("--complete", action="store_true",
                   help="add a rejecting sink for missing transitions in the DFA file")


def _load(args) -> tuple[Dfa, str]:
    if (args.dfa_file is None) == (args.regex is None):
        raise CliError("give exactly one of a DFA file or --regex")
    if args.regex is not None:
        e = sfr.parse_sfr(args.regex, args.alphabet)
        return sfr.compile_sfr(e, args.alphabet), args.regex
    path = Path(args.dfa_file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_dfa_text(text, complete=args.complete), str(path)
    except AutomatonError as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_decide(args) -> int:
    d, label = _load(args)
    report = decide(d, label, run_algorithm1=args.all,
                    state_cap=args.state_cap, monoid_cap=args.monoid_cap)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.text())
    if not report.methods_agree or not report.witnesses_valid:
        print("error: decision methods disagree or a witness failed replay", file=sys.stderr)
        return EXIT_ERROR
    return 0 if report.fc_definable else 1


def cmd_minimize(args) -> int:
    d, _ = _load(args)
    m = minimize(d)
    print(to_dot(m) if args.dot else format_dfa_text(m), end="")
    return 0


def cmd_monoid(args) -> int:
    d, _ = _load(args)
    m = minimize(d)
    mon = transition_monoid(m, args.monoid_cap)
    periodic = [x for x in range(len(mon)) if index_period(mon, x)[1] >= 2]
    data = {
        "size": len(mon),
        "identity": mon.identity,
        "generators": mon.generators,
        "elements": [
            {"index": i, "witness": mon.witness[i], "map": list(mon.elements[i]),
             "index_period": list(index_period(mon, i))}
            for i in range(len(mon))
        ],
        "periodic": periodic,
    }
    if len(mon) <= args.table_limit:
        data["table"] = mon.table
    if args.json:
        print(json.dumps(data, indent=2))
        return 0
    print(f"elements: {len(mon)}")
    print("generators: " + ", ".join(f"{c} -> {i}" for c, i in mon.generators.items()))
    for el in data["elements"]:
        j, p = el["index_period"]
        w = el["witness"] or "ε"
        mark = " periodic" if el["index"] in periodic else ""
        print(f"  [{el['index']}] {w:<12} map={el['map']} index={j} period={p}{mark}")
    if "table" in data:
        print("table:")
        for i, row in enumerate(data["table"]):
            print(f"  {i}: " + " ".join(str(x) for x in row))
    print("periodic elements: " + (", ".join(map(str, periodic)) or "none"))
    return 0


def cmd_fc_eval(args) -> int:
    phi = fc.parse_fc(args.formula)
    result = fc.eval_fc(args.word, phi, args.alphabet)
    print("true" if result else "false")
    return 0


def cmd_fc_compile(args) -> int:
    e = sfr.parse_sfr(args.regex, args.alphabet)
    phi = fc.compile_sfr_to_fc(e)
    if args.json:
        print(json.dumps({"formula": fc.to_text(phi), "quantifier_rank": fc.quantifier_rank(phi),
                          "size": fc.size(phi)}, indent=2))
    else:
        print(fc.to_text(phi))
    return 0


def cmd_enumerate(args) -> int:
    d, _ = _load(args)
    words = enumerate_language(d, args.max_len)
    if args.json:
        print(json.dumps(words))
    else:
        for w in words:
            print(w if w else "ε")
    return 0


def crosscheck_instance(d: Dfa, word_bound: int, state_cap: int | None, monoid_cap: int) -> dict:
    lsw = detect_loop_step(d, state_cap)
    npw = non_primitivity_witness(d, cap=monoid_cap)
    a1 = algorithm1_exact(d, state_cap=state_cap)
    brute = brute_force_loop_step(d, word_bound) if word_bound > 0 else None
    verdicts = {"loop_step": lsw is not None, "not_group_primitive": npw is not None, "algorithm1": a1}
    problems = []
    if len(set(verdicts.values())) != 1:
        problems.append("verdicts disagree")
    if lsw is not None and not verify_witness(d, lsw):
        problems.append("loop-step witness failed replay")
    if npw is not None and not verify_non_primitivity(d, npw):
        problems.append("non-primitivity witness failed replay")
    if brute is not None and (lsw is None or not verify_witness(d, brute)):
        problems.append("brute force found a witness the exact search missed")
    return {
        "dfa": format_dfa_text(d),
        "states": d.n,
        "verdicts": verdicts,
        "loop_step": lsw.to_dict() if lsw else None,
        "non_primitivity": npw.to_dict() if npw else None,
        "brute_force": brute.to_dict() if brute else None,
        "problems": problems,
    }


def cmd_crosscheck(args) -> int:
    dfas: list[tuple[str, Dfa]] = []
    if args.max_states:
        corpus = enumerate_minimal_dfas(args.alphabet, args.max_states)
        dfas += [(f"enum#{i}", d) for i, d in enumerate(corpus)]
    if args.random:
        seed = args.seed
        dfas += [(f"random(seed={seed + i})", random_minimal_dfa(args.alphabet, args.states, seed + i))
                 for i in range(args.random)]
    if not dfas:
        raise CliError("nothing to check: give --max-states and/or --random")
    results = []
    for name, d in dfas:
        r = crosscheck_instance(d, args.word_bound, args.state_cap, args.monoid_cap)
        r["name"] = name
        results.append(r)
    bad = [r for r in results if r["problems"]]
    summary = {
        "instances": len(results),
        "fc_definable": sum(1 for r in results if not r["verdicts"]["loop_step"]),
        "not_fc_definable": sum(1 for r in results if r["verdicts"]["loop_step"]),
        "disagreements": len(bad),
        "failures": bad,
    }
    if args.verbose:
        summary["results"] = results
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        print(f"instances: {summary['instances']}")
        print(f"FC-definable: {summary['fc_definable']}, not FC-definable: {summary['not_fc_definable']}")
        print(f"disagreements: {summary['disagreements']}")
        for r in bad:
            print(f"--- {r['name']}: {', '.join(r['problems'])}")
            print(r["dfa"], end="")
            print(f"loop-step: {r['loop_step']}")
            print(f"non-primitivity: {r['non_primitivity']}")
    return EXIT_ERROR if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fcreg", description="Decide FC-definability of regular languages.")
    sub = parser.add_subparsers(dest="command", required=True)

    def caps(p):
        p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP,
                       help=f"maximum states for exhaustive tuple search (default {DEFAULT_STATE_CAP})")
        p.add_argument("--monoid-cap", type=int, default=DEFAULT_MONOID_CAP,
                       help=f"maximum transition monoid size (default {DEFAULT_MONOID_CAP})")

    p = sub.add_parser("decide", help="decide FC-definability with witnesses")
    _add_input(p)
    caps(p)
    p.add_argument("--all", action="store_true", help="also run the exhaustive configuration search")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("minimize", help="print the canonical minimal DFA")
    _add_input(p)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of the text format")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("monoid", help="print the syntactic (transition) monoid")
    _add_input(p)
    p.add_argument("--monoid-cap", type=int, default=DEFAULT_MONOID_CAP)
    p.add_argument("--table-limit", type=int, default=64, help="print the table only up to this size")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_monoid)

    p = sub.add_parser("fc-eval", help="evaluate an FC sentence on a word")
    p.add_argument("--word", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--alphabet", default=None)
    p.set_defaults(func=cmd_fc_eval)

    p = sub.add_parser("fc-compile", help="translate an expression into an FC sentence")
    p.add_argument("--regex", required=True)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fc_compile)

    p = sub.add_parser("crosscheck", help="compare all decision methods on a corpus")
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--max-states", type=int, default=0, help="enumerate every minimal DFA up to this size")
    p.add_argument("--random", type=int, default=0, help="number of random DFAs")
    p.add_argument("--states", type=int, default=5, help="states of each random DFA before minimization")
    p.add_argument("--seed", type=int, default=int(os.environ.get("FCREG_SEED", "0")))
    p.add_argument("--word-bound", type=int, default=3, help="word length bound for the brute-force search")
    p.add_argument("--verbose", action="store_true", help="include every instance in the JSON")
    p.add_argument("--json", action="store_true")
    caps(p)
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("enumerate", help="list accepted words up to a length")
    _add_input(p)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, AutomatonError, sfr.SfrSyntaxError, fc.FcSyntaxError, fc.FreeVariableError,
            MonoidTooLarge, StateCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
