"""Command-line front end.

Four batch commands over a theory file:

    eval         apply a strategy expression to a term
    normalize    collect normal forms under a built-in strategy
    derive       list the bounded derivation tree a strategy generates
    check-proof  infer (and optionally check) the sequent of a proof term

Exit codes: 0 success / strategy value, 1 failure result or sequent
mismatch, 2 fuel exhausted or inference error, 3 usage and parse errors.
All collection output is sorted on the printed form, so identical inputs
give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ars import (
    all_steps,
    derivation_to_json,
    extension,
    innermost,
    normal_forms_under,
    print_derivation,
    rightmost_innermost,
)
from .errors import (
    ArityError,
    ComposeError,
    FuelExhausted,
    ParseError,
    UnknownLabel,
)
from .proofs import infer, parse_proof
from .strategies import STK, eval_strategy, parse_strategy
from .terms import parse_term, print_term
from .theory import Theory, load_theory

_INTENSIONAL = ("innermost", "rightmost-innermost", "all")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here reserves 2 for
    fuel/inference, so usage errors are remapped to 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="termstrat",
        description="Strategic term rewriting: evaluate, normalize, derive, check proofs.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--file", required=True, help="theory file (sig/rule/strat lines)")
        p.add_argument("--fuel", type=int, default=10000, help="evaluation budget (default 10000)")

    p_eval = sub.add_parser("eval", help="apply a strategy to a term")
    common(p_eval)
    p_eval.add_argument("--strategy", required=True, help="strategy expression or declared name")
    p_eval.add_argument("--term", required=True)

    p_norm = sub.add_parser("normalize", help="normal forms under a built-in strategy")
    common(p_norm)
    p_norm.add_argument("--term", required=True)
    p_norm.add_argument("--intensional", choices=_INTENSIONAL, default="all")

    p_der = sub.add_parser("derive", help="list the bounded derivation tree")
    common(p_der)
    p_der.add_argument("--term", required=True)
    p_der.add_argument("--depth", type=int, required=True, help="maximum derivation length")
    p_der.add_argument("--intensional", choices=_INTENSIONAL, default="all")
    p_der.add_argument("--json", action="store_true", help="emit a JSON array instead of text")

    p_chk = sub.add_parser("check-proof", help="infer the sequent of a proof term")
    common(p_chk)
    p_chk.add_argument("--proof", required=True)
    p_chk.add_argument("--from", dest="from_term", help="expected source term")
    p_chk.add_argument("--to", dest="to_term", help="expected target term")
    return parser


def _load(path: str) -> Theory:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}")
    try:
        return load_theory(text)
    except ParseError as e:
        raise ParseError(f"{path}:{e}") from e


def _strategy_for(name: str, th: Theory, rs):
    if name == "innermost":
        return innermost(rs)
    if name == "rightmost-innermost":
        return rightmost_innermost(rs)
    return all_steps(rs)


def cmd_eval(ns) -> int:
    th = _load(ns.file)
    term = parse_term(ns.term, th.signature)
    strat = parse_strategy(ns.strategy, th.rules, th.signature, th.strategies)
    try:
        result = eval_strategy(strat, term, th.rules, ns.fuel)
    except FuelExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if result == STK:
        print("stk")
        return 1
    print(f"value: {print_term(result.term)}")
    return 0


def cmd_normalize(ns) -> int:
    th = _load(ns.file)
    term = parse_term(ns.term, th.signature)
    zeta = _strategy_for(ns.intensional, th, th.rules)
    try:
        forms = normal_forms_under(zeta, term, ns.fuel)
    except FuelExhausted as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    for line in sorted(print_term(t) for t in forms):
        print(line)
    return 0


def cmd_derive(ns) -> int:
    th = _load(ns.file)
    term = parse_term(ns.term, th.signature)
    if ns.depth < 0:
        raise ParseError("--depth must be nonnegative")
    zeta = _strategy_for(ns.intensional, th, th.rules)
    ds = extension(zeta, term, ns.depth)
    ordered = sorted(ds, key=print_derivation)
    if ns.json:
        print(json.dumps([derivation_to_json(d) for d in ordered], indent=2))
    else:
        for d in ordered:
            print(print_derivation(d))
    return 0


def cmd_check_proof(ns) -> int:
    th = _load(ns.file)
    proof = parse_proof(ns.proof, th.rules, th.signature)
    expect_from = parse_term(ns.from_term, th.signature) if ns.from_term else None
    expect_to = parse_term(ns.to_term, th.signature) if ns.to_term else None
    try:
        seq = infer(proof, th.rules)
    except ComposeError as e:
        print(
            f"error: cannot chain: left side ends at {print_term(e.left_target)} "
            f"but right side starts at {print_term(e.right_source)}",
            file=sys.stderr,
        )
        return 2
    except (UnknownLabel, ArityError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(f"{print_term(seq.source)} -> {print_term(seq.target)}")
    if expect_from is not None and seq.source != expect_from:
        print(f"mismatch: expected source {ns.from_term}", file=sys.stderr)
        return 1
    if expect_to is not None and seq.target != expect_to:
        print(f"mismatch: expected target {ns.to_term}", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "eval": cmd_eval,
    "normalize": cmd_normalize,
    "derive": cmd_derive,
    "check-proof": cmd_check_proof,
}


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[ns.command](ns)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ArityError, UnknownLabel) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
