"""Labeled rewrite rules, rule sets, and single rewrite steps.

A step is identified by a `StepLabel` (where, which rule, which bindings);
`RewriteStep` packages a label with its source and target terms.  Step
enumeration (`all_redexes`) is deterministic: positions in lexicographic
order, rules in declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StepMismatch, UnknownLabel
from .terms import (
    App,
    Position,
    Signature,
    Substitution,
    Term,
    Var,
    apply_subst,
    match,
    parse_term_tokens,
    print_term,
    replace_at,
    subterm_at,
    subterms,
    variables,
)
from .lex import Lexer


@dataclass(frozen=True)
class Rule:
    """A labeled rule l => r with the variables of l as parameters.

    `params` is the variable tuple of the left-hand side in first-occurrence
    order; it fixes the argument order used by proof-term replacements.
    """

    label: str
    lhs: Term
    rhs: Term
    params: tuple

    @classmethod
    def make(cls, label: str, lhs: Term, rhs: Term) -> Rule:
        if isinstance(lhs, Var):
            raise ValueError(f"rule {label}: left-hand side is a bare variable")
        params = variables(lhs)
        extra = set(variables(rhs)) - set(params)
        if extra:
            raise ValueError(
                f"rule {label}: right-hand side has unbound variable(s) "
                f"{', '.join(sorted(extra))}"
            )
        return cls(label, lhs, rhs, params)

    def __str__(self) -> str:
        return f"{self.label}: {print_term(self.lhs)} => {print_term(self.rhs)}"


class RuleSet:
    """An ordered collection of rules with pairwise distinct labels."""

    def __init__(self, rules=()):
        self._rules: list[Rule] = []
        self._by_label: dict[str, Rule] = {}
        for rule in rules:
            self.add(rule)

    def add(self, rule: Rule) -> None:
        if rule.label in self._by_label:
            raise ValueError(f"duplicate rule label {rule.label}")
        self._rules.append(rule)
        self._by_label[rule.label] = rule

    def lookup(self, label: str) -> Rule:
        rule = self._by_label.get(label)
        if rule is None:
            raise UnknownLabel(f"no rule labeled {label}")
        return rule

    def __contains__(self, label: str) -> bool:
        return label in self._by_label

    def __iter__(self):
        return iter(self._rules)

    def __len__(self) -> int:
        return len(self._rules)

    def __repr__(self) -> str:
        return f"RuleSet([{', '.join(r.label for r in self)}])"


@dataclass(frozen=True)
class StepLabel:
    """What happened in one step: where, which rule, which bindings."""

    position: Position
    rule_label: str
    subst: Substitution

    def __str__(self) -> str:
        return f"({self.position},{self.rule_label},{self.subst})"


@dataclass(frozen=True)
class RewriteStep:
    """One rewrite `source -> target` justified by `label`."""

    source: Term
    label: StepLabel
    target: Term

    def __str__(self) -> str:
        return (
            f"{print_term(self.source)} -[{self.label.position},"
            f"{self.label.rule_label}]-> {print_term(self.target)}"
        )


def rewrite_at(t: Term, rule: Rule, p: Position) -> RewriteStep | None:
    """Apply `rule` at position `p` of `t`, or None when the lhs does not match."""
    sub = subterm_at(t, p)
    sigma = match(rule.lhs, sub)
    if sigma is None:
        return None
    target = replace_at(t, p, apply_subst(sigma, rule.rhs))
    return RewriteStep(t, StepLabel(p, rule.label, sigma), target)


def all_redexes(t: Term, rs: RuleSet) -> list[StepLabel]:
    """Every (position, rule, substitution) triple applicable to `t`.

    Ordered by position (lexicographic), then by rule declaration order.
    """
    out: list[StepLabel] = []
    for pos, sub in subterms(t):
        for rule in rs:
            sigma = match(rule.lhs, sub)
            if sigma is not None:
                out.append(StepLabel(pos, rule.label, sigma))
    return out


def apply_step(t: Term, label: StepLabel, rs: RuleSet) -> RewriteStep:
    """Replay a recorded step on `t`; the recorded bindings must agree exactly."""
    rule = rs.lookup(label.rule_label)
    try:
        sub = subterm_at(t, label.position)
    except Exception as e:
        raise StepMismatch(f"cannot replay {label} on {print_term(t)}: {e}") from e
    sigma = match(rule.lhs, sub)
    if sigma is None:
        raise StepMismatch(
            f"rule {label.rule_label} does not match {print_term(sub)} "
            f"at {label.position} in {print_term(t)}"
        )
    if sigma != label.subst:
        raise StepMismatch(
            f"recorded bindings {label.subst} disagree with match {sigma} "
            f"for {label.rule_label} at {label.position} in {print_term(t)}"
        )
    target = replace_at(t, label.position, apply_subst(sigma, rule.rhs))
    return RewriteStep(t, label, target)


def parse_rule_line(lexer: Lexer, sig: Signature) -> Rule:
    """Parse `<label> : <term> => <term>` from an open token stream."""
    tok = lexer.expect("ident", "rule label")
    lexer.expect(":")
    lhs = parse_term_tokens(lexer, sig)
    lexer.expect("=>")
    rhs = parse_term_tokens(lexer, sig)
    try:
        return Rule.make(tok.text, lhs, rhs)
    except ValueError as e:
        raise lexer.error(str(e)) from e
