"""Strategy combinators with explicit failure, evaluated over terms.

A strategy applied to a term either produces a term (`Value`) or fails
(`STK`).  Failure is data, not an exception: combinators like `First` and
`Not` branch on it.  Running out of fuel is the opposite: it means the
evaluation was cut off before reaching an answer, raises `FuelExhausted`,
and is never converted into failure.

Recursion is written with `mu`; `repeat(s)` abbreviates
`mu X . try(seq(s, X))`.  Every combinator evaluation consumes one unit of
fuel, so any divergent strategy (say `repeat(id)`) exhausts any finite
budget.

Concrete syntax:

    s := id | fail | <rule-label> | seq(s,s) | first(s,s) | try(s)
       | not(s) | ifTE(s,s,s) | repeat(s) | occurs(<term>) | mu X . s | X
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FuelExhausted, ParseError, UnboundSVar
from .lex import Lexer
from .rules import RuleSet
from .terms import (
    Signature,
    Term,
    apply_subst,
    match,
    parse_term_tokens,
    print_term,
    subterms,
)


@dataclass(frozen=True)
class Id:
    """Always succeeds with the term unchanged."""


@dataclass(frozen=True)
class Fail:
    """Always fails."""


@dataclass(frozen=True)
class RuleRef:
    """Apply the named rule at the root; fails when the rule does not match."""

    label: str


@dataclass(frozen=True)
class Seq:
    """Apply s1, then s2 to its result; failure anywhere is the result."""

    s1: StrategyExpr
    s2: StrategyExpr


@dataclass(frozen=True)
class First:
    """Apply s1; on failure (and only then) apply s2 to the original term."""

    s1: StrategyExpr
    s2: StrategyExpr


@dataclass(frozen=True)
class Try:
    """Apply s, or leave the term unchanged when s fails."""

    s: StrategyExpr


@dataclass(frozen=True)
class Not:
    """Succeed (with the term unchanged) exactly when s fails."""

    s: StrategyExpr


@dataclass(frozen=True)
class IfTE:
    """Run cond as a test; pick then_s or else_s, both on the original term."""

    cond: StrategyExpr
    then_s: StrategyExpr
    else_s: StrategyExpr


@dataclass(frozen=True)
class Repeat:
    """Apply s until it fails; succeeds with the last good term."""

    s: StrategyExpr


@dataclass(frozen=True)
class Mu:
    """Bind `var` to this whole expression inside `body`."""

    var: str
    body: StrategyExpr


@dataclass(frozen=True)
class SVar:
    """A recursion variable bound by an enclosing mu."""

    var: str


@dataclass(frozen=True)
class Occurs:
    """Succeed (term unchanged) when some subterm matches `pattern`."""

    pattern: Term


StrategyExpr = (
    Id | Fail | RuleRef | Seq | First | Try | Not | IfTE | Repeat | Mu | SVar | Occurs
)


@dataclass(frozen=True)
class Value:
    """Successful outcome carrying the resulting term."""

    term: Term


@dataclass(frozen=True)
class Stk:
    """The failure outcome.  Use the STK constant."""

    def __repr__(self) -> str:
        return "Stk"


STK = Stk()

EvalResult = Value | Stk


class _Fuel:
    """Shared countdown; one unit per combinator evaluation."""

    __slots__ = ("left",)

    def __init__(self, amount: int):
        self.left = amount

    def spend(self) -> None:
        if self.left <= 0:
            raise FuelExhausted("strategy evaluation ran out of fuel")
        self.left -= 1


def eval_strategy(
    s: StrategyExpr, t: Term, rs: RuleSet, fuel: int = 10000
) -> EvalResult:
    """Evaluate a closed strategy expression on `t`.

    Raises FuelExhausted when `fuel` combinator evaluations are not enough,
    UnknownLabel for a rule reference outside `rs`, and UnboundSVar for a
    free recursion variable.
    """
    return _eval(s, t, rs, _Fuel(fuel), {})


def _eval(s: StrategyExpr, t: Term, rs: RuleSet, fuel: _Fuel, env: dict) -> EvalResult:
    fuel.spend()
    match s:
        case Id():
            return Value(t)
        case Fail():
            return STK
        case RuleRef(label=label):
            rule = rs.lookup(label)
            sigma = match(rule.lhs, t)
            if sigma is None:
                return STK
            return Value(apply_subst(sigma, rule.rhs))
        case Seq(s1=s1, s2=s2):
            r = _eval(s1, t, rs, fuel, env)
            if r == STK:
                return STK
            return _eval(s2, r.term, rs, fuel, env)
        case First(s1=s1, s2=s2):
            r = _eval(s1, t, rs, fuel, env)
            if r != STK:
                return r
            return _eval(s2, t, rs, fuel, env)
        case Try(s=inner):
            r = _eval(inner, t, rs, fuel, env)
            if r != STK:
                return r
            return Value(t)
        case Not(s=inner):
            r = _eval(inner, t, rs, fuel, env)
            return Value(t) if r == STK else STK
        case IfTE(cond=c, then_s=a, else_s=b):
            r = _eval(c, t, rs, fuel, env)
            branch = a if r != STK else b
            return _eval(branch, t, rs, fuel, env)
        case Repeat(s=inner):
            unfolded = Mu("__repeat", Try(Seq(inner, SVar("__repeat"))))
            return _eval(unfolded, t, rs, fuel, env)
        case Mu(var=x, body=body):
            return _eval(body, t, rs, fuel, {**env, x: (s, env)})
        case SVar(var=x):
            bound = env.get(x)
            if bound is None:
                raise UnboundSVar(f"strategy variable {x} is not bound")
            mu, defenv = bound
            return _eval(mu.body, t, rs, fuel, {**defenv, mu.var: bound})
        case Occurs(pattern=g):
            for _, sub in subterms(t):
                if match(g, sub) is not None:
                    return Value(t)
            return STK
    raise TypeError(f"not a strategy expression: {s!r}")


def check_invariant(g: Term, t: Term) -> bool:
    """True iff some subterm of `t` matches the pattern `g`."""
    return any(match(g, sub) is not None for _, sub in subterms(t))


def invariant_strategy(g: Term) -> StrategyExpr:
    """Succeeds (term unchanged) while the pattern `g` still occurs.

    The persistent-check idiom: keep the term when the wanted pattern is
    present, fail the moment it disappears.
    """
    return First(Occurs(g), Fail())


def forbidden_strategy(g: Term) -> StrategyExpr:
    """Fails exactly when the unwanted pattern `g` occurs somewhere in t."""
    return IfTE(Occurs(g), Fail(), Id())


_KEYWORDS = ("id", "fail", "seq", "first", "try", "not", "ifTE", "repeat", "mu", "occurs")


def parse_strategy(
    text: str, rs: RuleSet, sig: Signature, named: dict | None = None
) -> StrategyExpr:
    """Parse one strategy expression.

    Bare identifiers resolve, in order, to: an enclosing mu binding, a rule
    label in `rs`, a name in `named` (spliced in place).  Anything else
    raises UnboundSVar.
    """
    lexer = Lexer(text)
    s = parse_strategy_tokens(lexer, rs, sig, named or {})
    lexer.expect_end()
    return s


def parse_strategy_tokens(
    lexer: Lexer, rs: RuleSet, sig: Signature, named: dict, bound: frozenset = frozenset()
) -> StrategyExpr:
    tok = lexer.peek()
    if tok.kind != "ident":
        raise lexer.error(
            f"expected a strategy, found '{tok.text or 'end of input'}'"
        )
    name = tok.text

    def args(n: int) -> list[StrategyExpr]:
        lexer.next()
        lexer.expect("(")
        out = [parse_strategy_tokens(lexer, rs, sig, named, bound)]
        while lexer.accept(","):
            out.append(parse_strategy_tokens(lexer, rs, sig, named, bound))
        lexer.expect(")")
        if len(out) != n:
            raise lexer.error(f"{name} takes {n} argument(s), got {len(out)}")
        return out

    match name:
        case "id":
            lexer.next()
            return Id()
        case "fail":
            lexer.next()
            return Fail()
        case "seq":
            return Seq(*args(2))
        case "first":
            return First(*args(2))
        case "try":
            return Try(*args(1))
        case "not":
            return Not(*args(1))
        case "ifTE":
            return IfTE(*args(3))
        case "repeat":
            return Repeat(*args(1))
        case "occurs":
            lexer.next()
            lexer.expect("(")
            pattern = parse_term_tokens(lexer, sig)
            lexer.expect(")")
            return Occurs(pattern)
        case "mu":
            lexer.next()
            var = lexer.expect("ident", "recursion variable").text
            if var in _KEYWORDS:
                raise lexer.error(f"{var!r} is reserved and cannot be bound by mu")
            lexer.expect(".")
            body = parse_strategy_tokens(lexer, rs, sig, named, bound | {var})
            return Mu(var, body)
    lexer.next()
    if name in bound:
        return SVar(name)
    if name in rs:
        return RuleRef(name)
    if name in named:
        return named[name]
    raise UnboundSVar(
        f"{name!r} is not a bound variable, rule label, or named strategy",
        tok.line,
        tok.col,
    )


def print_strategy(s: StrategyExpr) -> str:
    """Canonical text form; parses back to the same expression."""
    match s:
        case Id():
            return "id"
        case Fail():
            return "fail"
        case RuleRef(label=label):
            return label
        case Seq(s1=a, s2=b):
            return f"seq({print_strategy(a)},{print_strategy(b)})"
        case First(s1=a, s2=b):
            return f"first({print_strategy(a)},{print_strategy(b)})"
        case Try(s=a):
            return f"try({print_strategy(a)})"
        case Not(s=a):
            return f"not({print_strategy(a)})"
        case IfTE(cond=c, then_s=a, else_s=b):
            return f"ifTE({print_strategy(c)},{print_strategy(a)},{print_strategy(b)})"
        case Repeat(s=a):
            return f"repeat({print_strategy(a)})"
        case Mu(var=x, body=body):
            return f"mu {x} . {print_strategy(body)}"
        case SVar(var=x):
            return x
        case Occurs(pattern=g):
            return f"occurs({print_term(g)})"
    raise TypeError(f"not a strategy expression: {s!r}")
