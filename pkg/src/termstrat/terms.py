"""First-order terms over a user signature: positions, substitutions, matching.

Everything here is an immutable value and every operation is a pure
function, so the whole module is safe to use concurrently without locks.

Concrete syntax (round-trips through `parse_term` / `print_term`):

    term := ident | ident "(" term ("," term)* ")"

Identifiers not declared in the signature are variables.  Nullary symbols
print without parentheses; `a()` is accepted on input.  Nonnegative integer
literals (`0`, `42`) are allowed as declared constant names but never as
variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityError, InvalidPosition, ParseError, UnknownSymbol
from .lex import Lexer

NAME_RE = re.compile(r"(?:[A-Za-z][A-Za-z0-9_]*|[0-9]+)\Z")
VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Symbol:
    """A function symbol with a fixed arity."""

    name: str
    arity: int

    def __post_init__(self):
        if not NAME_RE.match(self.name):
            raise ValueError(f"bad symbol name {self.name!r}")
        if self.arity < 0:
            raise ValueError(f"negative arity for {self.name}")

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


class Signature:
    """A finite set of symbols with pairwise distinct names."""

    def __init__(self, symbols=()):
        self._by_name: dict[str, Symbol] = {}
        for sym in symbols:
            self.add(sym)

    def add(self, sym: Symbol) -> None:
        old = self._by_name.get(sym.name)
        if old is not None and old != sym:
            raise ValueError(f"symbol {sym.name} already declared as {old}")
        self._by_name[sym.name] = sym

    def lookup(self, name: str) -> Symbol | None:
        return self._by_name.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self) -> int:
        return len(self._by_name)

    def __repr__(self) -> str:
        return f"Signature([{', '.join(str(s) for s in self)}])"


@dataclass(frozen=True)
class Var:
    """A variable occurrence."""

    name: str

    def __post_init__(self):
        if not VAR_RE.match(self.name):
            raise ValueError(f"bad variable name {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    """A symbol applied to exactly `symbol.arity` argument terms."""

    symbol: Symbol
    args: tuple = ()

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.symbol.arity:
            raise ArityError(
                f"{self.symbol.name} expects {self.symbol.arity} argument(s), "
                f"got {len(self.args)}"
            )

    def __str__(self) -> str:
        if not self.args:
            return self.symbol.name
        return f"{self.symbol.name}({','.join(str(a) for a in self.args)})"


Term = Var | App


@dataclass(frozen=True, order=True)
class Position:
    """A path of 1-based child indices; the empty path is the root.

    The derived total order is lexicographic on paths; the prefix (partial)
    order is available through `is_prefix_of`.
    """

    path: tuple = ()

    def __post_init__(self):
        if not isinstance(self.path, tuple):
            object.__setattr__(self, "path", tuple(self.path))
        if any(i < 1 for i in self.path):
            raise ValueError(f"position indices are 1-based: {self.path}")

    def child(self, i: int) -> Position:
        return Position(self.path + (i,))

    @property
    def is_root(self) -> bool:
        return not self.path

    def is_prefix_of(self, other: Position) -> bool:
        return other.path[: len(self.path)] == self.path

    def is_below(self, other: Position) -> bool:
        """Strictly deeper than `other`, i.e. `other` is a proper prefix."""
        return len(self.path) > len(other.path) and other.is_prefix_of(self)

    def __str__(self) -> str:
        if not self.path:
            return "e"
        return ".".join(str(i) for i in self.path)


ROOT = Position()


@dataclass(frozen=True)
class Substitution:
    """A finite map from variable names to terms, applied simultaneously.

    Stored as name-sorted pairs so equal maps compare and hash equal.
    """

    pairs: tuple = ()

    def __post_init__(self):
        pairs = tuple(sorted(self.pairs, key=lambda p: p[0]))
        names = [n for n, _ in pairs]
        if len(set(names)) != len(names):
            raise ValueError(f"variable bound twice: {names}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, mapping) -> Substitution:
        return cls(tuple(mapping.items()))

    def get(self, name: str) -> Term | None:
        for n, t in self.pairs:
            if n == name:
                return t
        return None

    def domain(self) -> frozenset:
        return frozenset(n for n, _ in self.pairs)

    def items(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        inner = ",".join(f"{n}->{t}" for n, t in self.pairs)
        return "{" + inner + "}"


EMPTY_SUBST = Substitution()


def subterms(t: Term):
    """Yield (position, subterm) pairs in preorder (lexicographic positions)."""
    stack = [(ROOT, t)]
    while stack:
        pos, sub = stack.pop()
        yield pos, sub
        if isinstance(sub, App):
            for i in range(len(sub.args), 0, -1):
                stack.append((pos.child(i), sub.args[i - 1]))


def positions(t: Term) -> list[Position]:
    """All valid positions of `t`, root included, in lexicographic order."""
    return [pos for pos, _ in subterms(t)]


def subterm_at(t: Term, p: Position) -> Term:
    """The subterm of `t` rooted at `p`; the root position is the identity."""
    cur = t
    for i in p.path:
        if not isinstance(cur, App) or i > len(cur.args):
            raise InvalidPosition(f"no position {p} in {t}")
        cur = cur.args[i - 1]
    return cur


def replace_at(t: Term, p: Position, s: Term) -> Term:
    """`t` with the subterm at `p` replaced by `s`; all other nodes unchanged."""
    if p.is_root:
        return s
    i = p.path[0]
    if not isinstance(t, App) or i > len(t.args):
        raise InvalidPosition(f"no position {p} in {t}")
    rest = Position(p.path[1:])
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], rest, s)
    return App(t.symbol, tuple(args))


def variables(t: Term) -> tuple:
    """Variable names of `t` in first-occurrence (preorder) order."""
    seen: list[str] = []
    for _, sub in subterms(t):
        if isinstance(sub, Var) and sub.name not in seen:
            seen.append(sub.name)
    return tuple(seen)


def match(pattern: Term, subject: Term) -> Substitution | None:
    """Syntactic matching: the unique substitution with sigma(pattern) = subject.

    Returns None when no such substitution exists.  Variables of the subject
    are treated as constants; repeated pattern variables must map to
    identical subterms.
    """
    bindings: dict[str, Term] = {}
    stack = [(pattern, subject)]
    while stack:
        p, s = stack.pop()
        if isinstance(p, Var):
            bound = bindings.get(p.name)
            if bound is None:
                bindings[p.name] = s
            elif bound != s:
                return None
        else:
            if not isinstance(s, App) or s.symbol != p.symbol:
                return None
            stack.extend(zip(p.args, s.args))
    return Substitution.of(bindings)


def apply_subst(subst: Substitution, t: Term) -> Term:
    """Simultaneously replace every bound variable; unbound ones stay as-is."""
    if isinstance(t, Var):
        bound = subst.get(t.name)
        return t if bound is None else bound
    if not t.args:
        return t
    return App(t.symbol, tuple(apply_subst(subst, a) for a in t.args))


def parse_term(text: str, sig: Signature) -> Term:
    lexer = Lexer(text)
    t = parse_term_tokens(lexer, sig)
    lexer.expect_end()
    return t


def parse_term_tokens(lexer: Lexer, sig: Signature) -> Term:
    """Parse one term from an open token stream (shared by the file formats)."""
    tok = lexer.peek()
    if tok.kind not in ("ident", "num"):
        raise lexer.error(f"expected a term, found '{tok.text or 'end of input'}'")
    lexer.next()
    name = tok.text
    if lexer.accept("("):
        args = []
        if not lexer.accept(")"):
            args.append(parse_term_tokens(lexer, sig))
            while lexer.accept(","):
                args.append(parse_term_tokens(lexer, sig))
            lexer.expect(")")
        sym = sig.lookup(name)
        if sym is None:
            raise UnknownSymbol(f"undeclared symbol {name!r}", tok.line, tok.col)
        if sym.arity != len(args):
            raise ArityError(
                f"{name} expects {sym.arity} argument(s), got {len(args)} "
                f"at {tok.line}:{tok.col}"
            )
        return App(sym, tuple(args))
    sym = sig.lookup(name)
    if sym is not None:
        if sym.arity != 0:
            raise ArityError(
                f"{name} expects {sym.arity} argument(s), got 0 at {tok.line}:{tok.col}"
            )
        return App(sym, ())
    if tok.kind == "num":
        raise UnknownSymbol(f"undeclared numeral constant {name!r}", tok.line, tok.col)
    return Var(name)


def print_term(t: Term) -> str:
    """Canonical text form; `parse_term(print_term(t), sig)` gives back `t`."""
    return str(t)
