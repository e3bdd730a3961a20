"""Tiny shared lexer for term, rule, proof, and strategy syntax.

Tokens: identifiers ([A-Za-z][A-Za-z0-9_]*), numerals ([0-9]+), and the
punctuation used by the concrete grammars.  `#` starts a comment running to
end of line.  Whitespace separates tokens and is otherwise insignificant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

PUNCT = ("=>", "(", ")", ",", ";", ".", ":", "=", "/")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "num", one of PUNCT, or "end"
    text: str
    line: int
    col: int


class Lexer:
    """Cursor over the token stream of a piece of source text."""

    def __init__(self, text: str, line: int = 1):
        self._tokens = list(_tokenize(text, line))
        self._index = 0

    def peek(self) -> Token:
        return self._tokens[self._index]

    def next(self) -> Token:
        tok = self._tokens[self._index]
        if tok.kind != "end":
            self._index += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.peek().kind == kind:
            return self.next()
        return None

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            want = what or f"'{kind}'"
            raise ParseError(f"expected {want}, found {_describe(tok)}", tok.line, tok.col)
        return self.next()

    def expect_end(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input: {_describe(tok)}", tok.line, tok.col)

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)


def _is_letter(c: str) -> bool:
    return "a" <= c <= "z" or "A" <= c <= "Z"


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"


def _describe(tok: Token) -> str:
    if tok.kind == "end":
        return "end of input"
    return f"'{tok.text}'"


def _tokenize(text: str, line: int):
    i, col = 0, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if _is_letter(c):
            j = i
            while j < n and (_is_letter(text[j]) or _is_digit(text[j]) or text[j] == "_"):
                j += 1
            yield Token("ident", text[i:j], line, col)
            col += j - i
            i = j
            continue
        if _is_digit(c):
            j = i
            while j < n and _is_digit(text[j]):
                j += 1
            yield Token("num", text[i:j], line, col)
            col += j - i
            i = j
            continue
        if text.startswith("=>", i):
            yield Token("=>", "=>", line, col)
            i += 2
            col += 2
            continue
        if c in "(),;.:=/":
            yield Token(c, c, line, col)
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    yield Token("end", "", line, col)
