"""Concrete ASCII syntax for formulas.

Grammar, loosest binding first::

    formula := iff
    iff     := impl ("<->" impl)*          left-assoc
    impl    := disj ("->" impl)?           right-assoc
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "~" unary | MOD unary | atom
    MOD     := ("K"|"B"|"I") "[" ident "]" | "S" "[" ident "," ident "]" | "T" "[" ident "]"
    atom    := ident | "true" | "false" | "(" formula ")"

``S[a,b]`` and ``T[b]`` are expanded while parsing; they never appear in an AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from secretlogic.formula import (
    TOP_VAR,
    And,
    Bot,
    Formula,
    Iff,
    Implies,
    Modal,
    Not,
    Or,
    Top,
    Var,
    box,
    expand_factive_ignorance,
    expand_secret,
    resugar,
)


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets into the UTF-8 encoded input."""

    start: int
    end: int


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, expected: list[str] | None = None):
        self.message = message
        self.span = span
        self.expected = list(expected or [])
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at byte {span.start}{detail}")


@dataclass
class _Token:
    kind: str  # ident, op, eof
    text: str
    start: int
    end: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|[~&|()\[\],])
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<reserved>_[A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)

_MODAL_WORDS = {"K", "B", "I", "S", "T"}


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            start = _byte_offset(text, pos)
            raise ParseError(
                f"unexpected character {text[pos]!r}",
                SourceSpan(start, _byte_offset(text, pos + 1)),
            )
        kind = m.lastgroup
        if kind == "reserved":
            span = SourceSpan(_byte_offset(text, m.start()), _byte_offset(text, m.end()))
            if m.group() == TOP_VAR:
                raise ParseError(f"{TOP_VAR} is a reserved name", span)
            raise ParseError("identifiers must start with a letter", span)
        if kind != "ws":
            tokens.append(
                _Token(kind, m.group(), _byte_offset(text, m.start()), _byte_offset(text, m.end()))
            )
        pos = m.end()
    end = _byte_offset(text, len(text))
    tokens.append(_Token("eof", "", end, end))
    return tokens


@dataclass
class _Parser:
    tokens: list[_Token]
    pos: int = 0
    depth: int = field(default=0)

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def error(self, message: str, expected: list[str]) -> ParseError:
        t = self.tok
        return ParseError(message, SourceSpan(t.start, t.end), expected)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"unexpected {found!r}", [repr(text)])

    def ident(self, what: str) -> str:
        t = self.tok
        if t.kind != "ident":
            found = t.text or "end of input"
            raise self.error(f"unexpected {found!r}", [what])
        self.pos += 1
        return t.text

    def formula(self) -> Formula:
        left = self.impl()
        while self.accept("<->"):
            left = Iff(left, self.impl())
        return left

    def impl(self) -> Formula:
        left = self.disj()
        if self.accept("->"):
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.accept("|"):
            left = Or(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.accept("&"):
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.accept("~"):
            return Not(self.unary())
        t = self.tok
        if t.kind == "ident" and t.text in _MODAL_WORDS and self.peek().text == "[":
            self.pos += 2
            first = self.ident("agent name")
            if t.text == "S":
                self.expect(",")
                second = self.ident("agent name")
                self.expect("]")
                return expand_secret(first, second, self.unary())
            self.expect("]")
            body = self.unary()
            if t.text == "T":
                return expand_factive_ignorance(first, body)
            return box(t.text, first, body)
        return self.atom()

    def atom(self) -> Formula:
        t = self.tok
        if t.kind == "ident":
            self.pos += 1
            if t.text == "true":
                return Top()
            if t.text == "false":
                return Bot()
            return Var(t.text)
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}", ["identifier", "'true'", "'false'", "'('", "'~'", "modality"])


def parse_formula(text: str) -> Formula:
    """Parse ``text``; raises :class:`ParseError` with a byte span on bad input."""
    parser = _Parser(_tokenize(text))
    result = parser.formula()
    if parser.tok.kind != "eof":
        raise parser.error(f"unexpected {parser.tok.text!r}", ["end of input", "'&'", "'|'", "'->'", "'<->'"])
    return result


# binding strength; higher binds tighter
_IFF, _IMPL, _DISJ, _CONJ, _UNARY = range(1, 6)


def print_formula(phi: Formula, sugar: bool = False) -> str:
    """Print with minimal parentheses.

    With ``sugar=True`` the desugared shapes of ``|``, ``->``, ``<->``, ``true``
    and ``false`` are shown in their short form first.
    """
    if sugar:
        phi = resugar(phi)
    return _print(phi, _IFF)


def _print(phi: Formula, ctx: int) -> str:
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Bot):
        return "false"
    if isinstance(phi, Not):
        return "~" + _print(phi.body, _UNARY)
    if isinstance(phi, Modal):
        return f"{phi.op}[{phi.agent}] " + _print(phi.body, _UNARY)
    if isinstance(phi, And):
        level, text = _CONJ, f"{_print(phi.left, _CONJ)} & {_print(phi.right, _UNARY)}"
    elif isinstance(phi, Or):
        level, text = _DISJ, f"{_print(phi.left, _DISJ)} | {_print(phi.right, _CONJ)}"
    elif isinstance(phi, Implies):
        level, text = _IMPL, f"{_print(phi.left, _DISJ)} -> {_print(phi.right, _IMPL)}"
    elif isinstance(phi, Iff):
        level, text = _IFF, f"{_print(phi.left, _IFF)} <-> {_print(phi.right, _IMPL)}"
    else:
        raise TypeError(f"not a formula: {phi!r}")
    return text if level >= ctx else f"({text})"
