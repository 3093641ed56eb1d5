"""A tiny parser for subtraction-free coordinate expressions.

Grammar (no subtraction, no unary minus -- the values live in semifields):

    expr   := term ('+' term)*
    term   := factor (('*' | '/') factor)*
    factor := atom (('^' | '**') positive-integer)?
    atom   := positive-integer | identifier | '(' expr ')'

Integer literals go through the model's ``from_int``; identifiers are
looked up in the given environment.  Used for the embedded certificate
data and for symbolic coordinates on the command line.
"""

from __future__ import annotations

import re
from typing import Mapping

from .errors import SemifieldError
from .semifield import Semifield, SemifieldValue

_TOKEN = re.compile(r"\s*(\*\*|[()+*/^]|\d+|[A-Za-z_][A-Za-z0-9_]*)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            if text[pos:].strip():
                raise SemifieldError("parse", f"bad character in expression: {text[pos:]!r}")
            break
        tokens.append(match.group(1))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], model: Semifield, env: Mapping[str, SemifieldValue]):
        self.tokens = tokens
        self.pos = 0
        self.model = model
        self.env = env

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        token = self.peek()
        if token is None:
            raise SemifieldError("parse", "unexpected end of expression")
        self.pos += 1
        return token

    def expr(self) -> SemifieldValue:
        value = self.term()
        while self.peek() == "+":
            self.take()
            value = value + self.term()
        return value

    def term(self) -> SemifieldValue:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            other = self.factor()
            value = value * other if op == "*" else value / other
        return value

    def factor(self) -> SemifieldValue:
        value = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            exponent = self.take()
            if not exponent.isdigit() or int(exponent) < 1:
                raise SemifieldError("parse", f"exponent must be a positive integer, got {exponent!r}")
            value = value ** int(exponent)
        return value

    def atom(self) -> SemifieldValue:
        token = self.take()
        if token == "(":
            value = self.expr()
            if self.take() != ")":
                raise SemifieldError("parse", "missing closing parenthesis")
            return value
        if token.isdigit():
            return self.model.from_int(int(token))
        if token in self.env:
            return self.env[token]
        raise SemifieldError("parse", f"unknown name {token!r} in expression")


def parse_value(text: str, model: Semifield, env: Mapping[str, SemifieldValue] | None = None) -> SemifieldValue:
    """Parse one subtraction-free expression into a semifield value."""
    parser = _Parser(_tokenize(text), model, env or {})
    value = parser.expr()
    if parser.peek() is not None:
        raise SemifieldError("parse", f"trailing input at {parser.peek()!r}")
    return value
