"""Tokenizer and recursive-descent parser for arithmetic expressions.

Grammar (left associative)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | atom
    atom   := NUMBER | NAME | '(' expr ')'

A leading minus directly in front of a number is folded into the literal;
any other unary minus ``-t`` becomes ``0 - t``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ParseError
from .signs import Op
from .terms import BinOp, Const, Term, neg

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*'?)
  | (?P<op>=>|>=|[-+*/()=@,:>])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col0: int = 1) -> list[Token]:
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), line, col0 + pos))
        pos = m.end()
    out.append(Token("eof", "", line, col0 + len(text)))
    return out


Resolver = Callable[[Token], Term]


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def accept(self, text: str) -> Token | None:
        if self.peek.kind == "op" and self.peek.text == text:
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        tok = self.accept(text)
        if tok is None:
            t = self.peek
            found = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {text!r}, found {found}", t.line, t.col)
        return tok

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.peek.line, self.peek.col)


def parse_number(text: str) -> Fraction:
    return Fraction(text)


_ADD = {"+": Op.ADD, "-": Op.SUB}
_MUL = {"*": Op.MUL, "/": Op.DIV}


def parse_expr(ts: TokenStream, resolve: Resolver) -> Term:
    if ts.accept("-"):
        if ts.peek.kind == "num":
            first: Term = Const(-parse_number(ts.next().text))
            first = _term_rest(ts, resolve, first)
        else:
            first = neg(_term(ts, resolve))
    else:
        first = _term(ts, resolve)
    while ts.peek.kind == "op" and ts.peek.text in _ADD:
        op = _ADD[ts.next().text]
        first = BinOp(op, first, _term(ts, resolve))
    return first


def _term(ts: TokenStream, resolve: Resolver) -> Term:
    return _term_rest(ts, resolve, _unary(ts, resolve))


def _term_rest(ts: TokenStream, resolve: Resolver, left: Term) -> Term:
    while ts.peek.kind == "op" and ts.peek.text in _MUL:
        op = _MUL[ts.next().text]
        left = BinOp(op, left, _unary(ts, resolve))
    return left


def _unary(ts: TokenStream, resolve: Resolver) -> Term:
    if ts.accept("-"):
        if ts.peek.kind == "num":
            return Const(-parse_number(ts.next().text))
        return neg(_unary(ts, resolve))
    return _atom(ts, resolve)


def _atom(ts: TokenStream, resolve: Resolver) -> Term:
    tok = ts.peek
    if tok.kind == "num":
        ts.next()
        return Const(parse_number(tok.text))
    if tok.kind == "name":
        ts.next()
        return resolve(tok)
    if ts.accept("("):
        inner = parse_expr(ts, resolve)
        ts.expect(")")
        return inner
    found = "end of input" if tok.kind == "eof" else repr(tok.text)
    raise ParseError(f"expected a number, name or '(', found {found}", tok.line, tok.col)


def parse_term_text(text: str, resolve: Resolver, line: int = 1, col0: int = 1) -> Term:
    ts = TokenStream(tokenize(text, line, col0))
    t = parse_expr(ts, resolve)
    if ts.peek.kind != "eof":
        raise ts.error(f"unexpected {ts.peek.text!r}")
    return t
