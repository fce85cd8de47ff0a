"""Line-oriented native reaction network format.

::

    # enzymatic reaction
    species: S, E, C, P
    const k_on > 0
    const k = 0.1
    r_on: S + E => C @ k_on*S*E
    r_cat: C => E + 2*P @ k_cat*C

Either pool may be empty (or written ``0``), but not both.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from ..exprparse import Token, TokenStream, parse_expr, parse_number, tokenize
from ..network import IDENT, RateConstant, Reaction, ReactionNetwork, validate
from ..terms import Term, Var

_SPECIES = re.compile(r"\s*species\s*:(.*)\Z")
_CONST = re.compile(r"\s*const\s+")
_REACTION = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)\Z")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_native(text: str, name: str = "") -> ReactionNetwork:
    species: list[str] = []
    constants: dict[str, RateConstant] = {}
    pending: list[tuple[int, str, str, int]] = []  # line, rid, body, body column

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _SPECIES.match(line)
        if m:
            col = m.start(1) + 1
            if not m.group(1).strip():
                continue
            for part in m.group(1).split(","):
                s = part.strip()
                if not s:
                    raise ParseError("empty species name", lineno, col)
                if not IDENT.match(s):
                    raise ParseError(f"invalid species name {s!r}", lineno, col)
                if s in species:
                    raise ParseError(f"duplicate species {s}", lineno, col)
                species.append(s)
                col += len(part) + 1
            continue
        m = _CONST.match(line)
        if m:
            k = _parse_const(line, m.end(), lineno)
            if k.name in constants:
                raise ParseError(f"duplicate constant {k.name}", lineno, m.end() + 1)
            constants[k.name] = k
            continue
        m = _REACTION.match(line)
        if m:
            pending.append((lineno, m.group(1), m.group(2), m.start(2) + 1))
            continue
        raise ParseError("expected a species, const or reaction declaration", lineno, 1)

    for k in constants:
        if k in species:
            raise ParseError(f"constant {k} clashes with a species")
    reactions = []
    rids: set[str] = set()
    for lineno, rid, body, col in pending:
        if rid in rids:
            raise ParseError(f"duplicate reaction {rid}", lineno, 1)
        rids.add(rid)
        reactions.append(_parse_reaction(rid, body, lineno, col, species, constants))

    rn = ReactionNetwork(tuple(species), tuple(constants.values()), tuple(reactions), name=name)
    diags = validate(rn)
    if diags:
        raise ParseError(diags[0])
    return rn


def _parse_const(line: str, start: int, lineno: int) -> RateConstant:
    ts = TokenStream(tokenize(line[start:], lineno, start + 1))
    tok = ts.next()
    if tok.kind != "name" or not IDENT.match(tok.text):
        raise ParseError("expected constant name", tok.line, tok.col)
    if ts.accept(">"):
        zero = ts.next()
        if zero.kind != "num" or parse_number(zero.text) != 0:
            raise ParseError("only '> 0' is supported for symbolic constants", zero.line, zero.col)
        value = None
    elif ts.accept("="):
        negative = ts.accept("-") is not None
        num = ts.next()
        if num.kind != "num":
            raise ParseError("expected a number", num.line, num.col)
        value = parse_number(num.text)
        if negative:
            value = -value
    else:
        raise ts.error("expected '> 0' or '= <number>'")
    if ts.peek.kind != "eof":
        raise ts.error(f"unexpected {ts.peek.text!r}")
    return RateConstant(tok.text, value)


def _parse_pool(ts: TokenStream, species: list[str], stop: str) -> tuple[tuple[str, Fraction], ...]:
    items: dict[str, Fraction] = {}
    if ts.peek.kind == "num" and ts.tokens[ts.i + 1].text == stop and parse_number(ts.peek.text) == 0:
        ts.next()
        return ()
    if ts.peek.kind == "op" and ts.peek.text == stop:
        return ()
    while True:
        coef = Fraction(1)
        if ts.peek.kind == "num":
            coef = parse_number(ts.next().text)
            ts.expect("*")
        tok = ts.next()
        if tok.kind != "name":
            raise ParseError("expected a species name", tok.line, tok.col)
        if tok.text not in species:
            raise ParseError(f"undeclared species {tok.text}", tok.line, tok.col)
        items[tok.text] = items.get(tok.text, Fraction(0)) + coef
        if not ts.accept("+"):
            break
    return tuple(items.items())


def _parse_reaction(
    rid: str,
    body: str,
    lineno: int,
    col: int,
    species: list[str],
    constants: dict[str, RateConstant],
) -> Reaction:
    ts = TokenStream(tokenize(body, lineno, col))
    reactants = _parse_pool(ts, species, "=>")
    ts.expect("=>")
    products = _parse_pool(ts, species, "@")
    ts.expect("@")

    def resolve(tok: Token) -> Term:
        if tok.text in species:
            return Var(tok.text)
        if tok.text in constants:
            return constants[tok.text].as_const()
        raise ParseError(f"undeclared symbol {tok.text}", tok.line, tok.col)

    kinetics = parse_expr(ts, resolve)
    if ts.peek.kind != "eof":
        raise ts.error(f"unexpected {ts.peek.text!r}")
    if not reactants and not products:
        raise ParseError(f"reaction {rid} has no reactants and no products", lineno, col)
    return Reaction(rid, reactants, kinetics, products)
