"""Arithmetic terms, atoms and first-order formulas over the sign domain.

Terms are plain trees.  Two syntactically equal subterms are separate
nodes and are evaluated independently; nothing here (or downstream in the
encoder) may merge them, since over sign sets ``(X+Y)*(X+Y)`` can be
negative.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Union

from .signs import ALL_SIGNS, Op, Sign, SignSet, lift, sign_of_rational


class VarKind(enum.Enum):
    CURRENT = "current"
    NEXT = "next"
    DOT = "dot"
    NEXT_DOT = "next_dot"
    HELPER = "helper"


@dataclass(frozen=True)
class Var:
    """An annotated variable: a species in one of four roles, or a helper."""

    base: str
    kind: VarKind = VarKind.CURRENT

    def __str__(self) -> str:
        k = self.kind
        if k is VarKind.CURRENT or k is VarKind.HELPER:
            return self.base
        if k is VarKind.NEXT:
            return self.base + "'"
        if k is VarKind.DOT:
            return "d" + self.base
        return "d" + self.base + "'"

    def primed(self) -> "Var":
        if self.kind is VarKind.CURRENT:
            return Var(self.base, VarKind.NEXT)
        if self.kind is VarKind.DOT:
            return Var(self.base, VarKind.NEXT_DOT)
        return self


@dataclass(frozen=True)
class Const:
    """A constant: a rational, or a named rate constant.

    A named constant without a value is symbolic and strictly positive.
    """

    value: Fraction | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        if self.value is None and self.name is None:
            raise ValueError("constant needs a value or a name")
        if self.value is not None and not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    @property
    def sign(self) -> Sign:
        if self.value is None:
            return Sign.POS
        return sign_of_rational(self.value)

    def __str__(self) -> str:
        if self.name is not None:
            return self.name
        return format_number(self.value)


@dataclass(frozen=True)
class BinOp:
    op: Op
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return render_term(self)


Term = Union[Var, Const, BinOp]

ZERO_CONST = Const(Fraction(0))


def format_number(x: Fraction | None) -> str:
    assert x is not None
    if x.denominator == 1:
        return str(x.numerator)
    d, twos, fives = x.denominator, 0, 0
    while d % 2 == 0:
        d, twos = d // 2, twos + 1
    while d % 5 == 0:
        d, fives = d // 5, fives + 1
    if d != 1:
        # not a finite decimal; does not parse back as a single literal
        return f"{x.numerator}/{x.denominator}"
    places = max(twos, fives)
    digits = str(abs(x.numerator) * 10**places // x.denominator).rjust(places + 1, "0")
    sign = "-" if x < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def is_zero_const(t: Term) -> bool:
    return isinstance(t, Const) and t.name is None and t.value == 0


def neg(t: Term) -> Term:
    """``-t`` written as ``0 - t``."""
    return BinOp(Op.SUB, ZERO_CONST, t)


_PREC = {Op.ADD: 1, Op.SUB: 1, Op.MUL: 2, Op.DIV: 2}


def _leftmost(t: Term) -> Term:
    while isinstance(t, BinOp):
        t = t.left
    return t


def _prec(t: Term) -> int:
    if isinstance(t, BinOp):
        if t.op is Op.SUB and is_zero_const(t.left):
            return 1
        return _PREC[t.op]
    if isinstance(t, Const) and t.name is None and t.value < 0:
        return 3
    return 4


def render_term(t: Term) -> str:
    """Render a term so that parsing the text gives back the same tree."""
    if isinstance(t, Var):
        return str(t)
    if isinstance(t, Const):
        return str(t)
    if t.op is Op.SUB and is_zero_const(t.left):
        inner = render_term(t.right)
        lm = _leftmost(t.right)
        if _prec(t.right) <= 1 or (isinstance(lm, Const) and lm.name is None):
            inner = f"({inner})"
        return "-" + inner
    p = _PREC[t.op]
    left = render_term(t.left)
    if _prec(t.left) < p:
        left = f"({left})"
    right = render_term(t.right)
    if _prec(t.right) <= p:
        right = f"({right})"
    return f"{left}{t.op.value}{right}"


def term_vars(t: Term) -> Iterator[Var]:
    if isinstance(t, Var):
        yield t
    elif isinstance(t, BinOp):
        yield from term_vars(t.left)
        yield from term_vars(t.right)


def map_vars(t: Term, f) -> Term:
    if isinstance(t, Var):
        return f(t)
    if isinstance(t, BinOp):
        return BinOp(t.op, map_vars(t.left, f), map_vars(t.right, f))
    return t


def prime_term(t: Term) -> Term:
    return map_vars(t, Var.primed)


# ---------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Eq:
    """Atom ``lhs ≐ rhs``: true iff the two sign sets intersect."""

    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{render_term(self.lhs)} = {render_term(self.rhs)}"


@dataclass(frozen=True)
class NonNeg:
    """Atom ``t ≥ 0``: true iff the sign set of ``t`` meets ``{+, 0}``."""

    term: Term

    def __str__(self) -> str:
        return f"{render_term(self.term)} >= 0"


Atom = Union[Eq, NonNeg]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


Formula = Union[Eq, NonNeg, Not, And, Or, Exists, Forall]

Assignment = Mapping[Var, Sign]


class UnboundVariable(KeyError):
    pass


NONNEG = SignSet.of(Sign.POS, Sign.ZERO)


def eval_term(t: Term, alpha: Assignment) -> SignSet:
    if isinstance(t, Var):
        try:
            return SignSet.of(alpha[t])
        except KeyError:
            raise UnboundVariable(str(t)) from None
    if isinstance(t, Const):
        return SignSet.of(t.sign)
    return lift(t.op, eval_term(t.left, alpha), eval_term(t.right, alpha))


def eval_atom(a: Atom, alpha: Assignment) -> bool:
    if isinstance(a, Eq):
        return bool(eval_term(a.lhs, alpha) & eval_term(a.rhs, alpha))
    return bool(eval_term(a.term, alpha) & NONNEG)


def eval_formula(phi: Formula, alpha: Assignment) -> bool:
    if isinstance(phi, (Eq, NonNeg)):
        return eval_atom(phi, alpha)
    if isinstance(phi, Not):
        return not eval_formula(phi.body, alpha)
    if isinstance(phi, And):
        return all(eval_formula(p, alpha) for p in phi.parts)
    if isinstance(phi, Or):
        return any(eval_formula(p, alpha) for p in phi.parts)
    quant = any if isinstance(phi, Exists) else all
    return quant(
        eval_formula(phi.body, {**alpha, phi.var: s}) for s in ALL_SIGNS
    )


def formula_free_vars(phi: Formula) -> set[Var]:
    if isinstance(phi, Eq):
        return set(term_vars(phi.lhs)) | set(term_vars(phi.rhs))
    if isinstance(phi, NonNeg):
        return set(term_vars(phi.term))
    if isinstance(phi, Not):
        return formula_free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        out: set[Var] = set()
        for p in phi.parts:
            out |= formula_free_vars(p)
        return out
    return formula_free_vars(phi.body) - {phi.var}


def satisfiable(phi: Formula, domains: Mapping[Var, tuple[Sign, ...]] | None = None) -> bool:
    """Brute-force satisfiability over the free variables of ``phi``."""
    free = sorted(formula_free_vars(phi), key=str)
    doms = [(domains or {}).get(v, ALL_SIGNS) for v in free]
    return any(
        eval_formula(phi, dict(zip(free, choice))) for choice in product(*doms)
    )
