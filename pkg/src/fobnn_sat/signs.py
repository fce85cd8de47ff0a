"""Sign domain: the three signs, sets of signs, and sound operator relations.

Signs are stored as one-hot bit masks so that a :class:`SignSet` is just the
bitwise union of its members.  ``POS`` and ``NEG`` line up with the two
propositional flags used by the CNF encoding (bit 0 = positive flag,
bit 1 = negative flag); ``ZERO`` is the remaining bit.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Union

Rational = Union[int, Fraction]


class Sign(enum.IntEnum):
    POS = 1
    NEG = 2
    ZERO = 4

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    def __str__(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def parse(cls, text: str) -> "Sign":
        try:
            return _PARSE[text.strip()]
        except KeyError:
            raise ValueError(f"not a sign: {text!r}") from None


_SYMBOLS = {Sign.POS: "+", Sign.NEG: "−", Sign.ZERO: "0"}
_PARSE = {"+": Sign.POS, "-": Sign.NEG, "−": Sign.NEG, "0": Sign.ZERO}

ALL_SIGNS = (Sign.POS, Sign.NEG, Sign.ZERO)
# species amounts are never negative
SPECIES_SIGNS = (Sign.POS, Sign.ZERO)
FULL_MASK = 7


@dataclass(frozen=True)
class SignSet:
    """A subset of ``{+, -, 0}`` stored as a 3-bit mask."""

    mask: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= FULL_MASK:
            raise ValueError(f"invalid sign mask {self.mask}")

    @classmethod
    def of(cls, *signs: Sign) -> "SignSet":
        m = 0
        for s in signs:
            m |= int(s)
        return cls(m)

    @classmethod
    def full(cls) -> "SignSet":
        return cls(FULL_MASK)

    @classmethod
    def empty(cls) -> "SignSet":
        return cls(0)

    def __contains__(self, s: object) -> bool:
        return isinstance(s, Sign) and bool(self.mask & s)

    def __iter__(self) -> Iterator[Sign]:
        return (s for s in ALL_SIGNS if self.mask & s)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "SignSet") -> "SignSet":
        return SignSet(self.mask | other.mask)

    def __and__(self, other: "SignSet") -> "SignSet":
        return SignSet(self.mask & other.mask)

    def union(self, other: "SignSet") -> "SignSet":
        return self | other

    def intersection(self, other: "SignSet") -> "SignSet":
        return self & other

    def as_set(self) -> frozenset[Sign]:
        return frozenset(self)

    def __str__(self) -> str:
        return "{" + ",".join(s.symbol for s in self) + "}"


class Op(enum.Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"

    def apply(self, x: Fraction, y: Fraction) -> Fraction:
        if self is Op.ADD:
            return x + y
        if self is Op.SUB:
            return x - y
        if self is Op.MUL:
            return x * y
        return x / y


def sign_of_rational(x: Rational | float) -> Sign:
    if x > 0:
        return Sign.POS
    if x < 0:
        return Sign.NEG
    return Sign.ZERO


def _negate(s: Sign) -> Sign:
    return {Sign.POS: Sign.NEG, Sign.NEG: Sign.POS, Sign.ZERO: Sign.ZERO}[s]


def _add_image(a: Sign, b: Sign) -> frozenset[Sign]:
    if a is Sign.ZERO:
        return frozenset({b})
    if b is Sign.ZERO or a is b:
        return frozenset({a})
    return frozenset(ALL_SIGNS)


def _mul_image(a: Sign, b: Sign) -> frozenset[Sign]:
    if Sign.ZERO in (a, b):
        return frozenset({Sign.ZERO})
    return frozenset({Sign.POS if a is b else Sign.NEG})


def _image(op: Op, a: Sign, b: Sign) -> frozenset[Sign]:
    if op is Op.ADD:
        return _add_image(a, b)
    if op is Op.SUB:
        return _add_image(a, _negate(b))
    if op is Op.MUL:
        return _mul_image(a, b)
    if b is Sign.ZERO:
        return frozenset()
    return _mul_image(a, b)


@dataclass(frozen=True)
class SignRelation:
    """The interpretation of one operator as a set of ``(s1, s2, s)`` triples."""

    op: Op
    triples: frozenset[tuple[Sign, Sign, Sign]]

    def image(self, a: Sign, b: Sign) -> SignSet:
        return SignSet.of(*(s for (x, y, s) in self.triples if x is a and y is b))

    def __contains__(self, triple: object) -> bool:
        return triple in self.triples


RELATIONS: dict[Op, SignRelation] = {
    op: SignRelation(
        op,
        frozenset(
            (a, b, s) for a, b in product(ALL_SIGNS, repeat=2) for s in _image(op, a, b)
        ),
    )
    for op in Op
}


def abstract_apply(op: Op, s1: Sign, s2: Sign) -> SignSet:
    return RELATIONS[op].image(s1, s2)


def lift(op: Op, left: SignSet, right: SignSet) -> SignSet:
    """Relational image of two sign sets under ``op``."""
    m = 0
    for a in left:
        for b in right:
            m |= abstract_apply(op, a, b).mask
    return SignSet(m)


def mask_table(op: Op) -> list[list[int]]:
    """8x8 table mapping pairs of set masks to the mask of their image."""
    return [
        [lift(op, SignSet(i), SignSet(j)).mask for j in range(8)] for i in range(8)
    ]


def signs_of(values: Iterable[Rational]) -> SignSet:
    return SignSet.of(*(sign_of_rational(v) for v in values))
