"""Flattening of FOBNN atoms into ``v = c``, ``v = f(v1, v2)``, ``v = u``, ``v >= 0``.

Every constant occurrence and every operator application gets its own fresh
helper, numbered in post-order across the atoms.  Equal subterms are never
shared.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .fobnn import FOBNN
from .signs import Op, Sign
from .terms import And, Atom, BinOp, Const, Eq, Exists, Formula, NonNeg, Term, Var, VarKind


@dataclass(frozen=True)
class ConstDef:
    var: Var
    const: Const

    @property
    def sign(self) -> Sign:
        return self.const.sign

    def __str__(self) -> str:
        return f"{self.var} = {self.const}"


@dataclass(frozen=True)
class OpDef:
    var: Var
    op: Op
    left: Var
    right: Var

    def __str__(self) -> str:
        return f"{self.var} = {self.left} {self.op.value} {self.right}"


@dataclass(frozen=True)
class Copy:
    var: Var
    source: Var

    def __str__(self) -> str:
        return f"{self.var} = {self.source}"


@dataclass(frozen=True)
class NonNegFlat:
    var: Var

    def __str__(self) -> str:
        return f"{self.var} >= 0"


FlatAtom = Union[ConstDef, OpDef, Copy, NonNegFlat]


@dataclass(frozen=True)
class FlatFormula:
    species: tuple[str, ...]
    existentials: tuple[Var, ...]
    atoms: tuple[FlatAtom, ...]

    def helpers(self) -> tuple[Var, ...]:
        return tuple(v for v in self.existentials if v.kind is VarKind.HELPER)

    def to_formula(self) -> Formula:
        """The flat formula as an ordinary first-order formula (for checking)."""
        atoms: list[Atom] = []
        for a in self.atoms:
            if isinstance(a, ConstDef):
                atoms.append(Eq(a.var, a.const))
            elif isinstance(a, OpDef):
                atoms.append(Eq(a.var, BinOp(a.op, a.left, a.right)))
            elif isinstance(a, Copy):
                atoms.append(Eq(a.var, a.source))
            else:
                atoms.append(NonNeg(a.var))
        body: Formula = And(tuple(atoms))
        for v in reversed(self.existentials):
            body = Exists(v, body)
        return body

    def __str__(self) -> str:
        return "\n".join(str(a) for a in self.atoms)


class _Flattener:
    def __init__(self, prefix: str = "w"):
        self.prefix = prefix
        self.count = 0
        self.atoms: list[FlatAtom] = []
        self.helpers: list[Var] = []

    def fresh(self) -> Var:
        self.count += 1
        v = Var(f"{self.prefix}{self.count}", VarKind.HELPER)
        self.helpers.append(v)
        return v

    def term(self, t: Term) -> Var:
        if isinstance(t, Var):
            return t
        if isinstance(t, Const):
            w = self.fresh()
            self.atoms.append(ConstDef(w, t))
            return w
        left = self.term(t.left)
        right = self.term(t.right)
        w = self.fresh()
        self.atoms.append(OpDef(w, t.op, left, right))
        return w

    def atom(self, a: Atom) -> None:
        if isinstance(a, NonNeg):
            self.atoms.append(NonNegFlat(self.term(a.term)))
            return
        if isinstance(a.lhs, Var):
            self.atoms.append(Copy(a.lhs, self.term(a.rhs)))
            return
        left = self.term(a.lhs)
        self.atoms.append(Copy(left, self.term(a.rhs)))


def flatten_atoms(atoms, existentials=(), species=(), prefix: str = "w") -> FlatFormula:
    f = _Flattener(prefix)
    for a in atoms:
        f.atom(a)
    return FlatFormula(tuple(species), tuple(existentials) + tuple(f.helpers), tuple(f.atoms))


def flatten(fobnn: FOBNN) -> FlatFormula:
    taken = {x for x in fobnn.species}
    prefix = "w"
    # helper names must not collide with species names
    while any(s.startswith(prefix) and s[len(prefix):].isdigit() for s in taken):
        prefix = "_" + prefix
    return flatten_atoms(fobnn.atoms, fobnn.existentials, fobnn.species, prefix)
