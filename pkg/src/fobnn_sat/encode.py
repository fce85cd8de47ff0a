"""Propositional encoding of flat formulas and DIMACS output.

Each sign variable ``v`` owns two propositional variables: ``v⁰`` (the
positive flag) and ``v¹`` (the negative flag).  ``(1,0)`` is +, ``(0,1)``
is -, ``(0,0)`` is 0 and ``(1,1)`` is excluded by a clause.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .flatten import ConstDef, Copy, FlatFormula, NonNegFlat, OpDef
from .signs import Op, Sign
from .terms import Var, VarKind

Clause = list[int]

_KIND_ORDER = (VarKind.CURRENT, VarKind.NEXT, VarKind.DOT, VarKind.NEXT_DOT)


@dataclass
class VarRegistry:
    """Maps sign variables to their ``(p0, p1)`` propositional pair."""

    pairs: dict[Var, tuple[int, int]] = field(default_factory=dict)
    num_vars: int = 0
    species: tuple[str, ...] = ()

    def register(self, v: Var) -> tuple[int, int]:
        pair = self.pairs.get(v)
        if pair is None:
            pair = (self.num_vars + 1, self.num_vars + 2)
            self.num_vars += 2
            self.pairs[v] = pair
        return pair

    def new_aux(self) -> int:
        """A fresh propositional variable outside any sign pair."""
        self.num_vars += 1
        return self.num_vars

    def __getitem__(self, v: Var) -> tuple[int, int]:
        return self.pairs[v]

    def __contains__(self, v: object) -> bool:
        return v in self.pairs

    def copy(self) -> "VarRegistry":
        return VarRegistry(dict(self.pairs), self.num_vars, self.species)


@dataclass
class CNF:
    num_vars: int = 0
    clauses: list[Clause] = field(default_factory=list)

    def add(self, *lits: int) -> None:
        self.clauses.append(list(lits))


def sign_literals(pair: tuple[int, int], s: Sign) -> tuple[int, int]:
    """The two literals that fix ``pair`` to sign ``s``."""
    p0, p1 = pair
    if s is Sign.POS:
        return (p0, -p1)
    if s is Sign.NEG:
        return (-p0, p1)
    return (-p0, -p1)


def differ_literals(pair: tuple[int, int], s: Sign) -> tuple[int, ...]:
    """Literals whose disjunction says the pair is *not* ``s``."""
    p0, p1 = pair
    if s is Sign.POS:
        return (-p0, p1)
    if s is Sign.NEG:
        return (p0, -p1)
    return (p0, p1)


def _add_clauses(o0: int, o1: int, a0: int, a1: int, b0: int, b1: int) -> list[Clause]:
    # o = a + b
    return [
        [a0, b0, -o0],
        [a1, b1, -o1],
        [-a0, b1, o0],
        [-b0, a1, o0],
        [-a1, b0, o1],
        [-b1, a0, o1],
    ]


def _mul_clauses(o0: int, o1: int, a0: int, a1: int, b0: int, b1: int) -> list[Clause]:
    # o⁰ <-> (a⁰ & b⁰) | (a¹ & b¹);  o¹ <-> (a⁰ & b¹) | (a¹ & b⁰)
    return [
        [-o0, a0, a1],
        [-o0, a0, b1],
        [-o0, b0, a1],
        [-o0, b0, b1],
        [-a0, -b0, o0],
        [-a1, -b1, o0],
        [-o1, a0, a1],
        [-o1, a0, b0],
        [-o1, b1, a1],
        [-o1, b1, b0],
        [-a0, -b1, o1],
        [-a1, -b0, o1],
    ]


def op_clauses(op: Op, out: tuple[int, int], a: tuple[int, int], b: tuple[int, int]) -> list[Clause]:
    """CNF equivalent to ``out = a op b`` under the sign relation of ``op``."""
    o0, o1 = out
    a0, a1 = a
    b0, b1 = b
    if op is Op.ADD:
        return _add_clauses(o0, o1, a0, a1, b0, b1)
    if op is Op.SUB:
        # a - b = a + (-b): swap the flags of b
        return _add_clauses(o0, o1, a0, a1, b1, b0)
    if op is Op.MUL:
        return _mul_clauses(o0, o1, a0, a1, b0, b1)
    # division: same sign rule as multiplication, divisor never zero
    return _mul_clauses(o0, o1, a0, a1, b0, b1) + [[b0, b1]]


def _ordered_vars(flat: FlatFormula) -> list[Var]:
    out: list[Var] = []
    seen: set[Var] = set()

    def visit(v: Var) -> None:
        if v not in seen:
            seen.add(v)
            out.append(v)

    for kind in _KIND_ORDER:
        for x in flat.species:
            visit(Var(x, kind))
    for v in flat.existentials:
        visit(v)
    for a in flat.atoms:
        if isinstance(a, OpDef):
            for v in (a.left, a.right, a.var):
                visit(v)
        elif isinstance(a, Copy):
            visit(a.var)
            visit(a.source)
        else:
            visit(a.var)
    return out


def encode(flat: FlatFormula) -> tuple[CNF, VarRegistry]:
    reg = VarRegistry(species=flat.species)
    cnf = CNF()
    for v in _ordered_vars(flat):
        p0, p1 = reg.register(v)
        cnf.add(-p0, -p1)
        if v.kind in (VarKind.CURRENT, VarKind.NEXT) and v.base in flat.species:
            cnf.add(-p1)
    for a in flat.atoms:
        if isinstance(a, ConstDef):
            for lit in sign_literals(reg[a.var], a.sign):
                cnf.add(lit)
        elif isinstance(a, OpDef):
            cnf.clauses.extend(op_clauses(a.op, reg[a.var], reg[a.left], reg[a.right]))
        elif isinstance(a, Copy):
            (v0, v1), (u0, u1) = reg[a.var], reg[a.source]
            cnf.clauses.extend([[-v0, u0], [v0, -u0], [-v1, u1], [v1, -u1]])
        elif isinstance(a, NonNegFlat):
            cnf.add(-reg[a.var][1])
    cnf.num_vars = reg.num_vars
    return cnf, reg


def emit_dimacs(cnf: CNF, registry: VarRegistry | None = None) -> str:
    lines = []
    if registry is not None:
        for v, (p0, p1) in registry.pairs.items():
            lines.append(f"c map {v} {p0} {p1}")
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    for clause in cnf.clauses:
        lines.append(" ".join(map(str, clause)) + " 0")
    return "\n".join(lines) + "\n"
