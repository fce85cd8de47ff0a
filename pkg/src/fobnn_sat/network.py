"""Reaction network model and validation."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .terms import BinOp, Const, Term, Var, VarKind, format_number, render_term, term_vars

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class RateConstant:
    name: str
    # None means symbolic and strictly positive
    value: Fraction | None = None

    def as_const(self) -> Const:
        return Const(self.value, self.name)


@dataclass(frozen=True)
class Reaction:
    id: str
    reactants: tuple[tuple[str, Fraction], ...]
    kinetics: Term
    products: tuple[tuple[str, Fraction], ...]

    def reactant(self, species: str) -> Fraction:
        return sum((c for s, c in self.reactants if s == species), Fraction(0))

    def product(self, species: str) -> Fraction:
        return sum((c for s, c in self.products if s == species), Fraction(0))


@dataclass(frozen=True)
class ReactionNetwork:
    species: tuple[str, ...] = ()
    constants: tuple[RateConstant, ...] = ()
    reactions: tuple[Reaction, ...] = ()
    name: str = field(default="", compare=False)

    def constant(self, name: str) -> RateConstant | None:
        for k in self.constants:
            if k.name == name:
                return k
        return None


def validate(rn: ReactionNetwork) -> list[str]:
    """Return one diagnostic per violated invariant (empty when well formed)."""
    diags: list[str] = []
    seen: set[str] = set()
    for s in rn.species:
        if not IDENT.match(s):
            diags.append(f"invalid species name {s!r}")
        if s in seen:
            diags.append(f"duplicate species {s}")
        seen.add(s)
    const_names: set[str] = set()
    for k in rn.constants:
        if not IDENT.match(k.name):
            diags.append(f"invalid constant name {k.name!r}")
        if k.name in const_names:
            diags.append(f"duplicate constant {k.name}")
        if k.name in seen:
            diags.append(f"constant {k.name} clashes with a species")
        const_names.add(k.name)
    rids: set[str] = set()
    for r in rn.reactions:
        if r.id in rids:
            diags.append(f"duplicate reaction {r.id}")
        rids.add(r.id)
        if not r.reactants and not r.products:
            diags.append(f"reaction {r.id} has no reactants and no products")
        for s, c in (*r.reactants, *r.products):
            if s not in seen:
                diags.append(f"undeclared species {s}")
            if c < 0:
                diags.append(f"negative stoichiometry {format_number(c)} for {s} in {r.id}")
        for v in term_vars(r.kinetics):
            if v.kind is not VarKind.CURRENT or v.base not in seen:
                diags.append(f"undeclared species {v} in kinetics of {r.id}")
        for c in _consts(r.kinetics):
            if c.name is not None:
                decl = rn.constant(c.name)
                if decl is None:
                    diags.append(f"undeclared constant {c.name} in kinetics of {r.id}")
                elif decl.value != c.value:
                    diags.append(f"constant {c.name} used with inconsistent value in {r.id}")
    return diags


def _consts(t: Term):
    if isinstance(t, Const):
        yield t
    elif isinstance(t, BinOp):
        yield from _consts(t.left)
        yield from _consts(t.right)


def _pool(items: tuple[tuple[str, Fraction], ...]) -> str:
    parts = []
    for s, c in items:
        parts.append(s if c == 1 else f"{format_number(c)}*{s}")
    return " + ".join(parts)


def render_native(rn: ReactionNetwork) -> str:
    lines = []
    if rn.name:
        lines.append(f"# model: {rn.name}")
    lines.append("species: " + ", ".join(rn.species))
    for k in rn.constants:
        if k.value is None:
            lines.append(f"const {k.name} > 0")
        else:
            lines.append(f"const {k.name} = {format_number(k.value)}")
    for r in rn.reactions:
        lhs, rhs = _pool(r.reactants), _pool(r.products)
        lines.append(f"{r.id}: {lhs} => {rhs} @ {render_term(r.kinetics)}".replace("  ", " "))
    return "\n".join(lines) + "\n"


def species_var(name: str) -> Var:
    return Var(name, VarKind.CURRENT)
