"""ODE construction and FOBNN transition formulas.

A FOBNN here is an existentially quantified conjunction of atoms over the
species variables ``X``, next-state variables ``X'``, derivatives ``dX``
and next derivatives ``dX'``.  Only ``X`` and ``X'`` stay free.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import InputError, ParseError
from .exprparse import Token, TokenStream, parse_expr, tokenize
from .network import ReactionNetwork
from .signs import Op
from .terms import (
    ZERO_CONST,
    And,
    Atom,
    BinOp,
    Const,
    Eq,
    Exists,
    Formula,
    NonNeg,
    Term,
    Var,
    VarKind,
    is_zero_const,
    neg,
    prime_term,
    render_term,
    term_vars,
)


def cur(x: str) -> Var:
    return Var(x, VarKind.CURRENT)


def nxt(x: str) -> Var:
    return Var(x, VarKind.NEXT)


def dot(x: str) -> Var:
    return Var(x, VarKind.DOT)


def nxt_dot(x: str) -> Var:
    return Var(x, VarKind.NEXT_DOT)


@dataclass(frozen=True)
class ODESystem:
    species: tuple[str, ...]
    rhs: tuple[Term, ...]

    def equation(self, x: str) -> Term:
        return self.rhs[self.species.index(x)]

    def __str__(self) -> str:
        return "\n".join(f"d{x} = {render_term(t)}" for x, t in zip(self.species, self.rhs))


@dataclass(frozen=True)
class FOBNN:
    species: tuple[str, ...]
    existentials: tuple[Var, ...]
    atoms: tuple[Atom, ...]

    def free_vars(self) -> set[Var]:
        out: set[Var] = set()
        for a in self.atoms:
            if isinstance(a, Eq):
                out |= set(term_vars(a.lhs)) | set(term_vars(a.rhs))
            else:
                out |= set(term_vars(a.term))
        return out - set(self.existentials)

    def to_formula(self) -> Formula:
        body: Formula = And(tuple(self.atoms))
        for v in reversed(self.existentials):
            body = Exists(v, body)
        return body

    def __str__(self) -> str:
        prefix = " ".join(f"exists {v}." for v in self.existentials)
        return prefix + "\n" + "\n".join(f"  {a}" for a in self.atoms)


def _scale(coef: Fraction, e: Term) -> Term:
    """``coef * e`` with the coefficient pushed onto the leftmost factor."""
    if coef == 1:
        return e
    if isinstance(e, BinOp) and e.op is Op.MUL:
        return BinOp(Op.MUL, _scale(coef, e.left), e.right)
    return BinOp(Op.MUL, Const(coef), e)


def build_odes(rn: ReactionNetwork) -> ODESystem:
    """Per species, the sum over reactions of (produced - consumed) * rate."""
    rhs = []
    for x in rn.species:
        acc: Term | None = None
        for r in rn.reactions:
            c = r.product(x) - r.reactant(x)
            if c == 0:
                continue
            term = _scale(abs(c), r.kinetics)
            if acc is None:
                acc = term if c > 0 else neg(term)
            else:
                acc = BinOp(Op.ADD if c > 0 else Op.SUB, acc, term)
        rhs.append(acc if acc is not None else ZERO_CONST)
    return ODESystem(rn.species, tuple(rhs))


def build_fobnn(odes: ODESystem) -> FOBNN:
    sp = odes.species
    atoms: list[Atom] = [Eq(dot(x), t) for x, t in zip(sp, odes.rhs)]
    atoms += [Eq(nxt_dot(x), prime_term(t)) for x, t in zip(sp, odes.rhs)]
    for x in sp:
        atoms += [
            Eq(nxt(x), BinOp(Op.ADD, cur(x), dot(x))),
            NonNeg(cur(x)),
            NonNeg(nxt(x)),
        ]
    existentials = tuple(dot(x) for x in sp) + tuple(nxt_dot(x) for x in sp)
    return FOBNN(sp, existentials, tuple(atoms))


def fobnn_of(rn: ReactionNetwork) -> FOBNN:
    return build_fobnn(build_odes(rn))


def _check_species(fobnn: FOBNN, species) -> list[str]:
    species = list(species)
    unknown = [x for x in species if x not in fobnn.species]
    if unknown:
        raise InputError(f"unknown species: {', '.join(unknown)}")
    return species


def add_mass_action_constraints(fobnn: FOBNN, species) -> FOBNN:
    """Append ``X' - X >= 0`` for each listed species."""
    extra = [NonNeg(BinOp(Op.SUB, nxt(x), cur(x))) for x in _check_species(fobnn, species)]
    return replace(fobnn, atoms=fobnn.atoms + tuple(extra))


def add_derivative_zero_constraints(fobnn: FOBNN, species=None) -> FOBNN:
    """Append ``dX = 0`` (steady-state derivative) for the listed species."""
    chosen = fobnn.species if species is None else _check_species(fobnn, species)
    extra = [Eq(dot(x), ZERO_CONST) for x in chosen]
    return replace(fobnn, atoms=fobnn.atoms + tuple(extra))


# ------------------------------------------------------- mass action detection


def _factors(t: Term) -> list[Term] | None:
    if isinstance(t, BinOp):
        if t.op is not Op.MUL:
            return None
        left, right = _factors(t.left), _factors(t.right)
        if left is None or right is None:
            return None
        return left + right
    return [t]


def is_mass_action(kinetics: Term, reactants) -> bool:
    """``kinetics`` is a product of positive constants times the reactant monomial."""
    factors = _factors(kinetics)
    if factors is None:
        return False
    consts = [f for f in factors if isinstance(f, Const)]
    if not consts or any(c.value is not None and c.value <= 0 for c in consts):
        return False
    got = Counter()
    for f in factors:
        if isinstance(f, Var):
            if f.kind is not VarKind.CURRENT:
                return False
            got[f.base] += 1
    want = Counter()
    for s, c in reactants:
        if c.denominator != 1:
            return False
        want[s] += int(c)
    return got == want


def detect_mass_action(rn: ReactionNetwork) -> list[str]:
    """Species whose every consuming reaction has mass-action kinetics.

    Species that are never consumed qualify vacuously.
    """
    out = []
    for x in rn.species:
        if all(
            is_mass_action(r.kinetics, r.reactants)
            for r in rn.reactions
            if r.reactant(x) > 0
        ):
            out.append(x)
    return out


# ------------------------------------------------------- constraint text


def parse_constraints(text: str, fobnn: FOBNN, constants=()) -> list[Atom]:
    """Parse ``<term> (>=|=) <term>`` conjuncts joined by ``and``.

    Names are species (``X``), next-state species (``X'``) or rate constants.
    """
    species = set(fobnn.species)
    const_map = {k.name: k.as_const() for k in constants}

    def resolve(tok: Token) -> Term:
        name = tok.text
        base = name.rstrip("'")
        if base in species:
            return nxt(base) if name.endswith("'") else cur(base)
        if base.startswith("d") and base[1:] in species:
            raise ParseError(f"derivative variable {name} is bound and cannot be constrained", tok.line, tok.col)
        if name in const_map:
            return const_map[name]
        raise ParseError(f"undeclared symbol {name}", tok.line, tok.col)

    atoms: list[Atom] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = tokenize(line, lineno)
        # split on the keyword 'and'
        chunks: list[list[Token]] = [[]]
        for tok in tokens[:-1]:
            if tok.kind == "name" and tok.text == "and":
                chunks.append([])
            else:
                chunks[-1].append(tok)
        for chunk in chunks:
            if not chunk:
                raise ParseError("empty constraint", lineno, 1)
            end = chunk[-1]
            chunk.append(Token("eof", "", lineno, end.col + len(end.text)))
            ts = TokenStream(chunk)
            lhs = parse_expr(ts, resolve)
            if ts.accept(">="):
                rhs = parse_expr(ts, resolve)
                atoms.append(NonNeg(lhs) if is_zero_const(rhs) else NonNeg(BinOp(Op.SUB, lhs, rhs)))
            elif ts.accept("="):
                atoms.append(Eq(lhs, parse_expr(ts, resolve)))
            else:
                raise ts.error("expected '>=' or '='")
            if ts.peek.kind != "eof":
                raise ts.error(f"unexpected {ts.peek.text!r}")
    return atoms


def add_constraint_text(fobnn: FOBNN, text: str, constants=()) -> FOBNN:
    return replace(fobnn, atoms=fobnn.atoms + tuple(parse_constraints(text, fobnn, constants)))
