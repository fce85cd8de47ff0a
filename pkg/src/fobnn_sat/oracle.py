"""Brute-force transition enumeration straight from the sign semantics.

This is the reference the SAT pipeline is checked against: it evaluates the
(unflattened) FOBNN atoms over sign sets and searches existential witnesses
exhaustively.  It shares nothing with the flattening or the CNF encoding.

Existential variables are searched per connected group of atoms (atoms
linked through a shared existential); for a conjunction this is equivalent
to searching all witnesses jointly.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import GuardExceeded
from .fobnn import FOBNN
from .signs import ALL_SIGNS, Op, Sign, mask_table
from .terms import Atom, BinOp, Const, Eq, Term, Var, VarKind

MAX_SPECIES = 6
_OPCODE = {Op.ADD: 2, Op.SUB: 3, Op.MUL: 4, Op.DIV: 5}
_KIND_SLOT = {VarKind.CURRENT: 0, VarKind.NEXT: 1, VarKind.DOT: 2, VarKind.NEXT_DOT: 3}
TABLES = np.array([mask_table(op) for op in (Op.ADD, Op.SUB, Op.MUL, Op.DIV)], dtype=np.intc)


class _Program:
    def __init__(self, species: tuple[str, ...]):
        self.n = len(species)
        self.index = {x: i for i, x in enumerate(species)}
        self.code: list[int] = []
        self.starts: list[int] = [0]

    def slot(self, v: Var) -> int:
        if v.kind is VarKind.HELPER or v.base not in self.index:
            raise ValueError(f"variable {v} is not a species variable")
        return _KIND_SLOT[v.kind] * self.n + self.index[v.base]

    def _term(self, t: Term, depth: int) -> int:
        if isinstance(t, Var):
            self.code += [0, self.slot(t)]
            return depth + 1
        if isinstance(t, Const):
            self.code += [1, int(t.sign)]
            return depth + 1
        d1 = self._term(t.left, depth)
        d2 = self._term(t.right, depth + 1)
        self.code += [_OPCODE[t.op], 0]
        return max(d1, d2)

    def atom(self, a: Atom) -> None:
        if isinstance(a, Eq):
            d = max(self._term(a.lhs, 0), self._term(a.rhs, 1))
            self.code += [6, 0]
        else:
            d = self._term(a.term, 0)
            self.code += [7, 0]
        if d > kernels.MAX_STACK:
            raise GuardExceeded(f"term nesting depth {d} exceeds {kernels.MAX_STACK}")
        self.starts.append(len(self.code) // 2)


def _atom_slots(a: Atom, prog: _Program) -> set[int]:
    def walk(t: Term):
        if isinstance(t, Var):
            yield prog.slot(t)
        elif isinstance(t, BinOp):
            yield from walk(t.left)
            yield from walk(t.right)

    if isinstance(a, Eq):
        return set(walk(a.lhs)) | set(walk(a.rhs))
    return set(walk(a.term))


def _components(atom_slots: list[set[int]], exist: set[int]):
    parent = {s: s for s in exist}

    def find(s: int) -> int:
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for slots in atom_slots:
        ex = sorted(slots & exist)
        for s in ex[1:]:
            parent[find(s)] = find(ex[0])
    groups: dict[int, tuple[list[int], list[int]]] = {}
    ground = []
    for i, slots in enumerate(atom_slots):
        ex = slots & exist
        if not ex:
            ground.append(i)
            continue
        groups.setdefault(find(min(ex)), ([], []))[1].append(i)
    for s in sorted(exist):
        groups.setdefault(find(s), ([], []))[0].append(s)
    return ground, [groups[k] for k in sorted(groups)]


def brute_force_transitions(
    fobnn: FOBNN, extended: bool = False, max_species: int = MAX_SPECIES, impl=None
) -> set[tuple[tuple[Sign, ...], tuple[Sign, ...]]]:
    """All transitions of ``fobnn`` by exhaustive sign enumeration.

    Base transitions map species signs to next-state species signs; with
    ``extended`` each state also carries the derivative signs.  Species
    variables range over ``{+, 0}``.
    """
    n = len(fobnn.species)
    if n > max_species:
        raise GuardExceeded(f"brute force limited to {max_species} species, got {n}")
    impl = impl or kernels.impl
    prog = _Program(fobnn.species)
    for a in fobnn.atoms:
        prog.atom(a)
    slots = [_atom_slots(a, prog) for a in fobnn.atoms]

    free = list(range(2 * n))
    domains = [Sign.POS | Sign.ZERO] * (2 * n)
    exist = {prog.slot(v) for v in fobnn.existentials}
    if extended:
        free += sorted(exist)
        domains += [7] * len(exist)
        exist = set()
    ground, comps = _components(slots, exist)

    cs, cslots, ca, catoms = [0], [], [0], []
    for comp_slots, comp_atoms in comps:
        cslots += comp_slots
        catoms += comp_atoms
        cs.append(len(cslots))
        ca.append(len(catoms))

    def arr(xs):
        return np.array(xs, dtype=np.intc)

    rows = impl.satisfying_assignments(
        arr(prog.code),
        arr(prog.starts),
        TABLES,
        4 * n,
        arr(free),
        arr(domains),
        arr(ground),
        arr(cs),
        arr(cslots),
        arr(ca),
        arr(catoms),
    )
    out = set()
    for row in rows:
        signs = [Sign(v) for v in row]
        cur, nxt = signs[:n], signs[n:2 * n]
        if extended:
            # free slots are ordered X, X', then dX and dX' in slot order
            dcur, dnxt = signs[2 * n:3 * n], signs[3 * n:4 * n]
            out.add((tuple(cur + dcur), tuple(nxt + dnxt)))
        else:
            out.add((tuple(cur), tuple(nxt)))
    return out


def brute_force_reference(fobnn: FOBNN, extended: bool = False):
    """Slow reference built on :func:`eval_formula` (tiny networks only)."""
    from itertools import product

    from .terms import And, eval_formula

    n = len(fobnn.species)
    body = fobnn.to_formula()
    cur = [Var(x, VarKind.CURRENT) for x in fobnn.species]
    nxt = [Var(x, VarKind.NEXT) for x in fobnn.species]
    out = set()
    if not extended:
        for choice in product((Sign.POS, Sign.ZERO), repeat=2 * n):
            if eval_formula(body, dict(zip(cur + nxt, choice))):
                out.add((choice[:n], choice[n:]))
        return out
    dots = [Var(x, VarKind.DOT) for x in fobnn.species]
    ndots = [Var(x, VarKind.NEXT_DOT) for x in fobnn.species]
    conj = And(tuple(fobnn.atoms))
    for base in product((Sign.POS, Sign.ZERO), repeat=2 * n):
        for ds in product(ALL_SIGNS, repeat=2 * n):
            alpha = dict(zip(cur + nxt + dots + ndots, base + ds))
            if eval_formula(conj, alpha):
                out.add((base[:n] + ds[:n], base[n:] + ds[n:]))
    return out
