from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pysat.solvers import Solver

from _corpus import renz
from _strategies import SPECIES, atoms, brute_sat
from fobnn_sat import build_formula, emit_dimacs, encode, flatten, fobnn_of
from fobnn_sat.encode import CNF, VarRegistry, op_clauses, sign_literals
from fobnn_sat.flatten import ConstDef, FlatFormula, OpDef, flatten_atoms
from fobnn_sat.signs import ALL_SIGNS, RELATIONS, Op, Sign
from fobnn_sat.terms import BinOp, Const, Eq, Var, VarKind

P, N, Z = Sign.POS, Sign.NEG, Sign.ZERO


def _decode(true, pair):
    a, b = pair[0] in true, pair[1] in true
    assert not (a and b)
    return P if a else N if b else Z


def test_add_emits_the_six_clauses():
    # v = v1 + v2 with v -> (1, 2), v1 -> (3, 4), v2 -> (5, 6)
    v0, v1 = 1, 2
    a0, a1, b0, b1 = 3, 4, 5, 6
    assert op_clauses(Op.ADD, (v0, v1), (a0, a1), (b0, b1)) == [
        [a0, b0, -v0],
        [a1, b1, -v1],
        [-a0, b1, v0],
        [-b0, a1, v0],
        [-a1, b0, v1],
        [-b1, a0, v1],
    ]


def _single_opdef(op):
    flat = FlatFormula((), (), (OpDef(Var("v"), op, Var("a"), Var("b")),))
    return encode(flat)


@pytest.mark.parametrize("op", list(Op))
def test_projection_equals_relation(op):
    cnf, reg = _single_opdef(op)
    assert cnf.num_vars == 6
    got = set()
    for bits in product((0, 1), repeat=6):
        true = {i + 1 for i, b in enumerate(bits) if b}
        if all(any((lit > 0) == (abs(lit) in true) for lit in c) for c in cnf.clauses):
            got.add(tuple(_decode(true, reg[Var(x)]) for x in ("a", "b", "v")))
    assert got == RELATIONS[op].triples
    if op is Op.DIV:
        assert all(b is not Z for (_, b, _) in got)


def test_registry_order_and_exclusion_clauses():
    cnf, reg = encode(flatten(fobnn_of(renz())))
    names = [str(v) for v in reg.pairs]
    assert names[:16] == [
        "S", "E", "C", "P", "S'", "E'", "C'", "P'",
        "dS", "dE", "dC", "dP", "dS'", "dE'", "dC'", "dP'",
    ]
    pairs = list(reg.pairs.values())
    assert [p for pair in pairs for p in pair] == list(range(1, 2 * len(pairs) + 1))
    for p0, p1 in pairs:
        assert [-p0, -p1] in cnf.clauses
    for x in ("S", "S'", "P'"):
        assert [-reg[_var(x)][1]] in cnf.clauses


def _var(name):
    if name.endswith("'"):
        return Var(name[:-1], VarKind.NEXT)
    return Var(name)


def test_symbolic_constant_units():
    flat = FlatFormula((), (), (ConstDef(Var("w"), Const(None, "k")),))
    cnf, reg = encode(flat)
    w0, w1 = reg[Var("w")]
    assert [w0] in cnf.clauses and [-w1] in cnf.clauses


def test_sharing_regression():
    s = BinOp(Op.ADD, Var("X"), Var("Y"))
    flat = flatten_atoms([Eq(BinOp(Op.MUL, s, s), Const(Fraction(-1)))])
    cnf, reg = encode(flat)
    seen = set()
    with Solver(name="cadical103", bootstrap_with=cnf.clauses) as solver:
        for m in solver.enum_models():
            true = {lit for lit in m if lit > 0}
            seen.add((_decode(true, reg[Var("X")]), _decode(true, reg[Var("Y")])))
    assert (P, N) in seen


def test_division_forbids_zero_divisor():
    flat = flatten_atoms([Eq(Var("Q"), BinOp(Op.DIV, Var("A"), Var("B")))])
    cnf, reg = encode(flat)
    b0, b1 = reg[Var("B")]
    with Solver(name="cadical103", bootstrap_with=cnf.clauses) as solver:
        assert solver.solve()
        assert not solver.solve(assumptions=[-b0, -b1])


def test_dimacs_format():
    assert emit_dimacs(CNF()) == "p cnf 0 0\n"
    assert emit_dimacs(CNF(), VarRegistry()) == "p cnf 0 0\n"
    cnf, reg = encode(flatten(build_formula(renz(), mass_action="all")))
    text = emit_dimacs(cnf, reg)
    lines = text.split("\n")
    assert text.endswith("\n") and "\r" not in text
    maps = [ln for ln in lines if ln.startswith("c map ")]
    assert maps[0] == "c map S 1 2"
    assert len(maps) == len(reg.pairs)
    header = lines[len(maps)]
    assert header == f"p cnf {cnf.num_vars} {len(cnf.clauses)}"
    body = [ln for ln in lines[len(maps) + 1:] if ln]
    assert len(body) == len(cnf.clauses)
    assert all(ln.endswith(" 0") for ln in body)
    assert text == emit_dimacs(*encode(flatten(build_formula(renz(), mass_action="all"))))


def test_no_model_sets_both_flags():
    cnf, reg = encode(flatten(fobnn_of(renz())))
    with Solver(name="cadical103", bootstrap_with=cnf.clauses) as solver:
        for i, m in enumerate(solver.enum_models()):
            true = {lit for lit in m if lit > 0}
            for p0, p1 in reg.pairs.values():
                assert not (p0 in true and p1 in true)
            if i > 200:
                break


@settings(max_examples=60, deadline=None)
@given(st.lists(atoms(max_leaves=4), min_size=1, max_size=3))
def test_encoding_is_equisatisfiable(body):
    free = [Var(x) for x in SPECIES]
    expected = brute_sat(body, free)
    cnf, _ = encode(flatten_atoms(body))
    with Solver(name="cadical103", bootstrap_with=cnf.clauses) as solver:
        assert solver.solve() == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(atoms(max_leaves=4), min_size=1, max_size=2))
def test_models_extend_to_sign_models(body):
    # every CNF model decodes to a sign assignment of the free variables
    # under which the source atoms hold
    free = [Var(x) for x in SPECIES]
    cnf, reg = encode(flatten_atoms(body))
    with Solver(name="cadical103", bootstrap_with=cnf.clauses) as solver:
        for i, m in enumerate(solver.enum_models()):
            true = {lit for lit in m if lit > 0}
            alpha = {v: _decode(true, reg[v]) for v in free if v in reg}
            doms = {v: (alpha[v],) for v in alpha}
            assert brute_sat(body, free, doms)
            if i >= 20:
                break


@pytest.mark.parametrize("op", list(Op))
@pytest.mark.parametrize("a, b", list(product(ALL_SIGNS, repeat=2)))
def test_opdef_under_assumptions(op, a, b):
    cnf, reg = _single_opdef(op)
    outs = set()
    with Solver(name="cadical103", bootstrap_with=cnf.clauses) as solver:
        for s in ALL_SIGNS:
            lits = list(sign_literals(reg[Var("a")], a)) + list(sign_literals(reg[Var("b")], b))
            lits += list(sign_literals(reg[Var("v")], s))
            if solver.solve(assumptions=lits):
                outs.add(s)
    assert outs == {s for (x, y, s) in RELATIONS[op].triples if x is a and y is b}
