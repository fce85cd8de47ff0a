from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _strategies import SPECIES, atoms, resolve, sign_values, terms
from fobnn_sat.exprparse import parse_term_text
from fobnn_sat.signs import Op, Sign, SignSet, sign_of_rational
from fobnn_sat.terms import (
    And,
    BinOp,
    Const,
    Eq,
    Exists,
    Forall,
    NonNeg,
    Not,
    Or,
    UnboundVariable,
    Var,
    VarKind,
    eval_atom,
    eval_formula,
    eval_term,
    format_number,
    neg,
    prime_term,
    render_term,
    satisfiable,
)

P, N, Z = Sign.POS, Sign.NEG, Sign.ZERO
X, Y = Var("X"), Var("Y")


def parse(text):
    return parse_term_text(text, resolve)


def test_example_product_with_absent_species():
    t = BinOp(Op.MUL, BinOp(Op.MUL, Const(Fraction("0.1")), Var("E")), Var("S"))
    assert eval_term(t, {Var("E"): Z, Var("S"): P}) == SignSet.of(Z)


def test_variable_lookup_and_unbound():
    assert eval_term(X, {X: N}) == SignSet.of(N)
    with pytest.raises(UnboundVariable):
        eval_term(X, {})


def test_sharing_is_not_merged():
    s = BinOp(Op.ADD, X, Y)
    t = BinOp(Op.MUL, s, s)
    alpha = {X: P, Y: N}
    assert eval_term(t, alpha) == SignSet.full()
    assert eval_atom(Eq(t, Const(Fraction(-1))), alpha)


def test_complex_ode_atom_all_zero():
    k, k2 = Const(None, "k"), Const(None, "k2")
    S, E, C = Var("S"), Var("E"), Var("C")
    rhs = BinOp(Op.SUB, BinOp(Op.MUL, BinOp(Op.MUL, k, S), E), BinOp(Op.MUL, k2, C))
    dC = Var("C", VarKind.DOT)
    alpha = {S: Z, E: Z, C: Z, dC: Z}
    assert eval_atom(Eq(dC, rhs), alpha)
    assert not eval_atom(Eq(dC, rhs), {**alpha, dC: P})


def test_nonneg_predicate():
    assert eval_atom(NonNeg(X), {X: Z})
    assert eval_atom(NonNeg(X), {X: P})
    assert not eval_atom(NonNeg(X), {X: N})
    # {+,-,0} meets {+,0}
    assert eval_atom(NonNeg(BinOp(Op.SUB, X, Y)), {X: P, Y: P})


def test_connectives_and_quantifiers():
    dX = Var("X", VarKind.DOT)
    body = Eq(dX, BinOp(Op.MUL, X, Y))
    assert eval_formula(Exists(dX, body), {X: P, Y: N})
    assert not eval_formula(Forall(dX, body), {X: P, Y: N})
    assert eval_formula(Or((Not(Eq(X, Y)), Eq(X, X))), {X: P, Y: P})
    assert not eval_formula(And((Eq(X, Y),)), {X: P, Y: N})


def test_satisfiable_with_domains():
    phi = Eq(BinOp(Op.ADD, X, Y), Const(Fraction(-1)))
    assert satisfiable(phi)
    assert not satisfiable(phi, {X: (P, Z), Y: (P, Z)})


def test_format_number():
    assert format_number(Fraction(5)) == "5"
    assert format_number(Fraction("-2.3")) == "-2.3"
    assert format_number(Fraction(1, 8)) == "0.125"
    assert format_number(Fraction(1, 3)) == "1/3"


def test_render_examples():
    assert render_term(parse("k_on*S*E-k_off*C-k_cat*C")) == "k_on*S*E-k_off*C-k_cat*C"
    assert render_term(neg(BinOp(Op.ADD, X, Y))) == "-(X+Y)"
    assert render_term(BinOp(Op.SUB, X, BinOp(Op.SUB, Y, X))) == "X-(Y-X)"
    assert render_term(BinOp(Op.DIV, X, BinOp(Op.MUL, Y, X))) == "X/(Y*X)"
    assert parse("-2*X") == BinOp(Op.MUL, Const(-2), X)
    assert parse("-X") == neg(X)


def test_prime_term():
    t = prime_term(BinOp(Op.MUL, Const(None, "k"), X))
    assert render_term(t) == "k*X'"


@given(terms())
def test_render_parse_round_trip(t):
    assert parse(render_term(t)) == t


@given(atoms(), st.fixed_dictionaries({Var(x): sign_values for x in SPECIES}))
def test_eval_atom_matches_set_definition(a, alpha):
    if isinstance(a, Eq):
        expected = bool(eval_term(a.lhs, alpha) & eval_term(a.rhs, alpha))
    else:
        expected = bool(eval_term(a.term, alpha) & SignSet.of(P, Z))
    assert eval_atom(a, alpha) == expected


@given(terms(), st.fixed_dictionaries({Var(x): sign_values for x in SPECIES}))
def test_eval_contains_concrete_sign(t, alpha):
    # substitute one concrete rational per sign and evaluate exactly
    value = {P: Fraction(3, 2), N: Fraction(-5, 7), Z: Fraction(0)}
    named = Fraction(2)

    def concrete(u):
        if isinstance(u, Var):
            return value[alpha[u]]
        if isinstance(u, Const):
            return named if u.value is None else u.value
        a, b = concrete(u.left), concrete(u.right)
        if a is None or b is None or (u.op is Op.DIV and b == 0):
            return None
        return u.op.apply(a, b)

    v = concrete(t)
    if v is not None:
        assert sign_of_rational(v) in eval_term(t, alpha)
