import pytest

from _corpus import corpus, hand_networks, renz
from fobnn_sat import (
    InputError,
    ParseError,
    add_constraint_text,
    add_derivative_zero_constraints,
    add_mass_action_constraints,
    brute_force_transitions,
    build_fobnn,
    build_odes,
    detect_mass_action,
    fobnn_of,
    parse_native,
)
from fobnn_sat.fobnn import ODESystem, parse_constraints
from fobnn_sat.signs import Sign
from fobnn_sat.terms import Eq, NonNeg, VarKind, render_term

P, Z = Sign.POS, Sign.ZERO

RENZ_ATOMS = [
    "dS = -k_on*S*E+k_off*C",
    "dE = -k_on*S*E+k_off*C+k_cat*C",
    "dC = k_on*S*E-k_off*C-k_cat*C",
    "dP = 2*k_cat*C",
    "dS' = -k_on*S'*E'+k_off*C'",
    "dE' = -k_on*S'*E'+k_off*C'+k_cat*C'",
    "dC' = k_on*S'*E'-k_off*C'-k_cat*C'",
    "dP' = 2*k_cat*C'",
    "S' = S+dS", "S >= 0", "S' >= 0",
    "E' = E+dE", "E >= 0", "E' >= 0",
    "C' = C+dC", "C >= 0", "C' >= 0",
    "P' = P+dP", "P >= 0", "P' >= 0",
]


def test_renz_odes():
    odes = build_odes(renz())
    assert render_term(odes.equation("C")) == "k_on*S*E-k_off*C-k_cat*C"
    assert render_term(odes.equation("P")) == "2*k_cat*C"


def test_untouched_species_has_zero_rhs():
    rn = parse_native("species: A, B\nconst k > 0\nr: A => @ k*A\n")
    assert render_term(build_odes(rn).equation("B")) == "0"


def test_renz_fobnn_atoms():
    f = fobnn_of(renz())
    assert [str(a) for a in f.atoms] == RENZ_ATOMS
    assert [str(v) for v in f.existentials] == ["dS", "dE", "dC", "dP", "dS'", "dE'", "dC'", "dP'"]


def test_subformula_for_complex():
    atoms = [str(a) for a in fobnn_of(renz()).atoms]
    for expected in ("dC = k_on*S*E-k_off*C-k_cat*C", "dC' = k_on*S'*E'-k_off*C'-k_cat*C'", "C' = C+dC"):
        assert expected in atoms


def test_degenerate_single_species():
    f = fobnn_of(parse_native("species: X\n"))
    assert [str(a) for a in f.atoms] == ["dX = 0", "dX' = 0", "X' = X+dX", "X >= 0", "X' >= 0"]


@pytest.mark.parametrize("rn", corpus(), ids=lambda r: r.name)
def test_shape_invariants(rn):
    f = fobnn_of(rn)
    n = len(rn.species)
    eqs = [a for a in f.atoms if isinstance(a, Eq)]
    odes = [a for a in eqs if a.lhs.kind in (VarKind.DOT, VarKind.NEXT_DOT)]
    assert len(odes) == 2 * n
    assert len(eqs) - len(odes) == n
    assert sum(isinstance(a, NonNeg) for a in f.atoms) == 2 * n
    assert len(f.existentials) == 2 * n
    assert {str(v) for v in f.free_vars()} <= {x for x in rn.species} | {x + "'" for x in rn.species}


def test_mass_action_detection():
    assert detect_mass_action(renz()) == ["S", "E", "C", "P"]
    nets = hand_networks()
    assert detect_mass_action(nets["michaelis"]) == ["P"]
    # B is never consumed, so it qualifies vacuously
    assert "B" in detect_mass_action(nets["convert"])
    assert detect_mass_action(nets["dimer"]) == ["A", "B"]
    assert "A" not in detect_mass_action(nets["negconst"])


def test_mass_action_constraint_atoms():
    f = fobnn_of(renz())
    assert add_mass_action_constraints(f, []) == f
    g = add_mass_action_constraints(f, ["P"])
    assert str(g.atoms[-1]) == "P'-P >= 0"
    with pytest.raises(InputError):
        add_mass_action_constraints(f, ["Q"])


def test_mass_action_tightens_binding():
    rn = hand_networks()["bind"]
    f = add_mass_action_constraints(fobnn_of(rn), rn.species)
    succ = {v for u, v in brute_force_transitions(f) if u == (P, P, Z)}
    assert succ == {(P, P, P)}
    loose = {v for u, v in brute_force_transitions(fobnn_of(rn)) if u == (P, P, Z)}
    assert (P, P, P) in loose and len(loose) > 1


@pytest.mark.parametrize("rn", corpus() + [renz()], ids=lambda r: r.name)
def test_constraints_never_add_transitions(rn):
    base = brute_force_transitions(fobnn_of(rn))
    ma = brute_force_transitions(add_mass_action_constraints(fobnn_of(rn), rn.species))
    assert ma <= base
    for u, v in ma:
        # order 0 < +
        assert all(not (a is P and b is Z) for a, b in zip(u, v))
    dz = brute_force_transitions(add_derivative_zero_constraints(fobnn_of(rn)))
    assert dz <= base


def test_constraint_text():
    rn = renz()
    f = fobnn_of(rn)
    same = add_constraint_text(f, "P' >= P", rn.constants)
    ma = add_mass_action_constraints(f, ["P"])
    assert brute_force_transitions(same) == brute_force_transitions(ma)
    redundant = add_constraint_text(f, "S >= 0")
    assert brute_force_transitions(redundant) == brute_force_transitions(f)
    atoms = parse_constraints("S' = S and k_on*C >= 0", f, rn.constants)
    assert [str(a) for a in atoms] == ["S' = S", "k_on*C >= 0"]


@pytest.mark.parametrize("text", ["S' >", "dS = 0", "Q >= 0", "S' S"])
def test_constraint_text_errors(text):
    with pytest.raises(ParseError):
        add_constraint_text(fobnn_of(renz()), text)


def test_build_fobnn_from_odes():
    odes = build_odes(renz())
    assert isinstance(odes, ODESystem)
    assert build_fobnn(odes) == fobnn_of(renz())
