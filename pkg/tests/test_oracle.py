import pytest

from _corpus import corpus, hand_networks, renz
from fobnn_sat import GuardExceeded, build_formula, fobnn_of, parse_native
from fobnn_sat.oracle import MAX_SPECIES, brute_force_reference, brute_force_transitions
from fobnn_sat.signs import Sign

P, N, Z = Sign.POS, Sign.NEG, Sign.ZERO


def _small():
    return [rn for rn in corpus() if len(rn.species) <= 2]


@pytest.mark.parametrize("rn", _small(), ids=lambda r: r.name)
def test_matches_reference(rn):
    for ma in (None, "all"):
        f = build_formula(rn, mass_action=ma)
        assert brute_force_transitions(f) == brute_force_reference(f)
        assert brute_force_transitions(f, extended=True) == brute_force_reference(f, extended=True)


def test_conversion_edges():
    f = fobnn_of(hand_networks()["convert"])
    succ = {v for u, v in brute_force_transitions(f) if u == (P, Z)}
    assert succ == {(P, P), (Z, P)}


def test_empty_network_only_self_loops():
    rn = hand_networks()["empty"]
    ts = brute_force_transitions(fobnn_of(rn))
    n = len(rn.species)
    assert len(ts) == 2**n
    assert all(u == v for u, v in ts)


def test_decay_can_vanish():
    ts = brute_force_transitions(fobnn_of(hand_networks()["decay"]))
    assert ts == {((P,), (P,)), ((P,), (Z,)), ((Z,), (Z,))}


def test_extended_states_carry_derivatives():
    f = fobnn_of(hand_networks()["decay"])
    ext = brute_force_transitions(f, extended=True)
    assert all(len(u) == 2 and len(v) == 2 for u, v in ext)
    # projecting extended edges gives the base edges
    assert {(u[:1], v[:1]) for u, v in ext} == brute_force_transitions(f)
    # dA = -k*A, so a present A has a negative derivative
    assert all(u[1] is N for u, _ in ext if u[0] is P)


def test_renz_projection_sizes():
    assert len(brute_force_transitions(fobnn_of(renz()))) == 42
    assert len(brute_force_transitions(build_formula(renz(), mass_action="all"))) == 16


def test_guard():
    names = [f"X{i}" for i in range(MAX_SPECIES + 1)]
    rn = parse_native("species: " + ", ".join(names) + "\n")
    with pytest.raises(GuardExceeded):
        brute_force_transitions(fobnn_of(rn))
    assert brute_force_transitions(fobnn_of(rn), max_species=MAX_SPECIES + 1)
