"""Classic boolean semantics of reaction networks.

Native transcription of the answer-set rules::

    firerable(R) :- present(0, X) : in(R, X); r(R).
    1{fired(R) : firerable(R)}1.
    present(1, Y) :- fired(R); out(R, Y).
    destroyable(0, X) :- fired(R); in(R, X).
    {present(1, X)} :- destroyable(0, X).
    present(1, X) :- present(0, X); not destroyable(0, X).

Exactly one enabled reaction fires.  Its products are present afterwards,
its reactants may vanish, all other species keep their value.  A state with
no enabled reaction has no successor.  Stoichiometry is ignored.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import GuardExceeded
from .graph import CLASSIC, State, TransitionGraph
from .network import ReactionNetwork
from .signs import Sign

MAX_SPECIES = 12

BoolState = dict[str, int]


def _masks(rn: ReactionNetwork) -> tuple[np.ndarray, np.ndarray]:
    index = {x: i for i, x in enumerate(rn.species)}
    rm, pm = [], []
    for r in rn.reactions:
        rm.append(sum(1 << index[s] for s, c in r.reactants if c > 0))
        pm.append(sum(1 << index[s] for s, c in r.products if c > 0))
    return np.array(rm, dtype=np.int64), np.array(pm, dtype=np.int64)


def classic_successors(rn: ReactionNetwork, state: BoolState) -> set[tuple[tuple[str, int], ...]]:
    """Successors of one boolean state, each as sorted ``(species, value)`` pairs."""
    succ = set()
    for r in rn.reactions:
        reactants = {s for s, c in r.reactants if c > 0}
        products = {s for s, c in r.products if c > 0}
        if not all(state[x] for x in reactants):
            continue
        free = sorted(reactants - products)
        for bits in range(1 << len(free)):
            nxt = dict(state)
            for y in products:
                nxt[y] = 1
            for i, x in enumerate(free):
                nxt[x] = (bits >> i) & 1
            succ.add(tuple((x, nxt[x]) for x in rn.species))
    return succ


def _state(mask: int, n: int) -> State:
    return tuple(Sign.POS if (mask >> i) & 1 else Sign.ZERO for i in range(n))


def classic_stg(rn: ReactionNetwork, max_species: int = MAX_SPECIES, impl=None) -> TransitionGraph:
    n = len(rn.species)
    if n > max_species:
        raise GuardExceeded(f"classic graph limited to {max_species} species, got {n}")
    impl = impl or kernels.impl
    rm, pm = _masks(rn)
    pairs = impl.classic_edges(n, rm, pm)
    states = [_state(m, n) for m in range(1 << n)]
    edges = frozenset((states[u], states[v]) for u, v in pairs.tolist())
    return TransitionGraph(
        CLASSIC,
        rn.species,
        frozenset(states),
        edges,
        {"model": rn.name, "semantics": "classic"},
    )
