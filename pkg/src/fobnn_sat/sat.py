"""Incremental SAT analysis: transition enumeration, graphs, fixed points."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from pysat.solvers import Solver, SolverNames

from .encode import CNF, VarRegistry, differ_literals, sign_literals
from .errors import GuardExceeded
from .graph import FOBNN_BASE, FOBNN_EXTENDED, State, Transition, TransitionGraph
from .signs import Sign
from .terms import Var, VarKind

DEFAULT_BACKEND = "cadical103"
MAX_STG_SPECIES = 12
DEFAULT_LOOP_LIMIT = 5000


class EncodingError(AssertionError):
    """A model violated an invariant the encoding is supposed to guarantee."""


def backend_name(name: str | None = None) -> str:
    name = name or os.environ.get("FOBNN_SAT_BACKEND") or DEFAULT_BACKEND
    known = {n for n in vars(SolverNames) if not n.startswith("_")}
    if name not in known:
        raise ValueError(f"unknown SAT backend {name!r}; choose from {', '.join(sorted(known))}")
    return name


@dataclass
class SolverSession:
    """One incremental solver loaded with an encoded FOBNN.

    Blocking clauses are permanent: a transition returned by
    :func:`enumerate_transitions` is excluded from every later query on the
    same session.
    """

    solver: Solver
    registry: VarRegistry
    backend: str
    blocked: set = field(default_factory=set)
    loop_flag: int | None = None
    calls: int = 0

    @property
    def species(self) -> tuple[str, ...]:
        return self.registry.species

    def solve(self, assumptions=()) -> bool:
        self.calls += 1
        return bool(self.solver.solve(assumptions=list(assumptions)))

    def model(self) -> list[int]:
        return self.solver.get_model()

    def add_clause(self, clause) -> None:
        self.solver.add_clause(list(clause))

    def close(self) -> None:
        self.solver.delete()

    def __enter__(self) -> "SolverSession":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def open_session(cnf: CNF, registry: VarRegistry, backend: str | None = None) -> SolverSession:
    name = backend_name(backend)
    solver = Solver(name=name, bootstrap_with=cnf.clauses)
    return SolverSession(solver, registry.copy(), name)


def _roles(extended: bool) -> tuple[tuple[VarKind, ...], tuple[VarKind, ...]]:
    if extended:
        return (VarKind.CURRENT, VarKind.DOT), (VarKind.NEXT, VarKind.NEXT_DOT)
    return (VarKind.CURRENT,), (VarKind.NEXT,)


def _state_vars(registry: VarRegistry, kinds) -> list[Var]:
    return [Var(x, k) for k in kinds for x in registry.species]


def _decode_pair(true: set[int], pair: tuple[int, int], name) -> Sign:
    p0, p1 = pair
    a, b = p0 in true, p1 in true
    if a and b:
        raise EncodingError(f"both sign flags of {name} are set")
    if a:
        return Sign.POS
    if b:
        return Sign.NEG
    return Sign.ZERO


def decode_model(model, registry: VarRegistry, extended: bool = False) -> Transition:
    true = {lit for lit in model if lit > 0}
    for v, pair in registry.pairs.items():
        _decode_pair(true, pair, v)
    src, dst = _roles(extended)
    return (
        tuple(_decode_pair(true, registry[v], v) for v in _state_vars(registry, src)),
        tuple(_decode_pair(true, registry[v], v) for v in _state_vars(registry, dst)),
    )


def assumptions_for_state(state: State, registry: VarRegistry, extended: bool = False) -> list[int]:
    kinds = (VarKind.CURRENT, VarKind.DOT) if extended else (VarKind.CURRENT,)
    vs = _state_vars(registry, kinds)
    if len(state) != len(vs):
        raise ValueError("state does not cover the species")
    lits: list[int] = []
    for v, s in zip(vs, state):
        lits.extend(sign_literals(registry[v], s))
    return lits


def blocking_clause(t: Transition, registry: VarRegistry, extended: bool = False) -> list[int]:
    src, dst = _roles(extended)
    clause: list[int] = []
    for v, s in zip(_state_vars(registry, src), t[0]):
        clause.extend(differ_literals(registry[v], s))
    for v, s in zip(_state_vars(registry, dst), t[1]):
        clause.extend(differ_literals(registry[v], s))
    return clause


def block_transition(session: SolverSession, t: Transition, extended: bool = False) -> None:
    session.add_clause(blocking_clause(t, session.registry, extended))
    session.blocked.add((extended, t))


def enumerate_transitions(
    session: SolverSession,
    limit: int | None = None,
    start: State | None = None,
    extended: bool = False,
) -> list[Transition]:
    """Solve, decode, block, repeat until UNSAT or ``limit`` transitions."""
    if limit is not None and limit < 1:
        raise ValueError("limit must be at least 1")
    assumptions: list[int] = []
    if start is not None:
        # an extended start may pin derivative signs too
        with_dots = extended and len(start) > len(session.species)
        assumptions = assumptions_for_state(start, session.registry, extended=with_dots)
    out: list[Transition] = []
    while limit is None or len(out) < limit:
        if not session.solve(assumptions):
            break
        t = decode_model(session.model(), session.registry, extended)
        block_transition(session, t, extended)
        out.append(t)
    return out


def build_stg(
    session: SolverSession,
    extended: bool = False,
    max_species: int = MAX_STG_SPECIES,
    force: bool = False,
    metadata: dict | None = None,
) -> TransitionGraph:
    n = len(session.species)
    if n > max_species and not force:
        raise GuardExceeded(f"full graph limited to {max_species} species, got {n}")
    transitions = enumerate_transitions(session, extended=extended)
    meta = {"backend": session.backend, **(metadata or {})}
    return TransitionGraph.from_transitions(
        FOBNN_EXTENDED if extended else FOBNN_BASE, session.species, transitions, meta
    )


def install_loop_clauses(session: SolverSession) -> int:
    """Add ``X = X'`` for every species, active only when the flag is assumed."""
    if session.loop_flag is None:
        flag = session.registry.new_aux()
        for x in session.species:
            c0, c1 = session.registry[Var(x, VarKind.CURRENT)]
            n0, n1 = session.registry[Var(x, VarKind.NEXT)]
            for clause in (
                [-flag, -c0, n0],
                [-flag, -n0, c0],
                [-flag, -c1, n1],
                [-flag, -n1, c1],
            ):
                session.add_clause(clause)
        session.loop_flag = flag
    return session.loop_flag


def has_escape(session: SolverSession, state: State) -> bool:
    """Is there a transition from ``state`` to a different state?"""
    reg = session.registry
    guard = reg.new_aux()
    diff = [-guard]
    for x, s in zip(session.species, state):
        diff.extend(differ_literals(reg[Var(x, VarKind.NEXT)], s))
    session.add_clause(diff)
    escapes = session.solve(assumptions_for_state(state, reg) + [guard])
    # retire the guard for good
    session.add_clause([-guard])
    return escapes


@dataclass
class FixedPointSearch:
    fixed_points: list[State]
    loops_examined: int
    exhausted: bool


def search_fixed_points(session: SolverSession, loop_limit: int = DEFAULT_LOOP_LIMIT) -> FixedPointSearch:
    flag = install_loop_clauses(session)
    found: list[State] = []
    loops = 0
    exhausted = False
    while loops < loop_limit:
        if not session.solve([flag]):
            exhausted = True
            break
        loops += 1
        t = decode_model(session.model(), session.registry)
        state = t[0]
        if not has_escape(session, state):
            found.append(state)
        # only the self-loop itself is excluded; other edges through it stay
        block_transition(session, (state, state))
    return FixedPointSearch(found, loops, exhausted)


def find_fixed_points(session: SolverSession, loop_limit: int = DEFAULT_LOOP_LIMIT) -> list[State]:
    return search_fixed_points(session, loop_limit).fixed_points
