"""Network to solver session in one call."""
from __future__ import annotations

from .encode import encode
from .errors import InputError
from .flatten import flatten
from .fobnn import (
    FOBNN,
    add_constraint_text,
    add_derivative_zero_constraints,
    add_mass_action_constraints,
    detect_mass_action,
    fobnn_of,
)
from .network import ReactionNetwork
from .sat import SolverSession, open_session


def mass_action_species(rn: ReactionNetwork, mode: str | list[str] | None) -> list[str]:
    """Resolve ``off``, ``all``, ``auto`` or an explicit species list."""
    if mode is None or mode == "off":
        return []
    if mode == "all":
        return list(rn.species)
    if mode == "auto":
        return detect_mass_action(rn)
    names = [x.strip() for x in mode.split(",")] if isinstance(mode, str) else list(mode)
    names = [x for x in names if x]
    unknown = [x for x in names if x not in rn.species]
    if unknown:
        raise InputError(f"unknown species: {', '.join(unknown)}")
    return names


def build_formula(
    rn: ReactionNetwork,
    mass_action: str | list[str] | None = None,
    constraints: str | None = None,
    derivatives_zero: bool = False,
) -> FOBNN:
    f = fobnn_of(rn)
    ma = mass_action_species(rn, mass_action)
    if ma:
        f = add_mass_action_constraints(f, ma)
    if constraints:
        f = add_constraint_text(f, constraints, rn.constants)
    if derivatives_zero:
        f = add_derivative_zero_constraints(f)
    return f


def open_fobnn(fobnn: FOBNN, backend: str | None = None) -> SolverSession:
    cnf, reg = encode(flatten(fobnn))
    return open_session(cnf, reg, backend)


def open_network(rn: ReactionNetwork, backend: str | None = None, **options) -> SolverSession:
    return open_fobnn(build_formula(rn, **options), backend)
