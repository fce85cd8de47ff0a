"""Sign-abstracted transition analysis of reaction networks by SAT."""
from .classic import classic_stg, classic_successors
from .encode import CNF, VarRegistry, emit_dimacs, encode
from .errors import GuardExceeded, InputError, ParseError, UnsupportedConstruct
from .flatten import FlatFormula, flatten
from .fobnn import (
    FOBNN,
    ODESystem,
    add_constraint_text,
    add_derivative_zero_constraints,
    add_mass_action_constraints,
    build_fobnn,
    build_odes,
    detect_mass_action,
    fobnn_of,
)
from .frontend import load_network, parse_coresbml, parse_native, render_coresbml
from .graph import (
    TransitionGraph,
    compare,
    density,
    format_state,
    from_json,
    graph_fixed_points,
    parse_state,
    to_dot,
    to_json,
)
from .network import RateConstant, Reaction, ReactionNetwork, render_native, validate
from .oracle import brute_force_transitions
from .pipeline import build_formula, open_fobnn, open_network
from .sat import (
    SolverSession,
    assumptions_for_state,
    block_transition,
    build_stg,
    decode_model,
    enumerate_transitions,
    find_fixed_points,
    open_session,
)
from .signs import Op, Sign, SignSet, abstract_apply, lift

__version__ = "0.1.0"
