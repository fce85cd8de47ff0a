from pathlib import Path

from ..network import ReactionNetwork
from .coresbml import parse_coresbml, render_coresbml
from .native import parse_native

__all__ = ["parse_native", "parse_coresbml", "render_coresbml", "load_network"]


def load_network(path: str | Path, fmt: str | None = None) -> ReactionNetwork:
    """Read a network file; the format is guessed from the suffix when not given."""
    path = Path(path)
    if fmt is None:
        fmt = "coresbml" if path.suffix.lower() in (".xml", ".sbml") else "native"
    if fmt == "coresbml":
        rn = parse_coresbml(path.read_bytes())
        return rn if rn.name else ReactionNetwork(rn.species, rn.constants, rn.reactions, name=path.stem)
    return parse_native(path.read_text(encoding="utf-8"), name=path.stem)
