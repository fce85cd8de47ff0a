"""Transition graphs: analytics, comparison, DOT and JSON export."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .signs import Sign

State = tuple[Sign, ...]
Transition = tuple[State, State]

FOBNN_BASE = "fobnn-base"
FOBNN_EXTENDED = "fobnn-extended"
CLASSIC = "classic"
KINDS = (FOBNN_BASE, FOBNN_EXTENDED, CLASSIC)

_ORDER = {Sign.ZERO: 0, Sign.POS: 1, Sign.NEG: 2}


def state_key(s: State) -> tuple[int, ...]:
    return tuple(_ORDER[x] for x in s)


def state_labels(species, extended: bool = False) -> list[str]:
    labels = list(species)
    if extended:
        labels += [f"d{x}" for x in species]
    return labels


def format_state(state: State, species, extended: bool = False) -> str:
    labels = state_labels(species, extended)
    if len(labels) != len(state):
        raise ValueError("state does not match species")
    return ",".join(f"{k}={s.symbol}" for k, s in zip(labels, state))


def parse_state(text: str, species, extended: bool = False) -> State:
    """Parse ``NAME=sign`` pairs; every species (and derivative) must be given once."""
    labels = state_labels(species, extended)
    got: dict[str, Sign] = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep:
            raise ValueError(f"expected NAME=SIGN, got {part!r}")
        if name not in labels:
            raise ValueError(f"unknown species {name!r}")
        if name in got:
            raise ValueError(f"species {name} given twice")
        got[name] = Sign.parse(value)
    missing = [k for k in labels if k not in got]
    if missing:
        raise ValueError(f"missing species: {', '.join(missing)}")
    return tuple(got[k] for k in labels)


@dataclass(frozen=True, eq=True)
class TransitionGraph:
    kind: str
    species: tuple[str, ...]
    nodes: frozenset = frozenset()
    edges: frozenset = frozenset()
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown graph kind {self.kind!r}")
        bad = [e for e in self.edges if e[0] not in self.nodes or e[1] not in self.nodes]
        if bad:
            raise ValueError("edge endpoint outside node set")

    @classmethod
    def from_transitions(cls, kind: str, species, transitions, metadata=None) -> "TransitionGraph":
        edges = frozenset(transitions)
        nodes = frozenset(s for e in edges for s in e)
        return cls(kind, tuple(species), nodes, edges, dict(metadata or {}))

    @property
    def extended(self) -> bool:
        return self.kind == FOBNN_EXTENDED

    def fmt(self, s: State) -> str:
        return format_state(s, self.species, self.extended)

    def successors(self, s: State) -> set[State]:
        return {t for (u, t) in self.edges if u == s}

    def sorted_nodes(self) -> list[State]:
        return sorted(self.nodes, key=state_key)

    def sorted_edges(self) -> list[Transition]:
        return sorted(self.edges, key=lambda e: (state_key(e[0]), state_key(e[1])))


def density(g: TransitionGraph) -> Fraction:
    """Edges over ``|V|**2`` (the complete graph with self-loops)."""
    if not g.nodes:
        raise ValueError("density of an empty graph is undefined")
    return Fraction(len(g.edges), len(g.nodes) ** 2)


def graph_fixed_points(g: TransitionGraph) -> set[State]:
    """States whose only outgoing edge is their self-loop."""
    out: dict[State, set[State]] = {}
    for u, v in g.edges:
        out.setdefault(u, set()).add(v)
    return {s for s, succ in out.items() if succ == {s}}


@dataclass(frozen=True)
class ComparisonReport:
    nodes: tuple[int, int]
    edges: tuple[int, int]
    shared_edges: int
    only_in_first: frozenset
    only_in_second: frozenset
    fixed_points: tuple[frozenset, frozenset]

    def to_dict(self, species) -> dict:
        def fmt(states):
            return [format_state(s, species) for s in sorted(states, key=state_key)]

        return {
            "nodes": list(self.nodes),
            "edges": list(self.edges),
            "shared_edges": self.shared_edges,
            "states_only_in_first": fmt(self.only_in_first),
            "states_only_in_second": fmt(self.only_in_second),
            "fixed_points_first": fmt(self.fixed_points[0]),
            "fixed_points_second": fmt(self.fixed_points[1]),
        }


def compare(g1: TransitionGraph, g2: TransitionGraph) -> ComparisonReport:
    if g1.species != g2.species or g1.extended != g2.extended:
        raise ValueError("graphs are over different state spaces")
    return ComparisonReport(
        nodes=(len(g1.nodes), len(g2.nodes)),
        edges=(len(g1.edges), len(g2.edges)),
        shared_edges=len(g1.edges & g2.edges),
        only_in_first=frozenset(g1.nodes - g2.nodes),
        only_in_second=frozenset(g2.nodes - g1.nodes),
        fixed_points=(frozenset(graph_fixed_points(g1)), frozenset(graph_fixed_points(g2))),
    )


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: TransitionGraph, name: str | None = None) -> str:
    title = name or g.metadata.get("model") or "stg"
    lines = [f"digraph {_quote(str(title))} {{"]
    fixed = graph_fixed_points(g)
    for s in g.sorted_nodes():
        attrs = " [shape=doublecircle]" if s in fixed else ""
        lines.append(f"  {_quote(g.fmt(s))}{attrs};")
    for u, v in g.sorted_edges():
        lines.append(f"  {_quote(g.fmt(u))} -> {_quote(g.fmt(v))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: TransitionGraph) -> str:
    doc = {
        "kind": g.kind,
        "species": list(g.species),
        "nodes": [g.fmt(s) for s in g.sorted_nodes()],
        "edges": [[g.fmt(u), g.fmt(v)] for u, v in g.sorted_edges()],
        "metadata": g.metadata,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def from_json(text: str) -> TransitionGraph:
    doc = json.loads(text)
    species = tuple(doc["species"])
    extended = doc["kind"] == FOBNN_EXTENDED

    def st(s: str) -> State:
        return parse_state(s, species, extended)

    return TransitionGraph(
        doc["kind"],
        species,
        frozenset(st(s) for s in doc["nodes"]),
        frozenset((st(u), st(v)) for u, v in doc["edges"]),
        dict(doc.get("metadata", {})),
    )
