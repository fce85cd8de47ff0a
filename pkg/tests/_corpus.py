"""Small networks shared by the oracle, SAT and acceptance tests."""
from __future__ import annotations

import random
from pathlib import Path

from fobnn_sat import parse_native

DATA = Path(__file__).resolve().parent.parent / "data"

HAND = {
    "decay": """
species: A
const k > 0
r: A => @ k*A
""",
    "inflow": """
species: A
const k > 0
r: => A @ k
""",
    "convert": """
species: A, B
const k > 0
r: A => B @ k*A
""",
    "reversible": """
species: A, B
const kf > 0
const kb > 0
fwd: A => B @ kf*A
bwd: B => A @ kb*B
""",
    "bind": """
species: A, B, C
const k > 0
r: A + B => C @ k*A*B
""",
    "dimer": """
species: A, B
const k > 0
r: 2*A => B @ k*A*A
""",
    "autocat": """
species: A, B
const k > 0
r: A + B => 2*B @ k*A*B
""",
    "michaelis": """
species: S, P
const vm > 0
const km > 0
r: S => P @ vm*S/(km+S)
""",
    "inhibited": """
species: A, B, I
const k > 0
const ki > 0
r: A => B @ k*A/(ki+I)
""",
    "ratio": """
species: A, B
const k > 0
r: A => B @ k*A/B
""",
    "negconst": """
species: A, B
const k = -0.5
r: A => B @ k*A
""",
    "mixed": """
species: A, B, C
const k1 > 0
const k2 = 0.25
r1: A => B @ k1*A - k2*C
r2: B + C => A @ k2*B*C
""",
    "empty": """
species: A, B
""",
    "zerorate": """
species: A, B
const z = 0
r: A => B @ z*A
""",
}


def hand_networks():
    return {name: parse_native(text, name=name) for name, text in HAND.items()}


def renz():
    return parse_native((DATA / "renz.rn").read_text(), name="renz")


def _mass_action(rng, reactants, names):
    k = rng.choice(names)
    factors = [k] + [s for s, c in reactants for _ in range(c)]
    rng.shuffle(factors)
    return "*".join(factors)


def _rational(rng, species, names):
    a, b = rng.choice(species), rng.choice(species)
    k, m = rng.choice(names), rng.choice(names)
    shapes = [
        f"{k}*{a}/({m}+{b})",
        f"{k}*{a} - {m}*{b}",
        f"{k}/{m}*{a}",
        f"({k}+{a})*{b}",
        f"{k}*{a}/{b}",
        f"0.5*{a} - 2*{b}",
    ]
    return rng.choice(shapes)


def random_network(seed: int, max_species: int = 3, n_species: int | None = None):
    """A random network with mass-action or rational kinetics."""
    rng = random.Random(seed)
    n = min(max_species, rng.choice([1, 2, 2, 3, 3, 3]))
    if n_species is not None:
        n = n_species
    species = ["A", "B", "C", "D", "E", "F"][:n]
    names = ["k1", "k2", "k3"]
    lines = ["species: " + ", ".join(species)]
    lines += [f"const {k} > 0" for k in names[:2]]
    lines.append("const k3 = 0.75")
    for i in range(rng.randint(1, 3)):
        def pool():
            chosen = rng.sample(species, rng.randint(0, min(2, n)))
            return [(s, rng.choice([1, 1, 2])) for s in chosen]

        lhs, rhs = pool(), pool()
        if not lhs and not rhs:
            rhs = [(species[0], 1)]
        kin = _mass_action(rng, lhs, names) if rng.random() < 0.6 else _rational(rng, species, names)

        def fmt(p):
            return " + ".join(s if c == 1 else f"{c}*{s}" for s, c in p)

        lines.append(f"r{i}: {fmt(lhs)} => {fmt(rhs)} @ {kin}")
    return parse_native("\n".join(lines) + "\n", name=f"rand{seed}")


def corpus(n_random: int = 16):
    """Hand-written networks followed by ``n_random`` seeded random ones."""
    nets = list(hand_networks().values())
    nets += [random_network(seed) for seed in range(n_random)]
    return nets
