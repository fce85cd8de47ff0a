"""Compiled against pure-Python kernels on the oracle and the classic graph.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import sys
import timeit
from pathlib import Path

import numpy as np

from fobnn_sat import build_formula, parse_native
from fobnn_sat.classic import _masks
from fobnn_sat.kernels import available
from fobnn_sat.oracle import brute_force_transitions

DATA = Path(__file__).resolve().parent.parent / "data"

TRIMER = """
species: A, B, C
const k > 0
const km > 0
r1: A + B => C @ k*A*B
r2: C => A @ k*C/(km+C)
r3: B => @ k*B
"""


def _random_masks(n, m, seed=0):
    rng = np.random.default_rng(seed)
    return (
        rng.integers(0, 1 << n, size=m, dtype=np.int64),
        rng.integers(0, 1 << n, size=m, dtype=np.int64),
    )


def cases():
    renz = parse_native((DATA / "renz.rn").read_text(), name="renz")
    trimer = parse_native(TRIMER, name="trimer")
    f_renz = build_formula(renz, mass_action="all")
    f_tri = build_formula(trimer)
    rm, pm = _masks(renz)
    rm12, pm12 = _random_masks(12, 20)
    return [
        ("oracle renz base", lambda k: brute_force_transitions(f_renz, impl=k)),
        ("oracle trimer extended", lambda k: brute_force_transitions(f_tri, extended=True, impl=k)),
        ("classic renz", lambda k: k.classic_edges(4, rm, pm)),
        ("classic 12 species x 20 reactions", lambda k: k.classic_edges(12, rm12, pm12)),
    ]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    impls = available()
    if "cython" not in impls:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
    names = sorted(impls)
    print(f"{'case':36}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases():
        best = {}
        for n in names:
            k = impls[n]
            fn(k)  # warm-up
            best[n] = min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat))
        row = f"{label:36}" + "".join(f"{best[n] * 1000:10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{best['python'] / best['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
