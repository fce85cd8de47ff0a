"""Command-line entry point: ``fobnn-sat <command> MODEL [options]``.

Primary output goes to stdout (or ``-o``) and is deterministic.  Timings and
the solver backend are reported on stderr.  Exit codes: 0 success, 1 an
analysis guard was hit, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from importlib import metadata as importlib_metadata

from . import kernels
from .classic import classic_stg
from .encode import emit_dimacs, encode
from .errors import GuardExceeded, InputError
from .flatten import flatten
from .fobnn import build_odes
from .frontend import load_network
from .graph import compare, format_state, parse_state, state_key, to_dot, to_json
from .network import render_native
from .pipeline import build_formula, mass_action_species
from .signs import Sign
from .sat import (
    DEFAULT_LOOP_LIMIT,
    MAX_STG_SPECIES,
    build_stg,
    enumerate_transitions,
    open_session,
    search_fixed_points,
)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fobnn-sat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="reaction network file (.rn native or .xml CoreSBML)")
    common.add_argument("--input-format", choices=("native", "coresbml"), default=None)
    common.add_argument("-o", "--output", default=None, help="write primary output here instead of stdout")

    analysis = argparse.ArgumentParser(add_help=False)
    analysis.add_argument(
        "--mass-action",
        default="off",
        metavar="auto|all|off|X,Y",
        help="add X' >= X for these species (default off)",
    )
    analysis.add_argument("--constraints", default=None, metavar="FILE", help="extra constraint file")
    analysis.add_argument("--derivatives-zero", action="store_true", help="add dX = 0 for every species")

    guarded = argparse.ArgumentParser(add_help=False)
    guarded.add_argument("--species-guard", type=_positive, default=MAX_STG_SPECIES)
    guarded.add_argument("--force", action="store_true", help="ignore the species guard")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("dot", "json"), default="dot")

    c = sub.add_parser("parse", parents=[common], help="validate and echo a model")
    c.add_argument("--odes", action="store_true", help="also print the ODE system")
    sub.add_parser("encode", parents=[common, analysis], help="emit DIMACS CNF")
    c = sub.add_parser("transitions", parents=[common, analysis], help="enumerate transitions")
    c.add_argument("--from", dest="start", default=None, metavar="STATE", help="e.g. S=+,E=0")
    c.add_argument("--limit", type=_positive, default=None)
    c.add_argument("--extended", action="store_true", help="include derivative signs in states")
    c = sub.add_parser("stg", parents=[common, analysis, guarded, fmt], help="full transition graph")
    c.add_argument("--extended", action="store_true")
    c = sub.add_parser("fixedpoints", parents=[common, analysis], help="fixed points by SAT")
    c.add_argument("--loop-limit", type=_positive, default=DEFAULT_LOOP_LIMIT)
    sub.add_parser("classic-stg", parents=[common, guarded, fmt], help="classic boolean semantics graph")
    sub.add_parser(
        "compare", parents=[common, analysis, guarded], help="FOBNN graph against the classic graph"
    )
    return p


class _Clock:
    def __init__(self, err):
        self.err = err

    @contextmanager
    def __call__(self, label: str):
        t0 = time.perf_counter()
        yield
        self.err.write(f"[time] {label}: {(time.perf_counter() - t0) * 1000:.2f} ms\n")


def _pysat_version() -> str:
    try:
        return importlib_metadata.version("python-sat")
    except importlib_metadata.PackageNotFoundError:
        return "unknown"


def _formula(args, rn):
    constraints = None
    if args.constraints:
        with open(args.constraints, encoding="utf-8") as fh:
            constraints = fh.read()
    return build_formula(
        rn,
        mass_action=args.mass_action,
        constraints=constraints,
        derivatives_zero=args.derivatives_zero,
    )


def _metadata(args, rn, session) -> dict:
    return {
        "model": rn.name,
        "mass_action": mass_action_species(rn, args.mass_action),
        "constraints": bool(args.constraints),
        "derivatives_zero": args.derivatives_zero,
        "backend": session.backend,
        "python_sat": _pysat_version(),
    }


def _session(args, rn, clock, err):
    f = _formula(args, rn)
    with clock("encode"):
        cnf, reg = encode(flatten(f))
    try:
        session = open_session(cnf, reg)
    except ValueError as e:
        raise InputError(str(e)) from None
    err.write(f"[backend] {session.backend} (python-sat {_pysat_version()})\n")
    return session


def _check_guard(args, n: int) -> None:
    if n > args.species_guard and not args.force:
        raise GuardExceeded(f"{n} species exceeds the guard of {args.species_guard} (use --force)")


def _run(args, out, err) -> None:
    clock = _Clock(err)
    with clock("parse"):
        rn = load_network(args.model, args.input_format)
    cmd = args.command

    if cmd == "parse":
        out.write(render_native(rn))
        if args.odes:
            out.write("\n" + str(build_odes(rn)) + "\n")
        return

    if cmd == "encode":
        f = _formula(args, rn)
        with clock("encode"):
            cnf, reg = encode(flatten(f))
        out.write(emit_dimacs(cnf, reg))
        return

    if cmd == "classic-stg":
        _check_guard(args, len(rn.species))
        err.write(f"[kernels] {kernels.BACKEND}\n")
        with clock("classic-stg"):
            g = classic_stg(rn, max_species=len(rn.species))
        out.write(to_dot(g) if args.format == "dot" else to_json(g))
        return

    if cmd in ("stg", "compare"):
        _check_guard(args, len(rn.species))
    session = _session(args, rn, clock, err)
    with session:
        if cmd == "transitions":
            start = None
            if args.start is not None:
                try:
                    start = parse_state(args.start, rn.species)
                except ValueError as e:
                    raise InputError(f"--from: {e}") from None
                if Sign.NEG in start:
                    raise InputError("--from: species signs are + or 0")
            t0 = time.perf_counter()
            ts = enumerate_transitions(session, limit=args.limit, start=start, extended=args.extended)
            total = (time.perf_counter() - t0) * 1000
            err.write(f"[time] transitions: {total:.2f} ms for {len(ts)}")
            err.write(f" (mean {total / len(ts):.2f} ms)\n" if ts else "\n")

            def fmt(s):
                return format_state(s, rn.species, args.extended)

            for u, v in sorted(ts, key=lambda e: (state_key(e[0]), state_key(e[1]))):
                out.write(f"{fmt(u)} -> {fmt(v)}\n")
        elif cmd == "stg":
            with clock("stg"):
                g = build_stg(session, extended=args.extended, force=True, metadata=_metadata(args, rn, session))
            out.write(to_dot(g) if args.format == "dot" else to_json(g))
        elif cmd == "fixedpoints":
            with clock("fixedpoints"):
                res = search_fixed_points(session, loop_limit=args.loop_limit)
            if not res.exhausted:
                err.write(f"[warn] loop limit {args.loop_limit} reached; the list may be incomplete\n")
            for s in sorted(res.fixed_points, key=state_key):
                out.write(format_state(s, rn.species) + "\n")
        else:
            with clock("stg"):
                g1 = build_stg(session, force=True, metadata=_metadata(args, rn, session))
            with clock("classic-stg"):
                g2 = classic_stg(rn, max_species=len(rn.species))
            report = compare(g1, g2).to_dict(rn.species)
            out.write(json.dumps({"first": g1.kind, "second": g2.kind, **report}, indent=2, ensure_ascii=False) + "\n")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    err = sys.stderr
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as out:
                _run(args, out, err)
        else:
            _run(args, sys.stdout, err)
    except GuardExceeded as e:
        err.write(f"fobnn-sat: guard: {e}\n")
        return 1
    except (InputError, OSError) as e:
        err.write(f"fobnn-sat: error: {e}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
