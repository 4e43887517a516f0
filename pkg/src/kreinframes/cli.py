"""Command-line front end.

Exit codes: 0 the analysed property holds, 1 a valid run with a negative
verdict (not a J-frame, hypothesis fails), 2 input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Optional, Sequence

import numpy as np

from kreinframes import __version__
from kreinframes.checks import run_suite
from kreinframes.errors import HypothesisError, InputError, KreinError, NumericalError
from kreinframes.frames import esmeral_bounds, jframe_check, optimal_bounds
from kreinframes.io import (
    Problem,
    bounds_dict,
    canonical_json,
    exactness_dict,
    intersection_dict,
    jframe_dict,
    load_problem,
    projected_dict,
    sequence_dict,
    subsequence_dict,
    union_dict,
)
from kreinframes.kspace import make_krein_space, validate_symmetry
from kreinframes.sequences import exactness, frame_sequence_check, intersection_test, subsequence_frame_test
from kreinframes.subspace import j_complement, make_subspace
from kreinframes.transforms import project_family, union_families

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3


def _error_dict(exc: KreinError) -> dict:
    return {"error": type(exc).__name__, "message": str(exc)}


def _need(problem: Problem, attr: str, command: str):
    value = getattr(problem, attr)
    if value is None:
        raise InputError(f"'{command}' needs a '{attr}' entry in the input file")
    return value


def cmd_analyze(problem: Problem, args) -> tuple[dict, int]:
    rep = jframe_check(problem.space, problem.vectors, problem.tol)
    return jframe_dict(rep), EXIT_OK if rep.is_j_frame else EXIT_NEGATIVE


def cmd_bounds(problem: Problem, args) -> tuple[dict, int]:
    out: dict = {}
    code = EXIT_OK
    try:
        out["optimal"] = bounds_dict(optimal_bounds(problem.space, problem.vectors, problem.tol))
    except HypothesisError as exc:
        out["optimal"] = _error_dict(exc)
        code = EXIT_NEGATIVE
    if problem.symmetry is not None:
        sym = validate_symmetry(problem.space, problem.symmetry, problem.tol)
        out["symmetry"] = {
            "is_involution": sym.is_involution,
            "is_j_selfadjoint": sym.is_j_selfadjoint,
            "is_positivizing": sym.is_positivizing,
            "is_valid": sym.is_valid,
        }
        if sym.is_valid:
            eb = esmeral_bounds(problem.space, sym, problem.vectors)
            out["esmeral"] = {"A": eb.A, "B": eb.B, "spans": eb.spans}
        else:
            out["esmeral"] = None
            code = EXIT_NEGATIVE
    return out, code


def cmd_project(problem: Problem, args) -> tuple[dict, int]:
    space = problem.space
    M = make_subspace(space, _need(problem, "subspace", "project"), problem.tol)
    try:
        on_m = project_family(space, M, problem.vectors, problem.tol)
        on_c = project_family(space, j_complement(space, M), problem.vectors, problem.tol)
    except HypothesisError as exc:
        return {"subspace_regular": False, **_error_dict(exc)}, EXIT_NEGATIVE
    out = {"subspace_regular": True, "onto_subspace": projected_dict(on_m), "onto_complement": projected_dict(on_c)}
    return out, EXIT_OK if on_m.is_j_frame and on_c.is_j_frame else EXIT_NEGATIVE


def cmd_merge(problem: Problem, args) -> tuple[dict, int]:
    if not args.input2:
        raise InputError("'merge' needs --input2 with the family for the complement")
    other = load_problem(args.input2)
    if other.space.dim != problem.space.dim or not np.allclose(other.space.gram, problem.space.gram, rtol=0, atol=0):
        raise InputError("--input2 must use the same Gram matrix as --input")
    M = make_subspace(problem.space, _need(problem, "subspace", "merge"), problem.tol)
    try:
        rep = union_families(problem.space, M, problem.vectors, other.vectors, problem.tol)
    except HypothesisError as exc:
        return _error_dict(exc), EXIT_NEGATIVE
    return union_dict(rep), EXIT_OK if rep.holds else EXIT_NEGATIVE


def cmd_sequence(problem: Problem, args) -> tuple[dict, int]:
    rep = frame_sequence_check(problem.space, problem.vectors, problem.tol)
    out = {"sequence": sequence_dict(rep)}
    if problem.split is not None:
        try:
            out["span_criterion"] = subsequence_dict(
                subsequence_frame_test(problem.space, problem.vectors, problem.split, problem.tol)
            )
        except HypothesisError as exc:
            out["span_criterion"] = _error_dict(exc)
        out["intersection"] = intersection_dict(
            intersection_test(problem.space, problem.vectors, problem.split, problem.tol)
        )
    return out, EXIT_OK if rep.is_frame_sequence else EXIT_NEGATIVE


def cmd_exact(problem: Problem, args) -> tuple[dict, int]:
    try:
        rep = exactness(problem.space, problem.vectors, args.depth, problem.tol)
    except HypothesisError as exc:
        return _error_dict(exc), EXIT_NEGATIVE
    return exactness_dict(rep), EXIT_OK


def _signature(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected N+,N- such as 3,2") from None
    return a, b


def cmd_fuzz(args) -> tuple[dict, int]:
    dim = args.dim
    sig = args.sig if args.sig is not None else ((dim + 1) // 2, dim // 2)
    if sig[0] < 0 or sig[1] < 0 or sum(sig) != dim:
        raise InputError(f"signature {sig} does not fit dimension {dim}")
    result = run_suite(args.trials, dim, sig, args.seed, args.samples)
    n_viol = len(result["violations"])
    out = {
        "config": {"trials": args.trials, "dim": dim, "signature": list(sig), "seed": args.seed, "samples": args.samples},
        "counts": result["counts"],
        "violations": result["violations"],
        "total_violations": n_viol,
    }
    return out, EXIT_OK if n_viol == 0 else EXIT_NEGATIVE


COMMANDS = {
    "analyze": cmd_analyze,
    "bounds": cmd_bounds,
    "project": cmd_project,
    "merge": cmd_merge,
    "sequence": cmd_sequence,
    "exact": cmd_exact,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kreinframes", description="J-frames in finite-dimensional Krein spaces.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, metavar="PATH")
        p.add_argument("--output", metavar="PATH", help="report file (default: stdout)")
        p.add_argument("--tol", type=float, help="override the tolerance from the input file")
        p.add_argument("--quiet", action="store_true", help="no summary line on stderr")
        if name == "merge":
            p.add_argument("--input2", metavar="PATH", help="family for the J-orthogonal complement")
        if name == "exact":
            p.add_argument("--depth", type=int, default=3)
    p = sub.add_parser("fuzz")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--sig", type=_signature, metavar="N+,N-")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--quiet", action="store_true")
    return parser


def _summary(command: str, result: dict, code: int) -> str:
    verdict = {EXIT_OK: "holds", EXIT_NEGATIVE: "fails"}.get(code, "error")
    if command == "fuzz":
        return f"fuzz: {result['total_violations']} violations over {result['config']['trials']} trials"
    if command == "analyze":
        reasons = ", ".join(result["failure_reasons"]) or "none"
        return f"analyze: is_j_frame={result['is_j_frame']} (failures: {reasons})"
    return f"{command}: {verdict}"


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fuzz":
            if args.trials < 1 or args.samples < 1 or args.dim < 1:
                raise InputError("--trials, --samples and --dim must be positive")
            result, code = cmd_fuzz(args)
            header = {"input_digest": None, "tol": None}
        else:
            problem = load_problem(args.input)
            if args.tol is not None:
                problem = _with_tol(problem, args.tol)
            result, code = COMMANDS[args.command](problem, args)
            header = {"input_digest": problem.digest, "tol": problem.tol}
    except InputError as exc:
        print(f"kreinframes: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"kreinframes: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except KreinError as exc:
        print(f"kreinframes: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    report = {
        "tool": "kreinframes",
        "version": __version__,
        "command": args.command,
        "exit_code": code,
        "result": result,
        **header,
    }
    text = canonical_json(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.quiet:
        print(_summary(args.command, result, code), file=sys.stderr)
    return code


def _with_tol(problem: Problem, tol: float) -> Problem:
    if not tol > 0:
        raise InputError("--tol must be positive")
    return replace(problem, space=make_krein_space(problem.space.gram, tol), tol=tol)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
