"""Command-line interface.

One binary, six subcommands::

    framekit check          verify frame / K-frame / controlled properties
    framekit dual           construct the dual system on range(K)
    framekit solve          invert the frame operator iteratively
    framekit bench          plain-vs-controlled Richardson benchmark grid
    framekit paper-example  the built-in C^3 worked example
    framekit gen            write a generated instance to JSON files

Exit codes: 0 the requested property holds / the run succeeded; 1 input
error (unreadable or malformed files, bad flags); 2 the property fails or a
mathematical precondition is violated; 3 the solver hit its iteration cap
(outputs are still written).

Every JSON report embeds a run manifest (command, inputs, seed, tolerances,
outputs, exit code).  Reports carry a wall-clock timestamp unless
``--deterministic`` is given, in which case reruns are byte-identical.
Input validation never produces a stack trace — errors come back as
``file: position: message`` diagnostics on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

import numpy as np

from .bench import CONTROLLER_STRATEGIES, run_benchmark, rows_to_csv
from .controlled import controlled_kframe_check, identity_controller, make_controller
from .errors import (
    InvalidParametersError,
    NotPositiveDefiniteError,
    ParseError,
    ToolkitError,
)
from .frames import FrameSequence, frame_bounds, frame_operator, synthesis
from .instances import INSTANCE_KINDS, c3_example, generate_instance
from .kframes import interchange_dual, kframe_check
from .operators import DEFAULT_TOL, Tolerances, positive_definite_bounds
from .serialize import (
    frame_to_obj,
    load_frame,
    load_operator,
    load_vector,
    operator_to_obj,
    save_frame,
    save_vector,
    vector_to_obj,
)
from .solvers import SolverConfig, controlled_richardson_solve, richardson_solve

__all__ = ["main", "entry"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PROPERTY = 2
EXIT_NOT_CONVERGED = 3


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors follow the exit-code contract (1)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _tolerances(args) -> Tolerances:
    return Tolerances(rel_eq=args.tol_rel, psd_slack=args.tol_psd, rank_rel=args.rank_rel)


def _manifest(args, command: str, inputs: dict, outputs: list, exit_code: int) -> dict:
    manifest = {
        "command": command,
        "inputs": inputs,
        "seed": args.seed,
        "tolerances": {
            "rel_eq": args.tol_rel,
            "psd_slack": args.tol_psd,
            "rank_rel": args.rank_rel,
        },
        "outputs": list(outputs),
        "exit_code": exit_code,
    }
    if not args.deterministic:
        manifest["timestamp"] = datetime.now(timezone.utc).isoformat()
    return manifest


def _emit(args, report: dict, lines: list) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _maybe_vector_obj(v) -> dict | None:
    return None if v is None else vector_to_obj(v)


def _kframe_report_obj(report) -> dict:
    return {
        "is_bessel": report.is_bessel,
        "is_kframe": report.is_kframe,
        "lower_opt": report.lower_opt,
        "upper_opt": report.upper_opt,
        "rank_k": report.rank_k,
        "vacuous": report.vacuous,
        "witness": _maybe_vector_obj(report.witness),
    }


def _controlled_report_obj(report) -> dict:
    return {
        "commutes_with_k": report.commutes_with_k,
        "form_is_real": report.form_is_real,
        "is_controlled_kframe": report.is_controlled_kframe,
        "lower_opt": report.lower_opt,
        "upper_opt": report.upper_opt,
        "rank_k": report.rank_k,
        "vacuous": report.vacuous,
    }


def _trace_obj(trace) -> dict:
    return {
        "iterations": trace.iterations,
        "converged": trace.converged,
        "empirical_rate": trace.empirical_rate,
        "kappa_report": trace.kappa_report,
        "final_residual": trace.residuals[-1] if trace.residuals else 0.0,
        "residuals": list(trace.residuals),
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    tol = _tolerances(args)
    frame = load_frame(args.frame)
    inputs = {"frame": args.frame}

    fb = frame_bounds(frame, tol)
    report = {
        "frame": {"lower": fb.lower, "upper": fb.upper, "is_frame": fb.is_frame},
    }
    lines = [
        f"frame: {frame.count} vectors in C^{frame.dim}; "
        f"bounds lower={fb.lower} upper={fb.upper} -> {'frame' if fb.is_frame else 'not a frame'}"
    ]
    holds = fb.is_frame

    K = None
    if args.k is not None:
        K = load_operator(args.k)
        inputs["k"] = args.k
        krep = kframe_check(frame, K, tol)
        report["kframe"] = _kframe_report_obj(krep)
        verdict = "K-frame" if krep.is_kframe else "not a K-frame"
        lines.append(
            f"kframe: rank(K)={krep.rank_k}; optimal bounds "
            f"({krep.lower_opt}, {krep.upper_opt}) -> {verdict}"
            + (" (vacuous: K = 0)" if krep.vacuous else "")
        )
        holds = krep.is_kframe

    if args.c is not None:
        C = load_operator(args.c)
        inputs["c"] = args.c
        ctrl = make_controller(C, tol)
        if K is None:
            K = np.eye(frame.dim, dtype=np.complex128)
        crep = controlled_kframe_check(frame, K, ctrl, tol)
        report["controlled"] = _controlled_report_obj(crep)
        verdict = "controlled K-frame" if crep.is_controlled_kframe else "not a controlled K-frame"
        lines.append(
            f"controlled: optimal bounds ({crep.lower_opt}, {crep.upper_opt}) -> {verdict}"
        )
        holds = crep.is_controlled_kframe

    exit_code = EXIT_OK if holds else EXIT_PROPERTY
    report["manifest"] = _manifest(args, "check", inputs, [], exit_code)
    _emit(args, report, lines)
    return exit_code


def cmd_dual(args) -> int:
    tol = _tolerances(args)
    frame_g = load_frame(args.g)
    K = load_operator(args.k)
    inputs = {"g": args.g, "k": args.k}
    frame_f = None
    if args.f is not None:
        frame_f = load_frame(args.f)
        inputs["f"] = args.f

    dual = interchange_dual(frame_g, K, tol, frame_f=frame_f)
    if frame_f is None:
        frame_f = FrameSequence(np.asarray(K, dtype=np.complex128) @ frame_g.matrix)

    # Reconstruction residuals on range(K): f = sum <f,h_n> f_n = sum <f,f_n> h_n.
    rng = np.random.default_rng(args.seed)
    dim = frame_g.dim
    worst_dual_side = 0.0
    worst_frame_side = 0.0
    for _ in range(args.samples):
        f = np.asarray(K, dtype=np.complex128) @ (rng.normal(size=dim) + 1j * rng.normal(size=dim))
        norm = np.linalg.norm(f)
        if norm == 0.0:
            continue
        rec1 = synthesis(frame_f, dual.matrix.conj().T @ f)
        rec2 = synthesis(dual, frame_f.matrix.conj().T @ f)
        worst_dual_side = max(worst_dual_side, float(np.linalg.norm(f - rec1) / norm))
        worst_frame_side = max(worst_frame_side, float(np.linalg.norm(f - rec2) / norm))

    save_frame(dual, args.out)
    exit_code = EXIT_OK
    report = {
        "dual": frame_to_obj(dual),
        "reconstruction": {
            "samples": args.samples,
            "max_rel_residual_coefficients_in_dual": worst_dual_side,
            "max_rel_residual_coefficients_in_frame": worst_frame_side,
        },
        "manifest": _manifest(args, "dual", inputs, [args.out], exit_code),
    }
    _emit(args, report, [
        f"dual system with {dual.count} vectors written to {args.out}",
        f"max relative reconstruction residual (coefficients in dual):  {worst_dual_side:.3e}",
        f"max relative reconstruction residual (coefficients in frame): {worst_frame_side:.3e}",
    ])
    return exit_code


def cmd_solve(args) -> int:
    tol = _tolerances(args)
    frame = load_frame(args.frame)
    g = load_vector(args.g)
    inputs = {"frame": args.frame, "g": args.g}

    fb = frame_bounds(frame, tol)
    if not fb.is_frame:
        raise NotPositiveDefiniteError(
            "the frame operator is singular: this solver inverts S on the whole space "
            "and does not solve restricted systems on range(K)"
        )
    S = frame_operator(frame)
    bounds = positive_definite_bounds(S, tol)

    config = SolverConfig(
        relaxation=args.relaxation,
        residual_tol=args.residual_tol,
        max_iter=args.max_iter,
        seed=args.seed,
    )
    if args.c is not None:
        ctrl = make_controller(load_operator(args.c), tol)
        inputs["c"] = args.c
        f, trace = controlled_richardson_solve(frame, ctrl, g, config, tol=tol)
    else:
        f, trace = richardson_solve(S, g, bounds, config, tol)

    save_vector(f, args.out)
    exit_code = EXIT_OK if trace.converged else EXIT_NOT_CONVERGED
    report = {
        "solution": vector_to_obj(f),
        "trace": _trace_obj(trace),
        "manifest": _manifest(args, "solve", inputs, [args.out], exit_code),
    }
    status = "converged" if trace.converged else "hit the iteration cap"
    _emit(args, report, [
        f"{status} after {trace.iterations} iterations "
        f"(final relative residual {report['trace']['final_residual']:.3e}, "
        f"empirical rate {trace.empirical_rate:.6f})",
        f"solution written to {args.out}",
    ])
    return exit_code


def cmd_bench(args) -> int:
    tol = _tolerances(args)
    config = SolverConfig(residual_tol=args.residual_tol, max_iter=args.max_iter, seed=args.seed)
    cond_targets = [None if t.lower() in ("na", "none") else float(t) for t in args.cond_targets]
    rows = run_benchmark(
        kinds=args.kinds,
        dims=args.dims,
        cond_targets=cond_targets,
        trials=args.trials,
        config=config,
        controller=args.controller,
        workers=args.workers,
        tol=tol,
    )
    csv_text = rows_to_csv(rows)
    with open(args.out, "w", encoding="utf-8") as handle:
        handle.write(csv_text)

    converged = sum(1 for row in rows if row.converged_plain and row.converged_controlled)
    speedups = sorted(row.speedup for row in rows if np.isfinite(row.speedup))
    median = speedups[len(speedups) // 2] if speedups else float("nan")
    exit_code = EXIT_OK  # non-converged rows are data, not failures
    report = {
        "rows": len(rows),
        "converged_rows": converged,
        "median_speedup": median,
        "csv": args.out,
        "manifest": _manifest(
            args, "bench",
            {"kinds": list(args.kinds), "dims": list(args.dims),
             "cond_targets": [t if t is None else float(t) for t in cond_targets],
             "trials": args.trials, "controller": args.controller, "workers": args.workers},
            [args.out], exit_code,
        ),
    }
    _emit(args, report, [
        f"{len(rows)} rows written to {args.out} "
        f"({converged} fully converged, median speedup {median:.3g})",
    ])
    return exit_code


def cmd_paper_example(args) -> int:
    tol = _tolerances(args)
    frame, K, _ = c3_example()
    basis = np.eye(3, dtype=np.complex128)

    # (a) K f = sum <f, e_n> f_n for every f — an exact matrix identity.
    forward = frame.matrix @ basis.conj().T
    forward_defect = float(np.linalg.norm(forward - K))
    forward_ok = forward_defect <= 1e-15

    # (b) the positions cannot be swapped: at f = e3 the swapped sum is 0 while K e3 = e2.
    swapped_at_e3 = synthesis(FrameSequence(basis), frame.matrix.conj().T @ basis[:, 2])
    gap = K @ basis[:, 2] - swapped_at_e3
    swapped_value_norm = float(np.linalg.norm(swapped_at_e3))
    gap_norm = float(np.linalg.norm(gap))
    swap_fails = swapped_value_norm == 0.0 and abs(gap_norm - 1.0) <= 1e-12

    # (c) frame operator and optimal bounds.
    S = frame_operator(frame)
    s_defect = float(np.linalg.norm(S - np.diag([2.0, 1.0, 0.0])))
    report_k = kframe_check(frame, K, tol)
    bounds_ok = (
        report_k.is_kframe
        and abs(report_k.lower_opt - 1.0) <= 1e-12
        and abs(report_k.upper_opt - 2.0) <= 1e-12
    )

    all_ok = forward_ok and swap_fails and s_defect == 0.0 and bounds_ok
    exit_code = EXIT_OK if all_ok else EXIT_PROPERTY
    report = {
        "k": operator_to_obj(K),
        "frame": frame_to_obj(frame),
        "forward_identity_defect": forward_defect,
        "swapped_sum_norm_at_e3": swapped_value_norm,
        "swap_gap_norm": gap_norm,
        "frame_operator_defect": s_defect,
        "kframe": _kframe_report_obj(report_k),
        "all_assertions_hold": all_ok,
        "manifest": _manifest(args, "paper-example", {}, [], exit_code),
    }
    _emit(args, report, [
        "worked example in C^3: K e1 = e1, K e2 = e1, K e3 = e2; family {K e_n} = {e1, e1, e2}",
        f"  forward identity K f = sum <f, e_n> f_n:   defect {forward_defect:.1e} "
        f"-> {'holds' if forward_ok else 'FAILS'}",
        f"  swapped sum at e3 is {swapped_value_norm:g}, but K e3 = e2 "
        f"(gap norm {gap_norm:g}) -> the roles of the two families cannot be interchanged",
        f"  frame operator equals diag(2, 1, 0) exactly (defect {s_defect:g})",
        f"  optimal K-frame bounds ({report_k.lower_opt:g}, {report_k.upper_opt:g}) "
        f"-> {'as expected (1, 2)' if bounds_ok else 'UNEXPECTED'}",
        f"verdict: {'all assertions hold' if all_ok else 'ASSERTION FAILURE'}",
    ])
    return exit_code


def cmd_gen(args) -> int:
    tol = _tolerances(args)
    frame, K, ctrl = generate_instance(
        args.kind, dim=args.dim, count=args.count,
        cond_target=args.cond_target, seed=args.seed, tol=tol,
    )
    frame_path = f"{args.out_prefix}-frame.json"
    k_path = f"{args.out_prefix}-k.json"
    c_path = f"{args.out_prefix}-c.json"
    save_frame(frame, frame_path)
    with open(k_path, "w", encoding="utf-8") as handle:
        json.dump(operator_to_obj(K), handle, indent=2, sort_keys=True)
        handle.write("\n")
    with open(c_path, "w", encoding="utf-8") as handle:
        json.dump(operator_to_obj(ctrl.matrix), handle, indent=2, sort_keys=True)
        handle.write("\n")

    outputs = [frame_path, k_path, c_path]
    exit_code = EXIT_OK
    report = {
        "kind": args.kind,
        "dim": frame.dim,
        "count": frame.count,
        "files": {"frame": frame_path, "k": k_path, "c": c_path},
        "manifest": _manifest(
            args, "gen",
            {"kind": args.kind, "dim": args.dim, "count": args.count,
             "cond_target": args.cond_target},
            outputs, exit_code,
        ),
    }
    _emit(args, report, [f"wrote {frame_path}, {k_path}, {c_path}"])
    return exit_code


# ---------------------------------------------------------------------------
# parser assembly


def _build_parser() -> _Parser:
    shared = _Parser(add_help=False)
    group = shared.add_argument_group("shared options")
    group.add_argument("--tol-rel", type=float, default=DEFAULT_TOL.rel_eq,
                       help="relative equality tolerance (default %(default)g)")
    group.add_argument("--tol-psd", type=float, default=DEFAULT_TOL.psd_slack,
                       help="positivity slack for operator inequalities (default %(default)g)")
    group.add_argument("--rank-rel", type=float, default=None,
                       help="relative rank cutoff (default: 1e-12 * dim)")
    group.add_argument("--seed", type=int, default=0,
                       help="base seed for all sampling (default %(default)s)")
    group.add_argument("--json", action="store_true",
                       help="emit a JSON report on stdout instead of text")
    group.add_argument("--deterministic", action="store_true",
                       help="omit the timestamp so identical runs are byte-identical")

    parser = _Parser(
        prog="framekit",
        description="Finite-frame toolkit: property checks, dual systems, "
                    "iterative solves and preconditioning benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[shared],
                       help="verify frame / K-frame / controlled K-frame properties")
    p.add_argument("frame", help="frame JSON file")
    p.add_argument("--k", help="operator JSON file: check the K-frame property")
    p.add_argument("--c", help="controller JSON file: check the controlled property "
                               "(K defaults to the identity if --k is absent)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dual", parents=[shared],
                       help="construct the dual system h_n on range(K) and verify reconstruction")
    p.add_argument("--g", required=True, help="generating frame JSON file")
    p.add_argument("--k", required=True, help="operator JSON file")
    p.add_argument("--f", help="explicit frame F with K = F G* (default: {K g_n})")
    p.add_argument("--out", default="dual.json", help="output path (default %(default)s)")
    p.add_argument("--samples", type=int, default=100,
                   help="reconstruction test vectors in range(K) (default %(default)s)")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("solve", parents=[shared],
                       help="solve S f = g by (optionally controlled) Richardson iteration")
    p.add_argument("frame", help="frame JSON file")
    p.add_argument("--g", required=True, help="right-hand-side vector JSON file")
    p.add_argument("--c", help="controller JSON file: precondition the iteration")
    p.add_argument("--relaxation", type=float, default=None,
                   help="fixed relaxation (default: optimal 2/(A+B) from certified bounds)")
    p.add_argument("--residual-tol", type=float, default=1e-8,
                   help="relative residual stopping tolerance (default %(default)g)")
    p.add_argument("--max-iter", type=int, default=100_000,
                   help="iteration cap (default %(default)s)")
    p.add_argument("--out", default="solution.json", help="solution path (default %(default)s)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", parents=[shared],
                       help="plain vs controlled Richardson over an instance grid; writes CSV")
    p.add_argument("--kinds", nargs="+", default=["ill-conditioned"],
                   choices=list(INSTANCE_KINDS),
                   help="instance families (default: %(default)s)")
    p.add_argument("--dims", nargs="+", type=int, default=[32],
                   help="dimensions (default: %(default)s)")
    p.add_argument("--cond-targets", nargs="+", default=["1e4"],
                   help="condition targets; 'na' for families that ignore it (default: %(default)s)")
    p.add_argument("--trials", type=int, default=5,
                   help="trials per cell (default %(default)s)")
    p.add_argument("--controller", default="jacobi", choices=list(CONTROLLER_STRATEGIES),
                   help="controller strategy (default %(default)s)")
    p.add_argument("--workers", type=int, default=1,
                   help="thread-pool width; output is identical for any value (default %(default)s)")
    p.add_argument("--residual-tol", type=float, default=1e-8,
                   help="relative residual stopping tolerance (default %(default)g)")
    p.add_argument("--max-iter", type=int, default=200_000,
                   help="iteration cap (default %(default)s)")
    p.add_argument("--out", default="bench.csv", help="CSV path (default %(default)s)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("paper-example", parents=[shared],
                       help="reproduce the built-in C^3 worked example and assert its facts")
    p.set_defaults(func=cmd_paper_example)

    p = sub.add_parser("gen", parents=[shared],
                       help="generate an instance and write frame/K/controller JSON files")
    p.add_argument("--kind", default="commuting-family", choices=list(INSTANCE_KINDS),
                   help="instance family (default %(default)s)")
    p.add_argument("--dim", type=int, default=None, help="ambient dimension")
    p.add_argument("--count", type=int, default=None, help="number of vectors (default 2*dim)")
    p.add_argument("--cond-target", type=float, default=None,
                   help="condition of S for the ill-conditioned family")
    p.add_argument("--out-prefix", default="instance",
                   help="output prefix; writes <prefix>-{frame,k,c}.json (default %(default)s)")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse raises SystemExit for both --help (0) and usage errors (1 via _Parser).
        return int(exc.code or 0)

    print(
        f"tolerances: rel_eq={args.tol_rel:g} psd_slack={args.tol_psd:g} "
        f"rank_rel={'auto' if args.rank_rel is None else format(args.rank_rel, 'g')}; "
        f"seed={args.seed}",
        file=sys.stderr,
    )
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"framekit {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidParametersError as exc:
        print(f"framekit {args.command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"framekit {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ToolkitError as exc:
        print(f"framekit {args.command}: property violation: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(
                "witness vector: "
                + np.array2string(np.asarray(witness), precision=6, suppress_small=True),
                file=sys.stderr,
            )
        return EXIT_PROPERTY


def entry() -> None:
    """Console-script entry point."""
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
