"""Command-line interface.

Exit codes: 0 success, 2 no convergence, 3 invalid input, 4 I/O failure.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .curvature import extended_curvatures
from .energy import TargetCurvature, energy_gradient, total_energy
from .errors import DiscreteYamabeError, TooManyVertices
from .flow import FlowParams, integrate_flow
from .obstruction import check_luo_condition
from .solver import SolveParams, minimize_energy
from .surface import in_conformal_domain

EXIT_OK = 0
EXIT_NOT_CONVERGED = 2
EXIT_INVALID = 3
EXIT_IO = 4


class _IOFailure(Exception):
    pass


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load(args):
    _, metric = fileio.parse_surface_file(_read(args.input))
    T = metric.triangulation
    n = T.vertex_count
    u = np.zeros(n)
    if getattr(args, "factor", None):
        u = fileio.parse_vector(_read(args.factor), n, "factor")
    target = TargetCurvature.constant(T)
    if getattr(args, "target", None):
        target = fileio.parse_target(_read(args.target), T)
    return metric, u, target


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {output}: {exc.strerror or exc}") from exc


def cmd_check(args):
    metric, _, _ = _load(args)
    T = metric.triangulation
    extra = {
        "vertex_count": T.vertex_count,
        "edge_count": T.n_edges,
        "face_count": T.n_faces,
        "euler_characteristic": T.euler_characteristic,
    }
    try:
        report = check_luo_condition(T)
    except TooManyVertices as exc:
        data = {"kind": "obstruction", "skipped": str(exc), **extra}
        data["input_digest"] = fileio.surface_digest(metric)
        _emit(fileio.dump_json(data), args.output)
        return EXIT_OK
    _emit(fileio.format_report(report, metric, **extra), args.output)
    return EXIT_OK


def cmd_curvature(args):
    metric, u, _ = _load(args)
    K = extended_curvatures(metric, u)
    domain = in_conformal_domain(metric, u)
    _emit(
        fileio.format_report(K, metric, in_domain=domain.in_domain, min_margin=domain.min_margin),
        args.output,
    )
    return EXIT_OK


def cmd_energy(args):
    metric, u, target = _load(args)
    value = total_energy(metric, u, target).value
    grad = energy_gradient(metric, u, target)
    data = {
        "kind": "energy",
        "target_kind": target.kind,
        "energy": value,
        "gradient_inf": float(np.abs(grad).max()),
        "gradient": [float(g) for g in grad],
        "input_digest": fileio.surface_digest(metric),
    }
    _emit(fileio.dump_json(data), args.output)
    return EXIT_OK


def cmd_flow(args):
    metric, u, target = _load(args)
    params = FlowParams(
        dt=args.dt,
        adaptive=args.adaptive,
        tol=args.tol,
        max_steps=args.max_steps,
        trace_every=args.trace_every,
    )
    result = integrate_flow(metric, u, target, params)
    if args.trace:
        try:
            fileio.write_trace(result.trace, args.trace)
        except OSError as exc:
            raise _IOFailure(f"cannot write {args.trace}: {exc.strerror or exc}") from exc
    _emit(fileio.format_report(result, metric, target_kind=target.kind), args.output)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def cmd_solve(args):
    metric, u, target = _load(args)
    params = SolveParams(grad_tol=args.tol, max_iters=args.max_iters)
    result = minimize_energy(metric, u, target, params)
    _emit(fileio.format_report(result, metric, target_kind=target.kind), args.output)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="discrete-yamabe",
        description="Discrete conformal factors, curvature and Yamabe flow on closed surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, factor=True, target=True, factor_required=False):
        p.add_argument("--input", required=True, help="surface file (JSON)")
        if factor:
            p.add_argument("--factor", required=factor_required, help="conformal factor (JSON array)")
        if target:
            p.add_argument("--target", help="prescribed curvature (JSON array); default constant")
        p.add_argument("--output", help="write the report here instead of stdout")

    p = sub.add_parser("check", help="validate a surface and test the subset condition")
    common(p, factor=False, target=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("curvature", help="extended curvature and Gauss-Bonnet defect")
    common(p, target=False)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("energy", help="normalized energy and gradient norm")
    common(p, factor_required=True)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("flow", help="integrate the extended Yamabe flow")
    common(p)
    p.add_argument("--dt", type=float, default=0.1)
    p.add_argument("--adaptive", action="store_true", help="energy-monotone step control")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-steps", type=int, default=100_000)
    p.add_argument("--trace-every", type=int, default=1)
    p.add_argument("--trace", help="write the trace as CSV")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("solve", help="minimize the energy (Newton with fallback)")
    common(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=int, default=200)
    p.set_defaults(func=cmd_solve)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DiscreteYamabeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
