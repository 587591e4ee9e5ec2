"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .errors import CoherenceLabError
from .field import FieldConfig
from .fock import DEFAULT_DIM
from .scalar import scalar_trace
from .states import build_state
from .stokes import stokes_params
from .traceio import FORMATS, load_state_spec, trace_csv, trace_json, write_trace
from .vector import vector_trace
from .verify import fig2_records, run_verification, theta_grid

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3
DIM_RANGE = (4, 256)
DIM_ENV = "COHERENCE_LAB_DIM"


def _dim(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid dimension {text!r}")
    if not DIM_RANGE[0] <= value <= DIM_RANGE[1]:
        raise argparse.ArgumentTypeError(f"dimension must lie in {list(DIM_RANGE)}, got {value}")
    return value


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid count {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"count must be >= 1, got {value}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _complex(text):
    try:
        if "," in text:
            re_, im_ = text.split(",")
            return complex(float(re_), float(im_))
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid complex number {text!r}")


def _theta_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid theta list {text!r}")


def _default_dim():
    env = os.environ.get(DIM_ENV)
    if env is None:
        return DEFAULT_DIM
    try:
        return _dim(env)
    except argparse.ArgumentTypeError:
        return DEFAULT_DIM


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherence-lab",
        description="Coherence and Stokes-operator uncertainty on truncated Fock spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def field_opts(p, dim_default=None):
        p.add_argument("--dim", type=_dim, default=dim_default,
                       help=f"Fock levels per mode (default {DEFAULT_DIM}, or ${DIM_ENV})")
        p.add_argument("--C", dest="C", type=_complex, default=1 + 0j,
                       help="field amplitude constant, e.g. 1, 0.5+0.5j or 0.5,0.5")

    def grid_opts(p):
        p.add_argument("--theta-start", type=float, default=0.0)
        p.add_argument("--theta-stop", type=float, default=2 * math.pi)
        p.add_argument("--theta-count", type=_positive, default=256)
        p.add_argument("--theta", type=_theta_list, help="explicit comma-separated phases (overrides the grid)")

    def output_opts(p, formats=FORMATS):
        p.add_argument("--format", choices=formats, default="csv")
        p.add_argument("--out", help="output path (csv/json default to stdout)")
        p.add_argument("--figure", help="also render the phase-space figure to this path")

    for name, help_ in (("scalar-trace", "scalar coherence over a phase grid"),
                        ("vector-trace", "coherence Stokes parameters over a phase grid")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--state", required=True, help="JSON state spec (inline or path)")
        field_opts(p)
        grid_opts(p)
        output_opts(p)

    p = sub.add_parser("stokes", help="one-point Stokes parameters and standard deviations")
    p.add_argument("--state", required=True, help="JSON state spec (inline or path)")
    field_opts(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run the seeded verification suite")
    field_opts(p)
    p.add_argument("--trials", type=_positive, default=500)
    p.add_argument("--seed", type=_seed, default=42)

    p = sub.add_parser("fig2", help="phase-space dataset for |1>_h |0>_v")
    field_opts(p, dim_default=8)
    p.add_argument("--theta-count", type=_positive, default=256)
    output_opts(p)
    return parser


def _grid(args):
    if args.theta:
        return args.theta
    return list(theta_grid(args.theta_count, args.theta_start, args.theta_stop))


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _output(records, args, layout="long"):
    if args.format in ("csv", "json") and not args.out:
        _emit(trace_csv(records, layout) if args.format == "csv" else trace_json(records), None)
    elif not args.out:
        raise CoherenceLabError(f"--out is required for format {args.format}")
    else:
        write_trace(records, args.format, args.out, layout)
    if args.figure:
        ext = os.path.splitext(args.figure)[1].lstrip(".").lower() or "svg"
        write_trace(records, ext if ext in ("svg", "png", "pdf") else "svg", args.figure)


def _state(args, n_modes):
    spec = load_state_spec(args.state, args.dim)
    if spec.modes != n_modes:
        raise CoherenceLabError(f"{args.command} needs a {n_modes}-mode state, got {spec.modes}-mode")
    return build_state(spec, args.dim)


def _dispatch(args) -> int:
    if args.dim is None:
        args.dim = _default_dim()
    cfg = FieldConfig(args.C)
    if args.command == "scalar-trace":
        _output(scalar_trace(_state(args, 1), cfg, _grid(args)), args)
    elif args.command == "vector-trace":
        _output(vector_trace(_state(args, 2), cfg, _grid(args)), args)
    elif args.command == "stokes":
        res = stokes_params(_state(args, 2), cfg)
        if args.format == "json":
            text = json.dumps({"S": [float(s.real) for s in res.S], "dS": [float(d) for d in res.dS]}) + "\n"
        else:
            text = "n,S,dS\n" + "".join(
                f"{n},{format(float(res.S[n].real), '.17g')},{format(float(res.dS[n]), '.17g')}\n"
                for n in range(4)
            )
        _emit(text, args.out)
    elif args.command == "verify":
        report = run_verification(args.dim, args.trials, args.seed, args.C)
        sys.stdout.write(f"verify dim={args.dim} trials={args.trials} seed={args.seed} C={args.C}\n")
        sys.stdout.write(report.format())
        return EXIT_OK if report.passed else EXIT_VERIFY
    elif args.command == "fig2":
        _output(fig2_records(args.dim, args.theta_count, args.C), args, layout="wide")
    return EXIT_OK


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _dispatch(args)
    except (CoherenceLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
