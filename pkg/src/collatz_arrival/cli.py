"""Command-line front door.

Every operation of the library is reachable from here, and every output
is deterministic for a fixed argument vector: CSV uses '.' decimals, no
grouping, LF line endings; floats are printed with shortest round-trip
repr. Exit codes: 0 success, 1 usage error, 2 resource guard exceeded,
3 a verification subcommand found a violated property.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import _kernels, equations, series, verify
from .algebra import WeightValues
from .dynamics import COLLATZ, DEFAULT_GUARD, DynamicsSpec, Guard, departure
from .errors import EvaluationOverflowError, ResourceLimitError

USAGE_ERROR = 1
RESOURCE_ERROR = 2
VIOLATION_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_spec_args(sub):
    sub.add_argument("--h", type=int, default=3, help="odd multiplier, default 3")
    sub.add_argument(
        "--sign", type=int, default=1, choices=(1, -1), help="+1 or -1, default +1"
    )


def _add_guard_args(sub):
    sub.add_argument(
        "--max-steps",
        type=int,
        default=DEFAULT_GUARD.max_steps,
        help="step budget guard",
    )
    sub.add_argument(
        "--max-state-digits",
        type=int,
        default=10000,
        help="state magnitude guard, in decimal digits",
    )


def _add_output_arg(sub):
    sub.add_argument("--output", default=None, help="write here instead of stdout")


def _spec_of(args) -> DynamicsSpec:
    try:
        return DynamicsSpec(args.h, args.sign)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _guard_of(args) -> Guard:
    if getattr(args, "max_steps", None) is None:
        return DEFAULT_GUARD
    if args.max_steps < 0 or args.max_state_digits < 1:
        raise UsageError("guard limits must be positive")
    return Guard(max_state=10**args.max_state_digits, max_steps=args.max_steps)


def _weights_of(args) -> WeightValues:
    return WeightValues.of(args.wb, args.wf)


def _emit(text: str, path: Optional[str]):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _kernel_series(k, i, spec, guard):
    triples = _kernels.iterate_triples(k, i, spec.h, spec.sign, guard.max_state)
    return series.from_triples(k, i, spec, triples)


# -- subcommands ----------------------------------------------------


def _cmd_traj(args) -> int:
    spec, guard = _spec_of(args), _guard_of(args)
    traj = departure(args.k, spec, args.steps, guard)
    lines = ["step,state,parity"]
    for t, (state, parity) in enumerate(zip(traj.states, traj.parities)):
        lines.append(f"{t},{state},{parity}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_iterate(args) -> int:
    spec, guard = _spec_of(args), _guard_of(args)
    guard.check_steps(args.i)
    s = _kernel_series(args.k, args.i, spec, guard)
    _emit(json.dumps(s.to_json_dict(), indent=2) + "\n", args.output)
    return 0


def _cmd_coeff(args) -> int:
    spec, guard = _spec_of(args), _guard_of(args)
    guard.check_steps(args.i)
    s = _kernel_series(args.k, args.i, spec, guard)
    _emit(s.coefficient(args.n).render() + "\n", args.output)
    return 0


def _cmd_eqs(args) -> int:
    spec = _spec_of(args)
    lines = equations.table_lines(args.k, args.m_max, spec, fmt=args.format)
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_eliminate(args) -> int:
    spec = _spec_of(args)
    relation = equations.eliminate_chain(args.k, spec, args.depth)
    lines = [relation.render()]
    if not relation.anchored:
        lines.append(f"# chain not anchored within depth {args.depth}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_check(args) -> int:
    spec, guard = _spec_of(args), _guard_of(args)
    i = args.i
    if i is None:
        onset = verify.min_nonzero_iteration(args.k, spec, 10**4, guard)
        i = onset + 10 if onset is not None else 50
    lines = []
    failed = False
    for name, fn in (
        ("oracle_equivalence", verify.oracle_equivalence),
        ("implication_check", verify.implication_check),
    ):
        ok = fn(args.k, i, spec, guard)
        failed |= not ok
        lines.append(f"{name} k={args.k} i={i}: {'pass' if ok else 'FAIL'}")
    if spec == COLLATZ:
        ok = verify.odd_group_check(args.k, i, spec, guard)
        failed |= not ok
        lines.append(f"odd_group_check k={args.k} i={i}: {'pass' if ok else 'FAIL'}")
    else:
        lines.append(
            f"odd_group_check k={args.k} i={i}: skipped (defined for 3n+1 only)"
        )
    if args.k == 5 and spec == COLLATZ:
        lines.append(f"# {verify.K5_ONSET_NOTE}")
    _emit("\n".join(lines) + "\n", args.output)
    return VIOLATION_ERROR if failed else 0


def _cmd_sweep(args) -> int:
    spec, guard = _spec_of(args), _guard_of(args)
    rows = verify.sweep(args.k_from, args.k_to, spec, args.max_i, guard)
    _emit(verify.render_sweep_csv(rows), args.output)
    return 0


def _cmd_plotdata(args) -> int:
    spec, guard = _spec_of(args), _guard_of(args)
    guard.check_steps(args.i)
    values = _weights_of(args)
    s = _kernel_series(args.k, args.i, spec, guard)
    overflow = 0
    if args.segment is not None:
        re0, im0, re1, im1 = args.segment
        pts = args.points
        if pts < 2:
            raise UsageError("segment needs at least 2 points")
        lines = ["x_re,x_im,re,im"]
        for j in range(pts):
            t = Fraction(j, pts - 1)
            x = complex(
                float(re0 + t * (re1 - re0)), float(im0 + t * (im1 - im0))
            )
            try:
                val = s.evaluate(x, values)
            except EvaluationOverflowError as exc:
                print(f"plotdata: {exc}", file=sys.stderr)
                overflow += 1
                continue
            lines.append(f"{x.real!r},{x.imag!r},{val.real!r},{val.imag!r}")
    else:
        if args.grid is None:
            raise UsageError("plotdata needs --grid or --segment")
        x_min, x_max, pts_frac = args.grid
        pts = int(pts_frac)
        if pts != pts_frac or pts < 2:
            raise UsageError("grid needs an integer point count >= 2")
        lines = ["x,re,im"]
        for j in range(pts):
            x = x_min + Fraction(j, pts - 1) * (x_max - x_min)
            try:
                val = s.evaluate(float(x), values)
            except EvaluationOverflowError as exc:
                print(f"plotdata: {exc}", file=sys.stderr)
                overflow += 1
                continue
            if val.imag != 0.0:
                print(
                    f"plotdata: nonzero imaginary part {val.imag!r} at real "
                    f"x={float(x)!r}",
                    file=sys.stderr,
                )
                return VIOLATION_ERROR
            lines.append(f"{float(x)!r},{val.real!r},{val.imag!r}")
    _emit("\n".join(lines) + "\n", args.output)
    return RESOURCE_ERROR if overflow else 0


# -- parser ----------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="collatz-arrival", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("traj", help="departure trajectory as CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    _add_spec_args(p), _add_guard_args(p), _add_output_arg(p)
    p.set_defaults(func=_cmd_traj)

    p = subs.add_parser("iterate", help="series coefficient map as JSON")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    _add_spec_args(p), _add_guard_args(p), _add_output_arg(p)
    p.set_defaults(func=_cmd_iterate)

    p = subs.add_parser("coeff", help="one rendered series coefficient")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_spec_args(p), _add_guard_args(p), _add_output_arg(p)
    p.set_defaults(func=_cmd_coeff)

    p = subs.add_parser("eqs", help="coefficient-matching equation table")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    _add_spec_args(p), _add_output_arg(p)
    p.set_defaults(func=_cmd_eqs)

    p = subs.add_parser("eliminate", help="doubling-chain elimination identity")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--depth", type=int, default=3)
    _add_spec_args(p), _add_output_arg(p)
    p.set_defaults(func=_cmd_eliminate)

    p = subs.add_parser("check", help="series-vs-oracle checks for one seed")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, default=None)
    _add_spec_args(p), _add_guard_args(p), _add_output_arg(p)
    p.set_defaults(func=_cmd_check)

    p = subs.add_parser("sweep", help="per-seed verification rows as CSV")
    p.add_argument("--from", dest="k_from", type=int, required=True)
    p.add_argument("--to", dest="k_to", type=int, required=True)
    p.add_argument("--max-i", type=int, default=10**4)
    _add_spec_args(p), _add_guard_args(p), _add_output_arg(p)
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("plotdata", help="grid evaluation of a series as CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--wb", type=Fraction, required=True)
    p.add_argument("--wf", type=Fraction, required=True)
    p.add_argument(
        "--grid",
        nargs=3,
        type=Fraction,
        default=None,
        metavar=("XMIN", "XMAX", "POINTS"),
    )
    p.add_argument(
        "--segment",
        nargs=4,
        type=Fraction,
        default=None,
        metavar=("RE0", "IM0", "RE1", "IM1"),
    )
    p.add_argument("--points", type=int, default=101, help="segment point count")
    _add_spec_args(p), _add_guard_args(p), _add_output_arg(p)
    p.set_defaults(func=_cmd_plotdata)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"collatz-arrival: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"collatz-arrival: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ResourceLimitError as exc:
        print(f"collatz-arrival: resource guard: {exc}", file=sys.stderr)
        return RESOURCE_ERROR
    except verify.SweepSpotCheckError as exc:
        print(f"collatz-arrival: {exc}", file=sys.stderr)
        return VIOLATION_ERROR


if __name__ == "__main__":
    sys.exit(main())
