"""``isingc`` command line: compile, verify, stats, render.

Exit codes: 0 ok, 1 verification failed, 2 input error, 3 mode mismatch.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuit import CircuitError, GateNetwork, parse_circuit
from .compiler import compile, compile_hadamard_baseline, format_trace, stats
from .device import DeviceError, DeviceModel, load_device
from .optimizer import OptimizationOptions
from .render import render_ascii, render_svg
from .schedule import PulseSchedule, ScheduleError, dumps_schedule, loads_schedule
from .simulator import (
    ModeMismatchError, SimulationError, circuit_unitary, verify_measurement, verify_unitary,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_MODE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str, what: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"{what} file not found: {path}")
    try:
        return p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc}") from None


def _circuit(path: str) -> GateNetwork:
    try:
        return parse_circuit(_read(path, "circuit"))
    except CircuitError as exc:
        raise InputError(f"{path}: {exc}") from None


def _device(path: str) -> DeviceModel:
    try:
        return load_device(_read(path, "device"))
    except DeviceError as exc:
        raise InputError(f"{path}: {exc}") from None


def _schedule(path: str) -> PulseSchedule:
    try:
        return loads_schedule(_read(path, "schedule"))
    except (ScheduleError, DeviceError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def cmd_compile(args) -> int:
    network = _circuit(args.circuit)
    device = _device(args.device)
    if network.n_qubits != device.n_qubits:
        raise InputError(
            f"circuit has {network.n_qubits} qubits but device has {device.n_qubits}"
        )
    try:
        options = OptimizationOptions.parse(args.opt)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.baseline:
        schedule = compile_hadamard_baseline(network, device)
    else:
        schedule = compile(
            network, device, options, flush_residuals=args.flush, fallback=args.fallback
        )
    _write(args.out, dumps_schedule(schedule))
    if args.trace and schedule.trace:
        print(format_trace(schedule.trace, network.n_qubits), end="")
    if getattr(schedule, "fell_back", False):
        print(f"note: optimizations ({options.label()}) did not help; kept unoptimized schedule",
              file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    network = _circuit(args.circuit)
    device = _device(args.device)
    schedule = _schedule(args.schedule)
    if schedule.device != device:
        raise InputError("schedule was compiled for a different device")
    if network.n_qubits != device.n_qubits:
        raise InputError("circuit and device qubit counts differ")
    try:
        U = circuit_unitary(network)
        if args.mode == "unitary":
            result = verify_unitary(U, schedule, device, tol=args.tol)
            print(f"unitary mode: distance {result.distance:.3g} (tol {args.tol:g}) "
                  f"{'PASS' if result.passed else 'FAIL'}")
        else:
            measured = None
            if args.measured:
                measured = [int(q) for q in args.measured.split(",")]
            result = verify_measurement(U, schedule, device, measured, tol=args.tol)
            print(f"measurement mode: max deviation {result.max_deviation:.3g} "
                  f"(tol {args.tol:g}) {'PASS' if result.passed else 'FAIL'}")
    except ModeMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODE
    except (SimulationError, ValueError) as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_stats(args) -> int:
    schedule = _schedule(args.schedule)
    network = _circuit(args.circuit) if args.circuit else None
    s = stats(schedule, network)
    n = schedule.n_qubits
    print(f"pulse_count    {s.pulse_count}")
    print(f"not_count      {s.not_count}")
    print(f"total_duration {s.total_duration * 1e6:.3f} us")
    print(f"p              {s.p}")
    bound = s.not_bound(n)
    verdict = "PASS" if s.not_count < bound else "FAIL"
    print(f"bound 2*n*p    {bound} (not_count < bound: {verdict})")
    return EXIT_OK


def cmd_render(args) -> int:
    schedule = _schedule(args.schedule)
    text = render_svg(schedule) if args.format == "svg" else render_ascii(schedule)
    _write(args.out, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isingc", description="Compile gate networks for an Ising quantum computer."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a circuit into a pulse schedule")
    c.add_argument("--circuit", required=True)
    c.add_argument("--device", required=True)
    c.add_argument("--out", help="schedule JSON path (default stdout)")
    c.add_argument("--flush", action=argparse.BooleanOptionalAction, default=False,
                   help="refocus all residual couplings at the end")
    c.add_argument("--opt", default="", help="comma list of cancel,mod180,negate")
    c.add_argument("--fallback", action=argparse.BooleanOptionalAction, default=True,
                   help="keep the unoptimized schedule when optimizing does not help")
    c.add_argument("--baseline", action="store_true",
                   help="Hadamard-isolation baseline instead of lazy tracking")
    c.add_argument("--trace", action="store_true", help="print the coupling-angle table")
    c.set_defaults(func=cmd_compile)

    v = sub.add_parser("verify", help="check a schedule against its circuit")
    v.add_argument("--circuit", required=True)
    v.add_argument("--device", required=True)
    v.add_argument("--schedule", required=True)
    v.add_argument("--mode", choices=["unitary", "measurement"], default="unitary")
    v.add_argument("--measured", help="comma list of measured qubits (default all)")
    v.add_argument("--tol", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("stats", help="pulse counts and duration")
    s.add_argument("--schedule", required=True)
    s.add_argument("--circuit")
    s.set_defaults(func=cmd_stats)

    r = sub.add_parser("render", help="draw a schedule timeline")
    r.add_argument("--schedule", required=True)
    r.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    r.add_argument("--out")
    r.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
