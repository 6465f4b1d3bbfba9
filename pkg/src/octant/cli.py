"""
Command-line entry point.

Exit codes: 0 success, 2 configuration or validation error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, load_json_arg, parse_frames, parse_overrides, resolve
from .core import EIGENVALUE_TOL, as_density, phase_readout, state_from_dict
from .dynamics import evolve
from .errors import IntegrationError, InvalidStateError
from .presets import describe_presets
from .render import render_scene, render_timeseries
from .scene import SceneOptions, dark_state_overlay, scene_from_state, scene_series, scene_to_dict

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _fail(message, code):
    print(f"error: {message}", file=sys.stderr)
    return code


def _write(path, data):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(data, bytes):
            path.write_bytes(data)
        else:
            path.write_text(data)
    except OSError as exc:
        raise ConfigError(f"cannot write {str(path)!r}: {exc.strerror}") from None


def cmd_render_state(args):
    try:
        state = state_from_dict(load_json_arg(args.state),
                                eig_tol=np.inf if args.allow_nonpsd else EIGENVALUE_TOL)
        rho = as_density(state)
        if args.allow_nonpsd:
            low = float(np.linalg.eigvalsh(rho.entries)[0])
            if low < 0:
                print(f"warning: matrix is not positive semidefinite "
                      f"(minimum eigenvalue {low:.3e}); drawing anyway", file=sys.stderr)
        scene = scene_from_state(rho, SceneOptions(guides=args.guides))
        _write(Path(args.output), render_scene(scene))
    except InvalidStateError as exc:
        return _fail(f"invalid state ({exc.invariant}): {exc}", EXIT_CONFIG)
    except ConfigError as exc:
        return _fail(str(exc), EXIT_CONFIG)
    print(phase_readout(rho).summary())
    return EXIT_OK


def cmd_presets_list(args):
    print(describe_presets())
    return EXIT_OK


def _frame_name(index, t):
    return f"frame_{index:02d}_{t:.4f}"


def run_simulation(cfg: RunConfig):
    """Resolve, integrate and write every toggled output. Returns written paths."""
    plan = resolve(cfg)
    try:
        traj = evolve(plan.initial, plan.schedule, plan.sample_times)
    except InvalidStateError as exc:
        raise IntegrationError(f"trajectory left the state space: {exc}", float("nan")) from exc
    out = Path(cfg.out_dir)
    written = []
    overlays = () if plan.dark_overlay is None else (dark_state_overlay(*plan.dark_overlay),)
    if cfg.svg_frames or cfg.scenes:
        scenes = scene_series(traj, plan.frame_times, overlays=overlays)
        for k, (t, scene) in enumerate(zip(plan.frame_times, scenes)):
            stem = _frame_name(k, t)
            if cfg.svg_frames:
                written.append(out / f"{stem}.svg")
                _write(written[-1], render_scene(scene))
            if cfg.scenes:
                written.append(out / f"{stem}.json")
                _write(written[-1], json.dumps(scene_to_dict(scene), indent=1) + "\n")
    if cfg.csv:
        written.append(out / "trajectory.csv")
        _write(written[-1], traj.to_csv())
    if cfg.timeseries:
        written.append(out / "timeseries.svg")
        _write(written[-1], render_timeseries(traj, markers=plan.frame_times))
    return written


def cmd_simulate(args):
    try:
        cfg = RunConfig(
            preset=args.preset,
            variant=args.variant,
            config_path=args.config,
            initial=args.initial,
            frames=parse_frames(args.frames),
            out_dir=args.out or os.environ.get("OCTANT_OUT") or "octant_out",
            svg_frames=args.svg,
            timeseries=args.timeseries,
            csv=args.csv,
            scenes=args.scenes,
            overrides=parse_overrides(args.set),
            samples=args.samples,
        )
        written = run_simulation(cfg)
    except IntegrationError as exc:
        return _fail(str(exc), EXIT_NUMERIC)
    except InvalidStateError as exc:
        return _fail(f"invalid state ({exc.invariant}): {exc}", EXIT_CONFIG)
    except (ConfigError, ValueError) as exc:
        return _fail(str(exc), EXIT_CONFIG)
    print(f"wrote {len(written)} file(s) to {cfg.out_dir}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="octant", description="Qutrit octant-plot simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render-state", help="draw one state as an octant SVG")
    p.add_argument("state", help="state JSON (inline or path): pure or density matrix form")
    p.add_argument("-o", "--output", required=True, help="output SVG path")
    p.add_argument("--guides", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--allow-nonpsd", action="store_true",
                   help="draw a Hermitian matrix even if it has negative eigenvalues")
    p.set_defaults(func=cmd_render_state)

    p = sub.add_parser("simulate", help="run a preset or schedule file")
    p.add_argument("--preset")
    p.add_argument("--variant")
    p.add_argument("--config", help="schedule JSON (inline or path)")
    p.add_argument("--initial", help="initial state JSON (inline or path); default |0>")
    p.add_argument("--frames", help="frame count or comma-separated times")
    p.add_argument("--out", help="output directory (default $OCTANT_OUT or ./octant_out)")
    p.add_argument("--samples", type=int, default=RunConfig.samples,
                   help="evenly spaced trajectory samples (frame times are added)")
    p.add_argument("--svg", action=argparse.BooleanOptionalAction, default=True,
                   help="write octant SVG frames")
    p.add_argument("--csv", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--scenes", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--timeseries", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="parameter override")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("presets", help="list presets and default parameters")
    p.set_defaults(func=cmd_presets_list)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
