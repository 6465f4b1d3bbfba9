"""
Run configuration: schedule JSON parsing and sample planning.

Schedule JSON mirrors :class:`~octant.schedule.ControlSchedule`. Any rate or
time may be a raw number (rad/s, s) or ``{"value": v, "unit": u}`` with
``u`` one of ``rad/s``, ``Gamma10``, ``s``, ``tau10``; ``Gamma10`` and
``tau10`` refer to the file's top-level ``gamma10``.

Example::

    {
      "gamma10": 1.0,
      "chi": 1e-3,
      "duration": {"value": 3, "unit": "tau10"},
      "pulse1": {"kind": "piecewise", "segments": [[0, 1, {"value": 10, "unit": "Gamma10"}]]},
      "pulse2": {"kind": "gaussian", "center": 1.5, "sigma": 0.2, "area": 6.283185307179586}
    }
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import as_density, make_pure, state_from_dict
from .presets import build_preset, default_frame_times
from .schedule import ControlSchedule, PulseEnvelope

DEFAULT_SAMPLES = 601


class ConfigError(ValueError):
    """Configuration cannot be resolved into a schedule and sample plan."""


def _quantity(value, kind, gamma10):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, dict) and "value" in value:
        unit = value.get("unit", "rad/s" if kind == "rate" else "s")
        v = float(value["value"])
        if unit in ("rad/s", "s"):
            return v
        if unit in ("Gamma10", "tau10"):
            if not gamma10:
                raise ConfigError(f"unit {unit!r} needs a positive top-level gamma10")
            if (unit == "Gamma10") != (kind == "rate"):
                raise ConfigError(f"unit {unit!r} is not valid for a {kind}")
            return v * gamma10 if unit == "Gamma10" else v / gamma10
        raise ConfigError(f"unknown unit {unit!r}")
    raise ConfigError(f"expected a number or {{'value', 'unit'}} object, got {value!r}")


def pulse_from_dict(data, gamma10=0.0) -> PulseEnvelope:
    if data is None or data == "zero":
        return PulseEnvelope.zero()
    kind = data.get("kind")
    try:
        if kind == "constant":
            return PulseEnvelope.constant(_quantity(data["amplitude"], "rate", gamma10))
        if kind == "piecewise":
            segs = [(_quantity(a, "time", gamma10), _quantity(b, "time", gamma10),
                     _quantity(v, "rate", gamma10)) for a, b, v in data["segments"]]
            return PulseEnvelope.piecewise(segs)
        if kind == "gaussian":
            kw = {}
            if "area" in data:
                kw["area"] = float(data["area"])
            if "peak" in data:
                kw["peak"] = _quantity(data["peak"], "rate", gamma10)
            return PulseEnvelope.gaussian(_quantity(data["center"], "time", gamma10),
                                          _quantity(data["sigma"], "time", gamma10), **kw)
    except KeyError as exc:
        raise ConfigError(f"pulse of kind {kind!r} is missing {exc.args[0]!r}") from None
    raise ConfigError(f"unknown pulse kind {kind!r}")


def schedule_from_dict(data) -> ControlSchedule:
    """Parse the schedule JSON form."""
    if not isinstance(data, dict):
        raise ConfigError("schedule JSON must be an object")
    gamma10 = float(data.get("gamma10", 0.0))
    if "gamma21" in data and "chi" in data:
        raise ConfigError("give gamma21 or chi, not both")
    gamma21 = (float(data["chi"]) * gamma10 if "chi" in data
               else _quantity(data.get("gamma21", 0.0), "rate", gamma10))
    if "duration" not in data:
        raise ConfigError("schedule needs a duration")
    try:
        return ControlSchedule(
            pulse1=pulse_from_dict(data.get("pulse1"), gamma10),
            pulse2=pulse_from_dict(data.get("pulse2"), gamma10),
            duration=_quantity(data["duration"], "time", gamma10),
            delta1=_quantity(data.get("delta1", 0.0), "rate", gamma10),
            delta2=_quantity(data.get("delta2", 0.0), "rate", gamma10),
            gamma10=gamma10,
            gamma21=gamma21,
            meta={"preset": None, "variant": None},
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def parse_overrides(items):
    """``["key=value", ...]`` -> dict of floats (dotted keys kept as-is)."""
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"override {key!r} needs a numeric value, got {value!r}") from None
    return out


def _apply_dotted(data, overrides):
    data = copy.deepcopy(data)
    for key, value in overrides.items():
        node = data
        parts = key.split(".")
        for part in parts[:-1]:
            if not isinstance(node.get(part), dict):
                raise ConfigError(f"cannot override {key!r}: {part!r} is not an object")
            node = node[part]
        node[parts[-1]] = value
    return data


def parse_frames(text):
    """``"6"`` -> 6 ; ``"0,0.5,1"`` -> [0.0, 0.5, 1.0]."""
    if text is None:
        return None
    if isinstance(text, (int, list, tuple)):
        return text
    text = str(text).strip()
    try:
        if "," in text:
            return [float(x) for x in text.split(",") if x.strip()]
        n = int(text)
    except ValueError:
        raise ConfigError(f"--frames expects a count or comma-separated times, got {text!r}") from None
    if n < 1:
        raise ConfigError("--frames count must be at least 1")
    return n


def load_json_arg(text):
    """Inline JSON or a path to a JSON file."""
    text = str(text)
    if text.lstrip().startswith("{"):
        source = text
    else:
        try:
            source = Path(text).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read {text!r}: {exc.strerror}") from None
    try:
        return json.loads(source)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None


@dataclass
class RunConfig:
    """Everything ``simulate`` needs, resolvable before any computation."""

    preset: str = None
    variant: str = None
    config_path: str = None
    initial: object = None
    frames: object = None
    out_dir: str = "octant_out"
    svg_frames: bool = True
    timeseries: bool = True
    csv: bool = True
    scenes: bool = True
    overrides: dict = field(default_factory=dict)
    samples: int = DEFAULT_SAMPLES


@dataclass
class RunPlan:
    schedule: ControlSchedule
    initial: object
    sample_times: np.ndarray
    frame_times: np.ndarray
    dark_overlay: tuple = None


def resolve(cfg: RunConfig) -> RunPlan:
    """Turn a RunConfig into a schedule, initial state and sample plan."""
    if (cfg.preset is None) == (cfg.config_path is None):
        raise ConfigError("give exactly one of --preset or --config")
    file_data = {}
    try:
        if cfg.preset is not None:
            schedule = build_preset(cfg.preset, cfg.variant, **cfg.overrides)
        else:
            if cfg.variant is not None:
                raise ConfigError("--variant only applies to presets")
            file_data = load_json_arg(cfg.config_path)
            if not isinstance(file_data, dict):
                raise ConfigError("config JSON must be an object")
            schedule = schedule_from_dict(_apply_dotted(file_data, cfg.overrides))
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None

    initial = cfg.initial if cfg.initial is not None else file_data.get("initial")
    if initial is None:
        initial = make_pure(1, 0, 0)
    elif isinstance(initial, (str, dict)):
        initial = state_from_dict(load_json_arg(initial) if isinstance(initial, str) else initial)
    as_density(initial)

    frames = parse_frames(cfg.frames if cfg.frames is not None else file_data.get("frames"))
    if isinstance(frames, (list, tuple)):
        frame_times = np.array(sorted(set(frames)), dtype=float)
        if frame_times[0] < 0 or frame_times[-1] > schedule.duration:
            raise ConfigError(f"frame times must lie within [0, {schedule.duration:g}]")
    elif cfg.preset is not None:
        frame_times = default_frame_times(cfg.preset, schedule, frames)
    else:
        frame_times = np.linspace(0.0, schedule.duration, frames or 6)

    if cfg.samples < 2:
        raise ConfigError("need at least 2 samples")
    grid = np.linspace(0.0, schedule.duration, cfg.samples)
    sample_times = np.union1d(grid, frame_times)
    # drop grid points that collide numerically with a frame time
    keep = np.ones(sample_times.size, dtype=bool)
    keep[1:] = np.diff(sample_times) > 1e-9 * max(1.0, schedule.duration)
    sample_times = sample_times[keep]

    dark = None
    if schedule.meta.get("preset") == "eit":
        dark = (schedule.pulse1(0.0), schedule.pulse2(0.0))
    elif file_data.get("overlay_dark_state"):
        dark = schedule.drive(0.0)
    return RunPlan(schedule, initial, sample_times, frame_times, dark)
