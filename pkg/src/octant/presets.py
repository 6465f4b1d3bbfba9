"""
Ready-made schedules for the four demonstration protocols.

``rabi`` and ``two-pulse`` use dimensionless time (seconds internally).
``eit`` and ``fwm`` take rates in units of gamma10 and times in units of
tau10 = 1/gamma10; ``gamma10`` itself (rad/s) sets the conversion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .core import PureState, make_pure
from .schedule import ControlSchedule, PulseEnvelope

RABI_OMEGA = 0.02 / (2 * pi)


def preset_rabi(omega=RABI_OMEGA, switch_time=75.0, duration=150.0):
    """Probe on [0, switch_time), then coupling on [switch_time, duration]."""
    return ControlSchedule(
        pulse1=PulseEnvelope.piecewise([(0.0, switch_time, omega)]),
        pulse2=PulseEnvelope.piecewise([(switch_time, duration, omega)]),
        duration=duration,
        meta={"preset": "rabi", "variant": None},
    )


def preset_two_pulse(variant="omega2-on", duration=1.0, probe_area=pi,
                     coupling_area=2 * pi, sigma=None):
    """Weak constant pi pulse on 0<->1 with an optional Gaussian 2pi pulse on 1<->2.

    Both variants share the same probe envelope; ``sigma`` defaults to
    ``duration / 8`` with the coupling pulse centred at ``duration / 2``.
    """
    if variant not in TWO_PULSE_VARIANTS:
        raise ValueError(f"unknown two-pulse variant {variant!r}; "
                         f"choose from {', '.join(TWO_PULSE_VARIANTS)}")
    probe = PulseEnvelope.constant(probe_area / duration)
    if variant == "omega2-off":
        coupling = PulseEnvelope.zero()
    else:
        sigma = duration / 8.0 if sigma is None else sigma
        coupling = PulseEnvelope.gaussian(0.5 * duration, sigma, area=coupling_area)
    return ControlSchedule(probe, coupling, duration,
                           meta={"preset": "two-pulse", "variant": variant})


def preset_eit(variant="resonant", gamma10=1.0, omega=2.0, chi=1e-5,
               detuning=2.0, duration=40.0):
    """Constant probe and coupling of equal strength.

    ``omega`` and ``detuning`` are in units of gamma10, ``duration`` in tau10.
    The detuned variant puts ``detuning`` on the probe only.
    """
    if variant not in EIT_VARIANTS:
        raise ValueError(f"unknown eit variant {variant!r}; "
                         f"choose from {', '.join(EIT_VARIANTS)}")
    delta1 = detuning * gamma10 if variant == "detuned" else 0.0
    return ControlSchedule(
        pulse1=PulseEnvelope.constant(omega * gamma10),
        pulse2=PulseEnvelope.constant(omega * gamma10),
        duration=duration / gamma10,
        delta1=delta1,
        gamma10=gamma10,
        gamma21=chi * gamma10,
        meta={"preset": "eit", "variant": variant},
    )


def preset_fwm(gamma10=1.0, omega=10.0, chi=1e-3, stage=1.0):
    """Write (both fields), hold (none), read (coupling only), each ``stage`` tau10 long."""
    t = stage / gamma10
    om = omega * gamma10
    return ControlSchedule(
        pulse1=PulseEnvelope.piecewise([(0.0, t, om)]),
        pulse2=PulseEnvelope.piecewise([(0.0, t, om), (2 * t, 3 * t, om)]),
        duration=3 * t,
        gamma10=gamma10,
        gamma21=chi * gamma10,
        meta={"preset": "fwm", "variant": None},
    )


TWO_PULSE_VARIANTS = ("omega2-off", "omega2-on")
EIT_VARIANTS = ("resonant", "detuned")


def _even(schedule, count):
    return np.linspace(0.0, schedule.duration, count)


def _fwm_frames(schedule, count=None):
    # four markers across the write stage, four across the read stage
    t = schedule.duration / 3.0
    marks = np.linspace(0.0, t, 4)
    return np.concatenate([marks, 2 * t + marks])


@dataclass(frozen=True)
class PresetInfo:
    name: str
    builder: object
    variants: tuple
    default_variant: str
    defaults: dict
    units: dict
    default_frames: int
    frame_plan: object = None
    description: str = ""


PRESETS = {
    "rabi": PresetInfo(
        "rabi", preset_rabi, (), None,
        {"omega": RABI_OMEGA, "switch_time": 75.0, "duration": 150.0},
        {"omega": "rad/s", "switch_time": "s", "duration": "s"},
        9, description="sequential resonant Rabi drive of 0<->1 then 1<->2, no decay",
    ),
    "two-pulse": PresetInfo(
        "two-pulse", preset_two_pulse, TWO_PULSE_VARIANTS, "omega2-on",
        {"duration": 1.0, "probe_area": pi, "coupling_area": 2 * pi, "sigma": 0.125},
        {"duration": "s", "probe_area": "rad", "coupling_area": "rad", "sigma": "s"},
        6, description="constant pi probe with optional Gaussian 2pi coupling pulse",
    ),
    "eit": PresetInfo(
        "eit", preset_eit, EIT_VARIANTS, "resonant",
        {"gamma10": 1.0, "omega": 2.0, "chi": 1e-5, "detuning": 2.0, "duration": 40.0},
        {"gamma10": "rad/s", "omega": "Gamma10", "chi": "Gamma21/Gamma10",
         "detuning": "Gamma10 (detuned variant)", "duration": "tau10"},
        6, description="resonant or probe-detuned EIT with decaying intermediate level",
    ),
    "fwm": PresetInfo(
        "fwm", preset_fwm, (), None,
        {"gamma10": 1.0, "omega": 10.0, "chi": 1e-3, "stage": 1.0},
        {"gamma10": "rad/s", "omega": "Gamma10", "chi": "Gamma21/Gamma10", "stage": "tau10"},
        8, frame_plan=_fwm_frames,
        description="write / hold / read ladder storage and retrieval",
    ),
}


@dataclass(frozen=True)
class PresetSpec:
    """A preset selection plus parameter overrides and initial state."""

    name: str
    variant: str = None
    overrides: dict = field(default_factory=dict)
    initial: PureState = None

    def schedule(self) -> ControlSchedule:
        return build_preset(self.name, self.variant, **self.overrides)

    def initial_state(self):
        return self.initial if self.initial is not None else make_pure(1, 0, 0)


def build_preset(name, variant=None, **overrides) -> ControlSchedule:
    """Look up a preset by its CLI name and build its schedule.

    Raises
    ------
    ValueError
        Unknown preset, unknown variant or unknown override key.
    """
    try:
        info = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    unknown = set(overrides) - set(info.defaults)
    if unknown:
        raise ValueError(f"unknown parameter(s) for preset {name!r}: {', '.join(sorted(unknown))}")
    if info.variants:
        return info.builder(variant or info.default_variant, **overrides)
    if variant is not None:
        raise ValueError(f"preset {name!r} has no variants")
    return info.builder(**overrides)


def default_frame_times(name, schedule, count=None):
    """Frame times for a preset: its own plan, or ``count`` evenly spaced times."""
    info = PRESETS[name]
    if count is None and info.frame_plan is not None:
        return info.frame_plan(schedule)
    return _even(schedule, count or info.default_frames)


def describe_presets():
    """Human-readable listing of presets, variants and default parameters."""
    lines = []
    for info in PRESETS.values():
        head = f"{info.name}: {', '.join(info.variants)}" if info.variants else f"{info.name}"
        lines.append(head)
        lines.append(f"    {info.description}")
        for key, val in info.defaults.items():
            lines.append(f"    {key} = {val:g} [{info.units[key]}]")
        if "chi" in info.defaults:
            lines.append(f"    gamma21 = {info.defaults['chi']:g} Gamma10")
    return "\n".join(lines)
