"""
Renderer-independent octant scenes.

The state vector tip sits at (sqrt(rho00), sqrt(rho11), sqrt(rho22)) in the
first octant; each defined coherence contributes a clock hand at the tip
whose angle is the coherence phase and whose length is R_jk.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from math import pi
from typing import Optional

import numpy as np

from .core import EPS_POP, PAIRS, as_density, dark_state, phase_readout
from .errors import MissingFrameError

SCHEMA_VERSION = 1
EPS_HAND = 1e-3
AXIS_LABELS = ("|0\u27e9 (x)", "|1\u27e9 (y)", "|2\u27e9 (z)")


@dataclass(frozen=True)
class Hand:
    pair: str
    angle: float
    length: float
    role: str = ""

    def __post_init__(self):
        if not self.role:
            object.__setattr__(self, "role", f"pair{self.pair}")


@dataclass(frozen=True)
class Overlay:
    """Reference state drawn alongside the simulated one (e.g. a dark state)."""

    label: str
    tip: tuple
    hands: tuple = ()
    role: str = "overlay"


@dataclass(frozen=True)
class SceneOptions:
    guides: bool = True
    eps_hand: float = EPS_HAND
    eps_pop: float = EPS_POP
    labels: tuple = AXIS_LABELS


@dataclass(frozen=True)
class OctantScene:
    """Everything needed to draw one octant plot.

    ``tip`` is None for an empty (wireframe-only) scene.
    """

    tip: Optional[tuple] = None
    length: float = 0.0
    hands: tuple = ()
    guides: tuple = ()
    path: tuple = ()
    overlays: tuple = ()
    labels: tuple = AXIS_LABELS
    time: Optional[float] = None

    @classmethod
    def empty(cls, labels=AXIS_LABELS):
        return cls(labels=labels)


def _tip_of(pops):
    return tuple(float(x) for x in np.sqrt(np.clip(pops, 0.0, None)))


def _guides(tip):
    x, y, z = tip
    return (
        (tip, (x, 0.0, 0.0)),
        (tip, (0.0, y, 0.0)),
        (tip, (0.0, 0.0, z)),
    )


def scene_from_state(rho, options: SceneOptions = None, history=(), overlays=(),
                     time=None) -> OctantScene:
    """Build the scene for one density matrix (or pure state).

    ``history`` holds earlier tips; the current tip is appended to form the path.
    """
    options = options or SceneOptions()
    rho = as_density(rho)
    pops = rho.populations
    tip = _tip_of(pops)
    readout = phase_readout(rho, eps_pop=options.eps_pop)
    hands = []
    for pair in PAIRS:
        r, phi = readout.magnitude(pair), readout.phase(pair)
        if r is not None and phi is not None and r >= options.eps_hand:
            hands.append(Hand(pair, phi, r))
    path = tuple(tuple(float(c) for c in p) for p in history) + (tip,)
    return OctantScene(
        tip=tip,
        length=float(np.sqrt(max(rho.trace, 0.0))),
        hands=tuple(hands),
        guides=_guides(tip) if options.guides else (),
        path=path,
        overlays=tuple(overlays),
        labels=tuple(options.labels),
        time=None if time is None else float(time),
    )


def scene_series(trajectory, frame_times, options: SceneOptions = None, overlays=()):
    """One scene per frame; each path holds every trajectory tip up to that frame.

    Raises
    ------
    MissingFrameError
        If any frame time is not a sample time of the trajectory.
    """
    indices, missing = [], []
    for t in frame_times:
        i = trajectory.index_of(t)
        (missing.append(t) if i is None else indices.append(i))
    if missing:
        raise MissingFrameError(missing)
    tips = [_tip_of(p) for p in trajectory.populations]
    return [
        scene_from_state(trajectory.density(i), options, history=tips[:i],
                         overlays=overlays, time=trajectory.times[i])
        for i in indices
    ]


def dark_state_overlay(omega1, omega2) -> Overlay:
    state = dark_state(omega1, omega2)
    tip = (state.alpha, state.beta, state.gamma)
    return Overlay("dark state", tip, (Hand("02", pi, 1.0, "overlay"),), "overlay")


def overlay_dark_state(scene: OctantScene, omega1, omega2) -> OctantScene:
    """Return ``scene`` with the EIT dark state for (omega1, omega2) added as an overlay."""
    return replace(scene, overlays=scene.overlays + (dark_state_overlay(omega1, omega2),))


# -- JSON form ------------------------------------------------------------------

def _hand_dict(h):
    return {"pair": h.pair, "angle": h.angle, "length": h.length}


def scene_to_dict(scene: OctantScene):
    return {
        "schema": SCHEMA_VERSION,
        "time": scene.time,
        "tip": None if scene.tip is None else list(scene.tip),
        "length": scene.length,
        "hands": [_hand_dict(h) for h in scene.hands],
        "guides": bool(scene.guides),
        "path": [list(p) for p in scene.path],
        "overlays": [
            {"label": o.label, "tip": list(o.tip), "hands": [_hand_dict(h) for h in o.hands]}
            for o in scene.overlays
        ],
        "labels": list(scene.labels),
    }


def scene_from_dict(data) -> OctantScene:
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported scene schema {data.get('schema')!r}")
    tip = None if data.get("tip") is None else tuple(data["tip"])
    overlays = tuple(
        Overlay(o["label"], tuple(o["tip"]),
                tuple(Hand(h["pair"], h["angle"], h["length"], "overlay") for h in o["hands"]))
        for o in data.get("overlays", [])
    )
    return OctantScene(
        tip=tip,
        length=data.get("length", 0.0),
        hands=tuple(Hand(h["pair"], h["angle"], h["length"]) for h in data.get("hands", [])),
        guides=_guides(tip) if tip is not None and data.get("guides", True) else (),
        path=tuple(tuple(p) for p in data.get("path", [])),
        overlays=overlays,
        labels=tuple(data.get("labels", AXIS_LABELS)),
        time=data.get("time"),
    )
