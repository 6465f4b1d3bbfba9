"""Qutrit dynamics and octant-plot visualization."""
from .core import (
    EPS_POP,
    DensityMatrix,
    PhaseReadout,
    PureState,
    dark_state,
    make_pure,
    phase_readout,
    pure_to_density,
    purity,
    validate_density,
)
from .dynamics import Trajectory, build_hamiltonian, evolve, lindblad_rhs, schrodinger_evolve
from .errors import (
    DegenerateInputError,
    IntegrationError,
    InvalidStateError,
    MissingFrameError,
    NegativeEigenvalueError,
    NotHermitianError,
    TraceError,
    UnsupportedScheduleError,
)
from .gellmann import GellMannCoefficients, gellmann_compose, gellmann_decompose
from .oracle import evolve_oracle, liouvillian
from .presets import build_preset, preset_eit, preset_fwm, preset_rabi, preset_two_pulse
from .render import RenderStyle, project, render_scene, render_timeseries
from .scene import OctantScene, dark_state_overlay, overlay_dark_state, scene_from_state, scene_series
from .schedule import ControlSchedule, PulseEnvelope

__version__ = "0.1.0"
