import numpy as np
import pytest

from conftest import preset_trajectory
from octant import build_preset, dark_state, phase_readout
from octant.presets import PRESETS, RABI_OMEGA, PresetSpec, default_frame_times, describe_presets

TWO_PI = 2 * np.pi


def _angle_diff(a, b):
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d)


# -- rabi -------------------------------------------------------------------------------

def test_rabi_defaults():
    s = build_preset("rabi")
    assert RABI_OMEGA == 0.02 / (2 * np.pi)
    assert s.pulse1.segments == ((0.0, 75.0, RABI_OMEGA),)
    assert s.pulse2.segments == ((75.0, 150.0, RABI_OMEGA),)
    assert s.duration == 150.0
    assert s.breakpoints() == (75.0,)
    assert s.drive(80.0) == (0.0, RABI_OMEGA)
    assert s.drive(10.0) == (RABI_OMEGA, 0.0)
    assert (s.gamma10, s.gamma21, s.delta1, s.delta2) == (0, 0, 0, 0)


def test_rabi_pulse_area_is_small():
    # the quoted drive rotates the first transition by only ~0.24 rad
    s = build_preset("rabi")
    assert s.pulse1.area(0, 75) == pytest.approx(0.75 / np.pi)
    assert preset_trajectory("rabi").populations[-1, 0] > 0.98


# -- two-pulse ------------------------------------------------------------------------

def test_two_pulse_schedules():
    off = build_preset("two-pulse", "omega2-off")
    on = build_preset("two-pulse", "omega2-on")
    assert off.duration == on.duration == 1.0
    assert off.pulse1.area(0, 1) == pytest.approx(np.pi)
    assert on.pulse2.area(-1, 2) == pytest.approx(TWO_PI, rel=1e-12)
    # the +-5 sigma window overhangs [0, T]; the run sees all but ~6e-5 of the area
    assert on.pulse2.area(0, 1) == pytest.approx(TWO_PI, rel=1e-4)
    assert on.pulse2.center == 0.5 and on.pulse2.sigma == 0.125
    assert off.pulse2(np.linspace(0, 1, 11)).max() == 0.0


def test_two_pulse_share_probe_envelope():
    ts = np.linspace(0, 1, 1000)
    np.testing.assert_array_equal(build_preset("two-pulse", "omega2-off").pulse1(ts),
                                  build_preset("two-pulse", "omega2-on").pulse1(ts))


def test_two_pulse_off_full_transfer():
    assert preset_trajectory("two-pulse", "omega2-off").populations[-1, 1] == pytest.approx(1, abs=1e-6)


def test_two_pulse_on_returns_to_ground():
    assert preset_trajectory("two-pulse", "omega2-on").populations[-1, 1] <= 0.01


def test_two_pulse_on_phase_flip():
    traj = preset_trajectory("two-pulse", "omega2-on")
    ro = traj.readouts()
    before = [r.phi1 for t, r in zip(traj.times, ro) if 0 < t < 0.1 and r.phi1 is not None]
    after = [r.phi1 for t, r in zip(traj.times, ro) if t > 0.9 and r.phi1 is not None]
    assert before and after
    assert _angle_diff(after[-1], before[0]) == pytest.approx(np.pi, abs=0.05)


def test_two_pulse_unknown_variant():
    with pytest.raises(ValueError, match="variant"):
        build_preset("two-pulse", "omega2-sideways")


# -- eit --------------------------------------------------------------------------------

def test_eit_parameters():
    for variant in ("resonant", "detuned"):
        s = build_preset("eit", variant)
        assert s.drive(3.0) == (2.0, 2.0)
        assert s.gamma10 == 1.0 and s.gamma21 == pytest.approx(1e-5)
        assert s.chi == pytest.approx(1e-5)
    assert build_preset("eit", "resonant").delta1 == 0.0
    assert build_preset("eit", "detuned").delta1 == 2.0
    assert build_preset("eit").duration == 40.0
    with pytest.raises(ValueError):
        build_preset("eit", "sideways")


def _dark_fidelity(rho):
    psi = dark_state(2.0, 2.0).vector()
    return float(np.real(psi.conj() @ rho @ psi))


def test_eit_resonant_reaches_dark_state_by_end():
    traj = preset_trajectory("eit", "resonant")
    assert _dark_fidelity(traj.states[-1]) >= 0.999


@pytest.mark.xfail(strict=True, reason="slowest transient decays at ~0.24 Gamma10; 20 tau10 is too short")
def test_eit_resonant_dark_state_at_twenty_tau():
    traj = preset_trajectory("eit", "resonant")
    assert _dark_fidelity(traj.states[traj.index_of(20.0)]) >= 0.999


def test_eit_resonant_phi2_locked_at_pi():
    for r in preset_trajectory("eit", "resonant").readouts():
        if r.phi2 is not None:
            assert r.phi2 == pytest.approx(np.pi, abs=1e-3)


def test_eit_detuned_phi12_settles_to_zero():
    traj = preset_trajectory("eit", "detuned")
    late = [r.phi12 for t, r in zip(traj.times, traj.readouts()) if t >= 15]
    assert max(_angle_diff(p, 0.0) for p in late) <= 0.01


# -- fwm --------------------------------------------------------------------------------

def test_fwm_stages():
    s = build_preset("fwm")
    assert s.duration == 3.0
    assert s.drive(0.5) == (10.0, 10.0)
    assert s.drive(1.5) == (0.0, 0.0)
    assert s.drive(2.5) == (0.0, 10.0)
    assert s.gamma21 == pytest.approx(1e-3)
    assert s.delta1 == s.delta2 == 0


def test_fwm_hold_stage_decay_is_monotone():
    traj = preset_trajectory("fwm")
    hold = (traj.times >= 1.0) & (traj.times <= 2.0)
    assert np.all(np.diff(traj.populations[hold, 1]) <= 0)


@pytest.mark.xfail(strict=True, reason="the 0-1 coherence outlives the 1 tau10 hold; R01 stays near 0.75")
def test_fwm_phi1_hand_gone_by_end_of_hold():
    traj = preset_trajectory("fwm")
    r = phase_readout(traj.states[traj.index_of(2.0)])
    assert r.r01 is None or r.r01 < 1e-3


def test_fwm_read_stage_returns_to_ground():
    pops = preset_trajectory("fwm").populations[-1]
    assert pops[0] >= pops[1] and pops[0] >= pops[2]


def test_fwm_frame_plan():
    s = build_preset("fwm")
    frames = default_frame_times("fwm", s)
    assert len(frames) == 8
    assert np.sum(frames <= 1.0) == 4 and np.sum(frames >= 2.0) == 4


# -- registry ---------------------------------------------------------------------------

def test_registry_and_overrides():
    assert set(PRESETS) == {"rabi", "two-pulse", "eit", "fwm"}
    s = build_preset("eit", "detuned", detuning=3.0, gamma10=2.0)
    assert s.delta1 == 6.0 and s.duration == 20.0
    with pytest.raises(ValueError):
        build_preset("nope")
    with pytest.raises(ValueError):
        build_preset("rabi", bogus=1.0)
    with pytest.raises(ValueError):
        build_preset("rabi", "resonant")


def test_preset_spec():
    spec = PresetSpec("two-pulse", "omega2-off")
    assert spec.schedule() == build_preset("two-pulse", "omega2-off")
    assert spec.initial_state().alpha == 1.0


def test_describe_lists_everything():
    text = describe_presets()
    for name in PRESETS:
        assert name in text
    for variant in ("omega2-off", "omega2-on", "resonant", "detuned"):
        assert variant in text
    assert "1e-05" in text and "0.001" in text
