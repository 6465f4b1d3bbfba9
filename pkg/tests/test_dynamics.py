import csv
import io

import numpy as np
import pytest

import octant.dynamics
from conftest import PRESET_RUNS, preset_trajectory, random_density
from octant import (
    ControlSchedule,
    IntegrationError,
    PulseEnvelope,
    UnsupportedScheduleError,
    build_hamiltonian,
    build_preset,
    evolve,
    lindblad_rhs,
    make_pure,
    pure_to_density,
    schrodinger_evolve,
)
from octant.dynamics import CSV_HEADER
from octant.presets import RABI_OMEGA

ZERO = PulseEnvelope.zero()
GROUND = np.diag([1.0, 0, 0]).astype(complex)
EXCITED1 = np.diag([0.0, 1, 0]).astype(complex)


# -- Hamiltonian ---------------------------------------------------------------------

def test_hamiltonian_first_rabi_segment():
    H = build_hamiltonian(RABI_OMEGA, 0, 0, 0)
    expected = np.zeros((3, 3))
    expected[0, 1] = expected[1, 0] = 0.01 / (2 * np.pi)
    np.testing.assert_allclose(H, expected, atol=1e-18)


def test_hamiltonian_zero():
    np.testing.assert_array_equal(build_hamiltonian(0, 0, 0, 0), np.zeros((3, 3)))


def test_hamiltonian_two_photon_cancellation():
    g, d = 1.3, 0.7
    H = build_hamiltonian(2 * g, 2 * g, d, -d)
    np.testing.assert_allclose(np.diag(H).real, [0, -d, 0])
    assert H[0, 1] == H[1, 2] == g
    np.testing.assert_array_equal(H, H.conj().T)


# -- Lindblad right-hand side -------------------------------------------------------------

def test_rhs_decay_of_level_one():
    d = lindblad_rhs(EXCITED1, np.zeros((3, 3)), 0.8, 0.0)
    assert d[1, 1].real == pytest.approx(-0.8)
    assert d[0, 0].real == pytest.approx(0.8)
    assert abs(d[2, 2]) == 0


def test_rhs_zero_generator(rng):
    rho = random_density(rng)
    np.testing.assert_array_equal(lindblad_rhs(rho, np.zeros((3, 3))), 0)


def test_rhs_hermitian_and_traceless(rng):
    for _ in range(300):
        rho = random_density(rng)
        H = build_hamiltonian(*rng.normal(size=4))
        d = lindblad_rhs(rho, H, *rng.uniform(0, 3, 2))
        assert np.max(np.abs(d - d.conj().T)) <= 1e-12
        assert abs(np.trace(d)) <= 1e-12


def _rho20_rate(rho, gamma, gamma21):
    # hand expansion for H with equal Omega/2 couplings and no detuning:
    # -i[H, rho]_20 = -i (Omega/2)(rho10 - rho21); only C2 touches rho20, giving -gamma21/2 rho20
    omega = 10 * gamma
    return -1j * (omega / 2) * (rho[1, 0] - rho[2, 1]) - 0.5 * gamma21 * rho[2, 0]


def test_rhs_fwm_entry_matches_hand_expansion(rng):
    gamma, gamma21 = 1.0, 1e-3
    H = build_hamiltonian(10 * gamma, 10 * gamma)
    for _ in range(100):
        rho = random_density(rng)
        d = lindblad_rhs(rho, H, gamma, gamma21)
        assert d[2, 0] == pytest.approx(_rho20_rate(rho, gamma, gamma21), abs=1e-12)


@pytest.mark.xfail(strict=True, reason="printed coefficient is 10*Gamma; Omega/2 couplings give 5*Gamma")
def test_rhs_fwm_entry_printed_coefficient(rng):
    gamma = 1.0
    H = build_hamiltonian(10 * gamma, 10 * gamma)
    rho = random_density(rng)
    d = lindblad_rhs(rho, H, gamma, 0.0)
    assert d[2, 0] == pytest.approx(-10j * gamma * (rho[1, 0] - rho[2, 1]), rel=1e-4)


# -- evolve ---------------------------------------------------------------------------

def test_rabi_first_segment_closed_form():
    schedule = build_preset("rabi")
    ts = np.linspace(0, 75, 301)
    traj = evolve(make_pure(1, 0, 0), schedule, ts)
    exact = np.sin(RABI_OMEGA * ts / 2) ** 2
    assert np.max(np.abs(traj.populations[:, 1] - exact)) <= 1e-6


def test_rabi_two_level_closed_form_strong_drive():
    # several full oscillations, where a phase error would show up
    omega = 2 * np.pi
    s = ControlSchedule(PulseEnvelope.constant(omega), ZERO, duration=3.0)
    ts = np.linspace(0, 3, 151)
    traj = evolve(GROUND, s, ts)
    assert np.max(np.abs(traj.populations[:, 1] - np.sin(omega * ts / 2) ** 2)) <= 1e-6


def test_exponential_decay():
    gamma = 2.0
    s = ControlSchedule(ZERO, ZERO, duration=1 / gamma, gamma10=gamma)
    traj = evolve(EXCITED1, s, [0.0, 1 / gamma])
    assert traj.populations[-1, 1] == pytest.approx(np.exp(-1), abs=1e-8)
    assert traj.populations[-1, 0] == pytest.approx(1 - np.exp(-1), abs=1e-8)


def test_zero_schedule_is_constant(rng):
    rho = random_density(rng)
    s = ControlSchedule(ZERO, ZERO, duration=5.0)
    traj = evolve(rho, s, np.linspace(0, 5, 11))
    for state in traj.states:
        np.testing.assert_allclose(state, rho, atol=1e-14)


def test_sample_times_validated():
    s = ControlSchedule(ZERO, ZERO, duration=1.0)
    with pytest.raises(ValueError):
        evolve(GROUND, s, [0.0, 2.0])
    with pytest.raises(ValueError):
        evolve(GROUND, s, [0.5, 0.2])


def test_integration_failure_reports_time(monkeypatch):
    real = octant.dynamics.solve_ivp

    def failing(fun, t_span, y0, **kw):
        sol = real(fun, (t_span[0], 0.5 * (t_span[0] + t_span[1])), y0, **kw)
        sol.status, sol.message = -1, "Required step size is less than spacing between numbers."
        return sol

    monkeypatch.setattr(octant.dynamics, "solve_ivp", failing)
    s = ControlSchedule(PulseEnvelope.constant(1.0), ZERO, duration=1.0)
    with pytest.raises(IntegrationError) as err:
        evolve(GROUND, s, [0.0, 1.0])
    assert "at t=0.5" in str(err.value)
    assert err.value.time == pytest.approx(0.5)


@pytest.mark.parametrize("name,variant", PRESET_RUNS)
def test_preset_trajectory_invariants(name, variant):
    traj = preset_trajectory(name, variant)
    assert np.max(np.abs(traj.traces - traj.traces[0])) <= 1e-8
    herm = np.abs(traj.states - traj.states.conj().transpose(0, 2, 1))
    assert herm.max() <= 1e-10
    assert min(np.linalg.eigvalsh(r)[0] for r in traj.states) >= -1e-8


def test_dissipator_direction(rng):
    s = ControlSchedule(ZERO, ZERO, duration=3.0, gamma10=1.0, gamma21=0.7)
    traj = evolve(random_density(rng), s, np.linspace(0, 3, 61))
    pops = traj.populations
    assert np.all(np.diff(pops[:, 0]) >= -1e-12)
    assert np.all(np.diff(pops[:, 2]) <= 1e-12)
    # level 1 is fed by level 2, so only ρ22 decays monotonically from any start;
    # from a state with ρ22 = 0 level 1 empties monotonically too
    traj = evolve(EXCITED1, s, np.linspace(0, 3, 61))
    assert np.all(np.diff(traj.populations[:, 1]) <= 1e-12)


def test_trajectory_is_read_only():
    traj = preset_trajectory("rabi")
    with pytest.raises(ValueError):
        traj.states[0, 0, 0] = 0
    assert traj.index_of(75.0) is not None
    assert traj.index_of(75.01) is None


def test_csv_export_format():
    traj = preset_trajectory("two-pulse", "omega2-off", samples=11)
    text = traj.to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 12
    # |0> at t=0: every pair readout undefined
    assert rows[1][4:10] == [""] * 6
    assert float(rows[-1][2]) == pytest.approx(1.0, abs=1e-6)
    assert "-0," not in text and ",-0\n" not in text
    for cell in rows[5][1:4]:
        assert len(cell.replace("-", "").replace(".", "").split("e")[0]) <= 12


# -- Schrodinger ------------------------------------------------------------------------

def test_schrodinger_pi_pulse():
    s = build_preset("two-pulse", "omega2-off")
    ts = np.linspace(0, 1, 201)
    states = schrodinger_evolve(make_pure(1, 0, 0), s, ts)
    final = states[-1]
    assert final.beta == pytest.approx(1.0, abs=1e-9)
    inside = [st.phi1 for st in states[1:-1]]
    np.testing.assert_allclose(inside, np.pi / 2, atol=1e-9)


def test_schrodinger_norm_and_agreement():
    for variant in ("omega2-off", "omega2-on"):
        s = build_preset("two-pulse", variant)
        ts = np.linspace(0, 1, 101)
        vecs = schrodinger_evolve(make_pure(1, 0, 0), s, ts, raw=True)
        assert np.max(np.abs(np.linalg.norm(vecs, axis=1) - 1)) <= 1e-10
        traj = evolve(make_pure(1, 0, 0), s, ts)
        projectors = np.einsum("ni,nj->nij", vecs, vecs.conj())
        assert np.max(np.abs(projectors - traj.states)) <= 1e-8
        states = schrodinger_evolve(make_pure(1, 0, 0), s, ts)
        for st, rho in zip(states, traj.states):
            np.testing.assert_allclose(pure_to_density(st).entries, rho, atol=1e-8)


def test_schrodinger_zero_hamiltonian():
    psi = make_pure(1, 2, 3, 0.4, 1.1)
    states = schrodinger_evolve(psi, ControlSchedule(ZERO, ZERO, duration=2.0), [0, 1, 2])
    for st in states:
        np.testing.assert_allclose(st.vector(), psi.vector(), atol=1e-14)


def test_schrodinger_rejects_decay():
    with pytest.raises(UnsupportedScheduleError):
        schrodinger_evolve(make_pure(1, 0, 0), build_preset("eit"), [0, 1])


def test_fwm_write_stage_identity_along_trajectory():
    schedule = build_preset("fwm")
    gamma, gamma21 = schedule.gamma10, schedule.gamma21
    ts = np.linspace(0, 1 / gamma, 2001)
    rho = evolve(make_pure(1, 0, 0), schedule, ts).states
    h = ts[1] - ts[0]
    fd = (rho[2:, 2, 0] - rho[:-2, 2, 0]) / (2 * h)
    predicted = np.array([_rho20_rate(r, gamma, gamma21) for r in rho[1:-1]])
    assert np.max(np.abs(fd - predicted)) / np.max(np.abs(predicted)) <= 1e-4
    assert np.max(np.abs(rho[:, 1, 0].real)) <= 1e-6
    assert np.max(np.abs(rho[:, 2, 1].real)) <= 1e-6
