"""
Hamiltonian, Lindblad right-hand side and time propagation.

Units: hbar = 1, rates in rad/s, times in seconds. The master equation is

    d rho/dt = -i[H, rho] + sum_j G_j (C_j rho C_j^+ - 1/2 {C_j^+ C_j, rho})

with C_1 = |0><1| at rate gamma10 and C_2 = |1><2| at rate gamma21.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .core import (
    PAIRS,
    DensityMatrix,
    PureState,
    as_density,
    phase_readout,
    validate_density,
)
from .errors import IntegrationError, UnsupportedScheduleError
from .schedule import ControlSchedule

RTOL = 1e-10
ATOL = 1e-10
METHOD = "DOP853"
# the state vector carries no projection step, so the norm drifts at roughly
# the tolerance level; 1e-12 keeps it inside 1e-10 over the presets
SCHRODINGER_TOL = 1e-12

# trajectory samples are checked against these (looser than a bare state:
# integrator round-off accumulates over thousands of steps)
TRAJ_HERMITIAN_TOL = 1e-10
TRAJ_TRACE_TOL = 1e-8
TRAJ_EIGENVALUE_TOL = 1e-8

_C1 = np.zeros((3, 3), dtype=complex)
_C1[0, 1] = 1.0
_C2 = np.zeros((3, 3), dtype=complex)
_C2[1, 2] = 1.0
COLLAPSE_OPERATORS = (_C1, _C2)


def build_hamiltonian(omega1, omega2, delta1=0.0, delta2=0.0):
    """Ladder Hamiltonian in the rotating frame.

    Off-diagonals ``omega1/2`` (0<->1) and ``omega2/2`` (1<->2); diagonal
    ``(0, -delta1, -(delta1 + delta2))``.
    """
    return np.array(
        [
            [0.0, 0.5 * omega1, 0.0],
            [0.5 * omega1, -delta1, 0.5 * omega2],
            [0.0, 0.5 * omega2, -(delta1 + delta2)],
        ],
        dtype=complex,
    )


def lindblad_rhs(rho, H, gamma10=0.0, gamma21=0.0):
    """Time derivative of ``rho`` under the ladder master equation."""
    rho = np.asarray(rho.entries if isinstance(rho, DensityMatrix) else rho)
    out = -1j * (H @ rho - rho @ H)
    for rate, c in zip((gamma10, gamma21), COLLAPSE_OPERATORS):
        if rate:
            cdc = c.conj().T @ c
            out = out + rate * (c @ rho @ c.conj().T - 0.5 * (cdc @ rho + rho @ cdc))
    return out


def _hermitian_part(m):
    return 0.5 * (m + m.conj().T)


def _check_samples(sample_times, duration):
    ts = np.asarray(sample_times, dtype=float).ravel()
    if ts.size == 0:
        raise ValueError("need at least one sample time")
    if np.any(np.diff(ts) <= 0):
        raise ValueError("sample times must be strictly increasing")
    slack = 1e-12 * max(1.0, duration)
    if ts[0] < -slack or ts[-1] > duration + slack:
        raise ValueError(f"sample times must lie within [0, {duration!r}]")
    return np.clip(ts, 0.0, duration)


def _propagate(y0, schedule, sample_times, make_rhs, settle, rtol, atol, method):
    """Integrate interval by interval; returns values at ``sample_times``.

    ``make_rhs(h_of_t)`` builds the flattened right-hand side for one
    smooth interval and ``settle`` post-processes a flattened state.
    """
    ts = _check_samples(sample_times, schedule.duration)
    out = np.empty((ts.size, y0.size), dtype=complex)
    y = settle(np.asarray(y0, dtype=complex))
    done = 0
    if ts[0] == 0.0:
        out[0] = y
        done = 1
    for start, stop in schedule.intervals():
        if done == ts.size:
            break
        p1 = schedule.pulse1.on_interval(start, stop)
        p2 = schedule.pulse2.on_interval(start, stop)
        d1, d2 = schedule.delta1, schedule.delta2

        def h_of_t(t, p1=p1, p2=p2):
            return build_hamiltonian(p1(t), p2(t), d1, d2)

        sol = solve_ivp(
            make_rhs(h_of_t), (start, stop), y, method=method,
            rtol=rtol, atol=atol, dense_output=True,
        )
        if sol.status != 0:
            raise IntegrationError(f"integration failed: {sol.message}", float(sol.t[-1]))
        bad = ~np.all(np.isfinite(sol.y), axis=0)
        if bad.any():
            raise IntegrationError("integration produced non-finite values",
                                   float(sol.t[np.argmax(bad)]))
        hi = np.searchsorted(ts, stop, side="right")
        if hi > done:
            vals = sol.sol(ts[done:hi])
            for k in range(hi - done):
                out[done + k] = settle(vals[:, k])
            done = hi
        y = settle(sol.y[:, -1])
    return ts, out


@dataclass
class Trajectory:
    """Density matrices sampled along a propagation.

    Attributes
    ----------
    times : ndarray, shape (N,)
    states : ndarray, shape (N, 3, 3), complex
    schedule : ControlSchedule or None
    settings : dict
        Integrator settings used to produce the samples.
    """

    times: np.ndarray
    states: np.ndarray
    schedule: ControlSchedule = None
    settings: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=complex)
        if self.states.shape != (self.times.size, 3, 3):
            raise ValueError("states must have shape (len(times), 3, 3)")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("trajectory times must be strictly increasing")
        for rho in self.states:
            validate_density(rho, herm_tol=TRAJ_HERMITIAN_TOL,
                             trace_tol=TRAJ_TRACE_TOL, eig_tol=TRAJ_EIGENVALUE_TOL)
        self.times.setflags(write=False)
        self.states.setflags(write=False)

    def __len__(self):
        return self.times.size

    def density(self, i) -> DensityMatrix:
        return validate_density(self.states[i], trace_tol=TRAJ_TRACE_TOL,
                                eig_tol=TRAJ_EIGENVALUE_TOL)

    def index_of(self, t, atol=None):
        """Index of the sample at time ``t`` (None when absent)."""
        if atol is None:
            atol = 1e-9 * max(1.0, float(self.times[-1]))
        i = int(np.argmin(np.abs(self.times - t)))
        return i if abs(self.times[i] - t) <= atol else None

    @property
    def populations(self):
        return np.real(np.einsum("nii->ni", self.states))

    @property
    def traces(self):
        return np.real(np.einsum("nii->n", self.states))

    @property
    def purities(self):
        return np.real(np.einsum("nij,nji->n", self.states, self.states))

    def readouts(self):
        return [phase_readout(rho) for rho in self.states]

    def to_csv(self, fh=None):
        """Write the per-sample observables as CSV; returns the text if ``fh`` is None."""
        buf = io.StringIO() if fh is None else fh
        write_trajectory_csv(self, buf)
        return buf.getvalue() if fh is None else None


CSV_HEADER = ("t", "rho00", "rho11", "rho22", "R01", "R02", "R12",
              "phi1", "phi2", "phi12", "purity")


def _fmt(x):
    if x is None:
        return ""
    return format(float(x) + 0.0, ".12g")


def write_trajectory_csv(traj: Trajectory, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    pops = traj.populations
    pur = traj.purities
    for n, (t, rho) in enumerate(zip(traj.times, traj.states)):
        ro = phase_readout(rho)
        row = [t, *pops[n]]
        row += [ro.magnitude(p) for p in PAIRS]
        row += [ro.phi1, ro.phi2, ro.phi12, pur[n]]
        writer.writerow([_fmt(v) for v in row])


def evolve(initial, schedule: ControlSchedule, sample_times, *,
           rtol=RTOL, atol=ATOL, method=METHOD) -> Trajectory:
    """Integrate the master equation and sample the density matrix.

    ``initial`` may be a DensityMatrix, a PureState or a raw 3x3 matrix.
    The state is projected onto its Hermitian part after every smooth
    interval and at each sample.

    Raises
    ------
    IntegrationError
        When the adaptive stepper fails; carries the failing time.
    """
    rho0 = as_density(initial).entries
    g10, g21 = schedule.gamma10, schedule.gamma21

    def make_rhs(h_of_t):
        def rhs(t, y):
            return lindblad_rhs(y.reshape(3, 3), h_of_t(t), g10, g21).ravel()
        return rhs

    def settle(y):
        return _hermitian_part(y.reshape(3, 3)).ravel()

    ts, flat = _propagate(rho0.ravel(), schedule, sample_times, make_rhs, settle,
                          rtol, atol, method)
    settings = {"method": method, "rtol": rtol, "atol": atol}
    return Trajectory(ts, flat.reshape(-1, 3, 3), schedule, settings)


def schrodinger_evolve(initial: PureState, schedule: ControlSchedule, sample_times, *,
                       rtol=SCHRODINGER_TOL, atol=SCHRODINGER_TOL, method=METHOD, raw=False):
    """Propagate a pure state with the Schrodinger equation.

    Returns a list of PureState, or the complex state vectors as an
    ``(N, 3)`` array when ``raw`` is true.

    Raises
    ------
    UnsupportedScheduleError
        If the schedule has a non-zero decay rate.
    """
    if schedule.has_decay:
        raise UnsupportedScheduleError(
            "schrodinger_evolve needs gamma10 = gamma21 = 0; use evolve for open dynamics")
    psi0 = initial.vector() if isinstance(initial, PureState) else np.asarray(initial, complex)

    def make_rhs(h_of_t):
        def rhs(t, y):
            return -1j * (h_of_t(t) @ y)
        return rhs

    _, vecs = _propagate(psi0, schedule, sample_times, make_rhs, lambda y: y,
                         rtol, atol, method)
    if raw:
        return vecs
    return [PureState.from_vector(v) for v in vecs]
