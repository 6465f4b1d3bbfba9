"""
Superoperator propagation for piecewise-constant schedules.

Used as an independent check on :func:`octant.dynamics.evolve`: on each
constant segment the master equation is linear with a fixed 9x9
generator, so ``vec(rho(t)) = exp(L t) vec(rho(0))`` exactly. Vectorization
is row-major, ``vec(A X B) = (A kron B^T) vec(X)``.
"""
from __future__ import annotations

import numpy as np

from .core import as_density
from .dynamics import COLLAPSE_OPERATORS, Trajectory, _check_samples, build_hamiltonian
from .errors import UnsupportedScheduleError

# Higham (2005) degree-13 Pade coefficients and scaling threshold
_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_THETA13 = 5.371920351148152


def expm(a):
    """Matrix exponential by scaling and squaring with a [13/13] Pade approximant."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    s = 0
    if norm > _THETA13:
        s = int(np.ceil(np.log2(norm / _THETA13)))
    a = a / 2.0**s
    b = _PADE13
    ident = np.eye(n, dtype=complex)
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a4 @ a2
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        r = r @ r
    return r


def liouvillian(H, gamma10=0.0, gamma21=0.0):
    """9x9 generator of the ladder master equation acting on row-major vec(rho)."""
    ident = np.eye(3)
    H = np.asarray(H, dtype=complex)
    L = -1j * (np.kron(H, ident) - np.kron(ident, H.T))
    for rate, c in zip((gamma10, gamma21), COLLAPSE_OPERATORS):
        cdc = c.conj().T @ c
        L = L + rate * (np.kron(c, c.conj()) - 0.5 * np.kron(cdc, ident)
                        - 0.5 * np.kron(ident, cdc.T))
    return L


def evolve_oracle(initial, schedule, sample_times) -> Trajectory:
    """Propagate by exact segment-wise exponentials of the Liouvillian.

    Raises
    ------
    UnsupportedScheduleError
        If either envelope is not piecewise-constant.
    """
    if not schedule.is_piecewise_constant:
        raise UnsupportedScheduleError(
            "evolve_oracle only handles constant or piecewise-constant envelopes")
    ts = _check_samples(sample_times, schedule.duration)
    y = as_density(initial).entries.ravel().astype(complex)
    out = np.empty((ts.size, 9), dtype=complex)
    done = 0
    if ts[0] == 0.0:
        out[0] = y
        done = 1
    for start, stop in schedule.intervals():
        if done == ts.size:
            break
        om1, om2 = schedule.drive(0.5 * (start + stop))
        L = liouvillian(build_hamiltonian(om1, om2, schedule.delta1, schedule.delta2),
                        schedule.gamma10, schedule.gamma21)
        hi = np.searchsorted(ts, stop, side="right")
        for k in range(done, hi):
            out[k] = expm(L * (ts[k] - start)) @ y
        done = hi
        y = expm(L * (stop - start)) @ y
    states = out.reshape(-1, 3, 3)
    states = 0.5 * (states + states.conj().transpose(0, 2, 1))
    return Trajectory(ts, states, schedule, {"method": "liouvillian-expm"})
