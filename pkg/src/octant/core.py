"""
Qutrit state representations.

A pure state is stored in the amplitude/phase form

    |psi> = (alpha, beta exp(-i phi1), gamma exp(-i phi2))

with real non-negative amplitudes, and a mixed state as a validated 3x3
density matrix. Index 0, 1, 2 corresponds to the levels |0>, |1>, |2>.

Phase conventions follow the upper triangle of rho = |psi><psi|:
``phi1 = arg rho01``, ``phi2 = arg rho02`` and ``phi12 = arg rho12``,
so that ``phi12 = phi2 - phi1`` for pure states.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    DegenerateInputError,
    InvalidStateError,
    NegativeEigenvalueError,
    NotHermitianError,
    TraceError,
)

TWO_PI = 2.0 * np.pi

# population below which a phase involving that level is undefined
EPS_POP = 1e-6
# coherence magnitude below which its argument is treated as meaningless
EPS_COHERENCE = 1e-12

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIGENVALUE_TOL = 1e-9

PAIRS = ("01", "02", "12")
PAIR_INDEX = {"01": (0, 1), "02": (0, 2), "12": (1, 2)}


def wrap_phase(phi):
    """Wrap an angle (scalar or array) into [0, 2*pi)."""
    wrapped = np.mod(phi, TWO_PI)
    # np.mod can round tiny negatives up to exactly 2*pi
    wrapped = np.where(wrapped >= TWO_PI, 0.0, wrapped)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class PureState:
    """Pure qutrit state in amplitude/phase form.

    Attributes
    ----------
    alpha, beta, gamma : float
        Non-negative real amplitudes of |0>, |1>, |2>; unit norm.
    phi1, phi2 : float
        Phases of the |1> and |2> components in [0, 2*pi).
    """

    alpha: float
    beta: float
    gamma: float
    phi1: float = 0.0
    phi2: float = 0.0

    def __post_init__(self):
        amps = np.array([self.alpha, self.beta, self.gamma], dtype=float)
        if np.any(amps < 0):
            raise InvalidStateError("amplitudes must be non-negative", amps)
        norm = float(np.sum(amps**2))
        if abs(norm - 1.0) > 1e-12:
            raise InvalidStateError(
                f"amplitudes must have unit norm, got |psi|^2 = {norm!r}", norm
            )
        for name in ("phi1", "phi2"):
            phi = getattr(self, name)
            if not 0.0 <= phi < TWO_PI:
                raise InvalidStateError(f"{name} must lie in [0, 2pi), got {phi!r}", phi)

    @property
    def amplitudes(self):
        return np.array([self.alpha, self.beta, self.gamma])

    def vector(self):
        """Complex state vector (alpha, beta e^{-i phi1}, gamma e^{-i phi2})."""
        return np.array(
            [
                self.alpha,
                self.beta * np.exp(-1j * self.phi1),
                self.gamma * np.exp(-1j * self.phi2),
            ],
            dtype=complex,
        )

    @classmethod
    def from_vector(cls, psi, atol=1e-15):
        """Build a PureState from any non-zero complex 3-vector.

        The global phase is removed by making the first non-negligible
        component real and positive. Phases of components with magnitude
        below ``atol`` are reported as zero.
        """
        psi = np.asarray(psi, dtype=complex).reshape(3)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise InvalidStateError("state vector is zero", 0.0)
        psi = psi / norm
        mags = np.abs(psi)
        lead = int(np.argmax(mags > atol))
        psi = psi * np.exp(-1j * np.angle(psi[lead]))
        mags = np.abs(psi)
        phases = [0.0, 0.0]
        for k in (1, 2):
            if mags[k] > atol:
                phases[k - 1] = wrap_phase(-np.angle(psi[k]))
        mags = mags / np.sqrt(np.sum(mags**2))
        return cls(float(mags[0]), float(mags[1]), float(mags[2]), *phases)


def make_pure(alpha, beta, gamma, phi1=0.0, phi2=0.0):
    """Normalize amplitudes and wrap phases into a :class:`PureState`.

    Raises
    ------
    InvalidStateError
        If any amplitude is negative or all of them are zero.
    """
    amps = np.array([alpha, beta, gamma], dtype=float)
    if not np.all(np.isfinite(amps)):
        raise InvalidStateError("amplitudes must be finite", amps)
    if np.any(amps < 0):
        raise InvalidStateError("amplitudes must be non-negative", amps)
    norm = np.sqrt(np.sum(amps**2))
    if norm == 0:
        raise InvalidStateError("all amplitudes are zero", amps)
    a, b, g = amps / norm
    return PureState(float(a), float(b), float(g), wrap_phase(phi1), wrap_phase(phi2))


class DensityMatrix:
    """Validated 3x3 density matrix (Hermitian, PSD, 0 < trace <= 1).

    The entries are stored as a read-only complex array. Construct through
    :func:`validate_density` to pick non-default tolerances.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        self._entries = _checked(entries, HERMITIAN_TOL, TRACE_TOL, EIGENVALUE_TOL)

    @classmethod
    def _trusted(cls, arr):
        obj = cls.__new__(cls)
        obj._entries = arr
        return obj

    @property
    def entries(self):
        return self._entries

    @property
    def populations(self):
        return np.real(np.diag(self._entries)).copy()

    @property
    def trace(self):
        return float(np.real(np.trace(self._entries)))

    def __getitem__(self, idx):
        return self._entries[idx]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._entries.copy()
        return self._entries.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return bool(np.array_equal(self._entries, other._entries))

    def __hash__(self):
        return hash(self._entries.tobytes())

    def __repr__(self):
        return f"DensityMatrix({np.array2string(self._entries, precision=6)})"


def _checked(matrix, herm_tol, trace_tol, eig_tol):
    arr = np.array(matrix, dtype=complex)
    if arr.shape != (3, 3):
        raise InvalidStateError(f"density matrix must be 3x3, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidStateError("density matrix has non-finite entries")
    herm_err = float(np.max(np.abs(arr - arr.conj().T)))
    if herm_err > herm_tol:
        raise NotHermitianError(
            f"hermiticity violated: max |rho - rho^dagger| = {herm_err:.3e}", herm_err
        )
    trace = np.trace(arr)
    if abs(trace.imag) > trace_tol or not 0.0 < trace.real <= 1.0 + trace_tol:
        raise TraceError(f"trace out of range (0, 1]: Tr rho = {trace:.12g}", trace)
    min_eig = float(np.linalg.eigvalsh(0.5 * (arr + arr.conj().T))[0])
    if min_eig < -eig_tol:
        raise NegativeEigenvalueError(
            f"positivity violated: minimum eigenvalue {min_eig:.3e}", min_eig
        )
    arr.setflags(write=False)
    return arr


def validate_density(
    matrix, *, herm_tol=HERMITIAN_TOL, trace_tol=TRACE_TOL, eig_tol=EIGENVALUE_TOL
):
    """Check the density-matrix invariants and wrap the matrix.

    Raises
    ------
    NotHermitianError, TraceError, NegativeEigenvalueError
        One per violated invariant; ``.value`` carries the offending quantity.
    """
    if isinstance(matrix, DensityMatrix):
        matrix = matrix.entries
    return DensityMatrix._trusted(_checked(matrix, herm_tol, trace_tol, eig_tol))


def pure_to_density(state: PureState) -> DensityMatrix:
    """Projector |psi><psi| of a pure state."""
    psi = state.vector()
    return validate_density(np.outer(psi, psi.conj()))


def purity(rho) -> float:
    """Tr(rho^2)."""
    arr = np.asarray(rho.entries if isinstance(rho, DensityMatrix) else rho)
    return float(np.real(np.trace(arr @ arr)))


@dataclass(frozen=True)
class PhaseReadout:
    """Coherence phases and normalized magnitudes of a density matrix.

    ``None`` marks an undefined quantity. A magnitude ``r_jk`` is defined
    when both supporting populations exceed ``EPS_POP``; the matching phase
    additionally needs ``|rho_jk| >= EPS_COHERENCE``.
    """

    phi1: Optional[float]
    phi2: Optional[float]
    phi12: Optional[float]
    r01: Optional[float]
    r02: Optional[float]
    r12: Optional[float]

    def phase(self, pair):
        return {"01": self.phi1, "02": self.phi2, "12": self.phi12}[pair]

    def magnitude(self, pair):
        return {"01": self.r01, "02": self.r02, "12": self.r12}[pair]

    def summary(self):
        lines = []
        for pair, label in zip(PAIRS, ("phi1", "phi2", "phi12")):
            r, phi = self.magnitude(pair), self.phase(pair)
            r_txt = "undefined" if r is None else f"{r:.6f}"
            phi_txt = "undefined" if phi is None else f"{phi:.6f}"
            lines.append(f"R{pair} = {r_txt}    {label} = {phi_txt}")
        return "\n".join(lines)


def phase_readout(rho, eps_pop=EPS_POP) -> PhaseReadout:
    """Extract clock-hand phases and magnitudes R_jk = |rho_jk| / sqrt(rho_jj rho_kk)."""
    arr = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    pops = np.real(np.diag(arr))
    phases, mags = [], []
    for pair in PAIRS:
        j, k = PAIR_INDEX[pair]
        if pops[j] > eps_pop and pops[k] > eps_pop:
            c = arr[j, k]
            mags.append(float(abs(c) / np.sqrt(pops[j] * pops[k])))
            phases.append(wrap_phase(np.angle(c)) if abs(c) >= EPS_COHERENCE else None)
        else:
            mags.append(None)
            phases.append(None)
    return PhaseReadout(*phases, *mags)


def dark_state(omega1, omega2) -> PureState:
    """Zero-energy eigenstate of the resonant driven ladder.

    Proportional to (omega2/omega1, 0, -1); the minus sign is carried as
    ``phi2 = pi``.
    """
    if omega1 == 0:
        raise DegenerateInputError("dark state needs omega1 != 0 (ratio omega2/omega1)")
    if omega1 < 0 or omega2 < 0:
        raise ValueError("Rabi frequencies must be non-negative")
    ratio = omega2 / omega1
    norm = np.sqrt(ratio**2 + 1.0)
    return PureState(float(ratio / norm), 0.0, float(1.0 / norm), 0.0, float(np.pi))


# -- JSON forms -------------------------------------------------------------

def pure_state_to_dict(state: PureState):
    return {
        "amplitudes": [state.alpha, state.beta, state.gamma],
        "phases": [state.phi1, state.phi2],
    }


def density_to_dict(rho):
    arr = np.asarray(rho.entries if isinstance(rho, DensityMatrix) else rho)
    return {"re": np.real(arr).tolist(), "im": np.imag(arr).tolist()}


def state_from_dict(data, eig_tol=EIGENVALUE_TOL):
    """Parse either JSON form into a PureState or a validated DensityMatrix.

    ``eig_tol=np.inf`` skips the positivity check (Hermiticity and trace still apply).
    """
    if not isinstance(data, dict):
        raise InvalidStateError("state JSON must be an object")
    if "amplitudes" in data:
        amps = data["amplitudes"]
        phases = data.get("phases", [0.0, 0.0])
        if len(amps) != 3 or len(phases) != 2:
            raise InvalidStateError("pure state needs 3 amplitudes and 2 phases")
        return make_pure(*amps, *phases)
    if "re" in data:
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
        if re.shape != (3, 3) or im.shape != (3, 3):
            raise InvalidStateError("density matrix JSON needs 3x3 're' and 'im' arrays")
        return validate_density(re + 1j * im, eig_tol=eig_tol)
    raise InvalidStateError("state JSON needs 'amplitudes' or 're'/'im' keys")


def as_density(state) -> DensityMatrix:
    """Coerce a PureState, DensityMatrix or raw matrix into a DensityMatrix."""
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return pure_to_density(state)
    return validate_density(state)
