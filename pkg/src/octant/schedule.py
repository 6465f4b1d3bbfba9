"""
Drive envelopes and control schedules for the ladder qutrit.

Rabi frequencies are angular (rad/s) and enter the Hamiltonian as Omega/2
off-diagonals, so the pulse area ``integral Omega dt`` is the rotation
angle on the addressed transition (pi transfers population, 2*pi returns
it with a sign flip).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import erf, isfinite, sqrt, pi

import numpy as np

GAUSSIAN_TRUNCATION = 5.0


@dataclass(frozen=True)
class PulseEnvelope:
    """Time-dependent Rabi frequency on one transition.

    Use the :meth:`constant`, :meth:`piecewise`, :meth:`gaussian` and
    :meth:`zero` constructors rather than building one by hand.

    Attributes
    ----------
    kind : str
        ``"constant"``, ``"piecewise"`` or ``"gaussian"``.
    amplitude : float
        Constant amplitude (constant) or peak value (gaussian), rad/s.
    segments : tuple of (start, stop, amplitude)
        Half-open ``[start, stop)`` intervals; zero outside all segments.
    center, sigma : float
        Gaussian centre and width in seconds.
    truncate : float
        Gaussian is zero beyond ``center +- truncate * sigma``.
    """

    kind: str
    amplitude: float = 0.0
    segments: tuple = ()
    center: float = 0.0
    sigma: float = 0.0
    truncate: float = GAUSSIAN_TRUNCATION

    def __post_init__(self):
        if self.kind not in ("constant", "piecewise", "gaussian"):
            raise ValueError(f"unknown envelope kind {self.kind!r}")
        if not isfinite(self.amplitude):
            raise ValueError("envelope amplitude must be finite")
        if self.kind == "gaussian" and not (self.sigma > 0 and isfinite(self.center)):
            raise ValueError("gaussian envelope needs sigma > 0 and a finite center")
        if self.kind == "piecewise":
            prev = -np.inf
            for seg in self.segments:
                start, stop, amp = seg
                if not (isfinite(start) and isfinite(stop) and isfinite(amp)):
                    raise ValueError("piecewise segments must be finite")
                if stop <= start:
                    raise ValueError(f"empty or reversed segment {seg!r}")
                if start < prev:
                    raise ValueError("piecewise segments must be sorted and disjoint")
                prev = stop

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls("constant", 0.0)

    @classmethod
    def constant(cls, amplitude):
        return cls("constant", float(amplitude))

    @classmethod
    def piecewise(cls, segments):
        segs = tuple((float(a), float(b), float(v)) for a, b, v in segments)
        return cls("piecewise", segments=segs)

    @classmethod
    def gaussian(cls, center, sigma, *, area=None, peak=None, truncate=GAUSSIAN_TRUNCATION):
        """Gaussian envelope given either its pulse area or its peak.

        An area-specified pulse is renormalized so the area of the truncated
        profile equals ``area`` exactly.
        """
        if (area is None) == (peak is None):
            raise ValueError("give exactly one of area= or peak=")
        if sigma <= 0:
            raise ValueError("sigma must be positive")
        if peak is None:
            peak = area / (sigma * sqrt(2 * pi) * erf(truncate / sqrt(2)))
        return cls("gaussian", float(peak), center=float(center), sigma=float(sigma),
                   truncate=float(truncate))

    # -- evaluation -------------------------------------------------------------

    @property
    def is_piecewise_constant(self):
        return self.kind in ("constant", "piecewise")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            out = np.full(t.shape, self.amplitude)
        elif self.kind == "piecewise":
            out = np.zeros(t.shape)
            for start, stop, amp in self.segments:
                out = np.where((t >= start) & (t < stop), amp, out)
        else:
            x = (t - self.center) / self.sigma
            out = np.where(np.abs(x) <= self.truncate, self.amplitude * np.exp(-0.5 * x**2), 0.0)
        return float(out) if out.ndim == 0 else out

    def breakpoints(self):
        """Times at which the envelope (or its derivative) jumps."""
        if self.kind == "constant":
            return ()
        if self.kind == "piecewise":
            return tuple(sorted({x for seg in self.segments for x in seg[:2]}))
        half = self.truncate * self.sigma
        return (self.center - half, self.center + half)

    def on_interval(self, start, stop):
        """A smooth callable equal to the envelope on the open interval.

        Breakpoints must not fall strictly inside ``(start, stop)``; the
        returned function extends the interior value to both end points so
        that integrator stages evaluated there see no jump.
        """
        if self.is_piecewise_constant:
            value = self(0.5 * (start + stop))
            return lambda t: value
        lo = self.center - self.truncate * self.sigma
        hi = self.center + self.truncate * self.sigma
        if stop <= lo or start >= hi:
            return lambda t: 0.0
        amp, c, s = self.amplitude, self.center, self.sigma
        return lambda t: amp * np.exp(-0.5 * ((t - c) / s) ** 2)

    def area(self, start, stop):
        """Integral of the envelope over ``[start, stop]``."""
        if stop < start:
            return -self.area(stop, start)
        if self.kind == "constant":
            return self.amplitude * (stop - start)
        if self.kind == "piecewise":
            total = 0.0
            for a, b, amp in self.segments:
                lo, hi = max(a, start), min(b, stop)
                if hi > lo:
                    total += amp * (hi - lo)
            return total
        lo = max(start, self.center - self.truncate * self.sigma)
        hi = min(stop, self.center + self.truncate * self.sigma)
        if hi <= lo:
            return 0.0
        scale = self.sigma * sqrt(2.0)
        return (self.amplitude * self.sigma * sqrt(pi / 2)
                * (erf((hi - self.center) / scale) - erf((lo - self.center) / scale)))


@dataclass(frozen=True)
class ControlSchedule:
    """Drive, detuning and decay parameters for one simulation.

    ``pulse1`` (probe) drives 0<->1 and ``pulse2`` (coupling) drives 1<->2.
    Rates are in rad/s and times in seconds.
    """

    pulse1: PulseEnvelope
    pulse2: PulseEnvelope
    duration: float
    delta1: float = 0.0
    delta2: float = 0.0
    gamma10: float = 0.0
    gamma21: float = 0.0
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        for name in ("duration", "delta1", "delta2", "gamma10", "gamma21"):
            if not isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration!r}")
        if self.gamma10 < 0 or self.gamma21 < 0:
            raise ValueError("decay rates must be non-negative")

    @property
    def chi(self):
        """Ratio gamma21 / gamma10 (None when gamma10 is zero)."""
        return self.gamma21 / self.gamma10 if self.gamma10 else None

    @property
    def is_piecewise_constant(self):
        return self.pulse1.is_piecewise_constant and self.pulse2.is_piecewise_constant

    @property
    def has_decay(self):
        return self.gamma10 != 0 or self.gamma21 != 0

    def drive(self, t):
        """Rabi frequencies (Omega1, Omega2) at time ``t``."""
        return self.pulse1(t), self.pulse2(t)

    def breakpoints(self):
        """Sorted envelope discontinuities strictly inside (0, duration)."""
        pts = set(self.pulse1.breakpoints()) | set(self.pulse2.breakpoints())
        return tuple(sorted(t for t in pts if 0.0 < t < self.duration))

    def intervals(self):
        """Consecutive ``(start, stop)`` pieces on which both envelopes are smooth."""
        edges = (0.0, *self.breakpoints(), float(self.duration))
        return list(zip(edges[:-1], edges[1:]))
