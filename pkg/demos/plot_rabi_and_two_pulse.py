"""
Rabi driving and two-pulse interference
=======================================

The probe drives 0<->1 and the coupling field drives 1<->2. A pi pulse on
the probe moves everything to |1>; a Gaussian 2pi pulse on the coupling
field halfway through flips the sign of the |1> amplitude, so the rest of
the probe pulse undoes the first half.
"""
import sys
from pathlib import Path

import numpy as np

from octant import build_preset, evolve, make_pure, render_scene, render_timeseries, scene_series

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)
ground = make_pure(1, 0, 0)

# %%
# Sequential Rabi drive. With the default drive strength the first
# transition only turns by about 0.24 rad, so the vector barely leaves x.
rabi = build_preset("rabi")
ts = np.linspace(0, rabi.duration, 601)
traj = evolve(ground, rabi, ts)
print(f"rabi: max rho11 = {traj.populations[:, 1].max():.4f}")

# a stronger drive shows full oscillations
strong = build_preset("rabi", omega=0.1)
traj = evolve(ground, strong, ts)
(out / "rabi_strong_timeseries.svg").write_bytes(render_timeseries(traj, markers=[0, 37.5, 75, 112.5]))
for k, scene in enumerate(scene_series(traj, [37.5, 112.5])):
    (out / f"rabi_strong_{k}.svg").write_bytes(render_scene(scene))

# %%
# Two-pulse interference.
for variant in ("omega2-off", "omega2-on"):
    schedule = build_preset("two-pulse", variant)
    ts = np.linspace(0, 1, 401)
    traj = evolve(ground, schedule, ts)
    readouts = traj.readouts()
    phi1 = [r.phi1 for r in readouts if r.phi1 is not None]
    print(f"{variant}: final rho11 = {traj.populations[-1, 1]:.4f}, "
          f"phi1 first {phi1[0]:.3f} last {phi1[-1]:.3f}")
    (out / f"two_pulse_{variant}.svg").write_bytes(render_timeseries(traj, markers=[0.25, 0.5, 0.75]))
