"""
Write, hold and read in a ladder system
=======================================

Both fields write a coherence, nothing drives during the hold, and the
coupling field alone reads the stored excitation back out.
"""
import sys
from pathlib import Path

import numpy as np

from octant import build_preset, evolve, make_pure, render_scene, render_timeseries, scene_series
from octant.presets import default_frame_times

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

schedule = build_preset("fwm")
frames = default_frame_times("fwm", schedule)
ts = np.union1d(np.linspace(0, schedule.duration, 901), frames)
traj = evolve(make_pure(1, 0, 0), schedule, ts)

for stage, t in (("write", 1.0), ("hold", 2.0), ("read", 3.0)):
    i = traj.index_of(t)
    r = traj.readouts()[i]
    pops = ", ".join(f"{p:.3f}" for p in traj.populations[i])
    print(f"end of {stage}: populations ({pops}), R01 {r.r01:.3f}")

# with Omega/2 couplings the rho20 equation carries Omega/2, not Omega
write = traj.times <= 1.0
rho = traj.states[write]
print("max |Re rho10|, |Re rho21| during write:",
      f"{np.abs(rho[:, 1, 0].real).max():.1e}, {np.abs(rho[:, 2, 1].real).max():.1e}")

for k, scene in enumerate(scene_series(traj, frames)):
    (out / f"fwm_{k}.svg").write_bytes(render_scene(scene))
(out / "fwm_timeseries.svg").write_bytes(render_timeseries(traj, markers=frames))
