"""
Drawing single qutrit states
============================

A pure qutrit needs three amplitudes and two relative phases. The octant
plot puts the amplitudes on the state vector and the phases on clock
hands at its tip.
"""
import sys
from pathlib import Path

import numpy as np

from octant import make_pure, phase_readout, pure_to_density, render_scene, scene_from_state

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

# equal superposition with phi1 = pi/2, phi2 = 3pi/4
psi = make_pure(1, 1, 1, np.pi / 2, 3 * np.pi / 4)
rho = pure_to_density(psi)
print(phase_readout(rho).summary())

# all three hands have unit length for a pure state; phi12 = phi2 - phi1
(out / "equal_superposition.svg").write_bytes(render_scene(scene_from_state(rho)))

# %%
# Dephasing shortens the hands but leaves the vector alone. Scaling the
# coherences by 3/4 keeps the matrix a valid state.
mixed = rho.entries.copy()
mixed[~np.eye(3, dtype=bool)] *= 0.75
print(phase_readout(mixed).summary())
(out / "dephased.svg").write_bytes(render_scene(scene_from_state(mixed)))

# %%
# A two-level superposition has exactly one hand.
two_level = scene_from_state(make_pure(1, 1, 0, np.pi / 2))
print("hands on a 0-1 superposition:", [h.pair for h in two_level.hands])
(out / "two_level.svg").write_bytes(render_scene(two_level))
