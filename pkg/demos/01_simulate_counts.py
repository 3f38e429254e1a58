"""Simulate one photon-count record and look at what the detector saw.

A single emitter diffuses on a two-scale time mesh: each of the N windows is
one dead-time gap (no light collected) followed by K exposure sub-steps.
The expected count per window is the trapezoid integral of the intensity
along the latent path; the recorded count is Poisson around it.
"""

import numpy as np

from fcshmc import ExperimentParams, RandomStream, simulate

params = ExperimentParams(N=12, K=20)
sim = simulate(RandomStream(0, 1), params)

q = sim.trajectory.values
print(f"mesh: {params.N} windows x {params.K} sub-steps -> {params.node_count} nodes")
print(f"sub-step {params.tau_sub:.2e} s, dead time {params.tau_dead:.2e} s")
print(f"latent path: start {q[0]:+.3f} um, end {q[-1]:+.3f} um, "
      f"max |q| {np.max(np.abs(q)):.3f} um\n")

print(" n   mean dist (um)   signal u_n   count w_n")
for n in range(params.N):
    nodes = q[1 + n * (params.K + 1) : (n + 1) * (params.K + 1) + 1]
    print(f"{n + 1:2d}   {np.mean(np.abs(nodes)):14.3f}   {sim.signal[n]:10.3f}"
          f"   {sim.counts[n]:9d}")

print("\nwindows whose path stays near the focus collect most of the light;")
print("once the emitter wanders a few tenths of a micron away the expected")
print(f"signal drops toward the background floor {params.I_bg * (params.K * params.tau_sub):.3f}.")
