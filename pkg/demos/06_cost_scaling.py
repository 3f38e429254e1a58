"""One integration step costs O(M): time both schemes as the mesh refines.

All per-step work — gradients, tridiagonal matvecs, Thomas solves — walks
the trajectory once, so wall time should scale linearly in the node count
M = N(K+1)+1.  The split scheme pays roughly a constant factor over the
explicit one for its two tridiagonal solves per midpoint map.
"""

from fcshmc import apply_overrides, default_config
from fcshmc.harness import exp_complexity, fit_loglog_slope

config = apply_overrides(default_config("complexity", seed=0),
                         {"sweep": "10 20 40 79 150"})
result = exp_complexity(config)

print("   K     explicit (s)      split (s)     ratio")
for k, wall_svex, wall_imex in result.rows:
    print(f"{k:4d}   {wall_svex:.6f}      {wall_imex:.6f}     "
          f"{wall_imex / wall_svex:5.2f}")

ks = [row[0] for row in result.rows]
print(f"\nlog-log slope explicit: {fit_loglog_slope(ks, [r[1] for r in result.rows]):.3f}")
print(f"log-log slope split:    {fit_loglog_slope(ks, [r[2] for r in result.rows]):.3f}")
print(f"CSV: {result.paths[0]}")
