"""The disruption regime: rare arrivals, quick recoveries.

Disruptions arrive with probability eta each period and, once underway,
end with probability lam.  While one is underway it lands on the East
location with probability zeta, otherwise on the South.  The script checks
the simulated time in the disrupted state against the closed form and
tabulates where the blows land.
"""

import numpy as np

from gscsim import ShockParams, draw_shock, simulate_regime, stationary_share

params = ShockParams(eta=0.1, lam=0.3, zeta=0.75)
rng = np.random.default_rng(7)

# --- occupancy of the disrupted state ------------------------------------
n = 200_000
path = simulate_regime(params, rng.random(n))
print(f"periods simulated:            {n}")
print(f"time spent disrupted:         {path.mean():.4f}")
print(f"stationary share eta/(eta+lam): {stationary_share(params):.4f}")

# spells end fast: print the run-length distribution of disrupted stretches
runs = []
count = 0
for s in path:
    if s:
        count += 1
    elif count:
        runs.append(count)
        count = 0
lengths = np.bincount(runs)
print("\ndisruption spell lengths (share of spells)")
for k in range(1, min(len(lengths), 7)):
    print(f"  {k} period(s): {lengths[k] / len(runs):.3f}")
print(f"mean spell {np.mean(runs):.2f} periods, expected 1/lam = "
      f"{1 / params.lam:.2f}")

# --- where a disruption lands ---------------------------------------------
m = 100_000
hits = {"none": 0, "east": 0, "south": 0}
for u in rng.random(m):
    hits[draw_shock(params, float(u)).label] += 1
print(f"\nper-period draw over {m} periods "
      f"(eta = {params.eta}, zeta = {params.zeta}):")
for label in ("none", "east", "south"):
    print(f"  {label:<6} {hits[label] / m:.4f}")
print(f"expected: none {1 - params.eta:.4f}, east "
      f"{params.eta * params.zeta:.4f}, south "
      f"{params.eta * (1 - params.zeta):.4f}")
