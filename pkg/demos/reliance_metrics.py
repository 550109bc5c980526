"""Two ways to measure how much one economy leans on another.

Forward reliance asks where the value added in what a country buys was
created.  Market reliance asks where a country's own value added ends up
being absorbed.  Both are computed from a world input-output table through
the Leontief inverse, so they count value routed through third countries,
not just direct shipments.
"""

import numpy as np

from gscsim import WorldIOTable, compute_fir, compute_fmr, reliance_change

###############################################################################
# a three-country world with a manufacturing hub
###############################################################################
countries = ["ALP", "BET", "GAM"]
sectors = ["MFG"]
# BET is the hub: it sells intermediates to both neighbours.
Z = np.array([[ 0.0, 10.0,  5.0],
              [40.0,  0.0, 25.0],
              [ 5.0, 15.0,  0.0]])
F = np.diag([95.0, 60.0, 45.0])
x = Z.sum(axis=1) + F.sum(axis=1)
v = x - Z.sum(axis=0)
table = WorldIOTable(countries=countries, sectors=sectors,
                     Z=Z, F=F.copy(), v=v, x=x)


def show(matrix):
    print(f"{matrix.metric}: rows = reliant country, % of row total")
    header = "        " + "".join(f"{c:>8}" for c in countries)
    print(header)
    for a in countries:
        cells = "".join(f"{matrix.partner_share(a, b):8.1f}" for b in countries)
        print(f"  {a}   {cells}")
    print()


fir = compute_fir(table, "MFG")
fmr = compute_fmr(table, "MFG")
show(fir)
show(fmr)
print("diagonals are the domestic share; each row sums to 100.\n")

###############################################################################
# reliance drifts as the hub integrates deeper
###############################################################################
# every country doubles the BET-made share of its intermediate inputs, and
# outputs rebalance to keep the table consistent
A = Z / x[np.newaxis, :]
A[1, :] *= 2.0
f = F.sum(axis=1)
x2 = np.linalg.solve(np.eye(3) - A, f)
Z2 = A * x2[np.newaxis, :]
v2 = x2 - Z2.sum(axis=0)
later = WorldIOTable(countries=countries, sectors=sectors,
                     Z=Z2, F=np.diag(f), v=v2, x=x2)

delta = reliance_change(compute_fir(later, "MFG"), fir)
print("change in forward reliance (percentage points):")
for a in countries:
    for b in countries:
        if a != b:
            print(f"  {a} on {b}: {delta.partner_share(a, b):+6.1f}")
