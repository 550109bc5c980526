"""Regenerates equilibrium_oracle.csv.

Standalone on purpose: plain Python floats, no imports from the package
under test.  Solves the single-tier wage fixed point for the asymmetric
three-location economy used in the test suite and writes the wages at
full float precision.

    w_i L_i = sum_j pi_ij w_j L_j
    pi_ij   = T_i (w_i tau_ij)^(-theta) / sum_k T_k (w_k tau_kj)^(-theta)

Run from the repository root:

    python tests/fixtures/make_equilibrium_oracle.py
"""

import os

T = [2.0, 1.0, 0.5]
L = [1.0, 1.5, 0.8]
TAU = [[1.0, 1.3, 1.6],
       [1.2, 1.0, 1.4],
       [1.5, 1.25, 1.0]]
THETA = 4.0

# 0.5 two-cycles at theta = 4; 0.25 converges monotonically.
DAMPING = 0.25
TOL = 1e-14
MAX_ITER = 200000


def incomes(wages):
    J = len(wages)
    out = [0.0] * J
    for j in range(J):
        denom = sum(T[k] * (wages[k] * TAU[k][j]) ** (-THETA) for k in range(J))
        spend = wages[j] * L[j]
        for i in range(J):
            share = T[i] * (wages[i] * TAU[i][j]) ** (-THETA) / denom
            out[i] += share * spend
    return out


def solve():
    J = len(T)
    w = [1.0 / L[i] / J for i in range(J)]    # start at equal income shares
    for _ in range(MAX_ITER):
        earned = incomes(w)
        resid = max(abs(earned[i] - w[i] * L[i]) for i in range(J))
        if resid < TOL:
            return w
        target = [(1.0 - DAMPING) * w[i] + DAMPING * earned[i] / L[i] for i in range(J)]
        total = sum(target[i] * L[i] for i in range(J))
        w = [t / total for t in target]
    raise RuntimeError("oracle failed to converge, residual %g" % resid)


def main():
    w = solve()
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                        "equilibrium_oracle.csv")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("location,wage\n")
        for i, wi in enumerate(w):
            fh.write("%d,%s\n" % (i, repr(wi)))
    print("wrote", path)
    for i, wi in enumerate(w):
        print(" w[%d] = %.15f" % (i, wi))


if __name__ == "__main__":
    main()
