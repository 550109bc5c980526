"""Multi-tier sourcing chains with Frechet productivity draws.

A final good assembled for destination j can be produced along any chain of
locations l = (l1, ..., lN), one per production tier.  Tier n combines local
labour with the tier n-1 input under a Cobb-Douglas technology (labour share
alpha[n]), and idea-level productivities are Frechet so that chain-level
trade shares take the usual CES-gravity form.  This module computes chain
cost scales, path-level trade shares, price indices and the tier
participation shares that the wage equilibrium needs.

Conventions used throughout:

* ``T[i, n]`` is the technology level of location i at tier n,
* ``tau[i, j]`` is the iceberg cost of shipping from i to j (diagonal 1),
* ``costs[i]`` is the composite input cost of location i,
* ``alpha[n] * beta[n]`` is the share of final-good value paid to tier-n
  labour, and the betas cumulate downstream intermediate shares so that
  ``sum(alpha * beta) == 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Exhaustive path enumeration is exact but exponential in the number of
# tiers; refuse silently huge problems instead of sampling.
MAX_PATHS = 1_000_000


def _positive_array(x, shape, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape != shape:
        raise ValueError(f"{name} must have shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise ValueError(f"{name} must be finite and strictly positive")
    return arr


@dataclass
class EconomyParams:
    """Primitives of the chain economy.

    Parameters
    ----------
    T : array (J, N)
        Technology level per location and tier.
    L : array (J,)
        Labour endowments.
    tau : array (J, J)
        Iceberg trade costs, all >= 1 with a unit diagonal.
    alpha : array (N,)
        Labour share of tier-n production, each in (0, 1].
    beta : array (N,)
        Downstream weight of tier n; ``sum(alpha * beta)`` must equal 1 so
        that labour payments exhaust final-good value.
    theta : float
        Frechet dispersion of chain productivity (trade elasticity).
    sigma : float
        Elasticity of substitution across varieties; requires
        ``sigma - 1 < theta`` for the price index to exist.
    gamma : float
        Labour share of the composite input cost, ``c = w**gamma *
        P**(1 - gamma)``.  Default 1 (labour-only costs).
    """

    T: np.ndarray
    L: np.ndarray
    tau: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    theta: float
    sigma: float
    gamma: float = 1.0

    def __post_init__(self):
        self.T = np.asarray(self.T, dtype=float)
        if self.T.ndim != 2:
            raise ValueError("T must be a 2-d array of shape (locations, tiers)")
        J, N = self.T.shape
        if J < 1 or N < 1:
            raise ValueError("need at least one location and one tier")
        self.T = _positive_array(self.T, (J, N), "T")
        self.L = _positive_array(self.L, (J,), "L")
        self.tau = _positive_array(self.tau, (J, J), "tau")
        if np.any(self.tau < 1.0):
            raise ValueError("iceberg costs tau must be >= 1")
        if not np.allclose(np.diag(self.tau), 1.0):
            raise ValueError("tau must have a unit diagonal")
        self.alpha = _positive_array(self.alpha, (N,), "alpha")
        self.beta = _positive_array(self.beta, (N,), "beta")
        if np.any(self.alpha > 1.0):
            raise ValueError("labour shares alpha must lie in (0, 1]")
        weight = float(np.sum(self.alpha * self.beta))
        if abs(weight - 1.0) > 1e-9:
            raise ValueError(
                f"tier labour weights must exhaust output value: "
                f"sum(alpha * beta) = {weight:.12g}, expected 1"
            )
        self.theta = float(self.theta)
        self.sigma = float(self.sigma)
        self.gamma = float(self.gamma)
        if self.theta <= 0.0:
            raise ValueError("theta must be positive")
        if self.sigma <= 1.0:
            raise ValueError("sigma must exceed 1")
        if self.sigma - 1.0 >= self.theta:
            raise ValueError(
                f"price index requires sigma - 1 < theta, "
                f"got sigma={self.sigma}, theta={self.theta}"
            )
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must lie in (0, 1]")

    @property
    def n_locations(self) -> int:
        return self.T.shape[0]

    @property
    def n_tiers(self) -> int:
        return self.T.shape[1]

    @classmethod
    def one_tier(cls, T, L, tau, theta, sigma, gamma=1.0) -> "EconomyParams":
        """Single-tier economy: plain sourcing with alpha = beta = 1."""
        T = np.asarray(T, dtype=float).reshape(-1, 1)
        return cls(T=T, L=L, tau=tau, alpha=np.ones(1), beta=np.ones(1),
                   theta=theta, sigma=sigma, gamma=gamma)

    @classmethod
    def two_tier(cls, T1, T2, L, tau, alpha2, theta, sigma, gamma=1.0) -> "EconomyParams":
        """Two-tier chain: upstream suppliers feed final assembly.

        The upstream tier is pure labour (alpha1 = 1) and the assembly tier
        spends share ``alpha2`` on labour and ``1 - alpha2`` on the upstream
        input, so beta = (1 - alpha2, 1).
        """
        alpha2 = float(alpha2)
        if not 0.0 < alpha2 < 1.0:
            raise ValueError("alpha2 must lie strictly between 0 and 1")
        T = np.column_stack([np.asarray(T1, dtype=float),
                             np.asarray(T2, dtype=float)])
        return cls(T=T, L=L, tau=tau,
                   alpha=np.array([1.0, alpha2]),
                   beta=np.array([1.0 - alpha2, 1.0]),
                   theta=theta, sigma=sigma, gamma=gamma)

    def to_dict(self) -> dict:
        return {
            "T": self.T.tolist(),
            "L": self.L.tolist(),
            "tau": self.tau.tolist(),
            "alpha": self.alpha.tolist(),
            "beta": self.beta.tolist(),
            "theta": self.theta,
            "sigma": self.sigma,
            "gamma": self.gamma,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EconomyParams":
        missing = [k for k in ("T", "L", "tau", "alpha", "beta", "theta", "sigma")
                   if k not in d]
        if missing:
            raise ValueError(f"economy config missing keys: {', '.join(missing)}")
        return cls(T=np.asarray(d["T"], dtype=float),
                   L=np.asarray(d["L"], dtype=float),
                   tau=np.asarray(d["tau"], dtype=float),
                   alpha=np.asarray(d["alpha"], dtype=float),
                   beta=np.asarray(d["beta"], dtype=float),
                   theta=float(d["theta"]), sigma=float(d["sigma"]),
                   gamma=float(d.get("gamma", 1.0)))


def kappa(theta: float, sigma: float) -> float:
    """CES constant of the Frechet price index.

    kappa = Gamma((theta + 1 - sigma) / theta) ** (1 / (1 - sigma)), which is
    finite exactly when sigma - 1 < theta.
    """
    if sigma - 1.0 >= theta:
        raise ValueError("kappa requires sigma - 1 < theta")
    return math.gamma((theta + 1.0 - sigma) / theta) ** (1.0 / (1.0 - sigma))


def composite_cost(wages, prices, gamma: float) -> np.ndarray:
    """Cobb-Douglas input cost c = w**gamma * P**(1 - gamma)."""
    w = np.asarray(wages, dtype=float)
    P = np.asarray(prices, dtype=float)
    return w ** gamma * P ** (1.0 - gamma)


def enumerate_paths(n_locations: int, n_tiers: int) -> np.ndarray:
    """All location assignments, one row per chain, shape (J**N, N).

    Rows are in lexicographic order with the upstream tier varying slowest.
    Raises if the enumeration would exceed ``MAX_PATHS``.
    """
    count = n_locations ** n_tiers
    if count > MAX_PATHS:
        raise ValueError(
            f"{n_locations}**{n_tiers} = {count} chains exceeds the "
            f"enumeration cap of {MAX_PATHS}"
        )
    grids = np.indices((n_locations,) * n_tiers).reshape(n_tiers, count)
    return grids.T.astype(np.intp)


def _check_costs(costs, J: int) -> np.ndarray:
    return _positive_array(costs, (J,), "costs")


def _tier_factors(params: EconomyParams, costs: np.ndarray):
    """Per-tier contribution matrices of the chain cost scale.

    For tiers below the last, ``F[n][a, b]`` multiplies a chain that runs
    tier n in location a and tier n+1 in location b.  ``G[a, j]`` is the
    last-tier factor including the final shipment to destination j.
    """
    th = params.theta
    ab = params.alpha * params.beta
    tech = params.T ** ab * costs[:, None] ** (-th * ab)  # (J, N)
    hop = params.tau[None, :, :] ** (-th * params.beta[:, None, None])  # (N, J, J)
    F = [tech[:, n, None] * hop[n] for n in range(params.n_tiers - 1)]
    G = tech[:, -1, None] * hop[-1]
    return F, G


def path_scale_matrix(params: EconomyParams, costs) -> tuple[np.ndarray, np.ndarray]:
    """Chain cost scales for every path and destination.

    Returns
    -------
    paths : array (P, N)
        Output of :func:`enumerate_paths`.
    scales : array (P, J)
        ``scales[p, j]`` is the cost scale of chain ``paths[p]`` serving
        destination j; trade shares are scales normalised per column.
    """
    costs = _check_costs(costs, params.n_locations)
    paths = enumerate_paths(params.n_locations, params.n_tiers)
    F, G = _tier_factors(params, costs)
    base = np.ones(len(paths))
    for n in range(params.n_tiers - 1):
        base = base * F[n][paths[:, n], paths[:, n + 1]]
    scales = base[:, None] * G[paths[:, -1], :]
    return paths, scales


def chain_cost_scale(path, dest: int, params: EconomyParams, costs) -> float:
    """Cost scale of a single chain serving ``dest``.

    The scale multiplies technology gains against cost and shipping
    penalties tier by tier,

        prod_n [ T[l_n, n]**alpha_n * (costs[l_n]**alpha_n
                 * tau[l_n, next_n])**(-theta) ]**beta_n ,

    where next_n is the next tier's location and the last hop ships to the
    destination.  It is decreasing in every cost and every trade friction
    along the chain.
    """
    costs = _check_costs(costs, params.n_locations)
    path = np.asarray(path, dtype=np.intp)
    if path.shape != (params.n_tiers,):
        raise ValueError(f"path must list one location per tier, got {path.shape}")
    if np.any(path < 0) or np.any(path >= params.n_locations):
        raise ValueError("path contains an unknown location index")
    if not 0 <= dest < params.n_locations:
        raise ValueError(f"unknown destination {dest}")
    F, G = _tier_factors(params, costs)
    scale = 1.0
    for n in range(params.n_tiers - 1):
        scale *= F[n][path[n], path[n + 1]]
    return float(scale * G[path[-1], dest])


def path_share(path, dest: int, params: EconomyParams, costs) -> float:
    """Probability that destination ``dest`` sources along ``path``."""
    paths, scales = path_scale_matrix(params, costs)
    path = np.asarray(path, dtype=np.intp)
    idx = int(np.ravel_multi_index(tuple(path), (params.n_locations,) * params.n_tiers))
    return float(scales[idx, dest] / scales[:, dest].sum())


def path_share_matrix(params: EconomyParams, costs) -> tuple[np.ndarray, np.ndarray]:
    """All path shares at once; columns (destinations) each sum to 1."""
    paths, scales = path_scale_matrix(params, costs)
    return paths, scales / scales.sum(axis=0, keepdims=True)


def price_indices(params: EconomyParams, costs) -> np.ndarray:
    """CES price index of the final good in every destination."""
    _, scales = path_scale_matrix(params, costs)
    k = kappa(params.theta, params.sigma)
    return k * scales.sum(axis=0) ** (-1.0 / params.theta)


def price_index(dest: int, params: EconomyParams, costs) -> float:
    if not 0 <= dest < params.n_locations:
        raise ValueError(f"unknown destination {dest}")
    return float(price_indices(params, costs)[dest])


def final_demand_shares(params: EconomyParams, costs) -> np.ndarray:
    """Share of each destination's final spending by assembly location.

    Returns an array indexed ``[src, dest]`` whose columns sum to 1: the
    fraction of dest's final-good purchases assembled in src, aggregated
    over every upstream configuration.
    """
    paths, shares = path_share_matrix(params, costs)
    J = params.n_locations
    out = np.zeros((J, J))
    np.add.at(out, paths[:, -1], shares)
    return out


def final_demand_share(src: int, dest: int, params: EconomyParams, costs) -> float:
    return float(final_demand_shares(params, costs)[src, dest])


def tier_participation(params: EconomyParams, costs) -> np.ndarray:
    """Probability that location i hosts tier n of dest j's supply chain.

    Returns an array of shape (N, J, J) indexed ``[tier, location, dest]``;
    each (tier, dest) slice sums to 1 over locations.
    """
    paths, shares = path_share_matrix(params, costs)
    J, N = params.n_locations, params.n_tiers
    out = np.zeros((N, J, J))
    for n in range(N):
        np.add.at(out[n], paths[:, n], shares)
    return out


def intermediate_flow_shares(params: EconomyParams, costs,
                             expenditure_weights=None) -> np.ndarray:
    """Sourcing shares of cross-tier input purchases, ``[src, buyer]``.

    Each hop between contiguous tiers moves tier-n output worth ``beta[n]``
    per unit of final-good value.  Flows are aggregated over hops and over
    final destinations (weighted by ``expenditure_weights``, uniform when
    omitted) and normalised per buying location, so columns sum to 1.
    Requires at least two tiers.
    """
    if params.n_tiers < 2:
        raise ValueError("intermediate flows need at least two tiers")
    J = params.n_locations
    if expenditure_weights is None:
        w = np.full(J, 1.0 / J)
    else:
        w = _positive_array(expenditure_weights, (J,), "expenditure_weights")
        w = w / w.sum()
    paths, shares = path_share_matrix(params, costs)
    weighted = shares @ w  # (P,) spending share of each chain
    flows = np.zeros((J, J))
    for n in range(params.n_tiers - 1):
        np.add.at(flows, (paths[:, n], paths[:, n + 1]),
                  params.beta[n] * weighted)
    total = flows.sum(axis=0, keepdims=True)
    return np.divide(flows, total, out=np.zeros_like(flows), where=total > 0)


def intermediate_flow_share(src: int, dest: int, params: EconomyParams, costs,
                            expenditure_weights=None) -> float:
    return float(intermediate_flow_shares(params, costs, expenditure_weights)[src, dest])


def local_chain_real_wage(j: int, params: EconomyParams, pi_jj: float) -> float:
    """Real income implied by the purely local chain share.

    Given the probability ``pi_jj`` that j sources its final good through a
    chain run entirely at home, real income satisfies

        w_j / P_j = (kappa * tau_jj**sum(beta))**(-1)
                    * (prod_n T[j, n]**(alpha_n beta_n) / pi_jj)**(1/theta),

    an identity that lets the gains from fragmentation be read off a single
    observable share.  With composite costs it returns c_j / P_j.
    """
    if not 0 <= j < params.n_locations:
        raise ValueError(f"unknown location {j}")
    if not 0.0 < pi_jj <= 1.0:
        raise ValueError("pi_jj must lie in (0, 1]")
    k = kappa(params.theta, params.sigma)
    tech = float(np.prod(params.T[j] ** (params.alpha * params.beta)))
    tau_jj = params.tau[j, j] ** float(np.sum(params.beta))
    return (tech / pi_jj) ** (1.0 / params.theta) / (k * tau_jj)


def chain_productivity_location(path, params: EconomyParams) -> float:
    """Frechet location parameter of a chain's end-to-end productivity."""
    path = np.asarray(path, dtype=np.intp)
    if path.shape != (params.n_tiers,):
        raise ValueError(f"path must list one location per tier, got {path.shape}")
    ab = params.alpha * params.beta
    return float(np.prod(params.T[path, np.arange(params.n_tiers)] ** ab))


def chain_productivity_cdf(z: float, path, params: EconomyParams) -> float:
    """P(chain productivity <= z); Frechet with the tier-weighted location.

    The chain draw combines tier-level Frechet draws so that

        F(z) = exp(-z**(-theta) * prod_n T[l_n, n]**(alpha_n beta_n)).
    """
    if z <= 0.0:
        return 0.0
    loc = chain_productivity_location(path, params)
    return math.exp(-(z ** (-params.theta)) * loc)


def chain_productivity_theta_sensitivity(z: float, path, params: EconomyParams) -> float:
    """Analytic derivative of the chain productivity CDF in theta."""
    if z <= 0.0:
        return 0.0
    loc = chain_productivity_location(path, params)
    F = math.exp(-(z ** (-params.theta)) * loc)
    return F * loc * z ** (-params.theta) * math.log(z)
