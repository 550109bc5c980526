"""Sourcing rules: who picks suppliers, and how they spread them.

Three decision makers are compared.  Atomistic firms chase the highest
expected continuation value and pile onto a single location.  A risk-averse
planner maximises expected CRRA utility over the three shock branches (no
shock, East hit, South hit) and diversifies.  An ambiguity-averse planner
only knows an interval for the East-conditional shock odds and plays the
max-min allocation, which for symmetric beliefs is an even split.

Allocations are fractions phi per location and tier, backed by an integer
number of suppliers.  Supplier counts use half-away-from-zero rounding,
keep at least one supplier wherever phi is positive, and are rebalanced so
each tier's total is preserved (independent rounding would occasionally
mint an extra supplier out of thin air, and a free extra variety distorts
every comparison downstream).  A chain survives a shock if every tier still
has at least one live supplier.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .chains import EconomyParams
from .equilibrium import SolverConfig, solve_equilibrium
from .shocks import EAST, SOUTH, ShockDraw, ShockParams

logger = logging.getLogger(__name__)

DEFAULT_GRID = 1001
DEFAULT_SUPPLIERS = 10

# Relative tolerance for calling two location scores a tie.
_TIE_RTOL = 1e-9


@dataclass
class UtilitySpec:
    """CRRA utility with relative risk aversion rho (log at rho = 1)."""

    rho: float = 2.0

    def __post_init__(self):
        self.rho = float(self.rho)
        if self.rho < 0.0:
            raise ValueError("rho must be nonnegative")

    def of(self, value: float) -> float:
        return crra_utility(value, self.rho)


def crra_utility(value: float, rho: float) -> float:
    """CRRA felicity; a dead chain (value 0) is -inf once rho >= 1."""
    if value < 0.0:
        raise ValueError("utility is defined for nonnegative values")
    if value == 0.0:
        return -math.inf if rho >= 1.0 else 0.0
    if rho == 1.0:
        return math.log(value)
    return value ** (1.0 - rho) / (1.0 - rho)


@dataclass
class BeliefSet:
    """Interval of East-conditional shock odds the planner deems possible."""

    zeta_lo: float
    zeta_hi: float

    def __post_init__(self):
        self.zeta_lo = float(self.zeta_lo)
        self.zeta_hi = float(self.zeta_hi)
        if not 0.0 <= self.zeta_lo <= self.zeta_hi <= 1.0:
            raise ValueError("beliefs must satisfy 0 <= zeta_lo <= zeta_hi <= 1")

    @classmethod
    def singleton(cls, zeta: float) -> "BeliefSet":
        return cls(zeta_lo=zeta, zeta_hi=zeta)

    @property
    def endpoints(self) -> tuple[float, ...]:
        if self.zeta_lo == self.zeta_hi:
            return (self.zeta_lo,)
        return (self.zeta_lo, self.zeta_hi)

    def to_dict(self) -> dict:
        return {"zeta_lo": self.zeta_lo, "zeta_hi": self.zeta_hi}

    @classmethod
    def from_dict(cls, d: dict) -> "BeliefSet":
        try:
            return cls(zeta_lo=float(d["zeta_lo"]), zeta_hi=float(d["zeta_hi"]))
        except KeyError as err:
            raise ValueError(f"belief config missing key: {err.args[0]}") from None


@dataclass
class SourcingAllocation:
    """Sourcing fractions phi[location, tier] over M[tier] suppliers."""

    phi: np.ndarray
    M: np.ndarray

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=float)
        if self.phi.ndim != 2:
            raise ValueError("phi must have shape (locations, tiers)")
        if np.any(self.phi < 0.0) or np.any(self.phi > 1.0):
            raise ValueError("sourcing fractions must lie in [0, 1]")
        col = self.phi.sum(axis=0)
        if not np.allclose(col, 1.0, atol=1e-9):
            raise ValueError("sourcing fractions must sum to 1 at every tier")
        self.M = np.asarray(self.M, dtype=np.intp)
        if self.M.shape != (self.phi.shape[1],):
            raise ValueError("M must give one supplier count per tier")
        if np.any(self.M < 1):
            raise ValueError("each tier needs at least one supplier")

    @classmethod
    def uniform_tiers(cls, weights, suppliers_per_tier: int, n_tiers: int) -> "SourcingAllocation":
        """Same location split at every tier, M suppliers each."""
        w = np.asarray(weights, dtype=float)
        phi = np.repeat(w[:, None], n_tiers, axis=1)
        return cls(phi=phi, M=np.full(n_tiers, int(suppliers_per_tier), dtype=np.intp))

    @property
    def n_tiers(self) -> int:
        return self.phi.shape[1]


def _apportion(weights: np.ndarray, total: int) -> np.ndarray:
    """Integer supplier counts for one tier.

    Rounds half away from zero per location, floors every positive weight
    at one supplier (when the total allows it), then restores the exact
    tier total by trimming the most over-rounded counts first and topping
    up the most under-rounded ones.
    """
    raw = weights * total
    counts = np.floor(raw + 0.5).astype(np.intp)
    need = (weights > 0.0).astype(np.intp)
    if need.sum() <= total:
        counts = np.maximum(counts, need)
    else:
        need = np.zeros_like(counts)  # guarantee infeasible, plain rounding
    while counts.sum() > total:
        over = counts - raw
        over[counts <= need] = -np.inf
        counts[int(np.argmax(over))] -= 1
    while counts.sum() < total:
        under = raw - counts
        counts[int(np.argmax(under))] += 1
    return counts


def supplier_counts(alloc: SourcingAllocation) -> np.ndarray:
    """Integer suppliers per location and tier, shape (J, n_tiers)."""
    out = np.empty(alloc.phi.shape, dtype=np.intp)
    for n in range(alloc.n_tiers):
        out[:, n] = _apportion(alloc.phi[:, n], int(alloc.M[n]))
    return out


def _surviving_counts(counts: np.ndarray, shock: ShockDraw) -> np.ndarray:
    if shock.location is None:
        return counts
    out = counts.copy()
    out[shock.location, :] = 0
    return out


def chain_survives(alloc: SourcingAllocation, shock: ShockDraw) -> bool:
    """True when every tier retains at least one live supplier."""
    left = _surviving_counts(supplier_counts(alloc), shock)
    return bool(np.all(left.sum(axis=0) >= 1))


def _value_from_counts(counts: np.ndarray, params: EconomyParams,
                       costs: np.ndarray) -> float:
    if np.any(counts.sum(axis=0) < 1):
        return 0.0
    s = (params.sigma - 1.0) / params.sigma
    per_location = (1.0 / costs) ** s          # variety quantity q = 1/c
    basket = float(counts.sum(axis=1) @ per_location)
    return basket ** (params.sigma / (params.sigma - 1.0))


def allocation_value(alloc: SourcingAllocation, shock: ShockDraw,
                     params: EconomyParams, costs) -> float:
    """Love-of-variety value of the surviving supplier basket.

    Zero when any tier loses all suppliers.  Otherwise every surviving
    supplier contributes one variety with quantity 1 / cost of its
    location, aggregated CES with elasticity sigma:

        Q = (sum_k q_k ** ((sigma-1)/sigma)) ** (sigma/(sigma-1)).

    Strictly increasing in the number of surviving varieties.
    """
    costs = np.asarray(costs, dtype=float)
    if costs.shape != (params.n_locations,) or np.any(costs <= 0.0):
        raise ValueError("costs must be strictly positive, one per location")
    if alloc.phi.shape[0] != params.n_locations:
        raise ValueError("allocation and economy disagree on the number of locations")
    counts = _surviving_counts(supplier_counts(alloc), shock)
    return _value_from_counts(counts, params, costs)


def _branch_values(counts: np.ndarray, params: EconomyParams,
                   costs: np.ndarray) -> tuple[float, float, float]:
    """Chain value under no shock, East hit, South hit."""
    return tuple(
        _value_from_counts(_surviving_counts(counts, ShockDraw(loc)), params, costs)
        for loc in (None, EAST, SOUTH)
    )


def _score(values: tuple[float, float, float], eta: float, zeta: float,
           rho: float) -> tuple[float, int, float]:
    """Ranking key (expected utility, branches survived, expected value).

    Zero-probability branches are skipped so that eta = 0 or degenerate
    zeta never produce 0 * inf.  The trailing fields only matter when every
    candidate is ruined (-inf expected utility): then allocations are
    ranked by how many shock branches they survive and by expected value
    with death counted as zero.
    """
    probs = (1.0 - eta, eta * zeta, eta * (1.0 - zeta))
    eu = 0.0
    ev = 0.0
    survived = 0
    for p, v in zip(probs, values):
        if p == 0.0:
            continue
        eu += p * crra_utility(v, rho)
        ev += p * v
        if v > 0.0:
            survived += 1
    return (eu, survived, ev)


def risk_objective(alloc: SourcingAllocation, params: EconomyParams,
                   shock_params: ShockParams, utility: UtilitySpec, costs) -> float:
    """Expected CRRA utility of an allocation over the three shock branches."""
    counts = supplier_counts(alloc)
    values = _branch_values(counts, params, np.asarray(costs, dtype=float))
    return _score(values, shock_params.eta, shock_params.zeta, utility.rho)[0]


def ambiguity_objective(alloc: SourcingAllocation, params: EconomyParams,
                        shock_params: ShockParams, beliefs: BeliefSet,
                        utility: UtilitySpec, costs) -> float:
    """Worst-case expected utility over the belief interval.

    Expected utility is linear in zeta for a fixed allocation, so the
    minimum sits at an interval endpoint; only the endpoints are checked.
    """
    counts = supplier_counts(alloc)
    values = _branch_values(counts, params, np.asarray(costs, dtype=float))
    return min(_score(values, shock_params.eta, z, utility.rho)[0]
               for z in beliefs.endpoints)


def _default_costs(params: EconomyParams, costs) -> np.ndarray:
    if costs is not None:
        c = np.asarray(costs, dtype=float)
        if c.shape != (params.n_locations,) or np.any(c <= 0.0):
            raise ValueError("costs must be strictly positive, one per location")
        return c
    return solve_equilibrium(params, SolverConfig()).costs


def individual_sourcing(params: EconomyParams, shock_params: ShockParams,
                        suppliers_per_tier: int = DEFAULT_SUPPLIERS,
                        costs=None) -> SourcingAllocation:
    """Corner allocation of atomistic firms.

    Each firm sources where the expected continuation value
    (1 - P(location hit)) / cost is highest, so all mass lands on the
    safest location, or the cheapest one when hit odds tie.  Exact ties
    are split equally.  Locations beyond the East/South pair are never hit
    by the one-shot draw, so only cost ranks them.
    """
    c = _default_costs(params, costs)
    J = params.n_locations
    hit = np.zeros(J)
    hit[EAST] = shock_params.eta * shock_params.zeta
    if J > 1:
        hit[SOUTH] = shock_params.eta * (1.0 - shock_params.zeta)
    scores = (1.0 - hit) / c
    top = scores.max()
    winners = scores >= top * (1.0 - _TIE_RTOL)
    phi = winners / winners.sum()
    return SourcingAllocation.uniform_tiers(phi, suppliers_per_tier, params.n_tiers)


def _grid_sweep(params: EconomyParams, key_fn, grid_resolution: int,
                suppliers_per_tier: int, costs: np.ndarray) -> SourcingAllocation:
    """Maximise a ranking key over the two-location allocation grid.

    Ties (plateaus of identical integer counts are common) go to the most
    diversified allocation, then to the smaller South share.
    """
    if params.n_locations != 2:
        raise ValueError("the planner grid search handles exactly two locations")
    if grid_resolution < 2:
        raise ValueError("grid resolution must be at least 2")
    xs = np.linspace(0.0, 1.0, grid_resolution)
    M = np.full(params.n_tiers, int(suppliers_per_tier), dtype=np.intp)
    best_key = None
    best_x = None
    for x in xs:
        counts1 = _apportion(np.array([1.0 - x, x]), int(M[0]))
        counts = np.repeat(counts1[:, None], params.n_tiers, axis=1)
        key = key_fn(_branch_values(counts, params, costs))
        rank = (key, -abs(x - 0.5), -x)
        if best_key is None or rank > best_key:
            best_key = rank
            best_x = x
    return SourcingAllocation.uniform_tiers(
        np.array([1.0 - best_x, best_x]), suppliers_per_tier, params.n_tiers)


def planner_risk_sourcing(params: EconomyParams, shock_params: ShockParams,
                          utility: UtilitySpec,
                          grid_resolution: int = DEFAULT_GRID,
                          suppliers_per_tier: int = DEFAULT_SUPPLIERS,
                          costs=None) -> SourcingAllocation:
    """Expected-utility maximising split over the allocation grid.

    With rho >= 1 a dead branch carries -inf utility, so any allocation
    that concentrates a tier in one shockable location is dominated and
    the optimum is interior.  The returned point is grid-optimal: no other
    grid allocation scores higher.
    """
    c = _default_costs(params, costs)

    def key(values):
        return _score(values, shock_params.eta, shock_params.zeta, utility.rho)

    return _grid_sweep(params, key, grid_resolution, suppliers_per_tier, c)


def planner_ambiguity_sourcing(params: EconomyParams, shock_params: ShockParams,
                               beliefs: BeliefSet,
                               utility: UtilitySpec | None = None,
                               grid_resolution: int = DEFAULT_GRID,
                               suppliers_per_tier: int = DEFAULT_SUPPLIERS,
                               costs=None) -> SourcingAllocation:
    """Max-min allocation over the belief interval for the shock odds.

    Evaluates the worst belief endpoint for every grid allocation and
    maximises that worst case (Gilboa-Schmeidler).  With symmetric costs
    and beliefs spanning [0, 1] the answer is an exact half split,
    whatever odds later materialise.  Defaults to log utility; a singleton
    belief reproduces the risk planner under the same utility.
    """
    c = _default_costs(params, costs)
    u = utility if utility is not None else UtilitySpec(rho=1.0)

    def key(values):
        return min(_score(values, shock_params.eta, z, u.rho)
                   for z in beliefs.endpoints)

    return _grid_sweep(params, key, grid_resolution, suppliers_per_tier, c)
