"""Wage equilibrium of the chain economy.

Labour market clearing requires that every location's wage bill equals the
labour payments earned through all the supply chains it participates in:

    w_i L_i = sum_j sum_n alpha_n beta_n Pr(i hosts tier n for j) w_j L_j .

Because participation probabilities sum to one over locations at every tier,
the right hand side redistributes world income without leaking, so the
residuals sum to zero at any wage vector (Walras's law).  Wages are only
determined up to scale and are pinned down by normalising world income.

The solver is a damped fixed point on that map.  With gamma < 1 composite
costs feed back through the price index, which adds an inner cost/price
fixed point per wage evaluation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .chains import EconomyParams, composite_cost, price_indices, tier_participation

logger = logging.getLogger(__name__)


class EquilibriumConvergenceError(RuntimeError):
    """Raised when the damped iteration fails to reach tolerance."""

    def __init__(self, message: str, residual_norm: float, iterations: int):
        super().__init__(message)
        self.residual_norm = residual_norm
        self.iterations = iterations


@dataclass
class SolverConfig:
    tolerance: float = 1e-10
    damping: float = 0.5          # weight on the new iterate
    max_iterations: int = 5000
    world_income: float = 1.0     # normalisation target for sum(w * L)
    initial_wages: np.ndarray | None = None
    inner_tolerance: float = 1e-14
    inner_max_iterations: int = 500

    def __post_init__(self):
        if not 0.0 < self.damping <= 1.0:
            raise ValueError("damping must lie in (0, 1]")
        if self.tolerance <= 0.0 or self.world_income <= 0.0:
            raise ValueError("tolerance and world_income must be positive")


@dataclass
class EquilibriumSolution:
    """Converged wages plus the prices and costs consistent with them."""

    wages: np.ndarray
    prices: np.ndarray
    costs: np.ndarray
    residual_norm: float
    iterations: int
    world_income: float
    walras_history: list = field(default_factory=list, repr=False)

    @property
    def real_wages(self) -> np.ndarray:
        return self.wages / self.prices


def solve_costs(wages, params: EconomyParams,
                tolerance: float = 1e-14, max_iterations: int = 500) -> tuple[np.ndarray, np.ndarray]:
    """Composite costs and price indices consistent with a wage vector.

    With gamma = 1 costs are the wages themselves.  Otherwise iterate
    c -> w**gamma * P(c)**(1-gamma), a log-space contraction with modulus
    1 - gamma.  Returns (costs, prices).
    """
    w = np.asarray(wages, dtype=float)
    if params.gamma == 1.0:
        return w.copy(), price_indices(params, w)
    c = w.copy()
    for _ in range(max_iterations):
        P = price_indices(params, c)
        c_next = composite_cost(w, P, params.gamma)
        gap = float(np.max(np.abs(np.log(c_next) - np.log(c))))
        c = c_next
        if gap < tolerance:
            return c, price_indices(params, c)
    raise EquilibriumConvergenceError(
        f"composite cost loop stalled at log-gap {gap:.3e}", gap, max_iterations)


def labor_market_residuals(wages, params: EconomyParams) -> np.ndarray:
    """Excess labour earnings at the given wages.

    residual_i = (chain labour income accruing to i) - w_i L_i, with prices
    and composite costs computed consistently from the wages.  The entries
    sum to zero for any strictly positive wage vector.
    """
    w = np.asarray(wages, dtype=float)
    if np.any(w <= 0.0) or not np.all(np.isfinite(w)):
        raise ValueError("wages must be finite and strictly positive")
    costs, _ = solve_costs(w, params)
    part = tier_participation(params, costs)          # (N, J, J)
    spending = w * params.L                            # (J,)
    ab = params.alpha * params.beta
    income = np.einsum("n,nij,j->i", ab, part, spending)
    return income - spending


def solve_equilibrium(params: EconomyParams,
                      config: SolverConfig | None = None) -> EquilibriumSolution:
    """Damped fixed point on the labour market clearing map.

    Each sweep replaces wages with a convex combination of the implied
    labour earnings per worker and renormalises world income.  Raises
    :class:`EquilibriumConvergenceError` with the last residual norm when
    the tolerance is not met within the iteration budget.
    """
    cfg = config or SolverConfig()
    J = params.n_locations
    if cfg.initial_wages is not None:
        w = np.asarray(cfg.initial_wages, dtype=float).copy()
        if w.shape != (J,) or np.any(w <= 0.0):
            raise ValueError("initial_wages must be strictly positive with one entry per location")
    else:
        w = np.full(J, 1.0, dtype=float)
    w *= cfg.world_income / float(w @ params.L)

    walras = []
    residual_norm = np.inf
    previous_norm = np.inf
    step = cfg.damping
    for it in range(cfg.max_iterations + 1):
        residual = labor_market_residuals(w, params)
        walras.append(float(residual.sum()))
        residual_norm = float(np.max(np.abs(residual))) / cfg.world_income
        if residual_norm < cfg.tolerance:
            costs, prices = solve_costs(w, params)
            logger.debug("equilibrium converged after %d iterations (residual %.3e)",
                         it, residual_norm)
            return EquilibriumSolution(
                wages=w, prices=prices, costs=costs,
                residual_norm=residual_norm, iterations=it,
                world_income=cfg.world_income, walras_history=walras)
        # A fixed step can lock into a two-cycle when theta is large; halve
        # it whenever the residual stops shrinking.
        if residual_norm >= previous_norm and step > cfg.damping / 256.0:
            step *= 0.5
            logger.debug("residual stalled at %.3e, damping reduced to %.4f",
                         residual_norm, step)
        previous_norm = residual_norm
        target = (residual + w * params.L) / params.L   # earnings per worker
        w = (1.0 - step) * w + step * target
        w *= cfg.world_income / float(w @ params.L)

    raise EquilibriumConvergenceError(
        f"no convergence after {cfg.max_iterations} iterations "
        f"(residual norm {residual_norm:.3e})",
        residual_norm, cfg.max_iterations)
