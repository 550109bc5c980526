"""Scripted shock scenarios and Monte Carlo survival experiments.

A scenario fixes a decision maker (individual firms or a planner), an
information environment (known shock odds vs an ambiguous interval) and a
scripted realisation (no shock, East hit, South hit).  The allocation is
chosen once; the shock state resets every period, so the stationary rule
would reproduce the same split each morning.  At the shock period the
scripted draw destroys the hit location's labour for exactly one period,
and the run records supplier counts, survival and welfare period by period.

Welfare is the destination household's real wage scaled by the love-of-
variety factor of the surviving supplier basket relative to the full one,
and drops to zero in any period the chain is dead.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from .chains import EconomyParams
from .equilibrium import EquilibriumSolution, SolverConfig, solve_equilibrium
from .shocks import EAST, SOUTH, ShockDraw, ShockParams, draw_shock
from .sourcing import (
    BeliefSet,
    SourcingAllocation,
    UtilitySpec,
    allocation_value,
    chain_survives,
    individual_sourcing,
    planner_ambiguity_sourcing,
    planner_risk_sourcing,
    supplier_counts,
)

logger = logging.getLogger(__name__)

DECISION_MODES = ("individual", "planner")
INFO_ENVS = ("risk", "ambiguity")
REALIZATIONS = ("none", "east", "south")

_REALIZATION_DRAW = {
    "none": ShockDraw(None),
    "east": ShockDraw(EAST),
    "south": ShockDraw(SOUTH),
}


@dataclass
class ScenarioConfig:
    """Everything a scripted run needs; validated on construction."""

    economy: EconomyParams
    shock: ShockParams
    decision_mode: str = "individual"
    info_env: str = "risk"
    realization: str = "none"
    shock_period: int = 10
    horizon: int = 20
    suppliers_per_tier: int = 10
    grid_resolution: int = 1001
    destination: int = 0
    seed: int = 0
    utility: UtilitySpec = field(default_factory=UtilitySpec)
    beliefs: BeliefSet = field(default_factory=lambda: BeliefSet(0.0, 1.0))

    def __post_init__(self):
        if self.economy.n_locations != 2:
            raise ValueError("scenarios use a two-location East/South economy")
        if self.decision_mode not in DECISION_MODES:
            raise ValueError(f"decision_mode must be one of {DECISION_MODES}, "
                             f"got {self.decision_mode!r}")
        if self.info_env not in INFO_ENVS:
            raise ValueError(f"info_env must be one of {INFO_ENVS}, got {self.info_env!r}")
        if self.realization not in REALIZATIONS:
            raise ValueError(f"realization must be one of {REALIZATIONS}, "
                             f"got {self.realization!r}")
        self.shock_period = int(self.shock_period)
        self.horizon = int(self.horizon)
        if self.horizon < 1:
            raise ValueError("horizon must be at least one period")
        if not 1 <= self.shock_period <= self.horizon:
            raise ValueError("shock_period must lie within the horizon")
        self.suppliers_per_tier = int(self.suppliers_per_tier)
        if self.suppliers_per_tier < 1:
            raise ValueError("suppliers_per_tier must be at least 1")
        self.grid_resolution = int(self.grid_resolution)
        if self.grid_resolution < 2:
            raise ValueError("grid_resolution must be at least 2")
        if not 0 <= int(self.destination) < self.economy.n_locations:
            raise ValueError(f"destination {self.destination} is not a location")
        self.destination = int(self.destination)
        self.seed = int(self.seed)

    def to_dict(self) -> dict:
        return {
            "economy": self.economy.to_dict(),
            "shock": self.shock.to_dict(),
            "decision_mode": self.decision_mode,
            "info_env": self.info_env,
            "realization": self.realization,
            "shock_period": self.shock_period,
            "horizon": self.horizon,
            "suppliers_per_tier": self.suppliers_per_tier,
            "grid_resolution": self.grid_resolution,
            "destination": self.destination,
            "seed": self.seed,
            "utility": {"rho": self.utility.rho},
            "beliefs": self.beliefs.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioConfig":
        def section(name, loader, default=None):
            if name not in d:
                if default is not None:
                    return default
                raise ValueError(f"scenario config missing section '{name}'")
            try:
                return loader(d[name])
            except (ValueError, TypeError) as err:
                raise ValueError(f"{name}: {err}") from None

        economy = section("economy", EconomyParams.from_dict)
        shock = section("shock", ShockParams.from_dict)
        utility = section("utility", lambda u: UtilitySpec(rho=float(u["rho"])),
                          default=UtilitySpec())
        beliefs = section("beliefs", BeliefSet.from_dict,
                          default=BeliefSet(0.0, 1.0))
        kwargs = {}
        for key in ("decision_mode", "info_env", "realization", "shock_period",
                    "horizon", "suppliers_per_tier", "grid_resolution",
                    "destination", "seed"):
            if key in d:
                kwargs[key] = d[key]
        return cls(economy=economy, shock=shock, utility=utility,
                   beliefs=beliefs, **kwargs)


@dataclass
class TimeSeries:
    """One scripted run.  Supplier columns track the most upstream tier."""

    period: np.ndarray
    suppliers_east: np.ndarray
    suppliers_south: np.ndarray
    suppliers_total: np.ndarray
    chain_alive: np.ndarray
    welfare: np.ndarray
    allocation: SourcingAllocation
    decision_mode: str
    info_env: str
    realization: str

    COLUMNS = ("period", "suppliers_east", "suppliers_south",
               "suppliers_total", "chain_alive", "welfare")

    def rows(self):
        for t in range(len(self.period)):
            yield (int(self.period[t]), int(self.suppliers_east[t]),
                   int(self.suppliers_south[t]), int(self.suppliers_total[t]),
                   bool(self.chain_alive[t]), float(self.welfare[t]))


def choose_allocation(config: ScenarioConfig,
                      solution: EquilibriumSolution) -> SourcingAllocation:
    """Apply the configured decision rule; individuals ignore the info env."""
    econ = config.economy
    if config.decision_mode == "individual":
        return individual_sourcing(econ, config.shock,
                                   suppliers_per_tier=config.suppliers_per_tier,
                                   costs=solution.costs)
    if config.info_env == "risk":
        return planner_risk_sourcing(econ, config.shock, config.utility,
                                     grid_resolution=config.grid_resolution,
                                     suppliers_per_tier=config.suppliers_per_tier,
                                     costs=solution.costs)
    return planner_ambiguity_sourcing(econ, config.shock, config.beliefs,
                                      utility=config.utility,
                                      grid_resolution=config.grid_resolution,
                                      suppliers_per_tier=config.suppliers_per_tier,
                                      costs=solution.costs)


def run_scenario(config: ScenarioConfig,
                 solution: EquilibriumSolution | None = None,
                 allocation: SourcingAllocation | None = None) -> TimeSeries:
    """Simulate one scripted realisation period by period.

    The equilibrium and the allocation can be passed in to reuse across the
    scenario matrix; they do not depend on the scripted realisation.
    """
    if solution is None:
        solution = solve_equilibrium(config.economy, SolverConfig())
    if allocation is None:
        allocation = choose_allocation(config, solution)

    base_counts = supplier_counts(allocation)
    draw_hit = _REALIZATION_DRAW[config.realization]
    none_draw = _REALIZATION_DRAW["none"]
    real_wage = float(solution.real_wages[config.destination])
    full_value = allocation_value(allocation, none_draw, config.economy,
                                  solution.costs)

    T = config.horizon
    periods = np.arange(1, T + 1)
    east = np.empty(T, dtype=np.intp)
    south = np.empty(T, dtype=np.intp)
    alive = np.empty(T, dtype=bool)
    welfare = np.empty(T)
    for idx, t in enumerate(periods):
        draw = draw_hit if t == config.shock_period else none_draw
        counts = base_counts.copy()
        if draw.location is not None:
            counts[draw.location, :] = 0   # labour gone for this period
        east[idx] = counts[EAST, 0]
        south[idx] = counts[SOUTH, 0]
        alive[idx] = chain_survives(allocation, draw)
        if alive[idx]:
            value = allocation_value(allocation, draw, config.economy,
                                     solution.costs)
            welfare[idx] = real_wage * value / full_value
        else:
            welfare[idx] = 0.0

    return TimeSeries(period=periods, suppliers_east=east, suppliers_south=south,
                      suppliers_total=east + south, chain_alive=alive,
                      welfare=welfare, allocation=allocation,
                      decision_mode=config.decision_mode,
                      info_env=config.info_env, realization=config.realization)


def run_matrix(config: ScenarioConfig) -> dict:
    """All six cells (realisation x info environment) of one decision mode.

    Returns a dict keyed by (realization, info_env).  The equilibrium is
    shared; allocations are computed once per info environment since the
    scripted realisation never feeds back into the choice.
    """
    solution = solve_equilibrium(config.economy, SolverConfig())
    out = {}
    for env in INFO_ENVS:
        env_cfg = replace(config, info_env=env)
        alloc = choose_allocation(env_cfg, solution)
        for realization in REALIZATIONS:
            cell = replace(config, info_env=env, realization=realization)
            out[(realization, env)] = run_scenario(cell, solution=solution,
                                                   allocation=alloc)
    return out


@dataclass
class MonteCarloSummary:
    survival_rate: float
    mean_welfare: float
    stderr: float
    n_runs: int


def monte_carlo_survival(config: ScenarioConfig, n_runs: int,
                         seed: int) -> MonteCarloSummary:
    """Survival frequency when the shock realisation is drawn per run.

    Each run draws once at the shock period using an independent stream
    derived from (seed, run index), then replays the scripted engine.  A
    run counts as surviving when the chain is alive in every period.
    ``stderr`` is the binomial standard error of the survival rate.
    """
    if n_runs < 1:
        raise ValueError("need at least one run")
    solution = solve_equilibrium(config.economy, SolverConfig())
    allocation = choose_allocation(config, solution)

    # Only three realisations exist; precompute each outcome once.
    outcome = {}
    for realization in REALIZATIONS:
        ts = run_scenario(replace(config, realization=realization),
                          solution=solution, allocation=allocation)
        outcome[realization] = (bool(ts.chain_alive.all()),
                                float(ts.welfare.mean()))

    survived = 0
    welfare_sum = 0.0
    for run in range(n_runs):
        u = float(np.random.default_rng([seed, run]).random())
        draw = draw_shock(config.shock, u)
        alive, mean_welfare = outcome[draw.label]
        survived += int(alive)
        welfare_sum += mean_welfare

    rate = survived / n_runs
    stderr = float(np.sqrt(rate * (1.0 - rate) / n_runs))
    return MonteCarloSummary(survival_rate=rate,
                             mean_welfare=welfare_sum / n_runs,
                             stderr=stderr, n_runs=n_runs)
