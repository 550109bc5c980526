"""Two-state disaster regimes and one-shot shock draws.

Each location sits in a "normal" or "shock" regime.  Per period a normal
location is hit with probability eta and a hit location recovers with
probability lam, giving a stationary shock share of eta / (eta + lam).
For the scenario experiments a single world-level draw is used instead: no
shock with probability 1 - eta, otherwise the shock lands on East with
conditional probability zeta and on South with 1 - zeta.  A shock destroys
the local labour force for exactly one period.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

NORMAL = 0
SHOCK = 1

# Location conventions of the two-region experiments.
EAST = 0
SOUTH = 1


@dataclass
class ShockParams:
    """Arrival rate eta, recovery rate lam and East-conditional odds zeta."""

    eta: float
    lam: float
    zeta: float

    def __post_init__(self):
        for name in ("eta", "lam", "zeta"):
            v = float(getattr(self, name))
            setattr(self, name, v)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    def to_dict(self) -> dict:
        return {"eta": self.eta, "lam": self.lam, "zeta": self.zeta}

    @classmethod
    def from_dict(cls, d: dict) -> "ShockParams":
        try:
            return cls(eta=float(d["eta"]), lam=float(d["lam"]), zeta=float(d["zeta"]))
        except KeyError as err:
            raise ValueError(f"shock config missing key: {err.args[0]}") from None


@dataclass
class RegimeState:
    """Per-location regime flags plus the time spent in the current regime."""

    state: np.ndarray
    periods_in_state: np.ndarray

    def __post_init__(self):
        self.state = np.asarray(self.state, dtype=np.intp)
        self.periods_in_state = np.asarray(self.periods_in_state, dtype=np.intp)
        if self.state.shape != self.periods_in_state.shape:
            raise ValueError("state and periods_in_state must align")
        if not np.all(np.isin(self.state, (NORMAL, SHOCK))):
            raise ValueError("regime flags must be NORMAL or SHOCK")

    @classmethod
    def all_normal(cls, n_locations: int) -> "RegimeState":
        return cls(state=np.zeros(n_locations, dtype=np.intp),
                   periods_in_state=np.zeros(n_locations, dtype=np.intp))


def step_regime(state: RegimeState, params: ShockParams, rand) -> RegimeState:
    """Advance every location one period using uniform draws in [0, 1).

    ``rand`` takes one draw per location (a scalar is broadcast, which
    correlates locations and is only meant for single-location chains).
    Normal locations flip on rand < eta, shocked ones recover on
    rand < lam.
    """
    u = np.broadcast_to(np.asarray(rand, dtype=float), state.state.shape)
    if np.any(u < 0.0) or np.any(u >= 1.0):
        raise ValueError("uniform draws must lie in [0, 1)")
    is_shock = state.state == SHOCK
    flip = np.where(is_shock, u < params.lam, u < params.eta)
    new_state = np.where(flip, 1 - state.state, state.state)
    periods = np.where(flip, 0, state.periods_in_state + 1)
    return RegimeState(state=new_state, periods_in_state=periods)


def simulate_regime(params: ShockParams, draws, initial: int = NORMAL) -> np.ndarray:
    """Single-location regime path over a sequence of uniform draws.

    Applies the same transition rule as :func:`step_regime` but in a tight
    scalar loop, so million-period occupancy experiments stay cheap.
    Returns the regime after each draw.
    """
    if initial not in (NORMAL, SHOCK):
        raise ValueError("initial regime must be NORMAL or SHOCK")
    u = np.asarray(draws, dtype=float)
    if u.ndim != 1:
        raise ValueError("draws must be a 1-d sequence of uniforms")
    if u.size and (u.min() < 0.0 or u.max() >= 1.0):
        raise ValueError("uniform draws must lie in [0, 1)")
    eta, lam = params.eta, params.lam
    state = initial
    out = np.empty(u.size, dtype=np.intp)
    for t, x in enumerate(u.tolist()):
        if state == NORMAL:
            if x < eta:
                state = SHOCK
        elif x < lam:
            state = NORMAL
        out[t] = state
    return out


@dataclass(frozen=True)
class ShockDraw:
    """Outcome of one world draw; ``location`` is None when nothing is hit."""

    location: Optional[int]

    @property
    def label(self) -> str:
        if self.location is None:
            return "none"
        return {EAST: "east", SOUTH: "south"}.get(self.location, str(self.location))


def draw_shock(params: ShockParams, rand: float) -> ShockDraw:
    """Single world-level draw: none / East / South.

    Splits [0, 1) into [0, 1-eta) -> none, then a zeta : 1-zeta split of
    the remaining mass between East and South.
    """
    u = float(rand)
    if not 0.0 <= u < 1.0:
        raise ValueError("uniform draw must lie in [0, 1)")
    if u < 1.0 - params.eta:
        return ShockDraw(location=None)
    if u < 1.0 - params.eta + params.eta * params.zeta:
        return ShockDraw(location=EAST)
    return ShockDraw(location=SOUTH)


def apply_shock(labor, draw: ShockDraw) -> np.ndarray:
    """Labour endowments after the draw: the hit location loses everything."""
    out = np.array(labor, dtype=float, copy=True)
    if draw.location is not None:
        if not 0 <= draw.location < out.shape[0]:
            raise ValueError(f"shock location {draw.location} out of range")
        out[draw.location] = 0.0
    return out


def stationary_share(params: ShockParams) -> float:
    """Long-run fraction of periods a location spends in the shock regime."""
    total = params.eta + params.lam
    if total == 0.0:
        raise ValueError("stationary share undefined when eta = lam = 0")
    return params.eta / total
