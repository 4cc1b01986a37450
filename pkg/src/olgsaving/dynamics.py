"""Transitional wage dynamics and steady states.

The fraction of entrepreneurs this period fixes next period's capital,
k' = R pi(w, lambda), and hence next period's wage. In a small open economy
capital is instead pinned down by the world interest rate,
k' = (f')^-1(r* phi(w, lambda) / R).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from olgsaving.constants import (
    CONVERGENCE_TOL,
    SLOPE_STEP,
    STEADY_GRID_N,
    STEADY_MARGIN,
    STEADY_MIN_GRID_N,
    STEADY_XTOL,
    WAGE_UPPER,
)
from olgsaving.equilibrium import (
    check_wage,
    entrepreneur_fraction,
    equilibrium_state,
    rent,
    saving_elasticity_w,
)
from olgsaving.errors import DomainError
from olgsaving.utils import bisect_root, open_grid, sign_changes

logger = logging.getLogger(__name__)

CORNER_NOTE = "w = 0 is always a corner steady state"


def step(w, params):
    """Next period's wage in the closed economy.

    Args:
        w: Current wage in (0, 2).
        params: EconomyParams.

    Returns:
        w(R pi(w, lambda)), which lies in (0, w(R)).

    Example:
        step(0.5, EconomyParams(lam=0.5, r=2.0))  # 0.67 * 0.585786**0.33
    """
    capital = params.r * entrepreneur_fraction(w, params.lam)
    return params.production.wage(capital)


def open_economy_step(w, r_star, params):
    """Next period's wage in a small open economy facing interest rate r*.

    Raises:
        InversionError: If r* phi / R is outside the range of f'.
    """
    check_wage(w)
    target = r_star * rent(w, params.lam) / params.r
    capital = params.production.capital_of_marginal_product(target)
    return params.production.wage(capital)


def map_slope(w, params, r_star=None, h=SLOPE_STEP):
    """Central-difference slope of the wage map at w."""
    h = min(h, w / 2.0, (WAGE_UPPER - w) / 2.0)
    if r_star is None:
        return (step(w + h, params) - step(w - h, params)) / (2.0 * h)
    return (open_economy_step(w + h, r_star, params)
            - open_economy_step(w - h, r_star, params)) / (2.0 * h)


def accumulation_ratio(w, params):
    """Ratio Pi(w, lambda) = w^-1(w) / (s(w, lambda) w); steady states solve Pi = R."""
    return params.production.capital_of_wage(w) / entrepreneur_fraction(w, params.lam)


def uniqueness_margin(w, params):
    """Value of (w (w^-1)'(w) / w^-1(w) - 1) - w s_1 / s at w.

    The accumulation ratio is increasing wherever this is positive; when it
    holds across the state space the interior steady state is unique.
    """
    elasticity = params.production.inverse_wage_elasticity(w)
    return elasticity - 1.0 - saving_elasticity_w(w, params.lam)


@dataclass(frozen=True)
class Trajectory:
    """Equilibrium sequence w_0, ..., w_T with the full state at each date.

    Attributes:
        params: Economy the path was simulated for.
        states: EquilibriumState per period.
        r_star: World interest rate for an open economy, None when closed.
        converged: Whether |w_t - w_{t-1}| fell below the tolerance.
        converged_at: First such t, or None.
    """

    params: object
    states: Tuple = field(default_factory=tuple)
    r_star: Optional[float] = None
    converged: bool = False
    converged_at: Optional[int] = None

    def __len__(self):
        return len(self.states)

    def wages(self):
        return np.array([state.w for state in self.states])

    def capitals(self):
        return np.array([state.k for state in self.states])

    def outputs(self):
        return np.array([state.y for state in self.states])

    def saving_rates(self):
        return np.array([state.s for state in self.states])

    def rows(self):
        """Per-period dictionaries with t first."""
        rows = []
        for t, state in enumerate(self.states):
            row = {"t": t}
            row.update(state.as_dict())
            rows.append(row)
        return rows


def simulate(w0, T, params, r_star=None):
    """Iterate the wage map for T periods from w0.

    Args:
        w0: Initial wage in (0, 2).
        T: Number of periods, at least 1.
        params: EconomyParams.
        r_star: Optional world interest rate; switches to the open-economy law.

    Returns:
        Trajectory with T + 1 states.

    Raises:
        DomainError: If w0 or a later wage leaves (0, 2), or T < 1.
    """
    check_wage(w0)
    if not isinstance(T, int) or isinstance(T, bool) or T < 1:
        raise DomainError(f"horizon T must be an integer >= 1, got {T!r}")
    if r_star is not None and not (math.isfinite(r_star) and r_star > 0.0):
        raise DomainError(f"world interest rate must be positive, got {r_star!r}")

    wages = [w0]
    converged_at = None
    for t in range(1, T + 1):
        if r_star is None:
            w_next = step(wages[-1], params)
        else:
            w_next = open_economy_step(wages[-1], r_star, params)
        if not 0.0 < w_next < WAGE_UPPER:
            raise DomainError(f"wage left (0, 2) at t={t}: {w_next!r}")
        if converged_at is None and abs(w_next - wages[-1]) < CONVERGENCE_TOL:
            converged_at = t
        wages.append(w_next)

    if converged_at is None:
        logger.debug("trajectory from w0=%r did not converge in %d periods", w0, T)
    else:
        logger.debug("trajectory from w0=%r converged at t=%d", w0, converged_at)
    states = tuple(equilibrium_state(w, params) for w in wages)
    return Trajectory(params=params, states=states, r_star=r_star,
                      converged=converged_at is not None, converged_at=converged_at)


@dataclass(frozen=True)
class SteadyStateReport:
    """Interior steady states of the closed economy.

    Attributes:
        interior_wages: Sorted fixed-point wages.
        unique: True when the uniqueness criterion holds on the whole scan.
        stability_flags: Per root, whether |map slope| < 1.
        slopes: Per root, the numerical map slope.
        corner_note: The w = 0 corner steady state is always present.
    """

    interior_wages: Tuple[float, ...] = ()
    unique: bool = False
    stability_flags: Tuple[bool, ...] = ()
    slopes: Tuple[float, ...] = ()
    corner_note: str = CORNER_NOTE

    def as_dict(self):
        return {
            "corner": {"w": 0.0, "note": self.corner_note},
            "unique": self.unique,
            "interior": [
                {"w": w, "stable": stable, "slope": slope}
                for w, stable, slope in zip(self.interior_wages, self.stability_flags,
                                            self.slopes)
            ],
        }


def steady_states(params, grid_n=STEADY_GRID_N):
    """Find all interior steady states by scanning Pi(w, lambda) - R for sign changes.

    The scan covers (0, w(R)); each bracket is refined by bisection.

    Args:
        params: EconomyParams.
        grid_n: Scan resolution, at least 1000.

    Returns:
        SteadyStateReport; empty when no sign change is found.
    """
    if grid_n < STEADY_MIN_GRID_N:
        raise DomainError(f"grid_n must be at least {STEADY_MIN_GRID_N}, got {grid_n}")
    upper = min(WAGE_UPPER, params.production.wage(params.r))
    grid = open_grid(0.0, upper, grid_n, margin=STEADY_MARGIN)

    def excess(w):
        return accumulation_ratio(w, params) - params.r

    values = np.array([excess(w) for w in grid])
    margins = np.array([uniqueness_margin(w, params) for w in grid])
    unique = bool(np.all(margins > 0.0))

    roots = []
    for i in sign_changes(values):
        if values[i] == 0.0:
            roots.append(float(grid[i]))
            continue
        roots.append(bisect_root(excess, float(grid[i]), float(grid[i + 1]),
                                 xtol=STEADY_XTOL, what="steady state"))
    if values[-1] == 0.0:
        roots.append(float(grid[-1]))

    slopes = tuple(map_slope(w, params) for w in roots)
    logger.debug("found %d interior steady state(s) for lambda=%r R=%r",
                 len(roots), params.lam, params.r)
    return SteadyStateReport(
        interior_wages=tuple(roots),
        unique=unique,
        stability_flags=tuple(abs(slope) < 1.0 for slope in slopes),
        slopes=slopes,
    )
