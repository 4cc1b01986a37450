"""Static within-period equilibrium of the credit-constrained economy.

Given this period's wage w and the pledgeability lambda, young agents choose
between lending (investor) and running an indivisible one-unit project
(entrepreneur). The entrepreneurial rent phi adjusts until both occupations
give the same lifetime utility; the number of entrepreneurs then adjusts to
clear the credit market.

All functions are pure. The wage must lie in (0, 2) and lambda in (0, 1);
wages at or above 2(1 - lambda) are on the constant branch where the credit
constraint no longer binds.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from olgsaving.constants import (
    BRANCH_TOLERANCE,
    GRID_SEARCH_COARSE,
    GRID_SEARCH_RESOLUTION,
    INVESTOR_SAVING_RATE,
    INVESTOR_UTILITY,
    RENT_BRACKET_MARGIN,
    RENT_MAXITER,
    RENT_XTOL,
    WAGE_UPPER,
)
from olgsaving.errors import DomainError
from olgsaving.production import CobbDouglas, ProductionFunction
from olgsaving.utils import bisect_root

logger = logging.getLogger(__name__)


def check_wage(w):
    """Reject wages outside the open state space (0, 2)."""
    if not (isinstance(w, (int, float)) and math.isfinite(w)) or not 0.0 < w < WAGE_UPPER:
        raise DomainError(f"wage must lie in (0, 2), got {w!r}")


def check_pledgeability(lam):
    """Reject pledgeability outside (0, 1)."""
    if not (isinstance(lam, (int, float)) and math.isfinite(lam)) or not 0.0 < lam < 1.0:
        raise DomainError(f"pledgeability lambda must lie in (0, 1), got {lam!r}")


def binding(w, lam):
    """True when the credit constraint binds, i.e. w < 2(1 - lambda)."""
    return w < 2.0 * (1.0 - lam) - BRANCH_TOLERANCE


@dataclass(frozen=True)
class EconomyParams:
    """Full parameterisation of one economy.

    Attributes:
        lam: Pledgeability fraction in (0, 1).
        r: Units of capital per unit of investment, in (0, R+).
        production: Production technology.
        beta: Discount factor (1 in the base model).
        investment_size: Minimum investment size I (1 in the base model).
    """

    lam: float
    r: float
    production: ProductionFunction = CobbDouglas()
    beta: float = 1.0
    investment_size: float = 1.0

    def __post_init__(self):
        check_pledgeability(self.lam)
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise DomainError(f"beta must be positive, got {self.beta!r}")
        if not (math.isfinite(self.investment_size) and self.investment_size > 0.0):
            raise DomainError(
                f"investment size must be positive, got {self.investment_size!r}")
        if not (math.isfinite(self.r) and self.r > 0.0):
            raise DomainError(f"project yield R must be positive, got {self.r!r}")
        upper = self.production.r_plus()
        if self.r >= upper:
            raise DomainError(
                f"project yield R={self.r!r} must be below R+={upper!r} so that w(R) < 2")

    def replace(self, **changes):
        """Copy with some fields changed (validated again)."""
        fields = {
            "lam": self.lam,
            "r": self.r,
            "production": self.production,
            "beta": self.beta,
            "investment_size": self.investment_size,
        }
        fields.update(changes)
        return EconomyParams(**fields)


@dataclass(frozen=True)
class EquilibriumState:
    """Equilibrium bundle at one date.

    Attributes:
        w: Wage.
        phi: Entrepreneurial rent (>= 1).
        s_b: Entrepreneur saving rate.
        s_l: Investor saving rate.
        s: National saving rate.
        pi: Fraction (mass) of entrepreneurs.
        k: Capital stock that pays the wage.
        y: Output per capita.
    """

    w: float
    phi: float
    s_b: float
    s_l: float
    s: float
    pi: float
    k: float
    y: float

    def as_dict(self):
        return {
            "w": self.w, "k": self.k, "y": self.y, "phi": self.phi,
            "s_b": self.s_b, "s_l": self.s_l, "s": self.s, "pi": self.pi,
        }


@dataclass(frozen=True)
class EntrepreneurChoice:
    """Outcome of the entrepreneur's saving problem.

    When feasible is False the credit constraint cannot be met even by saving
    the whole wage; saving_rate and utility are then None.
    """

    feasible: bool
    saving_rate: Optional[float] = None
    utility: Optional[float] = None


def psi(w, lam):
    """The radical sqrt(1 - 2w + w^2 / (1 - lambda)).

    Args:
        w: Wage in (0, 2(1 - lambda)).
        lam: Pledgeability in (0, 1).

    Returns:
        The square root; its radicand is at least lambda, with the minimum
        at w = 1 - lambda.

    Raises:
        DomainError: If w is off the binding branch.
    """
    check_pledgeability(lam)
    if not (math.isfinite(w) and 0.0 < w < 2.0 * (1.0 - lam)):
        raise DomainError(f"psi needs 0 < w < 2(1 - lambda) = {2.0 * (1.0 - lam)!r}, got {w!r}")
    radicand = 1.0 - 2.0 * w + w * w / (1.0 - lam)
    if radicand < 0.0:
        raise ArithmeticError(f"negative radicand {radicand!r} at w={w!r}, lambda={lam!r}")
    return math.sqrt(radicand)


def rent(w, lam):
    """Equilibrium entrepreneurial rent phi(w, lambda).

    Returns (1 - w + psi) / (2 lambda) while the constraint binds and
    exactly 1 from w = 2(1 - lambda) on.

    Example:
        rent(0.5, 0.5)  # 1.2071067811865475
    """
    check_wage(w)
    check_pledgeability(lam)
    if not binding(w, lam):
        return 1.0
    return (1.0 - w + psi(w, lam)) / (2.0 * lam)


def entrepreneur_utility(w, phi, lam):
    """Indirect utility index U^b(w, phi, lambda) of an entrepreneur.

    Uses the two-branch closed form: the unconstrained optimum when
    w >= 1 - (2 lambda - 1) phi, the constrained one otherwise.

    Returns:
        The utility index, or None when the constraint is unattainable
        (w < 1 - lambda phi).
    """
    if w < 1.0 - lam * phi:
        return None
    if w >= 1.0 - (2.0 * lam - 1.0) * phi:
        return 0.25 * (1.0 + (phi - 1.0) / w) ** 2
    return (1.0 - (1.0 - lam * phi) / w) * (1.0 - lam) * phi / w


def saving_objective(s, w, phi):
    """Entrepreneur objective (1 - s)((phi - 1)/w + s); works on arrays."""
    return (1.0 - s) * ((phi - 1.0) / w + s)


def optimal_entrepreneur_saving(w, phi, lam):
    """Optimal entrepreneur saving rate for given wage, rent and pledgeability.

    Args:
        w: Wage, positive.
        phi: Rent, at least 1.
        lam: Pledgeability in (0, 1).

    Returns:
        EntrepreneurChoice with s^b = max{(1 - (phi - 1)/w)/2, (1 - lambda phi)/w}
        clipped to [0, 1] and the utility at that saving rate, or an
        infeasible choice when w < 1 - lambda phi.
    """
    if not (math.isfinite(w) and w > 0.0):
        raise DomainError(f"wage must be positive, got {w!r}")
    if not (math.isfinite(phi) and phi >= 1.0):
        raise DomainError(f"rent must be at least 1, got {phi!r}")
    check_pledgeability(lam)
    if w < 1.0 - lam * phi:
        return EntrepreneurChoice(feasible=False)
    unconstrained = 0.5 * (1.0 - (phi - 1.0) / w)
    constrained = (1.0 - lam * phi) / w
    s_b = min(max(unconstrained, constrained, 0.0), 1.0)
    return EntrepreneurChoice(feasible=True, saving_rate=s_b,
                              utility=float(saving_objective(s_b, w, phi)))


def entrepreneur_saving_rate(w, lam):
    """Equilibrium entrepreneur saving rate s^b(w, lambda).

    On the binding branch this is (1 - lambda phi)/w, evaluated through the
    indifference identity 1 - w / (4 (1 - lambda) phi) which avoids the
    cancellation of 1 - lambda phi for small wages. Constant 1/2 otherwise.
    """
    phi = rent(w, lam)
    if not binding(w, lam):
        return INVESTOR_SAVING_RATE
    return 1.0 - w / (4.0 * (1.0 - lam) * phi)


def national_saving_rate(w, lam):
    """National saving rate s(w, lambda) = 1 / (1 + psi), or 1/2 on the plateau.

    Example:
        national_saving_rate(0.5, 0.5)  # 0.5857864376269049
    """
    check_wage(w)
    check_pledgeability(lam)
    if not binding(w, lam):
        return INVESTOR_SAVING_RATE
    return 1.0 / (1.0 + psi(w, lam))


def entrepreneur_fraction(w, lam):
    """Fraction of young agents who become entrepreneurs, pi = s w."""
    return national_saving_rate(w, lam) * w


def equilibrium_state(w, params):
    """Assemble the full equilibrium bundle at wage w.

    Args:
        w: Wage in (0, 2).
        params: EconomyParams.

    Returns:
        EquilibriumState.
    """
    lam = params.lam
    phi = rent(w, lam)
    s = national_saving_rate(w, lam)
    k = params.production.capital_of_wage(w)
    return EquilibriumState(
        w=w,
        phi=phi,
        s_b=entrepreneur_saving_rate(w, lam),
        s_l=INVESTOR_SAVING_RATE,
        s=s,
        pi=s * w,
        k=k,
        y=params.production.output(k),
    )


def clearing_residual(state):
    """Credit-market excess: entrepreneurs' borrowing minus investors' lending.

    pi (1 - s^b w) - (1 - pi) w / 2; zero at every constructed state.
    """
    lhs = state.pi * (1.0 - state.s_b * state.w)
    rhs = (1.0 - state.pi) * state.w * state.s_l
    return lhs - rhs


def saving_elasticity_w(w, lam):
    """Elasticity of the national saving rate in the wage, w s_1 / s.

    Closed form s^2 w / (1 - s) (1 - w / (1 - lambda)); zero on the plateau.
    Positive below w = 1 - lambda, negative above.
    """
    s = national_saving_rate(w, lam)
    if not binding(w, lam):
        return 0.0
    return s * s * w / (1.0 - s) * (1.0 - w / (1.0 - lam))


def saving_elasticity_lambda(w, lam):
    """Elasticity of the national saving rate in pledgeability, lambda s_2 / s.

    Closed form -lambda s^2 / (2 (1 - s)) (w / (1 - lambda))^2; strictly
    negative on the binding branch and zero on the plateau.
    """
    s = national_saving_rate(w, lam)
    if not binding(w, lam):
        return 0.0
    ratio = w / (1.0 - lam)
    return -lam * s * s / (2.0 * (1.0 - s)) * ratio * ratio


def rent_slope(w, lam):
    """Derivative phi_1 = (w / (2(1 - lambda)) - phi) / psi on the binding branch."""
    phi = rent(w, lam)
    if not binding(w, lam):
        return 0.0
    return (w / (2.0 * (1.0 - lam)) - phi) / psi(w, lam)


def rent_elasticity_lambda(w, lam):
    """Elasticity lambda phi_2 / phi, which lies in (-1, 0) on the binding branch."""
    phi = rent(w, lam)
    if not binding(w, lam):
        return 0.0
    return w * w / (4.0 * (1.0 - lam) ** 2) / (psi(w, lam) * phi) - 1.0


def fraction_slope(w, lam):
    """Derivative pi_1 of the entrepreneur fraction in the wage."""
    s = national_saving_rate(w, lam)
    if not binding(w, lam):
        return s
    return s * (1.0 - s * w / psi(w, lam) * (w / (1.0 - lam) - 1.0))


def rent_by_bisection(w, lam):
    """Rent found by solving U^b(w, phi, lambda) = 1/4 numerically.

    An oracle for rent(): it never uses the closed form. The bracket sits
    just inside (1, 1/lambda).
    """
    check_wage(w)
    check_pledgeability(lam)
    if not binding(w, lam):
        return 1.0

    def excess(phi):
        utility = entrepreneur_utility(w, phi, lam)
        if utility is None:
            return -INVESTOR_UTILITY
        return utility - INVESTOR_UTILITY

    return bisect_root(excess, 1.0 + RENT_BRACKET_MARGIN, 1.0 / lam - RENT_BRACKET_MARGIN,
                       xtol=RENT_XTOL, maxiter=RENT_MAXITER, what="rent")


def grid_search_entrepreneur_saving(w, phi, lam, resolution=GRID_SEARCH_RESOLUTION):
    """Brute-force the entrepreneur problem on a grid of saving rates.

    A coarse pass over [0, 1] locates the best feasible region, a fine pass
    at the requested resolution searches around it, and a parabola through
    the best fine point and its neighbours refines the answer. The
    constraint boundary (1 - lambda phi)/w is always part of the grid.

    Returns:
        EntrepreneurChoice, infeasible when no grid point meets the constraint.
    """
    floor = (1.0 - lam * phi) / w
    if floor > 1.0:
        return EntrepreneurChoice(feasible=False)
    low = max(floor, 0.0)

    coarse = np.append(np.arange(0.0, 1.0 + GRID_SEARCH_COARSE / 2, GRID_SEARCH_COARSE), low)
    coarse = coarse[coarse >= low]
    centre = coarse[np.argmax(saving_objective(coarse, w, phi))]

    start = max(low, centre - GRID_SEARCH_COARSE)
    stop = min(1.0, centre + GRID_SEARCH_COARSE)
    fine = np.append(np.arange(start, stop + resolution / 2, resolution), low)
    fine = fine[(fine >= low) & (fine <= 1.0)]
    values = saving_objective(fine, w, phi)
    best = float(fine[np.argmax(values)])

    h = resolution
    f_minus = saving_objective(best - h, w, phi)
    f_mid = saving_objective(best, w, phi)
    f_plus = saving_objective(best + h, w, phi)
    curvature = f_plus - 2.0 * f_mid + f_minus
    if curvature < 0.0:
        vertex = best - h * (f_plus - f_minus) / (2.0 * curvature)
        refined = min(max(vertex, low), 1.0)
        if saving_objective(refined, w, phi) >= f_mid:
            best = refined
    return EntrepreneurChoice(feasible=True, saving_rate=best,
                              utility=float(saving_objective(best, w, phi)))
