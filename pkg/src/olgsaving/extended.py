"""Equilibrium with a discount factor beta and minimum investment size I.

Agents maximise log c_1 + beta log c_2 and projects need I units of
investment. The wage only enters through x = w / I. The rent solves

    (1 - (1 - lambda phi)/x) ((1 - lambda) phi / x)^beta = beta^beta / (1 + beta)^(1 + beta)

which has no closed form for beta != 1 and is solved by bisection. At
beta = 1 and I = 1 every quantity reduces to the base model.
"""

import logging
import math
from dataclasses import dataclass

from olgsaving.constants import (
    BRANCH_TOLERANCE,
    FD_STEP,
    RENT_BRACKET_MARGIN,
    RENT_BRACKET_SHRINKS,
    RENT_MAXITER,
    RENT_XTOL,
)
from olgsaving.equilibrium import EntrepreneurChoice, check_pledgeability
from olgsaving.errors import BracketError, DomainError
from olgsaving.utils import bisect_root, log_elasticity

logger = logging.getLogger(__name__)


def _check_beta(beta):
    if not (isinstance(beta, (int, float)) and math.isfinite(beta) and beta > 0.0):
        raise DomainError(f"discount factor beta must be positive, got {beta!r}")


def _check_normalized_wage(x):
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0.0):
        raise DomainError(f"normalized wage w/I must be positive, got {x!r}")


def investor_saving_rate_extended(beta):
    """Investor saving rate beta / (1 + beta).

    Example:
        investor_saving_rate_extended(0.7)  # 7/17
    """
    _check_beta(beta)
    return beta / (1.0 + beta)


def investor_utility_extended(beta):
    """Investor utility index beta^beta / (1 + beta)^(1 + beta)."""
    _check_beta(beta)
    return beta ** beta / (1.0 + beta) ** (1.0 + beta)


def plateau_threshold(lam, beta):
    """Normalized wage (1 + beta)(1 - lambda)/beta above which the constraint is slack."""
    check_pledgeability(lam)
    _check_beta(beta)
    return (1.0 + beta) * (1.0 - lam) / beta


def _binding(x, lam, beta):
    return x < plateau_threshold(lam, beta) - BRANCH_TOLERANCE


def saving_objective_extended(s, x, phi, beta):
    """Entrepreneur objective (1 - s)((phi - 1)/x + s)^beta."""
    return (1.0 - s) * ((phi - 1.0) / x + s) ** beta


def optimal_entrepreneur_saving_extended(x, phi, lam, beta):
    """Entrepreneur saving rate with discounting.

    s^b = max{(beta - (phi - 1)/x)/(1 + beta), (1 - lambda phi)/x}, clipped to
    [0, 1]; infeasible when x < 1 - lambda phi.

    Returns:
        EntrepreneurChoice.
    """
    _check_normalized_wage(x)
    check_pledgeability(lam)
    _check_beta(beta)
    if not (math.isfinite(phi) and phi >= 1.0):
        raise DomainError(f"rent must be at least 1, got {phi!r}")
    if x < 1.0 - lam * phi:
        return EntrepreneurChoice(feasible=False)
    unconstrained = (beta - (phi - 1.0) / x) / (1.0 + beta)
    constrained = (1.0 - lam * phi) / x
    s_b = min(max(unconstrained, constrained, 0.0), 1.0)
    return EntrepreneurChoice(feasible=True, saving_rate=s_b,
                              utility=saving_objective_extended(s_b, x, phi, beta))


def entrepreneur_utility_extended(x, phi, lam, beta):
    """Entrepreneur utility index at the optimal saving rate, None when infeasible."""
    return optimal_entrepreneur_saving_extended(x, phi, lam, beta).utility


def rent_residual(phi, x, lam, beta):
    """Left side minus right side of the implicit rent equation."""
    left = (1.0 - (1.0 - lam * phi) / x) * ((1.0 - lam) * phi / x) ** beta
    return left - investor_utility_extended(beta)


def rent_extended(w_over_I, lam, beta):
    """Equilibrium rent of the extended model.

    Args:
        w_over_I: Normalized wage x = w / I, positive.
        lam: Pledgeability in (0, 1).
        beta: Discount factor, positive.

    Returns:
        phi in (1, 1/lambda) on the binding branch, exactly 1 from the
        plateau threshold on.

    Raises:
        BracketError: If no bracket inside [1, 1/lambda] straddles the root.
    """
    x = w_over_I
    _check_normalized_wage(x)
    check_pledgeability(lam)
    _check_beta(beta)
    if not _binding(x, lam, beta):
        return 1.0

    def residual(phi):
        return rent_residual(phi, x, lam, beta)

    lower = 1.0 + RENT_BRACKET_MARGIN
    upper = 1.0 / lam - RENT_BRACKET_MARGIN
    if residual(lower) >= 0.0:
        # Close to the threshold the root sits within the margin of 1.
        lower = 1.0
    f_upper = residual(upper)
    # Safeguard only: the residual is positive near 1/lambda on the
    # binding branch, so the loop does not run there.
    shrinks = 0
    while f_upper <= 0.0 and shrinks < RENT_BRACKET_SHRINKS:
        upper = lower + 0.5 * (upper - lower)
        f_upper = residual(upper)
        shrinks += 1
    if shrinks:
        logger.debug("rent bracket shrunk %d times at x=%r lambda=%r beta=%r",
                     shrinks, x, lam, beta)
    if f_upper <= 0.0:
        raise BracketError("extended rent", lower, upper, residual(lower), f_upper)
    return bisect_root(residual, lower, upper, xtol=RENT_XTOL, maxiter=RENT_MAXITER,
                       what="extended rent")


@dataclass(frozen=True)
class ExtendedEquilibrium:
    """Static equilibrium of the extended model.

    Attributes:
        w: Wage.
        w_over_I: Normalized wage.
        phi: Rent.
        s_b: Entrepreneur saving rate.
        s_l: Investor saving rate beta / (1 + beta).
        s: National saving rate.
        fraction: Mass of entrepreneurs s * w / I.
        beta: Discount factor.
        investment_size: Minimum investment size I.
    """

    w: float
    w_over_I: float
    phi: float
    s_b: float
    s_l: float
    s: float
    fraction: float
    beta: float
    investment_size: float


def extended_state(w_over_I, lam, beta, investment_size=1.0):
    """ExtendedEquilibrium at a normalized wage."""
    x = w_over_I
    phi = rent_extended(x, lam, beta)
    s_l = investor_saving_rate_extended(beta)
    if _binding(x, lam, beta):
        s_b = 1.0 - investor_utility_extended(beta) * (x / ((1.0 - lam) * phi)) ** beta
        s = beta / (beta * x + (1.0 + beta) * lam * phi)
    else:
        s_b = s_l
        s = s_l
    return ExtendedEquilibrium(
        w=x * investment_size, w_over_I=x, phi=phi, s_b=s_b, s_l=s_l, s=s,
        fraction=s * x, beta=beta, investment_size=investment_size,
    )


def extended_equilibrium(w, params):
    """Assemble the extended equilibrium at wage w for params.beta and params.investment_size."""
    if not (math.isfinite(w) and w > 0.0):
        raise DomainError(f"wage must be positive, got {w!r}")
    return extended_state(w / params.investment_size, params.lam, params.beta,
                          params.investment_size)


def extended_clearing_residual(eq):
    """Credit-market excess pi (I - s^b w) - (1 - pi) s^l w, divided by I."""
    x = eq.w_over_I
    return eq.fraction * (1.0 - eq.s_b * x) - (1.0 - eq.fraction) * eq.s_l * x


def saving_elasticity_extended(w_over_I, lam, beta, wrt="w"):
    """Finite-difference elasticity of the extended national saving rate.

    Args:
        w_over_I: Normalized wage.
        lam: Pledgeability.
        beta: Discount factor.
        wrt: "w" for the wage elasticity, "lambda" for pledgeability.
    """
    if wrt == "w":
        return log_elasticity(lambda x: extended_state(x, lam, beta).s, w_over_I, FD_STEP)
    if wrt == "lambda":
        return log_elasticity(lambda l: extended_state(w_over_I, l, beta).s, lam, FD_STEP)
    raise ValueError(f"wrt must be 'w' or 'lambda', got {wrt!r}")
