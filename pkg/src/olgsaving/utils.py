"""Small numerical helpers shared by the model modules."""

import logging
import math

import numpy as np
from scipy import optimize

from olgsaving.constants import INVERSION_MAXITER, INVERSION_XTOL, SIGNIFICANT_DIGITS
from olgsaving.errors import BracketError

logger = logging.getLogger(__name__)


def open_grid(lower, upper, n, margin=0.0):
    """Evenly spaced grid on the open interval (lower, upper).

    Args:
        lower: Left end of the interval (excluded).
        upper: Right end of the interval (excluded).
        n: Number of points.
        margin: Distance kept from both ends. With margin 0 the end points
            are dropped from an (n + 2)-point grid instead.

    Returns:
        numpy array of n points.

    Example:
        open_grid(0.0, 2.0, 3)  # array([0.5, 1. , 1.5])
    """
    if n < 1:
        raise ValueError(f"grid needs at least one point, got {n}")
    if margin > 0.0:
        return np.linspace(lower + margin, upper - margin, n)
    return np.linspace(lower, upper, n + 2)[1:-1]


def bisect_root(func, lower, upper, xtol=INVERSION_XTOL, maxiter=INVERSION_MAXITER,
                what="root"):
    """Bracketed bisection that reports failing brackets with their residuals.

    Args:
        func: Continuous scalar function.
        lower: Lower bracket end.
        upper: Upper bracket end.
        xtol: Absolute tolerance on the root.
        maxiter: Iteration cap.
        what: Label used in the error message.

    Returns:
        The root as a float.

    Raises:
        BracketError: If func(lower) and func(upper) have the same sign.
    """
    f_lower = func(lower)
    if f_lower == 0.0:
        return float(lower)
    f_upper = func(upper)
    if f_upper == 0.0:
        return float(upper)
    if math.copysign(1.0, f_lower) == math.copysign(1.0, f_upper):
        raise BracketError(f"{what}: bracket does not straddle a root",
                           lower, upper, f_lower, f_upper)
    return float(optimize.bisect(func, lower, upper, xtol=xtol, maxiter=maxiter))


def central_difference(func, x, step):
    """Central finite-difference derivative of func at x."""
    return (func(x + step) - func(x - step)) / (2.0 * step)


def log_elasticity(func, x, rel_step):
    """Elasticity d ln f / d ln x by a central difference in logs.

    Args:
        func: Positive scalar function.
        x: Positive evaluation point.
        rel_step: Step in ln x.

    Returns:
        The finite-difference elasticity.
    """
    up = func(x * math.exp(rel_step))
    down = func(x * math.exp(-rel_step))
    return (math.log(up) - math.log(down)) / (2.0 * rel_step)


def is_monotone(values, tol=0.0):
    """True when values never move against their overall direction by more than tol."""
    diffs = np.diff(np.asarray(values, dtype=float))
    return bool(np.all(diffs >= -tol) or np.all(diffs <= tol))


def sign_changes(values):
    """Indices i where values[i] and values[i + 1] straddle zero.

    Exact zeros count as a change on the interval that starts at them.
    """
    values = np.asarray(values, dtype=float)
    left = values[:-1]
    right = values[1:]
    hits = (np.sign(left) * np.sign(right) < 0) | (left == 0.0)
    return [int(i) for i in np.flatnonzero(hits)]


def round_sig(value, digits=SIGNIFICANT_DIGITS):
    """Round a float to a number of significant digits.

    Example:
        round_sig(1.23456789, 3)  # 1.23
    """
    if value is None or not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def format_number(value, digits=SIGNIFICANT_DIGITS):
    """Format a number with a fixed count of significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f"{value:.{digits}g}"


def parse_float_list(text):
    """Parse a comma separated list of floats.

    Example:
        parse_float_list("0.3, 0.5,0.7")  # [0.3, 0.5, 0.7]
    """
    items = [item.strip() for item in str(text).split(",")]
    return [float(item) for item in items if item]
