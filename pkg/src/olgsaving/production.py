"""Production technology: output, factor prices and their inverses.

Capital depreciates fully within a period, so capital next period equals
investment. The wage is the marginal product of the unit labour endowment,
w(k) = f(k) - k f'(k), which is strictly increasing because f is strictly
concave.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

from olgsaving.constants import FD_STEP, WAGE_UPPER
from olgsaving.errors import DomainError, InversionError
from olgsaving.utils import bisect_root, log_elasticity

logger = logging.getLogger(__name__)


def _check_nonnegative(value, name):
    if not math.isfinite(value) or value < 0.0:
        raise DomainError(f"{name} must be a finite non-negative number, got {value!r}")


class ProductionFunction(ABC):
    """Intensive-form production function f with f(0) = 0.

    Subclasses supply output and marginal product; everything else has a
    generic implementation based on monotone bisection that closed-form
    instances may override.
    """

    @abstractmethod
    def output(self, k):
        """Output per capita f(k)."""

    @abstractmethod
    def marginal_product(self, k):
        """Marginal product of capital f'(k)."""

    def wage(self, k):
        """Competitive wage w(k) = f(k) - k f'(k)."""
        _check_nonnegative(k, "capital")
        if k == 0.0:
            return 0.0
        return self.output(k) - k * self.marginal_product(k)

    def _invert_increasing(self, func, target, what):
        # Grow the upper end until func exceeds the target, then bisect.
        upper = 1.0
        for _ in range(400):
            if func(upper) >= target:
                break
            upper *= 2.0
        else:
            raise InversionError(f"{what}: {target!r} exceeds the range of the function")
        return bisect_root(lambda k: func(k) - target, 0.0, upper, what=what)

    def capital_of_wage(self, w):
        """Inverse wage function w^-1(w)."""
        _check_nonnegative(w, "wage")
        if w == 0.0:
            return 0.0
        return self._invert_increasing(self.wage, w, "capital_of_wage")

    def capital_of_output(self, y):
        """Inverse production function f^-1(y)."""
        _check_nonnegative(y, "output")
        if y == 0.0:
            return 0.0
        return self._invert_increasing(self.output, y, "capital_of_output")

    def wage_of_output(self, y):
        """The composite (w o f^-1)(y) mapping output per capita to the wage."""
        return self.wage(self.capital_of_output(y))

    def capital_of_marginal_product(self, x):
        """Inverse marginal product (f')^-1(x).

        Raises:
            InversionError: If x is not inside the range of f'.
        """
        if not math.isfinite(x) or x <= 0.0:
            raise InversionError(f"marginal product {x!r} is outside the range of f'")
        # f' is decreasing: find k with f'(k) = x
        lower, upper = 1e-300, 1.0
        for _ in range(400):
            if self.marginal_product(upper) <= x:
                break
            upper *= 2.0
        else:
            raise InversionError(f"marginal product {x!r} is below the range of f'")
        if self.marginal_product(lower) < x:
            raise InversionError(f"marginal product {x!r} is above the range of f'")
        return bisect_root(lambda k: self.marginal_product(k) - x, lower, upper,
                           what="capital_of_marginal_product")

    def r_plus(self):
        """Largest project yield R keeping w(R) below 2: R+ = w^-1(2)."""
        return self.capital_of_wage(WAGE_UPPER)

    def wage_output_elasticity(self, y):
        """Elasticity y (w o f^-1)'(y) / (w o f^-1)(y), by finite differences."""
        return self.numeric_wage_output_elasticity(y)

    def numeric_wage_output_elasticity(self, y, rel_step=FD_STEP):
        """Central-difference elasticity of w o f^-1 at y."""
        if y <= 0.0:
            raise DomainError(f"output must be positive, got {y!r}")
        return log_elasticity(self.wage_of_output, y, rel_step)

    def inverse_wage_elasticity(self, w):
        """Elasticity w (w^-1)'(w) / w^-1(w), by finite differences."""
        if w <= 0.0:
            raise DomainError(f"wage must be positive, got {w!r}")
        return log_elasticity(self.capital_of_wage, w, FD_STEP)


@dataclass(frozen=True)
class CobbDouglas(ProductionFunction):
    """Cobb-Douglas technology f(k) = A k^alpha.

    Attributes:
        tfp: Total factor productivity A > 0.
        alpha: Capital share in (0, 1).

    Example:
        p = CobbDouglas(tfp=1.0, alpha=0.33)
        p.wage(1.0)  # 0.67
    """

    tfp: float = 1.0
    alpha: float = 0.33

    def __post_init__(self):
        if not (math.isfinite(self.tfp) and self.tfp > 0.0):
            raise DomainError(f"tfp must be positive, got {self.tfp!r}")
        if not (0.0 < self.alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")

    def output(self, k):
        _check_nonnegative(k, "capital")
        return self.tfp * k ** self.alpha

    def marginal_product(self, k):
        if k <= 0.0:
            raise DomainError(f"marginal product needs positive capital, got {k!r}")
        return self.alpha * self.tfp * k ** (self.alpha - 1.0)

    def wage(self, k):
        _check_nonnegative(k, "capital")
        return (1.0 - self.alpha) * self.tfp * k ** self.alpha

    def capital_of_wage(self, w):
        _check_nonnegative(w, "wage")
        return (w / ((1.0 - self.alpha) * self.tfp)) ** (1.0 / self.alpha)

    def capital_of_output(self, y):
        _check_nonnegative(y, "output")
        return (y / self.tfp) ** (1.0 / self.alpha)

    def wage_of_output(self, y):
        _check_nonnegative(y, "output")
        return (1.0 - self.alpha) * y

    def capital_of_marginal_product(self, x):
        if not math.isfinite(x) or x <= 0.0:
            raise InversionError(f"marginal product {x!r} is outside the range of f'")
        return (self.alpha * self.tfp / x) ** (1.0 / (1.0 - self.alpha))

    def wage_output_elasticity(self, y):
        if y <= 0.0:
            raise DomainError(f"output must be positive, got {y!r}")
        return 1.0

    def inverse_wage_elasticity(self, w):
        if w <= 0.0:
            raise DomainError(f"wage must be positive, got {w!r}")
        return 1.0 / self.alpha


def wage_of_capital(k, p):
    """Wage paid at capital stock k.

    Args:
        k: Capital stock, k >= 0.
        p: Production function.

    Returns:
        w(k); for Cobb-Douglas (1 - alpha) A k^alpha.

    Raises:
        DomainError: If k is negative.
    """
    return p.wage(k)


def capital_of_wage(w, p):
    """Capital stock that pays wage w, the inverse of wage_of_capital."""
    return p.capital_of_wage(w)


def r_plus(p):
    """Upper bound R+ on the project yield, solving w(R+) = 2.

    Example:
        r_plus(CobbDouglas(1.0, 0.5))  # 16.0
    """
    return p.r_plus()
