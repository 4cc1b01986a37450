"""Plot-ready datasets for the model's figures.

Each dataset is a list of rows with columns (w, value, lambda): one series
per pledgeability level over an open wage grid.
"""

import logging

from olgsaving.constants import (
    FIGURE_BETA,
    FIGURE_GRID_N,
    FIGURE_LAMBDAS,
    FIGURE_MARGIN,
    WAGE_UPPER,
)
from olgsaving.equilibrium import (
    entrepreneur_fraction,
    entrepreneur_saving_rate,
    national_saving_rate,
    rent,
)
from olgsaving.extended import extended_state, plateau_threshold
from olgsaving.panel import gamma_coefficient
from olgsaving.production import CobbDouglas
from olgsaving.utils import open_grid

logger = logging.getLogger(__name__)

FIGURE_COLUMNS = ("w", "value", "lambda")

# Extended-model grids run past the largest plateau threshold
EXTENDED_GRID_STRETCH = 1.25


def base_grid(n=FIGURE_GRID_N):
    """Wage grid on (0, 2) keeping the figure margin from both ends."""
    return open_grid(0.0, WAGE_UPPER, n, margin=FIGURE_MARGIN)


def extended_grid(lambdas=FIGURE_LAMBDAS, beta=FIGURE_BETA, n=FIGURE_GRID_N):
    """Normalized wage grid reaching past every plateau threshold."""
    upper = EXTENDED_GRID_STRETCH * max(plateau_threshold(lam, beta) for lam in lambdas)
    return open_grid(0.0, upper, n, margin=FIGURE_MARGIN)


def _series(func, grid, lambdas):
    return [
        {"w": float(w), "value": func(float(w), lam), "lambda": lam}
        for lam in lambdas
        for w in grid
    ]


def figure_datasets(lambdas=FIGURE_LAMBDAS, beta=FIGURE_BETA, n=FIGURE_GRID_N,
                    production=None):
    """Build every figure dataset.

    Args:
        lambdas: Pledgeability levels, one series each.
        beta: Discount factor of the extended-model panels.
        n: Grid points per series.
        production: Technology for the income-elasticity panel.

    Returns:
        Dictionary mapping dataset name to its rows.
    """
    if production is None:
        production = CobbDouglas()
    grid = base_grid(n)
    x_grid = extended_grid(lambdas, beta, n)
    datasets = {
        "rent": _series(rent, grid, lambdas),
        "entrepreneur_saving": _series(entrepreneur_saving_rate, grid, lambdas),
        "national_saving": _series(national_saving_rate, grid, lambdas),
        "entrepreneur_fraction": _series(entrepreneur_fraction, grid, lambdas),
        "income_elasticity": _series(
            lambda w, lam: gamma_coefficient(w, lam, production), grid, lambdas),
        "extended_saving": _series(
            lambda x, lam: extended_state(x, lam, beta).s, x_grid, lambdas),
        "extended_fraction": _series(
            lambda x, lam: extended_state(x, lam, beta).fraction, x_grid, lambdas),
    }
    logger.debug("built %d figure datasets with %d points per series", len(datasets), n)
    return datasets
