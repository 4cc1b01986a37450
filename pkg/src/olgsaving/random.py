"""Seeded random streams for the synthetic panel.

Every country draws from its own generator derived from (seed, country), so
results do not depend on the order or the process countries run in.
"""

import numpy as np


def country_rng(seed, country):
    """Return the random generator for one country.

    Args:
        seed: Global seed of the run.
        country: Zero-based country index.

    Returns:
        numpy Generator seeded from SeedSequence([seed, country]).

    Example:
        rng = country_rng(42, 0)
        rng.normal()  # same value on every run
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(country)]))


def normal_shock(rng, sigma):
    """Draw one mean-zero normal shock with standard deviation sigma.

    A zero sigma returns exactly 0.0 without consuming the stream.
    """
    if sigma == 0.0:
        return 0.0
    return float(rng.normal(0.0, sigma))

