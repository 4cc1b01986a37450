"""Tests for the figure datasets."""

import numpy as np
import pytest
from olgsaving.figures import base_grid, extended_grid, figure_datasets

NAMES = {
    "rent",
    "entrepreneur_saving",
    "national_saving",
    "entrepreneur_fraction",
    "income_elasticity",
    "extended_saving",
    "extended_fraction",
}


@pytest.fixture(scope="module")
def datasets():
    return figure_datasets(n=400)


def series(rows, lam):
    w = np.array([row["w"] for row in rows if row["lambda"] == lam])
    value = np.array([row["value"] for row in rows if row["lambda"] == lam])
    return w, value


class TestGrids:
    """Test the figure grids."""

    def test_base_grid(self):
        """Test the wage grid keeps its margin inside (0, 2)."""
        grid = base_grid(100)
        assert len(grid) == 100
        assert grid[0] == pytest.approx(1e-6)
        assert grid[-1] == pytest.approx(2.0 - 1e-6)

    def test_extended_grid_passes_threshold(self):
        """Test the normalized grid reaches past the largest plateau threshold."""
        grid = extended_grid((0.3, 0.5), 0.7, 50)
        assert grid[-1] > 1.7 * 0.7 / 0.7


class TestDatasets:
    """Test the figure datasets."""

    def test_names_and_shape(self, datasets):
        """Test every dataset has three series on the same grid."""
        assert set(datasets) == NAMES
        for rows in datasets.values():
            assert len(rows) == 3 * 400
            assert set(rows[0]) == {"w", "value", "lambda"}

    def test_saving_peak(self, datasets):
        """Test the saving rate peaks at w = 1 - lambda."""
        for lam in (0.3, 0.5, 0.7):
            w, s = series(datasets["national_saving"], lam)
            assert w[np.argmax(s)] == pytest.approx(1.0 - lam, abs=2.0 / 400)
            assert s.max() == pytest.approx(1.0 / (1.0 + np.sqrt(lam)), abs=1e-4)

    def test_rent_plateau(self, datasets):
        """Test phi = 1 from 2(1 - lambda) on."""
        w, phi = series(datasets["rent"], 0.5)
        assert np.all(phi[w >= 1.0] == 1.0)
        assert np.all(phi[w < 0.99] > 1.0)

    def test_income_elasticity_sign(self, datasets):
        """Test the income elasticity changes sign at the hump peak."""
        w, gamma = series(datasets["income_elasticity"], 0.5)
        assert np.all(gamma[w < 0.49] > 0.0)
        assert np.all(gamma[(w > 0.51) & (w < 0.99)] < 0.0)

    def test_extended_plateau(self, datasets):
        """Test the extended saving rate settles at 7/17 for beta = 0.7."""
        x, s = series(datasets["extended_saving"], 0.5)
        threshold = 1.7 * 0.5 / 0.7
        assert s[x > threshold] == pytest.approx(np.full((x > threshold).sum(), 0.411765), abs=1e-6)
        assert s.max() > 0.45

    def test_fraction_is_saving_times_wage(self, datasets):
        """Test pi = s w row by row."""
        w, pi = series(datasets["entrepreneur_fraction"], 0.3)
        _, s = series(datasets["national_saving"], 0.3)
        assert pi == pytest.approx(s * w, rel=1e-12)
