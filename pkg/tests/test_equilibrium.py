"""Tests for the static equilibrium."""

import math

import numpy as np
import pytest
from olgsaving.constants import INVESTOR_UTILITY
from olgsaving.equilibrium import (
    EconomyParams,
    clearing_residual,
    entrepreneur_fraction,
    entrepreneur_saving_rate,
    entrepreneur_utility,
    equilibrium_state,
    fraction_slope,
    grid_search_entrepreneur_saving,
    national_saving_rate,
    optimal_entrepreneur_saving,
    psi,
    rent,
    rent_by_bisection,
    rent_elasticity_lambda,
    rent_slope,
    saving_elasticity_lambda,
    saving_elasticity_w,
)
from olgsaving.errors import DomainError
from olgsaving.production import CobbDouglas
from olgsaving.utils import central_difference, log_elasticity, open_grid

LAMBDAS = (0.3, 0.5, 0.7)


def binding_grid(lam, n=50, inset=0.0):
    return open_grid(inset, 2.0 * (1.0 - lam) - inset, n)


class TestEconomyParams:
    """Test parameter validation."""

    def test_baseline(self):
        """Test the baseline economy is accepted."""
        params = EconomyParams(lam=0.5, r=2.0)
        assert params.production == CobbDouglas()
        assert params.beta == 1.0
        assert params.investment_size == 1.0

    @pytest.mark.parametrize("lam", [0.0, 1.0, -0.2, 1.5])
    def test_invalid_lambda(self, lam):
        """Test pledgeability must lie in (0, 1)."""
        with pytest.raises(DomainError):
            EconomyParams(lam=lam, r=2.0)

    def test_r_must_stay_below_r_plus(self):
        """Test R >= R+ is rejected."""
        p = CobbDouglas(1.0, 0.5)
        with pytest.raises(DomainError):
            EconomyParams(lam=0.5, r=16.0, production=p)
        assert EconomyParams(lam=0.5, r=15.9, production=p).r == 15.9

    def test_r_must_be_positive(self):
        """Test R <= 0 is rejected."""
        with pytest.raises(DomainError):
            EconomyParams(lam=0.5, r=0.0)

    def test_replace_revalidates(self):
        """Test replace() builds a validated copy."""
        params = EconomyParams(lam=0.5, r=2.0)
        assert params.replace(lam=0.3).lam == 0.3
        with pytest.raises(DomainError):
            params.replace(lam=1.2)


class TestRent:
    """Test the entrepreneurial rent."""

    def test_worked_example(self):
        """Test phi(0.5, 0.5) = 1/2 + sqrt(1/2)."""
        assert rent(0.5, 0.5) == pytest.approx(0.5 + math.sqrt(0.5), rel=1e-12)

    def test_psi_worked_example(self):
        """Test psi(0.5, 0.5) = sqrt(1/2)."""
        assert psi(0.5, 0.5) == pytest.approx(math.sqrt(0.5))

    def test_psi_minimum_at_peak(self):
        """Test psi(1 - lambda, lambda) = sqrt(lambda)."""
        for lam in LAMBDAS:
            assert psi(1.0 - lam, lam) == pytest.approx(math.sqrt(lam))

    def test_constant_branch(self):
        """Test phi = 1 from w = 2(1 - lambda) on."""
        for lam in LAMBDAS:
            assert rent(2.0 * (1.0 - lam), lam) == 1.0
            assert rent(1.99, lam) == 1.0

    def test_limit_at_zero_wage(self):
        """Test phi -> 1/lambda as w -> 0."""
        for lam in LAMBDAS:
            assert rent(1e-8, lam) == pytest.approx(1.0 / lam, abs=1e-6)

    def test_bounds_and_monotonicity_in_wage(self):
        """Test 1 < phi < 1/lambda and phi decreasing in w."""
        for lam in LAMBDAS:
            values = [rent(w, lam) for w in binding_grid(lam, 200)]
            assert all(1.0 < v < 1.0 / lam for v in values)
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_decreasing_in_lambda(self):
        """Test phi is decreasing in lambda at fixed wage."""
        values = [rent(0.2, lam) for lam in np.linspace(0.05, 0.85, 30)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_matches_bisection_oracle(self):
        """Test the closed form agrees with solving U^b = 1/4 numerically."""
        for lam in np.linspace(0.05, 0.95, 10):
            for w in binding_grid(lam, 20):
                assert rent(w, lam) == pytest.approx(rent_by_bisection(w, lam), abs=1e-10)

    def test_slope_matches_finite_difference(self):
        """Test phi_1 against a central difference."""
        for lam in LAMBDAS:
            for w in binding_grid(lam, 20, inset=0.05):
                numeric = central_difference(lambda x: rent(x, lam), w, 1e-6)
                assert rent_slope(w, lam) == pytest.approx(numeric, rel=1e-6)

    def test_lambda_elasticity_range(self):
        """Test lambda phi_2 / phi lies in (-1, 0) and matches finite differences."""
        for lam in LAMBDAS:
            for w in binding_grid(lam, 20, inset=0.05):
                value = rent_elasticity_lambda(w, lam)
                assert -1.0 < value < 0.0
                numeric = log_elasticity(lambda l: rent(w, l), lam, 1e-6)
                assert value == pytest.approx(numeric, rel=1e-6)

    @pytest.mark.parametrize("w,lam", [(0.0, 0.5), (2.0, 0.5), (-0.1, 0.5), (0.5, 0.0), (0.5, 1.0)])
    def test_domain_errors(self, w, lam):
        """Test wages outside (0, 2) and lambda outside (0, 1) are rejected."""
        with pytest.raises(DomainError):
            rent(w, lam)

    def test_psi_off_branch(self):
        """Test psi refuses wages on the constant branch."""
        with pytest.raises(DomainError):
            psi(1.5, 0.5)


class TestEntrepreneurProblem:
    """Test the entrepreneur's saving choice."""

    def test_indifference_identity(self):
        """Test U^b(w, phi(w, lambda), lambda) = 1/4 on a 100 x 20 grid."""
        for lam in open_grid(0.0, 1.0, 20):
            for w in open_grid(0.0, 2.0, 100):
                utility = entrepreneur_utility(w, rent(w, lam), lam)
                assert utility == pytest.approx(INVESTOR_UTILITY, abs=1e-10)

    def test_closed_form_matches_grid_search(self):
        """Test the closed-form optimum against a constrained grid search on a 50 x 50 grid."""
        for lam in open_grid(0.0, 1.0, 50):
            for w in open_grid(0.0, 2.0, 50):
                phi = rent(w, lam)
                closed = optimal_entrepreneur_saving(w, phi, lam)
                searched = grid_search_entrepreneur_saving(w, phi, lam)
                assert closed.feasible and searched.feasible
                assert closed.saving_rate == pytest.approx(searched.saving_rate, abs=2e-6)

    def test_grid_search_off_equilibrium(self):
        """Test the grid search at rents other than the equilibrium one."""
        for w, phi, lam in [(0.8, 1.1, 0.5), (1.5, 1.0, 0.3), (0.4, 1.3, 0.7)]:
            closed = optimal_entrepreneur_saving(w, phi, lam)
            searched = grid_search_entrepreneur_saving(w, phi, lam)
            assert closed.saving_rate == pytest.approx(searched.saving_rate, abs=2e-6)
            assert closed.utility == pytest.approx(searched.utility, abs=1e-10)

    def test_infeasible(self):
        """Test the constraint cannot be met when w < 1 - lambda phi."""
        choice = optimal_entrepreneur_saving(0.1, 1.0, 0.5)
        assert choice.feasible is False
        assert choice.saving_rate is None
        assert choice.utility is None
        assert entrepreneur_utility(0.1, 1.0, 0.5) is None
        assert grid_search_entrepreneur_saving(0.1, 1.0, 0.5).feasible is False

    def test_unconstrained_at_unit_rent(self):
        """Test phi = 1 gives s^b = 1/2 and utility 1/4."""
        choice = optimal_entrepreneur_saving(1.5, 1.0, 0.3)
        assert choice.saving_rate == pytest.approx(0.5)
        assert choice.utility == pytest.approx(0.25)

    def test_rejects_rent_below_one(self):
        """Test phi < 1 is outside the domain."""
        with pytest.raises(DomainError):
            optimal_entrepreneur_saving(0.5, 0.9, 0.5)


class TestSavingRates:
    """Test saving rates and the fraction of entrepreneurs."""

    def test_worked_example(self):
        """Test s(0.5, 0.5) = 1/(1 + sqrt(1/2)) and pi = s w."""
        s = national_saving_rate(0.5, 0.5)
        assert s == pytest.approx(1.0 / (1.0 + math.sqrt(0.5)), rel=1e-12)
        assert entrepreneur_fraction(0.5, 0.5) == pytest.approx(0.5 * s)

    def test_hump_peak(self):
        """Test argmax_w s(w, lambda) = 1 - lambda within one grid step."""
        grid = open_grid(0.0, 2.0, 10_000)
        step = grid[1] - grid[0]
        for lam in LAMBDAS:
            values = [national_saving_rate(w, lam) for w in grid]
            peak = grid[int(np.argmax(values))]
            assert abs(peak - (1.0 - lam)) <= step

    def test_peak_value(self):
        """Test s(1 - lambda, lambda) = 1/(1 + sqrt(lambda))."""
        for lam in LAMBDAS:
            assert national_saving_rate(1.0 - lam, lam) == pytest.approx(1.0 / (1.0 + math.sqrt(lam)))

    def test_plateau(self):
        """Test s = s^b = 1/2 exactly for w >= 2(1 - lambda)."""
        for lam in LAMBDAS:
            for w in np.linspace(2.0 * (1.0 - lam), 1.999, 25):
                assert national_saving_rate(w, lam) == 0.5
                assert entrepreneur_saving_rate(w, lam) == 0.5

    def test_limits_at_zero_wage(self):
        """Test s -> 1/2 as w -> 0."""
        for lam in LAMBDAS:
            assert national_saving_rate(1e-8, lam) == pytest.approx(0.5, abs=1e-6)

    def test_fraction_at_threshold(self):
        """Test pi(2(1 - lambda)) = 1 - lambda."""
        for lam in LAMBDAS:
            assert entrepreneur_fraction(2.0 * (1.0 - lam), lam) == pytest.approx(1.0 - lam)

    def test_entrepreneurs_save_more(self):
        """Test s^b > 1/2 and s > 1/2 on the binding branch."""
        for lam in LAMBDAS:
            for w in binding_grid(lam, 100):
                assert entrepreneur_saving_rate(w, lam) > 0.5
                assert national_saving_rate(w, lam) > 0.5

    def test_entrepreneur_saving_matches_constraint(self):
        """Test s^b = (1 - lambda phi)/w at moderate wages."""
        for lam in LAMBDAS:
            for w in binding_grid(lam, 20, inset=0.1):
                direct = (1.0 - lam * rent(w, lam)) / w
                assert entrepreneur_saving_rate(w, lam) == pytest.approx(direct, rel=1e-9)

    def test_fraction_increasing(self):
        """Test pi is strictly increasing and its slope matches finite differences."""
        for lam in LAMBDAS:
            values = [entrepreneur_fraction(w, lam) for w in open_grid(0.0, 2.0, 500)]
            assert all(a < b for a, b in zip(values, values[1:]))
            for w in binding_grid(lam, 15, inset=0.05):
                numeric = central_difference(lambda x: entrepreneur_fraction(x, lam), w, 1e-6)
                assert fraction_slope(w, lam) == pytest.approx(numeric, rel=1e-6)
                assert fraction_slope(w, lam) > 0.0


class TestComparativeStatics:
    """Test how the equilibrium moves with pledgeability and the wage."""

    def test_pledged_rent_increasing_in_lambda(self):
        """Test lambda phi(w, lambda) rises strictly with lambda."""
        for w in (0.1, 0.5, 1.0, 1.5):
            values = [lam * rent(w, lam) for lam in open_grid(0.0, 1.0, 200)]
            assert all(a < b for a, b in zip(values, values[1:]))

    def test_entrepreneur_saving_decreasing_in_lambda(self):
        """Test s^b falls strictly with lambda while the constraint binds."""
        for w in (0.1, 0.5, 1.0, 1.5):
            grid = open_grid(0.0, 1.0 - 0.5 * w, 200)
            values = [entrepreneur_saving_rate(w, lam) for lam in grid]
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_entrepreneur_savings_increasing_in_wage(self):
        """Test s^b w rises strictly with w and stays below 1."""
        for lam in LAMBDAS:
            values = [entrepreneur_saving_rate(w, lam) * w for w in open_grid(0.0, 2.0, 500)]
            assert all(a < b for a, b in zip(values, values[1:]))
            assert max(values) < 1.0

    def test_saving_rate_decreasing_in_lambda(self):
        """Test s(w, lambda_1) > s(w, lambda_2) for lambda_1 < lambda_2."""
        pairs = [(0.1, 0.3), (0.3, 0.5), (0.5, 0.7), (0.2, 0.9)]
        for low, high in pairs:
            for w in binding_grid(high, 50):
                assert national_saving_rate(w, low) > national_saving_rate(w, high)

    def test_fraction_decreasing_in_lambda(self):
        """Test pi falls strictly with lambda while the constraint binds."""
        for w in (0.1, 0.5, 1.0, 1.5):
            grid = open_grid(0.0, 1.0 - 0.5 * w, 200)
            values = [entrepreneur_fraction(w, lam) for lam in grid]
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_decomposition(self):
        """Test s = pi (s^b - 1/2) + 1/2 across wages and pledgeability."""
        for lam in np.linspace(0.05, 0.95, 19):
            lam = float(lam)
            for w in open_grid(0.0, 2.0, 200):
                pi = entrepreneur_fraction(w, lam)
                rebuilt = pi * (entrepreneur_saving_rate(w, lam) - 0.5) + 0.5
                assert abs(national_saving_rate(w, lam) - rebuilt) <= 1e-14


class TestElasticities:
    """Test the closed-form saving-rate elasticities."""

    def test_wage_elasticity_matches_finite_difference(self):
        """Test w s_1 / s against a central difference in logs."""
        for lam in (0.2, 0.5, 0.8):
            for w in binding_grid(lam, 30, inset=0.02):
                numeric = log_elasticity(lambda x: national_saving_rate(x, lam), w, 1e-6)
                assert saving_elasticity_w(w, lam) == pytest.approx(numeric, rel=1e-6, abs=1e-9)

    def test_lambda_elasticity_matches_finite_difference(self):
        """Test lambda s_2 / s against a central difference in logs."""
        for lam in (0.2, 0.5, 0.8):
            for w in binding_grid(lam, 30, inset=0.02):
                numeric = log_elasticity(lambda l: national_saving_rate(w, l), lam, 1e-6)
                assert saving_elasticity_lambda(w, lam) == pytest.approx(numeric, rel=1e-6)

    def test_wage_elasticity_sign(self):
        """Test w s_1/s is positive below 1 - lambda and negative above."""
        for lam in LAMBDAS:
            assert saving_elasticity_w(0.5 * (1.0 - lam), lam) > 0.0
            assert saving_elasticity_w(1.5 * (1.0 - lam), lam) < 0.0
            assert saving_elasticity_w(1.0 - lam, lam) == pytest.approx(0.0, abs=1e-15)

    def test_lambda_elasticity_negative(self):
        """Test lambda s_2/s < 0 on the binding branch."""
        for lam in LAMBDAS:
            for w in binding_grid(lam, 100):
                assert saving_elasticity_lambda(w, lam) < 0.0

    def test_zero_on_plateau(self):
        """Test both elasticities vanish on the constant branch."""
        assert saving_elasticity_w(1.5, 0.3) == 0.0
        assert saving_elasticity_lambda(1.5, 0.3) == 0.0


class TestEquilibriumState:
    """Test the assembled equilibrium bundle."""

    def test_fields(self):
        """Test the state at w = 0.5 for the baseline economy."""
        params = EconomyParams(lam=0.5, r=2.0)
        state = equilibrium_state(0.5, params)
        assert state.phi == pytest.approx(rent(0.5, 0.5))
        assert state.s_l == 0.5
        assert state.pi == pytest.approx(state.s * state.w)
        assert state.k == pytest.approx((0.5 / 0.67) ** (1.0 / 0.33))
        assert state.y == pytest.approx(0.5 / 0.67)

    def test_credit_market_clears(self):
        """Test the clearing residual vanishes at every state."""
        for lam in np.linspace(0.05, 0.95, 19):
            params = EconomyParams(lam=float(lam), r=2.0)
            for w in open_grid(0.0, 2.0, 200):
                assert abs(clearing_residual(equilibrium_state(w, params))) <= 1e-12

    def test_as_dict(self):
        """Test the row form carries every field."""
        state = equilibrium_state(0.5, EconomyParams(lam=0.5, r=2.0))
        assert set(state.as_dict()) == {"w", "k", "y", "phi", "s_b", "s_l", "s", "pi"}
