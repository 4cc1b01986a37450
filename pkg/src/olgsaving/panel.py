"""From the model to panel regressions.

Contains the analytic coefficients of the linearised saving equation

    dln s = gamma dln y + theta dln lambda

and of its interaction form, a generator for synthetic country panels
produced by the model under small productivity and pledgeability shocks, and
a two-way fixed-effects within estimator that checks the predicted signs on
those panels.
"""

import logging
import math
from dataclasses import asdict, dataclass, field, replace
from multiprocessing import Pool
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from olgsaving.constants import (
    DEFAULT_ALPHA,
    DEFAULT_COUNTRIES,
    DEFAULT_HORIZON,
    DEFAULT_SIGMA,
    DEFAULT_TFP,
    DEGENERATE_RMS,
    DEMEAN_MAXITER,
    DEMEAN_TOL,
    FD_STEP,
    LAMBDA_LEVELS,
    PANEL_COLUMNS,
    POOR_POSITIONS,
    RICH_POSITIONS,
    SHOCK_REDRAW_LIMIT,
    TAYLOR_POINT_TOL,
    WAGE_UPPER,
)
from olgsaving.dynamics import accumulation_ratio
from olgsaving.equilibrium import (
    EconomyParams,
    check_pledgeability,
    national_saving_rate,
    saving_elasticity_lambda,
    saving_elasticity_w,
)
from olgsaving.errors import DomainError, NumericalError, RankDeficiencyError, RedrawLimitError
from olgsaving.production import CobbDouglas
from olgsaving.random import country_rng, normal_shock

logger = logging.getLogger(__name__)

BASE_REGRESSORS = ("dlny", "dlnlam")
INTERACTION_REGRESSORS = ("dlny", "dlny_lam", "dlny_y", "dlnlam")
BASE_NAMES = ("gamma", "theta")
INTERACTION_NAMES = ("gamma_prime", "delta", "zeta", "theta_prime")

PREDICTED_SIGNS = {
    "poor.gamma": 1,
    "rich.gamma": -1,
    "pooled.theta": -1,
    "interactions.gamma_prime": 1,
    "interactions.delta": -1,
    "interactions.zeta": -1,
}


@dataclass(frozen=True)
class ElasticityCoefficients:
    """Income (gamma) and credit (theta) elasticities of the saving rate at (w, lambda)."""

    gamma: float
    theta: float


@dataclass(frozen=True)
class InteractionCoefficients:
    """First-order expansion of gamma around (y_hat, lambda_hat).

    gamma(y, lambda) ~ gamma_prime + delta lambda + zeta y with
    delta = F_2, zeta = F_1 and gamma_prime = -y_hat F_1 - lambda_hat F_2.
    """

    gamma_prime: float
    delta: float
    zeta: float
    y_hat: float
    lambda_hat: float
    f_value: float


@dataclass(frozen=True)
class PanelObservation:
    """One country-year of first-differenced logs."""

    country: int
    year: int
    dlns: float
    dlny: float
    dlnlam: float
    y_bar: float
    lam_bar: float


def gamma_coefficient(w, lam, p):
    """Income elasticity of the saving rate, w s_1/s times the output elasticity of wages.

    Args:
        w: Wage in (0, 2).
        lam: Pledgeability.
        p: Production function.

    Returns:
        gamma, positive below w = 1 - lambda and negative above it on the
        binding branch.
    """
    y = p.output(p.capital_of_wage(w))
    return saving_elasticity_w(w, lam) * p.wage_output_elasticity(y)


def theta_coefficient(w, lam):
    """Credit elasticity of the saving rate, lambda s_2 / s."""
    return saving_elasticity_lambda(w, lam)


def elasticity_coefficients(w, lam, p):
    return ElasticityCoefficients(gamma=gamma_coefficient(w, lam, p),
                                  theta=theta_coefficient(w, lam))


def gamma_of_output(y, lam, p):
    """F(y, lambda): the income elasticity expressed in output per capita."""
    return gamma_coefficient(p.wage_of_output(y), lam, p)


def discrete_income_elasticity(w, lam, p, dlny=1e-4):
    """Ratio dln s / dln y between two nearby output levels at fixed lambda."""
    y = p.output(p.capital_of_wage(w))
    s_before = national_saving_rate(w, lam)
    s_after = national_saving_rate(p.wage_of_output(y * math.exp(dlny)), lam)
    return (math.log(s_after) - math.log(s_before)) / dlny


def interaction_coefficients(lambda_hat, p):
    """Interaction coefficients from a Taylor expansion at the hump peak.

    The expansion point y_hat solves (w o f^-1)(y) = 1 - lambda_hat, where
    F(y_hat, lambda_hat) = 0. The partials are central differences with a
    relative step of 1e-6.

    Args:
        lambda_hat: Cross-country mean pledgeability in (0, 1).
        p: Production function.

    Returns:
        InteractionCoefficients.

    Raises:
        NumericalError: If F(y_hat, lambda_hat) is not zero within 1e-8.
    """
    check_pledgeability(lambda_hat)
    y_hat = p.output(p.capital_of_wage(1.0 - lambda_hat))
    f_value = gamma_of_output(y_hat, lambda_hat, p)
    if abs(f_value) > TAYLOR_POINT_TOL:
        raise NumericalError(
            f"F(y_hat, lambda_hat) = {f_value!r} is not zero at y_hat={y_hat!r}")

    hy = FD_STEP * y_hat
    hl = FD_STEP * lambda_hat
    f1 = (gamma_of_output(y_hat + hy, lambda_hat, p)
          - gamma_of_output(y_hat - hy, lambda_hat, p)) / (2.0 * hy)
    f2 = (gamma_of_output(y_hat, lambda_hat + hl, p)
          - gamma_of_output(y_hat, lambda_hat - hl, p)) / (2.0 * hl)
    return InteractionCoefficients(
        gamma_prime=-y_hat * f1 - lambda_hat * f2,
        delta=f2,
        zeta=f1,
        y_hat=y_hat,
        lambda_hat=lambda_hat,
        f_value=f_value,
    )


@dataclass(frozen=True)
class CountrySpec:
    """One synthetic economy.

    Attributes:
        index: Country identifier, also the RNG stream index.
        lam: Baseline pledgeability.
        tfp: Baseline TFP A_i.
        alpha: Capital share.
        r: Project yield, calibrated so target_wage is the steady state.
        target_wage: Interior steady-state wage.
        cluster: "poor" when target_wage < 1 - lam, else "rich".
        drift: Per-period drift of log pledgeability.
    """

    index: int
    lam: float
    tfp: float
    alpha: float
    r: float
    target_wage: float
    cluster: str
    drift: float = 0.0

    def params(self):
        return EconomyParams(lam=self.lam, r=self.r,
                             production=CobbDouglas(tfp=self.tfp, alpha=self.alpha))


@dataclass(frozen=True)
class WorldSpec:
    """A synthetic world: countries plus shock settings.

    Attributes:
        countries: CountrySpec per country.
        sigma: Standard deviation of log TFP shocks.
        horizon: Number of differenced years per country.
        lambda_noise: Standard deviation of log pledgeability noise.
        lambda_drift: Drift scale; country i drifts at (i mod 4 + 1)/4 of it.
    """

    countries: Tuple[CountrySpec, ...] = field(default_factory=tuple)
    sigma: float = DEFAULT_SIGMA
    horizon: int = DEFAULT_HORIZON
    lambda_noise: float = DEFAULT_SIGMA
    lambda_drift: float = 0.0


def build_world(n_countries=DEFAULT_COUNTRIES, sigma=DEFAULT_SIGMA, horizon=DEFAULT_HORIZON,
                alpha=DEFAULT_ALPHA, tfp=DEFAULT_TFP, lambda_levels=LAMBDA_LEVELS,
                poor_positions=POOR_POSITIONS, rich_positions=RICH_POSITIONS,
                lambda_noise=None, lambda_drift=0.0):
    """Lay out a synthetic world on a (lambda, relative income) lattice.

    Countries alternate between the poor and the rich cluster. Each has a
    target steady wage m (1 - lambda), with m taken from poor_positions
    (m < 1) or rich_positions (1 < m < 2), and R calibrated so that the
    target is its interior steady state.

    Args:
        n_countries: Number of countries, at least 2.
        sigma: TFP shock volatility, non-negative.
        horizon: Years per country, at least 2.
        alpha: Capital share.
        tfp: Baseline TFP.
        lambda_levels: Pledgeability levels cycled through.
        poor_positions: Relative positions below the hump peak.
        rich_positions: Relative positions above the hump peak.
        lambda_noise: Log pledgeability noise; defaults to sigma.
        lambda_drift: Log pledgeability drift per period; country i drifts
            at (i mod 4 + 1)/4 of it.

    Returns:
        WorldSpec.
    """
    if n_countries < 2:
        raise DomainError(f"a world needs at least 2 countries, got {n_countries}")
    if horizon < 2:
        raise DomainError(f"horizon must be at least 2 years, got {horizon}")
    if not (math.isfinite(sigma) and sigma >= 0.0):
        raise DomainError(f"sigma must be non-negative, got {sigma!r}")
    if lambda_noise is None:
        lambda_noise = sigma
    if not (math.isfinite(lambda_noise) and lambda_noise >= 0.0):
        raise DomainError(f"lambda noise must be non-negative, got {lambda_noise!r}")
    for m in poor_positions:
        if not 0.0 < m < 1.0:
            raise DomainError(f"poor positions must lie in (0, 1), got {m!r}")
    for m in rich_positions:
        if not 1.0 < m < 2.0:
            raise DomainError(f"rich positions must lie in (1, 2), got {m!r}")

    production = CobbDouglas(tfp=tfp, alpha=alpha)
    countries = []
    for index in range(n_countries):
        cell = index // 2
        lam = lambda_levels[cell % len(lambda_levels)]
        if index % 2 == 0:
            cluster, positions = "poor", poor_positions
        else:
            cluster, positions = "rich", rich_positions
        m = positions[(cell // len(lambda_levels)) % len(positions)]
        target = m * (1.0 - lam)
        probe = EconomyParams(lam=lam, r=1.0, production=production)
        r = accumulation_ratio(target, probe)
        countries.append(CountrySpec(index=index, lam=lam, tfp=tfp, alpha=alpha, r=r,
                                     target_wage=target, cluster=cluster,
                                     drift=lambda_drift * (index % 4 + 1) / 4.0))
    return WorldSpec(countries=tuple(countries), sigma=sigma, horizon=horizon,
                     lambda_noise=lambda_noise, lambda_drift=lambda_drift)


def simulate_country(country, seed, sigma, horizon, lambda_noise=0.0):
    """Simulate one country under TFP and pledgeability shocks.

    The economy starts at its steady-state capital. Each year draws
    A_t = A exp(eps) and lambda_t = lambda exp(g t + nu), redrawing both when
    the wage leaves (0, 2) or lambda_t leaves (0, 1).

    Returns:
        List of PanelObservation for years 1..horizon.

    Raises:
        RedrawLimitError: If a year needs more than the redraw budget.
    """
    rng = country_rng(seed, country.index)
    base = CobbDouglas(tfp=country.tfp, alpha=country.alpha)
    capital = base.capital_of_wage(country.target_wage)

    outputs, lambdas, savings = [], [], []
    for year in range(horizon + 1):
        for _ in range(SHOCK_REDRAW_LIMIT):
            eps = normal_shock(rng, sigma)
            nu = normal_shock(rng, lambda_noise)
            technology = replace(base, tfp=country.tfp * math.exp(eps))
            lam = country.lam * math.exp(country.drift * year + nu)
            w = technology.wage(capital)
            if 0.0 < w < WAGE_UPPER and 0.0 < lam < 1.0:
                break
            logger.debug("country %d year %d: redrawing shock (w=%r, lambda=%r)",
                         country.index, year, w, lam)
        else:
            raise RedrawLimitError(country.index, year, SHOCK_REDRAW_LIMIT)
        s = national_saving_rate(w, lam)
        outputs.append(technology.output(capital))
        lambdas.append(lam)
        savings.append(s)
        capital = country.r * s * w

    log_s = np.log(savings)
    log_y = np.log(outputs)
    log_lam = np.log(lambdas)
    y_bar = float(np.mean(outputs))
    lam_bar = float(np.mean(lambdas))
    return [
        PanelObservation(
            country=country.index,
            year=year,
            dlns=float(log_s[year] - log_s[year - 1]),
            dlny=float(log_y[year] - log_y[year - 1]),
            dlnlam=float(log_lam[year] - log_lam[year - 1]),
            y_bar=y_bar,
            lam_bar=lam_bar,
        )
        for year in range(1, horizon + 1)
    ]


def generate_panel(world, seed, workers=1):
    """Generate a synthetic panel for every country of a world.

    Args:
        world: WorldSpec.
        seed: Global RNG seed.
        workers: Number of processes; results do not depend on it.

    Returns:
        List of PanelObservation ordered by country then year.
    """
    jobs = [(country, seed, world.sigma, world.horizon, world.lambda_noise)
            for country in world.countries]
    if workers > 1 and len(jobs) > 1:
        with Pool(processes=workers) as pool:
            blocks = pool.starmap(simulate_country, jobs)
    else:
        blocks = [simulate_country(*job) for job in jobs]
    panel = [obs for block in blocks for obs in block]
    logger.info("generated %d observations for %d countries", len(panel), len(blocks))
    return panel


def panel_to_frame(panel):
    """DataFrame with the panel columns in their fixed order."""
    return pd.DataFrame([asdict(obs) for obs in panel], columns=list(PANEL_COLUMNS))


def frame_to_panel(frame):
    missing = [column for column in PANEL_COLUMNS if column not in frame.columns]
    if missing:
        raise DomainError(f"panel frame is missing columns: {', '.join(missing)}")
    return [
        PanelObservation(
            country=int(row.country), year=int(row.year), dlns=float(row.dlns),
            dlny=float(row.dlny), dlnlam=float(row.dlnlam), y_bar=float(row.y_bar),
            lam_bar=float(row.lam_bar),
        )
        for row in frame.itertuples(index=False)
    ]


def income_cluster(observation, production):
    """'poor' when the country's mean income puts it below the hump peak, else 'rich'."""
    w_bar = production.wage_of_output(observation.y_bar)
    return "poor" if w_bar < 1.0 - observation.lam_bar else "rich"


def two_way_demean(frame, columns, tol=DEMEAN_TOL, maxiter=DEMEAN_MAXITER):
    """Remove country and year means from columns, alternating until stable.

    Returns:
        (demeaned frame, iterations used).
    """
    data = frame[list(columns)].astype(float).copy()
    countries = frame["country"].to_numpy()
    years = frame["year"].to_numpy()
    for iteration in range(1, maxiter + 1):
        before = data.to_numpy().copy()
        data = data - data.groupby(countries).transform("mean")
        data = data - data.groupby(years).transform("mean")
        change = float(np.max(np.abs(data.to_numpy() - before))) if len(data) else 0.0
        if change < tol:
            return data, iteration
    raise NumericalError(f"two-way demeaning did not converge in {maxiter} iterations")



@dataclass(frozen=True)
class FixedEffectsResult:
    """Point estimates of a within regression."""

    coefficients: Dict[str, float]
    regressors: Tuple[str, ...]
    n_obs: int
    n_countries: int
    n_years: int
    iterations: int


def within_fe_ols(panel, with_interactions=False):
    """Two-way fixed-effects within estimator.

    Regresses dln s on dln y and dln lambda after removing country and year
    means. With interactions the regressors are dln y, dln y * lambda_i,
    dln y * y_i and dln lambda, where lambda_i and y_i are country means.

    Args:
        panel: List of PanelObservation or a DataFrame with the panel columns.
        with_interactions: Use the interaction specification.

    Returns:
        FixedEffectsResult whose coefficients are named gamma and theta, or
        gamma_prime, delta, zeta and theta_prime.

    Raises:
        DomainError: With fewer than 2 countries or 2 years.
        RankDeficiencyError: If a demeaned regressor is constant or collinear.
    """
    frame = panel if isinstance(panel, pd.DataFrame) else panel_to_frame(panel)
    n_countries = int(frame["country"].nunique())
    n_years = int(frame["year"].nunique())
    if n_countries < 2 or n_years < 2:
        raise DomainError(
            f"within estimation needs at least 2 countries and 2 years, "
            f"got {n_countries} and {n_years}")

    frame = frame.copy()
    frame["dlny_lam"] = frame["dlny"] * frame["lam_bar"]
    frame["dlny_y"] = frame["dlny"] * frame["y_bar"]
    regressors = INTERACTION_REGRESSORS if with_interactions else BASE_REGRESSORS
    names = INTERACTION_NAMES if with_interactions else BASE_NAMES

    demeaned, iterations = two_way_demean(frame, ("dlns",) + regressors)
    logger.debug("demeaning converged after %d iteration(s)", iterations)
    X = demeaned[list(regressors)].to_numpy()
    y = demeaned["dlns"].to_numpy()

    for j, column in enumerate(regressors):
        if math.sqrt(float(np.mean(X[:, j] ** 2))) <= DEGENERATE_RMS:
            raise RankDeficiencyError(
                column, f"regressor '{column}' has no variation after demeaning")
        if np.linalg.matrix_rank(X[:, : j + 1]) < j + 1:
            raise RankDeficiencyError(column)

    beta, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    return FixedEffectsResult(
        coefficients={name: float(value) for name, value in zip(names, beta)},
        regressors=tuple(regressors),
        n_obs=len(frame),
        n_countries=n_countries,
        n_years=n_years,
        iterations=iterations,
    )


def _sign(value):
    if value is None:
        return None
    return int(np.sign(value))


def estimate_signs(panel, production):
    """Estimate pooled, per-cluster and interaction regressions and compare signs.

    Args:
        panel: List of PanelObservation or a DataFrame.
        production: Technology used to classify countries by income.

    Returns:
        Dictionary with the estimates per specification, the predicted and
        estimated signs, and whether all of them agree.
    """
    frame = panel if isinstance(panel, pd.DataFrame) else panel_to_frame(panel)
    clusters = [income_cluster(obs, production) for obs in frame_to_panel(frame)]
    frame = frame.assign(cluster=clusters)

    estimates: Dict[str, Optional[Dict[str, float]]] = {
        "pooled": within_fe_ols(frame).coefficients,
        "interactions": within_fe_ols(frame, with_interactions=True).coefficients,
    }
    for cluster in ("poor", "rich"):
        subset = frame[frame["cluster"] == cluster]
        if subset["country"].nunique() < 2:
            logger.warning("cluster %s has fewer than 2 countries; skipped", cluster)
            estimates[cluster] = None
        else:
            estimates[cluster] = within_fe_ols(subset).coefficients

    estimated_signs = {}
    for key in PREDICTED_SIGNS:
        group, name = key.split(".")
        block = estimates.get(group)
        estimated_signs[key] = _sign(block[name]) if block is not None else None
    matches = all(estimated_signs[key] == sign for key, sign in PREDICTED_SIGNS.items())
    return {
        "estimates": estimates,
        "predicted_signs": dict(PREDICTED_SIGNS),
        "estimated_signs": estimated_signs,
        "signs_match": matches,
        "n_obs": int(len(frame)),
        "n_countries": int(frame["country"].nunique()),
    }
