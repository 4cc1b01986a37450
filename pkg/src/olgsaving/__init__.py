"""olgsaving - a credit-constrained overlapping-generations saving model.

Young agents either lend their savings or run an indivisible project whose
returns they can only partly pledge to lenders. The national saving rate is
then hump-shaped in the wage: it rises while the credit constraint binds
hard, falls as it loosens, and settles at 1/2 once it stops binding.

Example usage:
    from olgsaving import EconomyParams, national_saving_rate, simulate

    national_saving_rate(0.5, 0.5)  # 0.5857864376269049

    params = EconomyParams(lam=0.5, r=2.0)
    trajectory = simulate(0.1, 100, params)
    trajectory.wages()[-1]  # interior steady-state wage
"""

__version__ = "0.1.0"
__license__ = "Apache-2.0"

from olgsaving.production import CobbDouglas, ProductionFunction, capital_of_wage, r_plus, wage_of_capital
from olgsaving.equilibrium import (
    EconomyParams,
    EquilibriumState,
    EntrepreneurChoice,
    entrepreneur_fraction,
    entrepreneur_saving_rate,
    equilibrium_state,
    national_saving_rate,
    optimal_entrepreneur_saving,
    rent,
    saving_elasticity_lambda,
    saving_elasticity_w,
)
from olgsaving.dynamics import SteadyStateReport, Trajectory, open_economy_step, simulate, steady_states, step
from olgsaving.extended import ExtendedEquilibrium, extended_equilibrium, rent_extended
from olgsaving.panel import (
    ElasticityCoefficients,
    InteractionCoefficients,
    PanelObservation,
    build_world,
    gamma_coefficient,
    generate_panel,
    interaction_coefficients,
    within_fe_ols,
)

__all__ = [
    # Production
    "ProductionFunction",
    "CobbDouglas",
    "wage_of_capital",
    "capital_of_wage",
    "r_plus",
    # Static equilibrium
    "EconomyParams",
    "EquilibriumState",
    "EntrepreneurChoice",
    "rent",
    "optimal_entrepreneur_saving",
    "entrepreneur_saving_rate",
    "national_saving_rate",
    "entrepreneur_fraction",
    "equilibrium_state",
    "saving_elasticity_w",
    "saving_elasticity_lambda",
    # Dynamics
    "Trajectory",
    "SteadyStateReport",
    "step",
    "open_economy_step",
    "simulate",
    "steady_states",
    # Extended model
    "ExtendedEquilibrium",
    "rent_extended",
    "extended_equilibrium",
    # Panel
    "ElasticityCoefficients",
    "InteractionCoefficients",
    "PanelObservation",
    "gamma_coefficient",
    "interaction_coefficients",
    "build_world",
    "generate_panel",
    "within_fe_ols",
    # Version info
    "__version__",
]
