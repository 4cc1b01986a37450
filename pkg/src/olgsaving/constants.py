"""Numeric tolerances, brackets and defaults shared across the package."""

# State space of the wage dynamics is the open interval (0, WAGE_UPPER)
WAGE_UPPER = 2.0

# Investors in the base model save half their wage and get U = 1/4
INVESTOR_SAVING_RATE = 0.5
INVESTOR_UTILITY = 0.25

# Generic monotone inversion (bisection)
INVERSION_XTOL = 1e-12
INVERSION_MAXITER = 200

# Wages this close to 2(1 - lambda) are routed to the constant branch
BRANCH_TOLERANCE = 1e-12

# Rent root brackets sit just inside (1, 1/lambda)
RENT_BRACKET_MARGIN = 1e-9
RENT_XTOL = 1e-12
RENT_MAXITER = 200
RENT_BRACKET_SHRINKS = 64

# Grid-search oracle for the entrepreneur problem
GRID_SEARCH_RESOLUTION = 1e-6
GRID_SEARCH_COARSE = 1e-3

# Steady-state scan
STEADY_GRID_N = 10_000
STEADY_MIN_GRID_N = 1000
STEADY_MARGIN = 1e-9
STEADY_XTOL = 1e-12
SLOPE_STEP = 1e-7

# Trajectory convergence
CONVERGENCE_TOL = 1e-10

# Finite differences
FD_STEP = 1e-6

# Interaction-coefficient consistency check F(y_hat, lambda_hat) = 0
TAYLOR_POINT_TOL = 1e-8

# Two-way demeaning
DEMEAN_TOL = 1e-12
DEMEAN_MAXITER = 10_000
# Regressors whose demeaned RMS falls below this carry no variation
DEGENERATE_RMS = 1e-9

# Synthetic panel
SHOCK_REDRAW_LIMIT = 100
DEFAULT_COUNTRIES = 60
DEFAULT_HORIZON = 40
DEFAULT_SIGMA = 0.01
DEFAULT_SEED = 42
LAMBDA_LEVELS = (0.3, 0.4, 0.5, 0.6, 0.7)
# Target steady wage as a multiple of 1 - lambda
POOR_POSITIONS = (0.35, 0.43, 0.51, 0.59, 0.67, 0.75)
RICH_POSITIONS = (1.25, 1.33, 1.41, 1.49, 1.57, 1.65)

# Figures
FIGURE_LAMBDAS = (0.3, 0.5, 0.7)
FIGURE_BETA = 0.7
FIGURE_GRID_N = 1000
FIGURE_MARGIN = 1e-6

# Baseline economy used by the CLI
DEFAULT_LAMBDA = 0.5
DEFAULT_R = 2.0
DEFAULT_TFP = 1.0
DEFAULT_ALPHA = 0.33
DEFAULT_BETA = 1.0
DEFAULT_INVESTMENT_SIZE = 1.0
DEFAULT_W0 = 0.1
DEFAULT_T = 100

# Serialisation
SIGNIFICANT_DIGITS = 12
PANEL_COLUMNS = ("country", "year", "dlns", "dlny", "dlnlam", "y_bar", "lam_bar")
