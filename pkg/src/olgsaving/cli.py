#!/usr/bin/env python3
"""Command-line interface for the olgsaving model lab."""

import argparse
import logging
import sys
from dataclasses import fields, replace
from multiprocessing import Pool
from pathlib import Path

from olgsaving import __version__
from olgsaving.config import FORMATS, SWEEP_PARAMETERS, RunConfig, load_config_file, resolve_config
from olgsaving.constants import FIGURE_BETA
from olgsaving.dynamics import simulate, steady_states
from olgsaving.equilibrium import equilibrium_state
from olgsaving.errors import ConfigError, DomainError, NumericalError, OLGSavingError
from olgsaving.figures import FIGURE_COLUMNS, figure_datasets
from olgsaving.output import emit, read_panel_csv, rows_to_csv, to_json, write_atomic, write_panel_csv
from olgsaving.panel import build_world, estimate_signs, generate_panel, interaction_coefficients
from olgsaving.utils import parse_float_list

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

TRAJECTORY_COLUMNS = ("t", "w", "k", "y", "phi", "s_b", "s", "pi")
STEADY_COLUMNS = ("kind", "w", "stable", "slope", "unique")
SWEEP_COLUMNS = ("value", "root", "w", "k", "y", "phi", "s_b", "s", "pi", "stable", "unique")
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"

EPILOG = """
Examples:
  olgsaving simulate --lambda 0.5 --r 2 --alpha 0.33 --w0 0.1 --t 100
  olgsaving simulate --r-star 0.5 --format json
  olgsaving steady --lambda 0.5 --r 2
  olgsaving figures --output figures/
  olgsaving panel --seed 42 --sigma 0.01 --countries 60 --horizon 40 --output panel/
  olgsaving sweep --over lambda --values 0.3,0.5,0.7

Config files:
  --config FILE reads 'key = value' lines using the long flag names,
  e.g. 'lambda = 0.5'. Flags given on the command line win.

Exit codes:
  0 success, 2 usage or configuration error, 3 numerical failure
"""


class UsageError(OLGSavingError):
    """Malformed command line."""


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing usage and exiting."""

    def error(self, message):
        raise UsageError(message)


def _float_list(text):
    try:
        values = parse_float_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return tuple(values)


def _economy_options():
    parent = ArgumentParser(add_help=False)
    group = parent.add_argument_group("economy")
    group.add_argument("--lambda", dest="lam", type=float, help="Pledgeability in (0, 1) (default: 0.5)")
    group.add_argument("--r", type=float, help="Project yield R (default: 2)")
    group.add_argument("--tfp", type=float, help="Total factor productivity A (default: 1)")
    group.add_argument("--alpha", type=float, help="Capital share (default: 0.33)")
    group.add_argument("--beta", type=float, help="Discount factor (default: 1)")
    group.add_argument("--investment-size", type=float, help="Minimum investment size I (default: 1)")
    group.add_argument("-o", "--output", type=str,
                       help="Output file, or directory for figures and panel (default: stdout / .)")
    group.add_argument("--format", choices=FORMATS,
                       help="Output format (default: json for steady, csv otherwise)")
    return parent


def build_parser():
    parser = ArgumentParser(
        prog="olgsaving",
        description="Credit-constrained OLG saving model: simulations, steady states, "
                    "figure data and synthetic panels.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--config", type=str, default=None, help="Key-value config file")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="More logging on stderr (-v info, -vv debug)")
    parser.add_argument("--version", action="version", version=f"olgsaving {__version__}")

    economy = _economy_options()
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    sim = commands.add_parser("simulate", parents=[economy], help="Simulate a wage trajectory")
    sim.add_argument("--w0", type=float, help="Initial wage in (0, 2) (default: 0.1)")
    sim.add_argument("--t", type=int, help="Number of periods (default: 100)")
    sim.add_argument("--r-star", type=float, help="World interest rate; simulates an open economy")

    fig = commands.add_parser("figures", parents=[economy], help="Write figure datasets")
    fig.add_argument("--figure-beta", type=float,
                     help=f"Discount factor of the extended panels (default: {FIGURE_BETA})")

    steady = commands.add_parser("steady", parents=[economy], help="Report interior steady states")
    steady.add_argument("--grid-n", type=int, help="Scan resolution, at least 1000 (default: 10000)")

    panel = commands.add_parser("panel", parents=[economy],
                                help="Generate a synthetic panel and estimate it")
    panel.add_argument("--seed", type=int, help="RNG seed (default: 42)")
    panel.add_argument("--sigma", type=float, help="Log TFP shock volatility (default: 0.01)")
    panel.add_argument("--countries", type=int, help="Number of countries (default: 60)")
    panel.add_argument("--horizon", type=int, help="Years per country (default: 40)")
    panel.add_argument("--lambda-noise", type=float, help="Log pledgeability noise (default: sigma)")
    panel.add_argument("--lambda-drift", type=float, help="Log pledgeability drift (default: 0)")
    panel.add_argument("--workers", type=int, help="Worker processes (default: 1)")

    sweep = commands.add_parser("sweep", parents=[economy],
                                help="Steady states across values of one parameter")
    sweep.add_argument("--over", choices=SWEEP_PARAMETERS, help="Swept parameter (default: lambda)")
    sweep.add_argument("--values", type=_float_list, help="Comma separated values")
    sweep.add_argument("--grid-n", type=int, help="Scan resolution (default: 10000)")
    sweep.add_argument("--workers", type=int, help="Worker processes (default: 1)")
    return parser


def setup_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def _params_dict(config):
    return {
        "lambda": config.lam, "r": config.r, "tfp": config.tfp, "alpha": config.alpha,
        "beta": config.beta, "investment_size": config.investment_size,
    }


def _output_dir(config):
    return Path(config.output) if config.output else Path(".")


def _output_format(config, default):
    return config.format or default


def cmd_simulate(config):
    """Write the trajectory rows (t, w, k, y, phi, s_b, s, pi)."""
    params = config.economy()
    trajectory = simulate(config.w0, config.t, params, r_star=config.r_star)
    rows = trajectory.rows()
    if _output_format(config, "csv") == "json":
        document = {
            "params": _params_dict(config),
            "r_star": config.r_star,
            "converged": trajectory.converged,
            "converged_at": trajectory.converged_at,
            "rows": [{column: row[column] for column in TRAJECTORY_COLUMNS} for row in rows],
        }
        emit(to_json(document), config.output)
    else:
        emit(rows_to_csv(rows, TRAJECTORY_COLUMNS), config.output)
    return EXIT_OK


def cmd_figures(config):
    """Write one dataset per figure panel into the output directory."""
    config.economy()
    beta = config.figure_beta
    datasets = figure_datasets(beta=beta, production=config.production())
    out_dir = _output_dir(config)
    for name, rows in datasets.items():
        if _output_format(config, "csv") == "json":
            write_atomic(out_dir / f"{name}.json", to_json({"name": name, "rows": rows}))
        else:
            write_atomic(out_dir / f"{name}.csv", rows_to_csv(rows, FIGURE_COLUMNS))
    return EXIT_OK


def cmd_steady(config):
    """Write the steady-state report."""
    report = steady_states(config.economy(), config.grid_n)
    if _output_format(config, "json") == "csv":
        rows = [{"kind": "corner", "w": 0.0, "unique": report.unique}]
        rows += [
            {"kind": "interior", "w": w, "stable": stable, "slope": slope, "unique": report.unique}
            for w, stable, slope in zip(report.interior_wages, report.stability_flags,
                                        report.slopes)
        ]
        emit(rows_to_csv(rows, STEADY_COLUMNS), config.output)
    else:
        document = {"params": _params_dict(config)}
        document.update(report.as_dict())
        emit(to_json(document), config.output)
    return EXIT_OK


def cmd_panel(config):
    """Write panel.csv and estimates.json; estimates are computed from the written CSV."""
    world = build_world(
        n_countries=config.countries, sigma=config.sigma, horizon=config.horizon,
        alpha=config.alpha, tfp=config.tfp, lambda_noise=config.lambda_noise,
        lambda_drift=config.lambda_drift,
    )
    panel = generate_panel(world, config.seed, workers=config.workers)
    out_dir = _output_dir(config)
    panel_path = out_dir / "panel.csv"
    write_panel_csv(panel, panel_path)

    frame = read_panel_csv(panel_path)
    result = estimate_signs(frame, config.production())
    lambda_hat = float(frame.groupby("country")["lam_bar"].first().mean())
    model = interaction_coefficients(lambda_hat, config.production())
    document = {
        "seed": config.seed,
        "sigma": world.sigma,
        "lambda_noise": world.lambda_noise,
        "lambda_drift": world.lambda_drift,
        "countries": len(world.countries),
        "horizon": world.horizon,
        "model_interactions": {
            "gamma_prime": model.gamma_prime, "delta": model.delta, "zeta": model.zeta,
            "y_hat": model.y_hat, "lambda_hat": model.lambda_hat,
        },
    }
    document.update(result)
    write_atomic(out_dir / "estimates.json", to_json(document))
    if not result["signs_match"]:
        logger.warning("estimated signs differ from the model's predictions")
    return EXIT_OK


def sweep_point(config, over, value):
    """Steady-state rows for one value of the swept parameter."""
    field_name = {"lambda": "lam", "r": "r", "alpha": "alpha"}[over]
    point = replace(config, **{field_name: value})
    params = point.economy()
    report = steady_states(params, point.grid_n)
    rows = []
    for root, (w, stable) in enumerate(zip(report.interior_wages, report.stability_flags)):
        row = {"value": value, "root": root, "stable": stable, "unique": report.unique}
        row.update(equilibrium_state(w, params).as_dict())
        rows.append(row)
    return rows


def cmd_sweep(config):
    """Write steady states for each value of --over."""
    jobs = [(config, config.over, value) for value in config.values]
    if config.workers > 1 and len(jobs) > 1:
        with Pool(processes=config.workers) as pool:
            blocks = pool.starmap(sweep_point, jobs)
    else:
        blocks = [sweep_point(*job) for job in jobs]
    rows = [row for block in blocks for row in block]
    if _output_format(config, "csv") == "json":
        emit(to_json({"over": config.over, "params": _params_dict(config), "rows": rows}),
             config.output)
    else:
        emit(rows_to_csv(rows, SWEEP_COLUMNS), config.output)
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "figures": cmd_figures,
    "steady": cmd_steady,
    "panel": cmd_panel,
    "sweep": cmd_sweep,
}


def _fail(kind, error, code):
    message = " ".join(str(error).split())
    print(f"olgsaving: {kind}: {message}", file=sys.stderr)
    return code


def main(argv=None):
    """Main entry point for the olgsaving CLI; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return _fail("usage", e, EXIT_USAGE)

    setup_logging(args.verbose)
    names = {f.name for f in fields(RunConfig)}
    flag_values = {key: value for key, value in vars(args).items() if key in names}

    try:
        file_values = load_config_file(args.config) if args.config else {}
        config = resolve_config(file_values, flag_values).validate()
        return COMMANDS[args.command](config)
    except ConfigError as e:
        return _fail("config", e, EXIT_USAGE)
    except DomainError as e:
        return _fail("usage", e, EXIT_USAGE)
    except NumericalError as e:
        return _fail("numerical", e, EXIT_NUMERICAL)
    except OSError as e:
        return _fail("usage", e, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
