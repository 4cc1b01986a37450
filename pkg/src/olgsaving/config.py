"""Run configuration: defaults, key-value config files and flag overrides.

A config file holds one ``key = value`` (or ``key: value``) pair per line.
Keys are the long command-line flag names, with either dashes or
underscores. Blank lines and lines starting with ``#`` are skipped.

Example file::

    # baseline economy
    lambda = 0.5
    r: 2
    alpha = 0.33
"""

import logging
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional, Tuple

from olgsaving.constants import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_COUNTRIES,
    DEFAULT_HORIZON,
    DEFAULT_INVESTMENT_SIZE,
    DEFAULT_LAMBDA,
    DEFAULT_R,
    DEFAULT_SEED,
    DEFAULT_SIGMA,
    DEFAULT_T,
    DEFAULT_TFP,
    DEFAULT_W0,
    FIGURE_BETA,
    STEADY_GRID_N,
)
from olgsaving.equilibrium import EconomyParams
from olgsaving.errors import ConfigError, DomainError
from olgsaving.production import CobbDouglas
from olgsaving.utils import parse_float_list

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
SWEEP_PARAMETERS = ("lambda", "r", "alpha")


def _optional_float(text):
    if str(text).strip().lower() in ("", "none"):
        return None
    return float(text)


def _choice(options):
    def parse(text):
        value = str(text).strip().lower()
        if value not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return value
    return parse


def _float_tuple(text):
    values = parse_float_list(text)
    if not values:
        raise ValueError("expected a comma separated list of numbers")
    return tuple(values)


# config key -> (RunConfig field, parser)
CONFIG_KEYS = {
    "lambda": ("lam", float),
    "r": ("r", float),
    "tfp": ("tfp", float),
    "alpha": ("alpha", float),
    "beta": ("beta", float),
    "investment-size": ("investment_size", float),
    "w0": ("w0", float),
    "t": ("t", int),
    "r-star": ("r_star", _optional_float),
    "grid-n": ("grid_n", int),
    "seed": ("seed", int),
    "sigma": ("sigma", float),
    "countries": ("countries", int),
    "horizon": ("horizon", int),
    "lambda-noise": ("lambda_noise", _optional_float),
    "lambda-drift": ("lambda_drift", float),
    "workers": ("workers", int),
    "output": ("output", str),
    "format": ("format", _choice(FORMATS)),
    "over": ("over", _choice(SWEEP_PARAMETERS)),
    "figure-beta": ("figure_beta", float),
    "values": ("values", _float_tuple),
}


@dataclass(frozen=True)
class RunConfig:
    """Every setting a command can use.

    Economy parameters come first; the rest are command settings. Use
    economy() to obtain validated EconomyParams.
    """

    lam: float = DEFAULT_LAMBDA
    r: float = DEFAULT_R
    tfp: float = DEFAULT_TFP
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    investment_size: float = DEFAULT_INVESTMENT_SIZE
    w0: float = DEFAULT_W0
    t: int = DEFAULT_T
    r_star: Optional[float] = None
    grid_n: int = STEADY_GRID_N
    seed: int = DEFAULT_SEED
    sigma: float = DEFAULT_SIGMA
    countries: int = DEFAULT_COUNTRIES
    horizon: int = DEFAULT_HORIZON
    lambda_noise: Optional[float] = None
    lambda_drift: float = 0.0
    workers: int = 1
    output: Optional[str] = None
    format: Optional[str] = None
    over: str = "lambda"
    values: Tuple[float, ...] = (0.3, 0.5, 0.7)
    figure_beta: float = FIGURE_BETA

    def production(self):
        return CobbDouglas(tfp=self.tfp, alpha=self.alpha)

    def economy(self):
        """Validated EconomyParams for this configuration.

        Raises:
            DomainError: If any economy parameter is outside its domain.
        """
        return EconomyParams(lam=self.lam, r=self.r, production=self.production(),
                             beta=self.beta, investment_size=self.investment_size)

    def validate(self):
        """Check command settings; returns self for chaining."""
        if self.format is not None and self.format not in FORMATS:
            raise DomainError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if self.over not in SWEEP_PARAMETERS:
            raise DomainError(f"sweep parameter must be one of {', '.join(SWEEP_PARAMETERS)}")
        if self.workers < 1:
            raise DomainError(f"workers must be at least 1, got {self.workers}")
        if self.t < 1:
            raise DomainError(f"horizon T must be at least 1, got {self.t}")
        if not (math.isfinite(self.sigma) and self.sigma >= 0.0):
            raise DomainError(f"sigma must be non-negative, got {self.sigma!r}")
        return self

    def merged(self, values):
        """Copy with the given field values applied, skipping None."""
        changes = {name: value for name, value in values.items() if value is not None}
        unknown = set(changes) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown settings: {', '.join(sorted(unknown))}")
        return replace(self, **changes)


def normalize_key(key):
    return key.strip().lower().replace("_", "-")


def parse_config_text(text, path=None):
    """Parse config file contents into RunConfig field values.

    Args:
        text: File contents.
        path: Path used in error messages.

    Returns:
        Dictionary of RunConfig field name to parsed value.

    Raises:
        ConfigError: On malformed lines, unknown keys or bad values.
    """
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()

        # Skip comments and empty lines
        if not line or line.startswith("#"):
            continue

        # Split on the first separator
        positions = [i for i in (line.find("="), line.find(":")) if i >= 0]
        if not positions:
            raise ConfigError(f"expected 'key = value', got {line!r}", path, number)
        cut = min(positions)
        key, value = normalize_key(line[:cut]), line[cut + 1:].strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown key {key!r}", path, number)
        name, parse = CONFIG_KEYS[key]
        try:
            values[name] = parse(value)
        except ValueError as e:
            raise ConfigError(f"bad value for {key}: {value!r} ({e})", path, number) from None
    return values


def load_config_file(path):
    """Load and parse a config file.

    Raises:
        ConfigError: If the file cannot be read or parsed.
    """
    filepath = Path(path)
    try:
        text = filepath.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file: {e.strerror or e}", str(filepath)) from None
    values = parse_config_text(text, str(filepath))
    logger.debug("loaded %d setting(s) from %s", len(values), filepath)
    return values


def resolve_config(file_values=None, flag_values=None, base=None):
    """Combine defaults, config file values and flags (flags win).

    Args:
        file_values: Field values from a config file.
        flag_values: Field values given on the command line; None means unset.
        base: Starting configuration, the defaults when omitted.

    Returns:
        RunConfig.
    """
    config = base if base is not None else RunConfig()
    if file_values:
        config = config.merged(file_values)
    if flag_values:
        config = config.merged(flag_values)
    return config
