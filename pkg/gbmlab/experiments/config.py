"""
Experiment configuration.

Config files are flat key=value text. '#' starts a comment and list values
are comma-separated:

    n_values = 512, 2048, 8192
    lambda_values = 2
    tau_values = 0.5
    r_d = 0.02
    radius_rule = fixed
    replicates = 20
    base_seed = 12345
    output_path = results/convergence.csv
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

from ..core.errors import ConfigError, ParameterError
from ..core.params import (
    MAX_SEED,
    RadiusRule,
    check_tau,
    require_finite,
    require_int,
)

# Configure logging
logger = logging.getLogger(__name__)

LIST_KEYS = ('n_values', 'lambda_values', 'tau_values')
SCALAR_KEYS = ('r_d', 'radius_rule', 'radius_alpha', 'replicates', 'base_seed', 'output_path', 'threads')


def _as_list(key: str, value: Any) -> list:
    if isinstance(value, str):
        items = [item.strip() for item in value.split(',')]
        if any(not item for item in items):
            raise ParameterError(f"{key} has an empty list item: {value!r}", field=key)
        return items
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Grid of Monte Carlo cells.

    Attributes:
        n_values: Node counts
        lambda_values: Community strengths (>= 1); r_s = lambda * r_d
        tau_values: Community fractions
        r_d (float): Base radius, or the constant c of the radius rule
        radius_rule (str): 'fixed', 'power' (c / n^alpha) or 'log' (c log n / n)
        radius_alpha (float): Exponent of the power rule
        replicates (int): Replicates per cell
        base_seed (int): Seed every replicate stream derives from
        output_path (str): Records CSV location
        threads (Optional[int]): Worker count, None for available parallelism
    """
    n_values: Tuple[int, ...]
    lambda_values: Tuple[float, ...]
    tau_values: Tuple[float, ...]
    r_d: float = 0.01
    radius_rule: str = RadiusRule.FIXED
    radius_alpha: float = 1.0
    replicates: int = 1
    base_seed: int = 0
    output_path: str = 'experiment.csv'
    threads: Optional[int] = None

    def __post_init__(self):
        for key in LIST_KEYS:
            if not getattr(self, key):
                raise ParameterError(f"{key} must not be empty", field=key)
        for n in self.n_values:
            if n < 1:
                raise ParameterError(f"n_values entries must be >= 1, got {n}", field='n_values')
        for lam in self.lambda_values:
            if lam < 1.0:
                raise ParameterError(f"lambda_values entries must be >= 1, got {lam}", field='lambda_values')
        for tau in self.tau_values:
            check_tau(tau)
        if self.r_d <= 0.0:
            raise ParameterError(f"r_d must be > 0, got {self.r_d}", field='r_d')
        if self.radius_rule not in RadiusRule.ALL:
            raise ParameterError(f"radius_rule must be one of {RadiusRule.ALL}, got {self.radius_rule!r}",
                                 field='radius_rule')
        if self.replicates < 1:
            raise ParameterError(f"replicates must be >= 1, got {self.replicates}", field='replicates')
        if not 0 <= self.base_seed <= MAX_SEED:
            raise ParameterError(f"base_seed must be an unsigned 64-bit integer, got {self.base_seed}",
                                 field='base_seed')
        if self.threads is not None and self.threads < 1:
            raise ParameterError(f"threads must be >= 1, got {self.threads}", field='threads')

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'ExperimentConfig':
        """
        Create a config from raw values (strings or numbers).

        Raises:
            ConfigError: On unknown or missing keys
            ParameterError: On invalid values
        """
        unknown = sorted(set(data) - set(LIST_KEYS) - set(SCALAR_KEYS))
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        missing = [key for key in LIST_KEYS if key not in data]
        if missing:
            raise ConfigError(f"missing config key(s): {', '.join(missing)}")

        kwargs: Dict[str, Any] = {
            'n_values': tuple(require_int('n_values', item) for item in _as_list('n_values', data['n_values'])),
            'lambda_values': tuple(require_finite('lambda_values', item)
                                   for item in _as_list('lambda_values', data['lambda_values'])),
            'tau_values': tuple(require_finite('tau_values', item)
                                for item in _as_list('tau_values', data['tau_values'])),
        }
        if 'r_d' in data:
            kwargs['r_d'] = require_finite('r_d', data['r_d'])
        if 'radius_rule' in data:
            kwargs['radius_rule'] = str(data['radius_rule']).strip()
        if 'radius_alpha' in data:
            kwargs['radius_alpha'] = require_finite('radius_alpha', data['radius_alpha'])
        if 'replicates' in data:
            kwargs['replicates'] = require_int('replicates', data['replicates'])
        if 'base_seed' in data:
            kwargs['base_seed'] = require_int('base_seed', data['base_seed'])
        if 'output_path' in data:
            kwargs['output_path'] = str(data['output_path']).strip()
        if data.get('threads') not in (None, ''):
            kwargs['threads'] = require_int('threads', data['threads'])
        return cls(**kwargs)


def parse_config_text(text: str) -> Dict[str, str]:
    """Parse key=value lines into a dict of raw strings."""
    values: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"line {number}: expected key=value, got {raw.strip()!r}")
        if key in values:
            raise ConfigError(f"line {number}: duplicate key {key!r}")
        values[key] = value.strip()
    return values


def load_config(path: str) -> ExperimentConfig:
    """
    Read an experiment config file.

    Raises:
        ConfigError: When the file cannot be read or parsed
        ParameterError: On invalid values
    """
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror or str(e)}")
    config = ExperimentConfig.from_dict(parse_config_text(text))
    logger.info(f"Loaded config {path}: {len(config.n_values)} n x {len(config.lambda_values)} lambda x "
                f"{len(config.tau_values)} tau, {config.replicates} replicate(s)")
    return config
