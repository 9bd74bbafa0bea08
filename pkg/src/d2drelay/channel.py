"""System configuration and the Rayleigh / path-loss link-gain model."""

import dataclasses
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

# Link columns of a channel realization.
BS_DU1, DU1_CU, DU1_DU2, BS_DU2 = range(4)
POWER_FIELDS = ("p_c", "sigma2")


class ConfigError(ValueError):
    """Invalid configuration value; carries the offending field and constraint."""

    def __init__(self, field, constraint, value=None):
        self.field = field
        self.constraint = constraint
        self.value = value
        super().__init__(f"{field}: must satisfy {constraint} (got {value!r})")


def dbm_to_watts(dbm):
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts):
    return 10.0 * math.log10(watts) + 30.0


@dataclass(frozen=True)
class SystemConfig:
    """Physical and protocol parameters. Powers are stored in watts.

    Defaults follow the evaluation setup: P_c = 10 dBm, noise -90 dBm,
    eta = 0.8, gamma = 0.75, path-loss exponent 3, and link distances
    BS-DU1 30 m, DU1-CU 20 m, DU1-DU2 20 m, BS-DU2 10 m.
    """

    p_c: float = 0.01
    sigma2: float = 1e-12
    eta: float = 0.8
    gamma: float = 0.75
    alpha: float = 0.3
    rho: float = 0.75
    n_pairs: int = 2
    d1: float = 30.0
    d2: float = 20.0
    d3: float = 20.0
    d4: float = 10.0
    v: float = 3.0
    r_ct: float = 1.0
    r_dt: float = 1.0
    t_slot: float = 1.0

    def __post_init__(self):
        checks = [
            ("alpha", 0.0 < self.alpha < 1.0, "0 < alpha < 1"),
            ("gamma", 0.0 <= self.gamma <= 1.0, "0 <= gamma <= 1"),
            ("rho", 0.0 <= self.rho <= 1.0, "0 <= rho <= 1"),
            ("eta", 0.0 < self.eta <= 1.0, "0 < eta <= 1"),
            ("p_c", self.p_c > 0.0, "p_c > 0"),
            ("sigma2", self.sigma2 > 0.0, "sigma2 > 0"),
            ("d1", self.d1 > 0.0, "d1 > 0"),
            ("d2", self.d2 > 0.0, "d2 > 0"),
            ("d3", self.d3 > 0.0, "d3 > 0"),
            ("d4", self.d4 > 0.0, "d4 > 0"),
            ("v", self.v >= 2.0, "v >= 2"),
            ("r_ct", self.r_ct > 0.0, "r_ct > 0"),
            ("r_dt", self.r_dt > 0.0, "r_dt > 0"),
            ("t_slot", self.t_slot > 0.0, "t_slot > 0"),
        ]
        for name, ok, constraint in checks:
            value = getattr(self, name)
            # NaN fails every comparison above, so it is caught here too.
            if not ok or not math.isfinite(value):
                raise ConfigError(name, constraint, value)
        n = self.n_pairs
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
            raise ConfigError("n_pairs", "integer >= 1", n)

    @property
    def link_means(self):
        """Mean power gain d_j**-v of each link class, in column order."""
        return np.array([self.d1, self.d2, self.d3, self.d4], dtype=float) ** -self.v

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_dict(cls, data):
        """Build a config from a mapping with keys named after the fields.

        ``p_c`` and ``sigma2`` may be plain numbers (watts) or one of
        ``{"dbm": x}`` / ``{"watts": x}``. Missing keys take the defaults.
        """
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(unknown[0], "known SystemConfig field", data[unknown[0]])
        kwargs = {}
        for key, value in data.items():
            if key in POWER_FIELDS:
                value = _parse_power(key, value)
            elif key == "n_pairs":
                if isinstance(value, float) and value.is_integer():
                    value = int(value)
            elif isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(key, "a number", value)
            else:
                value = float(value)
            kwargs[key] = value
        return cls(**kwargs)

    @classmethod
    def from_json(cls, path):
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError("<file>", f"valid JSON ({exc.msg} at line {exc.lineno})") from exc
        if not isinstance(data, dict):
            raise ConfigError("<file>", "a JSON object at top level", type(data).__name__)
        return cls.from_dict(data)

    def to_dict(self):
        return dataclasses.asdict(self)


def _parse_power(key, value):
    if isinstance(value, dict):
        if len(value) != 1 or not set(value) <= {"dbm", "watts"}:
            raise ConfigError(key, 'exactly one of {"dbm": x} or {"watts": x}', value)
        (unit, x), = value.items()
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ConfigError(key, "a number", x)
        return dbm_to_watts(float(x)) if unit == "dbm" else float(x)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(key, 'a number in watts, {"dbm": x} or {"watts": x}', value)
    return float(value)


def default_config_path():
    """Path of the bundled evaluation-setup config file."""
    return resources.files("d2drelay") / "data" / "table2.json"


def load_default_config():
    return SystemConfig.from_json(default_config_path())


def gains_from_uniforms(u, means):
    """Map uniforms on [0, 1) to exponential gains by inverting the CDF."""
    return -np.log1p(-u) * means


def draw_channels(cfg, rng):
    """Draw one realization: an ``(n_pairs, 4)`` array of exponential link gains.

    Uniforms are consumed row-major (pair outer, link inner), so a seeded
    ``rng`` reproduces the matrix exactly.
    """
    u = rng.random((cfg.n_pairs, 4))
    return gains_from_uniforms(u, cfg.link_means)


def harvested_power(beta_i1, cfg):
    """Transmit power available at a D2D transmitter after harvesting, in watts.

    The slot duration cancels: the energy harvested over ``alpha*T`` is spent
    over ``(1-alpha)*T``.
    """
    if not cfg.alpha < 1.0:
        raise ConfigError("alpha", "alpha < 1", cfg.alpha)
    return cfg.eta * cfg.gamma * cfg.p_c * beta_i1 * cfg.alpha / (1.0 - cfg.alpha)
