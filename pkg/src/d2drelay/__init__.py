"""Relay selection for D2D pairs that harvest RF energy and share a cellular
user's spectrum: link-level Monte Carlo simulation and closed-form outage."""

from .analytic import (
    CORRECTED,
    LITERAL,
    alpha_bounds,
    cellular_outage,
    cellular_outage_terms,
    d2d_outage,
    d2d_outage_terms,
)
from .bessel import bessel_k1
from .channel import ConfigError, SystemConfig, draw_channels, harvested_power, load_default_config
from .montecarlo import EstimateResult, OutageCurve, estimate_outage, point_seed, sweep
from .protocol import (
    Case,
    SelectionOutcome,
    TrialResult,
    phase1_rate_du1,
    phase1_rate_du2,
    phase2_rate_cu,
    phase2_rate_d2d,
    run_trial,
    select_and_classify,
)

__version__ = "0.1.0"
