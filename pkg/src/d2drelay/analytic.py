"""Closed-form outage probabilities for the selection protocol.

Naming: the Bessel arguments and auxiliaries use suffixed names
(``v_arg``, ``d_coef``, ``t_term``) so they cannot be confused with the
path-loss exponent ``cfg.v``, the link distances or the slot time.

All probabilities treat the link gains of the selected pair as unconditioned
exponentials, which is what the closed forms assume.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .bessel import one_minus_xk1

LITERAL = "literal"
CORRECTED = "corrected"
VARIANTS = (LITERAL, CORRECTED)

_EXACT_BINOMIAL_MAX_N = 60


@dataclass(frozen=True)
class CellularOutageTerms:
    p: float  # per-pair phase-1 decoding failure
    p1: float  # nobody decodes, p**N
    t: float
    m: float
    a_coef: float
    b_coef: float
    u: float  # nan when b_coef <= 0
    w: float  # 1 - u K1(u); 1 outside the feasible alpha range
    delta: float


@dataclass(frozen=True)
class D2dOutageTerms:
    v_arg: float
    c_coef: float
    y_arg: float
    d_coef: float
    z_arg: float  # nan when e_coef <= 0
    e_coef: float
    mu: float
    phi: float
    q_term: float
    r_term: float
    z_term: float  # 1 - z K1(z), or 1 outside the feasible alpha range
    t_term: float  # binomial mixture of w**k, shared with the cellular outage
    p21: float
    p22: float


def binomial_weights(n, p_fail):
    """``C(n,k) p^(n-k) (1-p)^k`` for ``k = 0..n``: law of ``k`` decoders out of ``n``."""
    if n <= _EXACT_BINOMIAL_MAX_N:
        q = 1.0 - p_fail
        return np.array([math.comb(n, k) * p_fail ** (n - k) * q**k for k in range(n + 1)])
    return stats.binom.pmf(np.arange(n + 1), n, 1.0 - p_fail)


def _ratio_or_inf(num, den):
    return math.inf if den == 0.0 else num / den


def _product_tail_arg(threshold, mean_a, mean_b):
    """Bessel argument x with P(A*B > threshold) = x K1(x) for exponentials A, B."""
    if math.isinf(threshold):
        return math.inf
    return math.sqrt(4.0 * threshold / (mean_a * mean_b))


def _delta(r_target, rho):
    ratio = math.inf if rho == 1.0 else rho / (1.0 - rho)
    denom = math.log2(1.0 + ratio)
    return math.inf if denom == 0.0 else r_target / denom


def _mu(r_target, rho):
    denom = math.inf if rho == 0.0 else math.log2(1.0 / rho)
    return math.inf if denom == 0.0 else r_target / denom


def alpha_bounds(cfg):
    """Upper limits ``(1 - delta, 1 - mu)`` on alpha for the relay SINR at the CU
    and for the interference-limited D2D SINR to be able to reach target.

    A bound at or below zero means no alpha works; ``rho`` at 0 or 1 makes the
    matching bound ``-inf``.
    """
    return 1.0 - _delta(cfg.r_ct, cfg.rho), 1.0 - _mu(cfg.r_dt, cfg.rho)


def cellular_outage_terms(cfg):
    mean1, mean2 = (float(m) for m in cfg.link_means[:2])
    t = 2.0 ** (cfg.r_ct / cfg.alpha) - 1.0
    m = cfg.p_c / cfg.sigma2
    if cfg.gamma == 1.0:
        p = 1.0
    else:
        p = -math.expm1(-t / (mean1 * m * (1.0 - cfg.gamma)))

    s = 2.0 ** (cfg.r_ct / (1.0 - cfg.alpha)) - 1.0
    harvest = cfg.eta * cfg.gamma * cfg.p_c * cfg.alpha
    a_coef = _ratio_or_inf(cfg.sigma2 * (1.0 - cfg.alpha) * s, harvest)
    b_coef = cfg.rho - s * (1.0 - cfg.rho)
    delta = _delta(cfg.r_ct, cfg.rho)
    if cfg.alpha < 1.0 - delta and b_coef > 0.0:
        u = _product_tail_arg(a_coef / b_coef, mean1, mean2)
        w = one_minus_xk1(u)
    else:
        u, w = math.nan, 1.0
    return CellularOutageTerms(p, p**cfg.n_pairs, t, m, a_coef, b_coef, u, w, delta)


def _w_mixture(terms, n):
    weights = binomial_weights(n, terms.p)
    return float(np.dot(weights[1:], terms.w ** np.arange(1, n + 1)))


def cellular_outage(cfg, variant=CORRECTED):
    """Cellular outage probability.

    ``literal`` multiplies the decoder-count mixture by ``1 - P_1`` a second
    time, as the closed form was originally printed. ``corrected`` is the plain
    law of total probability over the number of decoders ``k``:
    ``p**N + sum_k C(N,k) p^(N-k) (1-p)^k w^k``. Both are 1 once alpha reaches
    the cellular bound.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    terms = cellular_outage_terms(cfg)
    if not cfg.alpha < 1.0 - terms.delta:
        return 1.0
    mix = _w_mixture(terms, cfg.n_pairs)
    if variant == LITERAL:
        value = terms.p1 + (1.0 - terms.p1) * mix
    else:
        value = terms.p1 + mix
    return min(1.0, max(0.0, value))


def d2d_outage_terms(cfg):
    cell = cellular_outage_terms(cfg)
    mean1, _, mean3, mean4 = (float(m) for m in cfg.link_means)
    n = cfg.n_pairs

    s_d = 2.0 ** (cfg.r_dt / (1.0 - cfg.alpha)) - 1.0
    harvest = cfg.eta * cfg.gamma * cfg.p_c * cfg.alpha
    d_coef = _ratio_or_inf(cfg.sigma2 * (1.0 - cfg.alpha) * s_d, harvest)
    c_coef = _ratio_or_inf(d_coef, 1.0 - cfg.rho) if math.isfinite(d_coef) else math.inf
    e_coef = (1.0 - cfg.rho) - cfg.rho * s_d
    mu = _mu(cfg.r_dt, cfg.rho)

    v_arg = _product_tail_arg(c_coef, mean1, mean3)
    y_arg = _product_tail_arg(d_coef, mean1, mean3)
    if cfg.alpha < 1.0 - mu and e_coef > 0.0:
        z_arg = _product_tail_arg(d_coef / e_coef, mean1, mean3)
        z_term = one_minus_xk1(z_arg)
    else:
        z_arg, z_term = math.nan, 1.0

    phi = math.exp(-cell.t / (mean4 * cell.m))
    weights = binomial_weights(n, cell.p)
    t_term = _w_mixture(cell, n)
    p21 = cell.p1 + (1.0 - cell.p1) * t_term
    p22 = cell.p1 + (1.0 - cell.p1) * float(weights[1:].sum())
    return D2dOutageTerms(
        v_arg=v_arg,
        c_coef=c_coef,
        y_arg=y_arg,
        d_coef=d_coef,
        z_arg=z_arg,
        e_coef=e_coef,
        mu=mu,
        phi=phi,
        q_term=one_minus_xk1(y_arg),
        r_term=one_minus_xk1(v_arg),
        z_term=z_term,
        t_term=t_term,
        p21=p21,
        p22=p22,
    )


def d2d_outage(cfg):
    """D2D outage probability from the four-branch closed form, evaluated as printed.

    The branch is picked by whether alpha is below the cellular bound
    ``1 - delta`` (selects ``P_21`` over ``P_22``) and below the D2D bound
    ``1 - mu`` (the interference-limited term becomes 1 past it). In the printed
    form that term is the ``w``-mixture ``t_term`` rather than ``1 - z K1(z)``;
    it is kept that way here so the printed expression stays reproducible.
    """
    cell = cellular_outage_terms(cfg)
    terms = d2d_outage_terms(cfg)
    delta_bound, mu_bound = alpha_bounds(cfg)
    n = cfg.n_pairs
    p1 = cell.p1
    p1c = 1.0 - p1

    p2x = terms.p21 if cfg.alpha < delta_bound else terms.p22
    interfered = terms.t_term if cfg.alpha < mu_bound else 1.0
    weights = binomial_weights(n, cell.p)
    q_mix = float(np.dot(weights[1:], terms.q_term ** np.arange(1, n + 1)))

    value = (
        p1 * terms.q_term**n
        + p1c * (1.0 - p2x) * terms.r_term * terms.phi
        + p1c * (1.0 - p2x) * interfered * (1.0 - terms.phi)
        + p1c * p2x * q_mix
    )
    return min(1.0, max(0.0, value))
