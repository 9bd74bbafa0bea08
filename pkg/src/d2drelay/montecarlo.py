"""Seeded, batch-parallel Monte Carlo estimation of the outage probabilities.

All trials of one estimate read a single counter-based (Philox) stream of
uniforms, laid out row-major as (trial, pair, link). Trial ``i`` therefore
starts at uniform ``4*N*i``, i.e. Philox counter ``N*i``, and a block of
trials can be generated anywhere by advancing the counter. Workers only
change which thread produces a block, never the numbers.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import analytic
from .channel import ConfigError, gains_from_uniforms
from .protocol import classify_batch

Z99 = 2.576
WILSON_MIN_COUNT = 10
# Uniforms per block; bounds memory, has no influence on the results.
BLOCK_UNIFORMS = 1 << 18
AXES = ("alpha", "rho", "n_pairs")


@dataclass(frozen=True)
class EstimateResult:
    trials: int
    p_oc_hat: float
    p_od_hat: float
    ci_halfwidth_oc: float
    ci_halfwidth_od: float
    case_histogram: tuple  # counts of cases 1..4
    # Per-pair phase-1 diagnostics over trials * n_pairs pair draws.
    pair_decode_failures: int = 0
    pair_du2_successes: int = 0
    n_pairs: int = 1

    @property
    def p_no_decoder_hat(self):
        return self.case_histogram[0] / self.trials

    @property
    def pair_decode_failure_hat(self):
        return self.pair_decode_failures / (self.trials * self.n_pairs)

    @property
    def pair_du2_success_hat(self):
        return self.pair_du2_successes / (self.trials * self.n_pairs)


def ci_halfwidth(p_hat, trials, z=Z99):
    """Normal-approximation binomial half-width; Wilson when either count is small."""
    successes = p_hat * trials
    if min(successes, trials - successes) < WILSON_MIN_COUNT:
        return wilson_halfwidth(p_hat, trials, z)
    return z * math.sqrt(p_hat * (1.0 - p_hat) / trials)


def wilson_halfwidth(p_hat, trials, z=Z99):
    z2 = z * z
    return z / (1.0 + z2 / trials) * math.sqrt(p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials**2))


def philox_key(seed):
    return np.random.SeedSequence(seed).generate_state(2, np.uint64)


def point_seed(seed, index):
    """Seed of sweep point ``index``; pass it to :func:`estimate_outage` to reproduce the point."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def _block_counts(cfg, key, start, stop):
    n = cfg.n_pairs
    bitgen = np.random.Philox(key=key)
    bitgen.advance(start * n)
    u = np.random.Generator(bitgen).random((stop - start, n, 4))
    beta = gains_from_uniforms(u, cfg.link_means)
    out = classify_batch(beta, cfg)
    return np.array(
        [
            *np.bincount(out.case, minlength=5)[1:5],
            np.count_nonzero(out.d2d_outage(cfg)),
            np.count_nonzero(~out.decodes),
            np.count_nonzero(out.du2_decodes),
        ],
        dtype=np.int64,
    )


def estimate_outage(cfg, trials, master_seed, workers=1):
    """Estimate cellular and D2D outage over ``trials`` independent realizations.

    The result is bit-identical for a fixed ``(master_seed, trials)`` whatever
    ``workers`` is.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    key = philox_key(master_seed)
    block = max(1, BLOCK_UNIFORMS // (4 * cfg.n_pairs))
    spans = [(s, min(s + block, trials)) for s in range(0, trials, block)]

    if workers == 1 or len(spans) == 1:
        parts = [_block_counts(cfg, key, a, b) for a, b in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda span: _block_counts(cfg, key, *span), spans))
    counts = np.sum(parts, axis=0)

    hist = tuple(int(c) for c in counts[:4])
    p_oc = (hist[0] + hist[3]) / trials
    p_od = int(counts[4]) / trials
    return EstimateResult(
        trials=trials,
        p_oc_hat=p_oc,
        p_od_hat=p_od,
        ci_halfwidth_oc=ci_halfwidth(p_oc, trials),
        ci_halfwidth_od=ci_halfwidth(p_od, trials),
        case_histogram=hist,
        pair_decode_failures=int(counts[5]),
        pair_du2_successes=int(counts[6]),
        n_pairs=cfg.n_pairs,
    )


@dataclass(frozen=True)
class CurvePoint:
    value: object
    estimate: EstimateResult | None
    p_oc_literal: float
    p_oc_corrected: float
    p_od_analytic: float
    seed: int
    error: str | None = None

    @property
    def failed(self):
        return self.error is not None


@dataclass(frozen=True)
class OutageCurve:
    axis: str
    points: tuple

    @property
    def values(self):
        return [pt.value for pt in self.points]

    @property
    def failed(self):
        return any(pt.failed for pt in self.points)


def sweep(cfg_base, axis, values, trials, seed, workers=1):
    """Estimate and evaluate the closed forms at each value of one parameter.

    Point ``i`` is simulated with :func:`point_seed` ``(seed, i)``. A value the
    config rejects becomes a failed point; the remaining points still run.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    if len(values) == 0:
        raise ValueError("values must be non-empty")
    points = []
    for i, value in enumerate(values):
        pseed = point_seed(seed, i)
        try:
            if axis == "n_pairs":
                if float(value) != int(value):
                    raise ConfigError("n_pairs", "integer >= 1", value)
                value = int(value)
            cfg = cfg_base.replace(**{axis: value})
        except (ConfigError, TypeError, ValueError) as exc:
            nan = math.nan
            points.append(CurvePoint(value, None, nan, nan, nan, pseed, error=str(exc)))
            continue
        points.append(
            CurvePoint(
                value=value,
                estimate=estimate_outage(cfg, trials, pseed, workers),
                p_oc_literal=analytic.cellular_outage(cfg, analytic.LITERAL),
                p_oc_corrected=analytic.cellular_outage(cfg, analytic.CORRECTED),
                p_od_analytic=analytic.d2d_outage(cfg),
                seed=pseed,
            )
        )
    return OutageCurve(axis, tuple(points))


def within_standard_errors(p_hat, p_ref, trials, k=3.0):
    """True when ``p_hat`` lies within ``k`` binomial standard errors of ``p_ref``.

    The standard error is taken under ``p_ref``.
    """
    se = math.sqrt(p_ref * (1.0 - p_ref) / trials)
    return abs(p_hat - p_ref) <= k * se
