"""Phase-1 decoding, relay selection and the four phase-2 operating cases.

Every rate function broadcasts over numpy arrays, and the selection logic is
written once for a batch of realizations; the single-realization entry points
are thin wrappers so the Monte Carlo engine and :func:`run_trial` can never
disagree.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .channel import BS_DU1, BS_DU2, DU1_CU, DU1_DU2, harvested_power


class Case(enum.IntEnum):
    """Phase-2 operating case."""

    NO_DECODER = 1  # nobody decoded x_c; best D2D link transmits x_d only
    RELAY_CANCEL = 2  # relay for CU, DU_b2 knows x_c and cancels it
    RELAY_INTERFERE = 3  # relay for CU, x_c is interference at DU_b2
    NO_RELAY = 4  # decoders exist but none reaches CU at r_ct


@dataclass(frozen=True)
class SelectionOutcome:
    decoding_set: frozenset
    selected: int | None
    operating_case: Case
    rate_cu: float
    rate_d2d: float


@dataclass(frozen=True)
class TrialResult:
    cellular_outage: bool
    d2d_outage: bool
    outcome: SelectionOutcome


def phase1_rate_du1(beta_i1, cfg):
    """Rate at which DU_i1 decodes x_c from its information branch."""
    snr = (1.0 - cfg.gamma) * cfg.p_c * beta_i1 / cfg.sigma2
    return cfg.alpha * np.log2(1.0 + snr)


def phase1_rate_du2(beta_i4, cfg):
    """Rate at which DU_i2 overhears x_c from the BS in phase 1."""
    return cfg.alpha * np.log2(1.0 + cfg.p_c * beta_i4 / cfg.sigma2)


def phase2_rate_cu(beta_i1, beta_i2, cfg):
    """Rate of x_c at the CU when DU_i1 relays with its harvested power.

    The superposed x_d, sent over the same link, is treated as interference.
    """
    rx = harvested_power(beta_i1, cfg) * beta_i2
    sinr = cfg.rho * rx / ((1.0 - cfg.rho) * rx + cfg.sigma2)
    return (1.0 - cfg.alpha) * np.log2(1.0 + sinr)


def phase2_rate_d2d(case, beta_i1, beta_i3, cfg):
    """Rate of x_d on the DU_i1 -> DU_i2 link in the given operating case."""
    rx = harvested_power(beta_i1, cfg) * beta_i3
    case = Case(case)
    if case in (Case.NO_DECODER, Case.NO_RELAY):
        sinr = rx / cfg.sigma2
    elif case is Case.RELAY_CANCEL:
        sinr = (1.0 - cfg.rho) * rx / cfg.sigma2
    else:
        sinr = (1.0 - cfg.rho) * rx / (cfg.rho * rx + cfg.sigma2)
    return (1.0 - cfg.alpha) * np.log2(1.0 + sinr)


@dataclass
class BatchOutcome:
    """Selection results for ``T`` realizations; arrays have leading length ``T``."""

    decodes: np.ndarray  # (T, N) bool, membership of the decoding set
    du2_decodes: np.ndarray  # (T, N) bool, phase-1 success at DU_i2
    selected: np.ndarray  # (T,) int
    case: np.ndarray  # (T,) int in 1..4
    rate_cu: np.ndarray
    rate_d2d: np.ndarray

    @property
    def cellular_outage(self):
        return (self.case == Case.NO_DECODER) | (self.case == Case.NO_RELAY)

    def d2d_outage(self, cfg):
        return self.rate_d2d < cfg.r_dt


def classify_batch(beta, cfg):
    """Run the selection procedure on a ``(T, N, 4)`` stack of realizations.

    Argmax ties resolve to the lowest pair index. Every rate-vs-target test is
    strict, so equality counts as failure.
    """
    beta = np.asarray(beta, dtype=float)
    b1 = beta[..., BS_DU1]
    b3 = beta[..., DU1_DU2]
    rows = np.arange(beta.shape[0])

    decodes = phase1_rate_du1(b1, cfg) > cfg.r_ct
    du2_decodes = phase1_rate_du2(beta[..., BS_DU2], cfg) > cfg.r_ct
    any_decoder = decodes.any(axis=1)

    r_cu = np.where(decodes, phase2_rate_cu(b1, beta[..., DU1_CU], cfg), -np.inf)
    r_direct = phase2_rate_d2d(Case.NO_DECODER, b1, b3, cfg)

    best_all = np.argmax(r_direct, axis=1)
    best_cu = np.argmax(r_cu, axis=1)
    best_in_set = np.argmax(np.where(decodes, r_direct, -np.inf), axis=1)
    relay = any_decoder & (r_cu[rows, best_cu] > cfg.r_ct)

    selected = np.where(~any_decoder, best_all, np.where(relay, best_cu, best_in_set))
    case = np.where(
        ~any_decoder,
        Case.NO_DECODER,
        np.where(
            relay,
            np.where(du2_decodes[rows, selected], Case.RELAY_CANCEL, Case.RELAY_INTERFERE),
            Case.NO_RELAY,
        ),
    ).astype(np.int8)

    sel_b1 = b1[rows, selected]
    sel_b3 = b3[rows, selected]
    rate_d2d = np.select(
        [case == Case.RELAY_CANCEL, case == Case.RELAY_INTERFERE],
        [
            phase2_rate_d2d(Case.RELAY_CANCEL, sel_b1, sel_b3, cfg),
            phase2_rate_d2d(Case.RELAY_INTERFERE, sel_b1, sel_b3, cfg),
        ],
        default=r_direct[rows, selected],
    )
    rate_cu = np.where(relay, r_cu[rows, best_cu], 0.0)
    return BatchOutcome(decodes, du2_decodes, selected, case, rate_cu, rate_d2d)


def select_and_classify(ch, cfg):
    """Selection outcome for one ``(n_pairs, 4)`` realization (0-based pair indices)."""
    ch = np.asarray(ch, dtype=float)
    if ch.shape != (cfg.n_pairs, 4):
        raise ValueError(f"channel shape {ch.shape} does not match n_pairs={cfg.n_pairs}")
    out = classify_batch(ch[None], cfg)
    return SelectionOutcome(
        decoding_set=frozenset(np.flatnonzero(out.decodes[0]).tolist()),
        selected=int(out.selected[0]),
        operating_case=Case(int(out.case[0])),
        rate_cu=float(out.rate_cu[0]),
        rate_d2d=float(out.rate_d2d[0]),
    )


def run_trial(ch, cfg):
    """Outage indicators for one realization."""
    outcome = select_and_classify(ch, cfg)
    return TrialResult(
        cellular_outage=outcome.operating_case in (Case.NO_DECODER, Case.NO_RELAY),
        d2d_outage=outcome.rate_d2d < cfg.r_dt,
        outcome=outcome,
    )
