"""Pilot-phase simulation and channel estimation.

The serving BS stacks L received pilot samples into a vector

    y_pk = sqrt(P_p) B_k D_{h_k} g_k + sqrt(P_p) B_j D_{q_k} p_k + w_pk,

where the second term is the reflection off the other operator's RIS that
the BS is unaware of. Two estimators are provided:

* ``MMLChannelEstimator`` -- the closed-form estimator derived from the
  misspecified model that omits the cross path. Biased when both surfaces
  use the same configuration sequence; unbiased (and equal to the true ML
  estimator) when the sequences are orthogonal.
* ``JointMLChannelEstimator`` -- estimates (g_k, r_k) jointly from the full
  model; requires the stacked L x 2N regressor to have full column rank.

Both follow the scikit-learn estimator conventions (``fit``/``get_params``,
fitted attributes with trailing underscores).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .channels import ChannelRealization, NearSingularChannelError, validate_realization
from .configs import ConfigSequence
from .params import SystemParams
from .validation import as_complex_vector, check_mode, check_operator_index

H_SINGULAR_EPS = 1e-300  # only guards exact zeros; Rayleigh draws are a.s. nonzero
JOINT_COND_LIMIT = 1e12
_CHUNK = 20_000


class SingularModelError(ValueError):
    """The joint observation model is rank deficient (e.g. B1 = B2)."""


@dataclass(frozen=True)
class PilotObservation:
    y: np.ndarray  # (L,) complex
    operator_index: int

    @property
    def n_pilots(self) -> int:
        return self.y.shape[0]


@dataclass(frozen=True)
class EstimationResult:
    g_hat: np.ndarray
    bias_closed_form: np.ndarray | None = None
    cov_trace_closed_form: float | None = None
    r_hat: np.ndarray | None = None

    def __post_init__(self):
        if self.cov_trace_closed_form is not None and self.cov_trace_closed_form < 0:
            raise ValueError("cov_trace_closed_form must be nonnegative")


def _serving_cross(ch: ChannelRealization, b1: ConfigSequence, b2: ConfigSequence, k: int):
    h_k, g_k, q_k, p_k, _ = ch.operator(k)
    b_serving, b_cross = (b1, b2) if k == 1 else (b2, b1)
    return h_k, g_k, q_k, p_k, b_serving, b_cross


def simulate_pilot_rx(
    params: SystemParams,
    ch: ChannelRealization,
    b1: ConfigSequence,
    b2: ConfigSequence,
    operator_index: int,
    noise_draw: np.ndarray,
) -> PilotObservation:
    """Stacked pilot reception for one operator with caller-supplied noise."""
    check_operator_index(operator_index)
    h_k, g_k, q_k, p_k, b_s, b_c = _serving_cross(ch, b1, b2, operator_index)
    L = b_s.n_pilots
    w = as_complex_vector(noise_draw, length=L, name="noise_draw")
    amp = np.sqrt(params.pilot_power_mw)
    y = amp * (b_s.matrix @ (h_k * g_k) + b_c.matrix @ (q_k * p_k)) + w
    return PilotObservation(y=y, operator_index=operator_index)


class MMLChannelEstimator(BaseEstimator):
    """Closed-form channel estimator under the misspecified pilot model.

    g_hat = (1 / (L sqrt(P_p))) D_h^{-1} B^H y, with no regularization.
    """

    def __init__(self, config: ConfigSequence = None, ris_bs_channel=None,
                 pilot_power_mw: float = 1.0):
        self.config = config
        self.ris_bs_channel = ris_bs_channel
        self.pilot_power_mw = pilot_power_mw

    def _validate(self):
        if self.config is None or self.ris_bs_channel is None:
            raise ValueError("config and ris_bs_channel must be set before fitting")
        h = as_complex_vector(self.ris_bs_channel, length=self.config.n_elements,
                              name="ris_bs_channel")
        if np.min(np.abs(h)) <= H_SINGULAR_EPS:
            n = int(np.argmin(np.abs(h)))
            raise NearSingularChannelError(0, n, float(np.abs(h[n])))
        if self.pilot_power_mw <= 0:
            raise ValueError("pilot_power_mw must be positive")
        return h

    def fit(self, y):
        h = self._validate()
        L = self.config.n_pilots
        yv = as_complex_vector(y, length=L, name="y")
        self.g_hat_ = (self.config.matrix.conj().T @ yv) / (L * np.sqrt(self.pilot_power_mw) * h)
        self.n_features_in_ = L
        return self

    def predict(self) -> np.ndarray:
        if not hasattr(self, "g_hat_"):
            raise ValueError("estimator is not fitted")
        return self.g_hat_


class JointMLChannelEstimator(BaseEstimator):
    """Joint ML estimator of (g_k, r_k) under the full pilot model.

    Solves the 2N x 2N normal equations of the stacked regressor
    [B_serving D_h, B_cross] by a direct dense solve and declares failure
    when its condition estimate exceeds 1e12 (identical sequences make the
    model rank deficient).
    """

    def __init__(self, config_serving: ConfigSequence = None,
                 config_cross: ConfigSequence = None, ris_bs_channel=None,
                 pilot_power_mw: float = 1.0):
        self.config_serving = config_serving
        self.config_cross = config_cross
        self.ris_bs_channel = ris_bs_channel
        self.pilot_power_mw = pilot_power_mw

    def fit(self, y):
        if self.config_serving is None or self.config_cross is None:
            raise ValueError("both configuration sequences must be set before fitting")
        n = self.config_serving.n_elements
        L = self.config_serving.n_pilots
        h = as_complex_vector(self.ris_bs_channel, length=n, name="ris_bs_channel")
        if self.pilot_power_mw <= 0:
            raise ValueError("pilot_power_mw must be positive")
        if L < 2 * n:
            raise SingularModelError(
                f"joint model has 2N={2 * n} unknowns but only L={L} observations"
            )
        yv = as_complex_vector(y, length=L, name="y")
        a = np.concatenate([self.config_serving.matrix * h[None, :],
                            self.config_cross.matrix], axis=1)
        normal = a.conj().T @ a
        cond = np.linalg.cond(normal)
        if not np.isfinite(cond) or cond > JOINT_COND_LIMIT:
            raise SingularModelError(
                f"stacked pilot model is rank deficient (condition estimate {cond:.3e}); "
                f"identical configuration sequences cannot separate g and r"
            )
        theta = np.linalg.solve(normal, a.conj().T @ yv) / np.sqrt(self.pilot_power_mw)
        self.g_hat_ = theta[:n]
        self.r_hat_ = theta[n:]
        self.n_features_in_ = L
        return self


def mml_estimate(
    params: SystemParams,
    y: PilotObservation,
    b_k: ConfigSequence,
    h_k: np.ndarray,
) -> EstimationResult:
    est = MMLChannelEstimator(config=b_k, ris_bs_channel=h_k,
                              pilot_power_mw=params.pilot_power_mw).fit(y.y)
    return EstimationResult(g_hat=est.g_hat_)


def joint_ml_estimate(
    params: SystemParams,
    y: PilotObservation,
    b1: ConfigSequence,
    b2: ConfigSequence,
    h_k: np.ndarray,
) -> EstimationResult:
    b_serving, b_cross = (b1, b2) if y.operator_index == 1 else (b2, b1)
    est = JointMLChannelEstimator(
        config_serving=b_serving, config_cross=b_cross, ris_bs_channel=h_k,
        pilot_power_mw=params.pilot_power_mw,
    ).fit(y.y)
    return EstimationResult(g_hat=est.g_hat_, r_hat=est.r_hat_)


def bias_closed_form(ch: ChannelRealization, mode: str, operator_index: int) -> np.ndarray:
    """Estimator bias b_k: D_h^{-1} r_k under identical sequences, zero under orthogonal."""
    check_mode(mode)
    check_operator_index(operator_index)
    h_k, _, _, _, r_k = ch.operator(operator_index)
    if mode == "orthogonal":
        return np.zeros_like(h_k)
    validate_realization(ch, H_SINGULAR_EPS)
    return r_k / h_k


def cov_trace_closed_form(
    params: SystemParams, ch: ChannelRealization, mode: str, operator_index: int
) -> float:
    """tr(Sigma_e) = ||b||^2 + sigma_w^2 / (L P_p) * sum_n 1/|h_n|^2."""
    b = bias_closed_form(ch, mode, operator_index)
    h_k = ch.operator(operator_index)[0]
    validate_realization(ch, H_SINGULAR_EPS)
    noise_term = params.noise_power_mw / (params.n_pilots * params.pilot_power_mw) * float(
        np.sum(1.0 / np.abs(h_k) ** 2)
    )
    return float(np.sum(np.abs(b) ** 2)) + noise_term


@dataclass(frozen=True)
class ErrorStats:
    mse: float
    mean_error: np.ndarray
    per_entry_variance: np.ndarray
    n_trials: int


def empirical_error_stats(
    params: SystemParams,
    ch: ChannelRealization,
    b1: ConfigSequence,
    b2: ConfigSequence,
    operator_index: int,
    n_trials: int,
    rng: np.random.Generator | None = None,
    noise: np.ndarray | None = None,
) -> ErrorStats:
    """Monte Carlo error statistics of the MML estimator at a fixed realization.

    Fresh noise per trial; ``noise`` (n_trials, L) overrides the stream, which
    makes noiseless and common-random-number runs possible. The reduction is
    an ordered sum over trials, so results do not depend on scheduling.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    check_operator_index(operator_index)
    h_k, g_k = ch.operator(operator_index)[:2]
    b_s = b1 if operator_index == 1 else b2
    L = b_s.n_pilots
    n = b_s.n_elements
    validate_realization(ch, H_SINGULAR_EPS)

    y0 = simulate_pilot_rx(params, ch, b1, b2, operator_index, np.zeros(L, dtype=complex))
    e0 = mml_estimate(params, y0, b_s, h_k).g_hat - g_k

    if noise is not None:
        noise = np.asarray(noise, dtype=complex)
        if noise.shape != (n_trials, L):
            raise ValueError(f"noise must have shape ({n_trials}, {L}), got {noise.shape}")
    elif rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(entropy=params.seed))

    sigma = np.sqrt(params.noise_power_mw)
    denom = L * np.sqrt(params.pilot_power_mw) * h_k  # (N,)
    sum_sq = 0.0
    sum_err = np.zeros(n, dtype=complex)
    sum_abs2 = np.zeros(n)
    done = 0
    while done < n_trials:
        m = min(_CHUNK, n_trials - done)
        if noise is not None:
            w = noise[done:done + m]
        else:
            w = sigma / np.sqrt(2.0) * (
                rng.standard_normal((m, L)) + 1j * rng.standard_normal((m, L))
            )
        errors = e0[None, :] + (w @ b_s.matrix.conj()) / denom[None, :]
        sum_sq += float(np.sum(np.abs(errors) ** 2))
        sum_err += errors.sum(axis=0)
        sum_abs2 += np.sum(np.abs(errors) ** 2, axis=0)
        done += m
    mean_error = sum_err / n_trials
    per_entry_variance = sum_abs2 / n_trials - np.abs(mean_error) ** 2
    return ErrorStats(
        mse=sum_sq / n_trials,
        mean_error=mean_error,
        per_entry_variance=per_entry_variance,
        n_trials=n_trials,
    )


def empirical_mse(
    params: SystemParams,
    ch: ChannelRealization,
    b1: ConfigSequence,
    b2: ConfigSequence,
    operator_index: int,
    n_trials: int,
    rng: np.random.Generator | None = None,
    noise: np.ndarray | None = None,
) -> tuple[float, np.ndarray]:
    """Monte Carlo average of ||g_hat - g||^2 and the empirical mean error."""
    stats = empirical_error_stats(params, ch, b1, b2, operator_index, n_trials,
                                  rng=rng, noise=noise)
    return stats.mse, stats.mean_error
