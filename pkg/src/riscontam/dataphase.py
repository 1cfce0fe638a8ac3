"""Data-phase equalization under misspecified channel knowledge.

After pilot-based estimation, each RIS is phase-matched to its own
operator's channel estimate. The data symbol then travels through the true
effective scalar channel m while the BS equalizes against the assumed
channel m_hat; the mismatch eps = m - m_hat drives the residual MSE and
its high-SNR floor |eps|^2 / |m - eps|^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelRealization
from .params import SystemParams
from .pilot import bias_closed_form
from .validation import as_complex_vector, check_mode, check_operator_index


class InfiniteFloorError(ArithmeticError):
    """m_bar equals eps_bar: the assumed channel is zero and the floor diverges."""


@dataclass(frozen=True)
class PhaseConfig:
    """Per-element RIS phases; reflection coefficient n is exp(-1j * phases[n])."""

    phases: np.ndarray  # (N,) real, radians

    @property
    def reflection(self) -> np.ndarray:
        return np.exp(-1j * self.phases)


@dataclass(frozen=True)
class DataPhaseResult:
    m: complex
    m_hat: complex
    epsilon: complex
    mse_empirical: float
    mse_closed_form: float
    floor_high_snr: float


def phase_match(h_k, g_hat_k) -> PhaseConfig:
    """Set phi_n = arg(h_n) + arg(g_hat_n), making each h_n e^{-j phi_n} g_hat_n
    real and nonnegative. np.angle(0) = 0, so zero entries fall back to no shift."""
    h = as_complex_vector(h_k, name="h_k")
    g_hat = as_complex_vector(g_hat_k, length=h.shape[0], name="g_hat_k")
    return PhaseConfig(phases=np.angle(h) + np.angle(g_hat))


def effective_channels(
    params: SystemParams,
    ch: ChannelRealization,
    phase1: PhaseConfig,
    phase2: PhaseConfig,
    g_hat_k,
    operator_index: int,
) -> tuple[complex, complex, complex]:
    """True and assumed effective scalar channels (m, m_hat) and eps = m - m_hat."""
    check_operator_index(operator_index)
    h_k, g_k, q_k, p_k, _ = ch.operator(operator_index)
    g_hat = as_complex_vector(g_hat_k, length=h_k.shape[0], name="g_hat_k")
    refl_own, refl_other = (
        (phase1.reflection, phase2.reflection)
        if operator_index == 1
        else (phase2.reflection, phase1.reflection)
    )
    if refl_own.shape != h_k.shape or refl_other.shape != h_k.shape:
        raise ValueError("phase configurations must have one phase per RIS element")
    amp = np.sqrt(params.data_power_mw)
    m = amp * (np.sum(h_k * refl_own * g_k) + np.sum(q_k * refl_other * p_k))
    m_hat = amp * np.sum(h_k * refl_own * g_hat)
    return complex(m), complex(m_hat), complex(m - m_hat)


def mmse_symbol_estimate(m_hat: complex, y: complex, noise_power: float) -> complex:
    """Misspecified scalar MMSE equalizer: x_hat = conj(m_hat) y / (|m_hat|^2 + sigma^2)."""
    if noise_power <= 0:
        raise ValueError(f"noise_power must be positive, got {noise_power}")
    return np.conj(m_hat) * y / (abs(m_hat) ** 2 + noise_power)


def data_mse_closed_form(m: complex, epsilon: complex, noise_power: float) -> float:
    """Symbol MSE of the misspecified MMSE equalizer at fixed (m, eps)."""
    if noise_power <= 0:
        raise ValueError(f"noise_power must be positive, got {noise_power}")
    denom = abs(m - epsilon) ** 2 + noise_power
    return (abs(epsilon) ** 2 + 2.0 * noise_power) / denom - noise_power * (
        abs(m) ** 2 + noise_power
    ) / denom**2


def floor_high_snr(m_bar: complex, epsilon_bar: complex) -> float:
    """sigma^2 -> 0 limit of the data MSE: |eps|^2 / |m - eps|^2."""
    denom = abs(m_bar - epsilon_bar) ** 2
    if denom == 0.0:
        raise InfiniteFloorError(
            "m_bar equals eps_bar, the high-SNR data-MSE floor is infinite"
        )
    return abs(epsilon_bar) ** 2 / denom


def high_pilot_snr_channels(
    params: SystemParams, ch: ChannelRealization, mode: str, operator_index: int
) -> tuple[complex, complex]:
    """(m_bar, eps_bar) in the infinite-pilot-power limit, where g_hat = g + b.

    mode 'perfect_csi' keeps each RIS matched to its own user's true channel
    and gives the BS the true effective channel, so eps_bar = 0.
    """
    check_mode(mode, allowed=("identical", "orthogonal", "perfect_csi"))
    check_operator_index(operator_index)
    bias_mode = "orthogonal" if mode == "perfect_csi" else mode
    g_hats = [
        ch.operator(k)[1] + bias_closed_form(ch, bias_mode, k) for k in (1, 2)
    ]
    phase1 = phase_match(ch.operator(1)[0], g_hats[0])
    phase2 = phase_match(ch.operator(2)[0], g_hats[1])
    m, _, eps = effective_channels(
        params, ch, phase1, phase2, g_hats[operator_index - 1], operator_index
    )
    if mode == "perfect_csi":
        return m, 0.0 + 0.0j
    return m, eps


def data_mse_high_pilot_snr(
    params: SystemParams, ch: ChannelRealization, mode: str, operator_index: int
) -> float:
    """Closed-form data MSE with channel estimates at their infinite-pilot-SNR limit."""
    m_bar, eps_bar = high_pilot_snr_channels(params, ch, mode, operator_index)
    return data_mse_closed_form(m_bar, eps_bar, params.noise_power_mw)


def empirical_data_mse(
    params: SystemParams,
    m: complex,
    m_hat: complex,
    n_trials: int,
    rng: np.random.Generator | None = None,
    draws: tuple[np.ndarray, np.ndarray] | None = None,
) -> float:
    """Monte Carlo mean of |x - x_hat|^2 with x ~ CN(0,1) and y = m x + w.

    ``draws`` supplies (x, w) arrays directly for common-random-number runs.
    """
    if n_trials < 1:
        raise ValueError(f"n_trials must be >= 1, got {n_trials}")
    sigma2 = params.noise_power_mw
    if draws is not None:
        x, w = draws
        x = np.asarray(x, dtype=complex)
        w = np.asarray(w, dtype=complex)
        if x.shape != (n_trials,) or w.shape != (n_trials,):
            raise ValueError("draws must each have shape (n_trials,)")
    else:
        if rng is None:
            rng = np.random.default_rng(np.random.SeedSequence(entropy=params.seed))
        x = (rng.standard_normal(n_trials) + 1j * rng.standard_normal(n_trials)) / np.sqrt(2.0)
        w = np.sqrt(sigma2 / 2.0) * (
            rng.standard_normal(n_trials) + 1j * rng.standard_normal(n_trials)
        )
    y = m * x + w
    x_hat = np.conj(m_hat) * y / (abs(m_hat) ** 2 + sigma2)
    return float(np.mean(np.abs(x - x_hat) ** 2))


def evaluate_data_phase(
    params: SystemParams,
    ch: ChannelRealization,
    mode: str,
    operator_index: int,
    n_trials: int,
    rng: np.random.Generator | None = None,
) -> DataPhaseResult:
    """Bundle the closed-form and empirical data-phase metrics at high pilot SNR."""
    m_bar, eps_bar = high_pilot_snr_channels(params, ch, mode, operator_index)
    m_hat = m_bar - eps_bar
    return DataPhaseResult(
        m=m_bar,
        m_hat=m_hat,
        epsilon=eps_bar,
        mse_empirical=empirical_data_mse(params, m_bar, m_hat, n_trials, rng=rng),
        mse_closed_form=data_mse_closed_form(m_bar, eps_bar, params.noise_power_mw),
        floor_high_snr=floor_high_snr(m_bar, eps_bar),
    )
