"""Deterministic random channel generation for the two-operator scenario.

Each realization holds, per operator k in {1, 2}, four N-dimensional
complex vectors:

* ``h_k`` -- serving RIS -> BS link (known at the BS),
* ``g_k`` -- UE -> serving RIS link (to be estimated),
* ``q_k`` -- non-serving RIS -> BS link (unknown to the BS),
* ``p_k`` -- UE -> non-serving RIS link (unknown to the BS),

plus the derived cascaded cross channel ``r_k[n] = q_k[n] * p_k[n]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import SystemParams


class NearSingularChannelError(ValueError):
    """An entry of h_k is too close to zero for D_h^{-1} to be usable."""

    def __init__(self, operator_index: int, element_index: int, magnitude: float):
        self.operator_index = operator_index
        self.element_index = element_index
        self.magnitude = magnitude
        super().__init__(
            f"|h_{operator_index}[{element_index}]| = {magnitude:.3e} is below the "
            f"near-singular threshold"
        )


@dataclass(frozen=True)
class ChannelRealization:
    """One block-fading realization; arrays have shape (2, N), row k-1 is operator k."""

    h: np.ndarray
    g: np.ndarray
    q: np.ndarray
    p: np.ndarray
    r: np.ndarray = field(default=None)

    def __post_init__(self):
        arrays = dict(h=self.h, g=self.g, q=self.q, p=self.p)
        shape = self.h.shape
        if len(shape) != 2 or shape[0] != 2:
            raise ValueError(f"channel arrays must have shape (2, N), got {shape}")
        for name, arr in arrays.items():
            if arr.shape != shape:
                raise ValueError(f"{name} has shape {arr.shape}, expected {shape}")
        if self.r is None:
            object.__setattr__(self, "r", self.q * self.p)
        elif self.r.shape != shape:
            raise ValueError(f"r has shape {self.r.shape}, expected {shape}")

    @property
    def n_elements(self) -> int:
        return self.h.shape[1]

    def operator(self, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Return (h_k, g_k, q_k, p_k, r_k) for operator k in {1, 2}."""
        if k not in (1, 2):
            raise ValueError(f"operator index must be 1 or 2, got {k}")
        i = k - 1
        return self.h[i], self.g[i], self.q[i], self.p[i], self.r[i]


def _complex_normal(rng: np.random.Generator, shape, variance: float) -> np.ndarray:
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def draw_channels(params: SystemParams, realization_index: int) -> ChannelRealization:
    """Draw one i.i.d. Rayleigh-fading realization.

    Pure function of (params.seed, realization_index): each index gets its
    own numpy SeedSequence stream, so trial i is reproducible regardless of
    call order or parallel scheduling.
    """
    if realization_index < 0:
        raise ValueError(f"realization_index must be >= 0, got {realization_index}")
    ss = np.random.SeedSequence(entropy=params.seed, spawn_key=(realization_index,))
    rng = np.random.default_rng(ss)
    n = params.n_elements
    rho_ris_bs = params.pathloss_ris_bs
    rho_ue_ris = params.pathloss_ue_ris
    h = _complex_normal(rng, (2, n), rho_ris_bs)
    g = _complex_normal(rng, (2, n), rho_ue_ris)
    q = _complex_normal(rng, (2, n), rho_ris_bs)
    p = _complex_normal(rng, (2, n), rho_ue_ris)
    return ChannelRealization(h=h, g=g, q=q, p=p)


def validate_realization(ch: ChannelRealization, eps: float) -> None:
    """Raise NearSingularChannelError if any |h_k[n]| falls below eps."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    mags = np.abs(ch.h)
    idx = np.argwhere(mags < eps)
    if idx.size:
        k, n = idx[0]
        raise NearSingularChannelError(int(k) + 1, int(n), float(mags[k, n]))
