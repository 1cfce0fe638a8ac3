"""RIS configuration sequences for the pilot phase.

A sequence is an L x N unit-modulus matrix B whose row t holds the phase
vector applied by the surface at pilot instance t. Both builders take
columns of the L-point DFT basis: those are unit-modulus, mutually
orthogonal for any L (odd L included), and give B^H B = L I exactly up to
roundoff.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

UNIT_MODULUS_TOL = 1e-12
GRAM_TOL = 1e-9


class InsufficientPilotsError(ValueError):
    """L is too small for the requested number of orthogonal columns."""


@dataclass(frozen=True)
class ConfigSequence:
    matrix: np.ndarray  # (L, N) complex
    mode_tag: str  # identical | orthogonal-first | orthogonal-second

    @property
    def n_pilots(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_elements(self) -> int:
        return self.matrix.shape[1]


def _dft_columns(L: int, cols: range) -> np.ndarray:
    t = np.arange(L)[:, None]
    n = np.asarray(cols)[None, :]
    return np.exp(-2j * np.pi * t * n / L)


def build_identical(L: int, N: int) -> tuple[ConfigSequence, ConfigSequence]:
    """Both surfaces use the same sequence: the first N DFT columns."""
    if L < N:
        raise InsufficientPilotsError(f"identical construction needs L >= N, got L={L}, N={N}")
    b = _dft_columns(L, range(N))
    return (
        ConfigSequence(matrix=b, mode_tag="identical"),
        ConfigSequence(matrix=b.copy(), mode_tag="identical"),
    )


def build_orthogonal(L: int, N: int) -> tuple[ConfigSequence, ConfigSequence]:
    """Disjoint DFT column blocks, so B1^H B2 = 0 in addition to B_k^H B_k = L I."""
    if L < 2 * N:
        raise InsufficientPilotsError(f"orthogonal construction needs L >= 2N, got L={L}, N={N}")
    b1 = _dft_columns(L, range(N))
    b2 = _dft_columns(L, range(N, 2 * N))
    return (
        ConfigSequence(matrix=b1, mode_tag="orthogonal-first"),
        ConfigSequence(matrix=b2, mode_tag="orthogonal-second"),
    )


def build_pair(mode: str, L: int, N: int) -> tuple[ConfigSequence, ConfigSequence]:
    """Dispatch on mode name ('identical' or 'orthogonal')."""
    if mode == "identical":
        return build_identical(L, N)
    if mode == "orthogonal":
        return build_orthogonal(L, N)
    raise ValueError(f"unknown configuration mode {mode!r}")


@dataclass(frozen=True)
class SequenceReport:
    max_unit_modulus_dev: float
    max_self_gram_dev: float
    max_cross_gram: float
    unit_modulus_ok: bool
    self_gram_ok: bool
    cross_orthogonal: bool
    tol: float


def verify_sequences(b1: ConfigSequence, b2: ConfigSequence, tol: float = GRAM_TOL) -> SequenceReport:
    """Check unit modulus and the two Gram identities at tolerance tol."""
    if b1.matrix.shape != b2.matrix.shape:
        raise ValueError(
            f"shape mismatch: {b1.matrix.shape} vs {b2.matrix.shape}"
        )
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    L = b1.n_pilots
    eye = L * np.eye(b1.n_elements)
    unit_dev = max(
        float(np.max(np.abs(np.abs(b.matrix) - 1.0))) for b in (b1, b2)
    )
    self_dev = max(
        float(np.max(np.abs(b.matrix.conj().T @ b.matrix - eye))) for b in (b1, b2)
    )
    cross = float(np.max(np.abs(b1.matrix.conj().T @ b2.matrix)))
    return SequenceReport(
        max_unit_modulus_dev=unit_dev,
        max_self_gram_dev=self_dev,
        max_cross_gram=cross,
        unit_modulus_ok=unit_dev <= max(tol, UNIT_MODULUS_TOL),
        self_gram_ok=self_dev <= tol * max(1.0, L),
        cross_orthogonal=cross <= tol * max(1.0, L),
        tol=tol,
    )


def export_csv(seq: ConfigSequence, path) -> None:
    """Write the sequence for inspection: rows = time instances, entries 're,im'."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"element_{n}" for n in range(seq.n_elements)])
        for row in seq.matrix:
            writer.writerow([f"{float(z.real)!r},{float(z.imag)!r}" for z in row])
