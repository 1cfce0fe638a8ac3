"""Input validation helpers shared by the estimator-facing API."""

from __future__ import annotations

import numpy as np


def as_complex_vector(x, length: int | None = None, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=complex)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise ValueError(f"{name} must have length {length}, got {arr.shape[0]}")
    return arr


def check_operator_index(k: int) -> int:
    if k not in (1, 2):
        raise ValueError(f"operator index must be 1 or 2, got {k}")
    return k


def check_mode(mode: str, allowed=("identical", "orthogonal")) -> str:
    if mode not in allowed:
        raise ValueError(f"mode must be one of {allowed}, got {mode!r}")
    return mode
