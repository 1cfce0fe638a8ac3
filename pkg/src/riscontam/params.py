"""Scenario parameters and dB/linear unit conversion.

All internal arithmetic is carried out in linear scale (milliwatts for
powers, dimensionless gains for path losses); dB values appear only at
the I/O boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def db_to_linear(value_db: float) -> float:
    """Convert a dB(-m) value to linear scale.

    dBm inputs yield milliwatts, dB inputs yield dimensionless gain.
    """
    value_db = float(value_db)
    if not math.isfinite(value_db):
        raise ValueError(f"dB value must be finite, got {value_db!r}")
    return 10.0 ** (value_db / 10.0)


@dataclass(frozen=True)
class SystemParams:
    """All scalars of the two-operator scenario.

    Powers are in dBm, path losses in dB (negative for attenuation).
    """

    n_elements: int
    n_pilots: int
    pilot_power_dbm: float
    data_power_dbm: float
    noise_power_dbm: float
    pathloss_ue_ris_db: float
    pathloss_ris_bs_db: float
    seed: int

    def __post_init__(self):
        if self.n_elements < 1:
            raise ValueError(f"n_elements must be >= 1, got {self.n_elements}")
        if self.n_pilots < 1:
            raise ValueError(f"n_pilots must be >= 1, got {self.n_pilots}")
        for name in (
            "pilot_power_dbm",
            "data_power_dbm",
            "noise_power_dbm",
            "pathloss_ue_ris_db",
            "pathloss_ris_bs_db",
        ):
            value = getattr(self, name)
            if not math.isfinite(float(value)):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.seed < 0 or self.seed > 2**64 - 1:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    @property
    def pilot_power_mw(self) -> float:
        return db_to_linear(self.pilot_power_dbm)

    @property
    def data_power_mw(self) -> float:
        return db_to_linear(self.data_power_dbm)

    @property
    def noise_power_mw(self) -> float:
        return db_to_linear(self.noise_power_dbm)

    @property
    def pathloss_ue_ris(self) -> float:
        return db_to_linear(self.pathloss_ue_ris_db)

    @property
    def pathloss_ris_bs(self) -> float:
        return db_to_linear(self.pathloss_ris_bs_db)


def table_defaults(**overrides) -> SystemParams:
    """Baseline parameter set used by the numerical experiments."""
    base = dict(
        n_elements=256,
        n_pilots=513,
        pilot_power_dbm=0.0,
        data_power_dbm=0.0,
        noise_power_dbm=-90.0,
        pathloss_ue_ris_db=-80.0,
        pathloss_ris_bs_db=-60.0,
        seed=0,
    )
    base.update(overrides)
    return SystemParams(**base)
