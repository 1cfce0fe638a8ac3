"""Reproducible experiment harness: power sweeps and floor CDFs with CSV output.

Every empirical column is paired with a closed-form oracle column; a
post-run validation pass flags any pair whose relative gap exceeds the
declared tolerance. Noise streams are keyed by (seed, experiment tag,
sweep-point index), so identical and orthogonal modes at the same sweep
point consume the same random numbers and any run is a pure function of
its spec.
"""

from __future__ import annotations

import csv
import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .channels import draw_channels
from .configs import build_pair
from .dataphase import (
    data_mse_closed_form,
    empirical_data_mse,
    floor_high_snr,
    high_pilot_snr_channels,
)
from .params import SystemParams
from .pilot import bias_closed_form, cov_trace_closed_form, empirical_mse

PILOT_STREAM = 0x70
DATA_STREAM = 0x71

PILOT_SWEEP_COLUMNS = ("power_dbm", "mode", "mse_empirical", "mse_closed_form",
                       "floor_closed_form")
DATA_SWEEP_COLUMNS = ("power_dbm", "mode", "mse_high_pilot_snr", "floor", "mse_empirical")
CDF_COLUMNS = ("realization", "floor_identical", "floor_orthogonal")

PILOT_MODES = ("identical", "orthogonal")
DATA_MODES = ("identical", "orthogonal", "perfect_csi")


class ConfigError(ValueError):
    """An experiment spec is internally inconsistent."""


@dataclass(frozen=True)
class ResultTable:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def select(self, **filters) -> "ResultTable":
        idx = {name: self.columns.index(name) for name in filters}
        rows = [
            row
            for row in self.rows
            if all(row[idx[name]] == value for name, value in filters.items())
        ]
        return ResultTable(columns=self.columns, rows=rows)


@dataclass(frozen=True)
class SweepSpec:
    sweep_variable: str  # pilot_power_dbm | data_power_dbm
    values: tuple[float, ...]
    modes: tuple[str, ...]
    n_noise_trials: int
    base: SystemParams

    def __post_init__(self):
        if self.sweep_variable not in ("pilot_power_dbm", "data_power_dbm"):
            raise ConfigError(f"unknown sweep variable {self.sweep_variable!r}")
        if not self.values:
            raise ConfigError("sweep values must be non-empty")
        if self.n_noise_trials < 1:
            raise ConfigError("n_noise_trials must be >= 1")
        allowed = PILOT_MODES if self.sweep_variable == "pilot_power_dbm" else DATA_MODES
        if not self.modes:
            raise ConfigError("modes must be non-empty")
        for mode in self.modes:
            if mode not in allowed:
                raise ConfigError(
                    f"mode {mode!r} is not valid for a {self.sweep_variable} sweep"
                )


@dataclass(frozen=True)
class CdfSpec:
    n_elements: int
    n_realizations: int
    base: SystemParams

    def __post_init__(self):
        if self.n_elements < 1:
            raise ConfigError("n_elements must be >= 1")
        if self.n_realizations < 1:
            raise ConfigError("n_realizations must be >= 1")


def default_pilot_powers() -> tuple[float, ...]:
    # -30:5:40 dBm grid, extended to 60 dBm to expose the high-SNR floor
    return tuple(float(v) for v in range(-30, 61, 5))


def default_data_powers() -> tuple[float, ...]:
    return tuple(float(v) for v in range(-30, 41, 5))


def _point_rng(seed: int, stream: int, point: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream, point))
    return np.random.default_rng(ss)


def run_pilot_sweep(spec: SweepSpec) -> ResultTable:
    """Channel-estimation MSE versus pilot power for one fixed realization."""
    if spec.sweep_variable != "pilot_power_dbm":
        raise ConfigError("run_pilot_sweep requires sweep_variable = pilot_power_dbm")
    base = spec.base
    ch = draw_channels(base, 0)
    pairs = {mode: build_pair(mode, base.n_pilots, base.n_elements) for mode in spec.modes}
    k = 1
    rows = []
    for i, power in enumerate(spec.values):
        params = dataclasses.replace(base, pilot_power_dbm=power)
        rng = _point_rng(base.seed, PILOT_STREAM, i)
        sigma = np.sqrt(params.noise_power_mw)
        noise = sigma / np.sqrt(2.0) * (
            rng.standard_normal((spec.n_noise_trials, base.n_pilots))
            + 1j * rng.standard_normal((spec.n_noise_trials, base.n_pilots))
        )
        for mode in spec.modes:
            b1, b2 = pairs[mode]
            mse, _ = empirical_mse(params, ch, b1, b2, k, spec.n_noise_trials, noise=noise)
            trace = cov_trace_closed_form(params, ch, mode, k)
            floor = float(np.sum(np.abs(bias_closed_form(ch, mode, k)) ** 2))
            rows.append((power, mode, mse, trace, floor))
    return ResultTable(columns=PILOT_SWEEP_COLUMNS, rows=rows)


def run_data_sweep(spec: SweepSpec) -> ResultTable:
    """Data MSE versus data power at the infinite-pilot-SNR limit."""
    if spec.sweep_variable != "data_power_dbm":
        raise ConfigError("run_data_sweep requires sweep_variable = data_power_dbm")
    base = spec.base
    ch = draw_channels(base, 0)
    k = 1
    rows = []
    for i, power in enumerate(spec.values):
        params = dataclasses.replace(base, data_power_dbm=power)
        rng = _point_rng(base.seed, DATA_STREAM, i)
        n = spec.n_noise_trials
        x = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)
        w = np.sqrt(params.noise_power_mw / 2.0) * (
            rng.standard_normal(n) + 1j * rng.standard_normal(n)
        )
        for mode in spec.modes:
            m_bar, eps_bar = high_pilot_snr_channels(params, ch, mode, k)
            mse_high = data_mse_closed_form(m_bar, eps_bar, params.noise_power_mw)
            floor = floor_high_snr(m_bar, eps_bar)
            mse_emp = empirical_data_mse(params, m_bar, m_bar - eps_bar, n, draws=(x, w))
            rows.append((power, mode, mse_high, floor, mse_emp))
    return ResultTable(columns=DATA_SWEEP_COLUMNS, rows=rows)


def run_cdf_floors(spec: CdfSpec) -> ResultTable:
    """High-SNR data-MSE floor pairs over fresh realizations, sorted for CDF use."""
    params = dataclasses.replace(spec.base, n_elements=spec.n_elements)
    k = 1
    rows = []
    for i in range(spec.n_realizations):
        ch = draw_channels(params, i)
        floors = {}
        for mode in ("identical", "orthogonal"):
            m_bar, eps_bar = high_pilot_snr_channels(params, ch, mode, k)
            floors[mode] = floor_high_snr(m_bar, eps_bar)
        rows.append((i, floors["identical"], floors["orthogonal"]))
    rows.sort(key=lambda row: (row[1], row[2], row[0]))
    return ResultTable(columns=CDF_COLUMNS, rows=rows)


def write_csv(table: ResultTable, path) -> None:
    """Write with a header row; floats use shortest round-trip decimals."""
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(table.columns)
            for row in table.rows:
                writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def validate_oracles(table: ResultTable, rel_tol: float) -> list[str]:
    """Compare each empirical column against its closed-form neighbor.

    Returns a list of human-readable violations; empty means all pairs agree
    within rel_tol. Pairs where the oracle is zero are skipped.
    """
    if set(PILOT_SWEEP_COLUMNS) <= set(table.columns):
        empirical, oracle = "mse_empirical", "mse_closed_form"
    elif set(DATA_SWEEP_COLUMNS) <= set(table.columns):
        empirical, oracle = "mse_empirical", "mse_high_pilot_snr"
    else:
        return []
    violations = []
    cols = {name: table.columns.index(name) for name in (empirical, oracle, "power_dbm", "mode")}
    for row in table.rows:
        expected = row[cols[oracle]]
        observed = row[cols[empirical]]
        if expected == 0:
            continue
        gap = abs(observed - expected) / abs(expected)
        if gap > rel_tol:
            violations.append(
                f"power={row[cols['power_dbm']]} dBm mode={row[cols['mode']]}: "
                f"empirical {observed:.6e} vs closed form {expected:.6e} "
                f"(relative gap {gap:.3f} > {rel_tol})"
            )
    return violations
