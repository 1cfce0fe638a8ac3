"""Render the simulator's CSV products to static figures.

Only the CSV files are consumed; this package has no dependency on the
simulator itself. Each kind declares the columns it needs and validation
names any that are missing before a figure is attempted.
"""

from __future__ import annotations

import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


class SchemaError(ValueError):
    """Input CSV does not carry the columns the requested kind needs."""


KINDS = {
    "pilot_sweep": ("power_dbm", "mode", "mse_empirical", "mse_closed_form", "floor_closed_form"),
    "data_sweep": ("power_dbm", "mode", "mse_high_pilot_snr", "floor", "mse_empirical"),
    "cdf_floors": ("realization", "floor_identical", "floor_orthogonal"),
}

_MODE_COLORS = {
    "identical": "tab:red",
    "orthogonal": "tab:blue",
    "perfect_csi": "tab:green",
}


def load_rows(path, kind: str) -> list[dict]:
    """Read the CSV and check its header against the kind's schema."""
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}; expected one of {sorted(KINDS)}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in KINDS[kind] if c not in header]
        if missing:
            raise SchemaError(
                f"{path}: missing column(s) {', '.join(missing)} required for kind {kind!r}"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _by_mode(rows, y_col):
    series = defaultdict(lambda: ([], []))
    for row in rows:
        xs, ys = series[row["mode"]]
        xs.append(float(row["power_dbm"]))
        ys.append(float(row[y_col]))
    return series


def _plot_sweep(ax, rows, empirical_col, closed_col, floor_col, ylabel):
    for mode, (xs, ys) in sorted(_by_mode(rows, closed_col).items()):
        color = _MODE_COLORS.get(mode)
        ax.semilogy(xs, ys, "-", color=color, label=f"{mode} (closed form)")
    for mode, (xs, ys) in sorted(_by_mode(rows, empirical_col).items()):
        color = _MODE_COLORS.get(mode)
        ax.semilogy(xs, ys, "o", color=color, mfc="none", ms=4,
                    label=f"{mode} (empirical)")
    for mode, (xs, ys) in sorted(_by_mode(rows, floor_col).items()):
        if any(y > 0 for y in ys):
            ax.semilogy(xs, ys, "--", color=_MODE_COLORS.get(mode), alpha=0.6,
                        label=f"{mode} floor")
    ax.set_xlabel("power (dBm)")
    ax.set_ylabel(ylabel)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)


def _plot_cdf(ax, rows):
    n = len(rows)
    quantiles = [(i + 1) / n for i in range(n)]
    for col, label, color in (
        ("floor_identical", "identical", "tab:red"),
        ("floor_orthogonal", "orthogonal", "tab:blue"),
    ):
        floors = sorted(float(row[col]) for row in rows)
        ax.semilogx(floors, quantiles, color=color, label=label)
    ax.set_xlabel("high-SNR MSE floor")
    ax.set_ylabel("empirical CDF")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)


def render(kind: str, in_path, out_path) -> None:
    """Render one figure of the given kind; format follows the output suffix."""
    rows = load_rows(in_path, kind)
    fig, ax = plt.subplots(figsize=(6, 4))
    if kind == "pilot_sweep":
        _plot_sweep(ax, rows, "mse_empirical", "mse_closed_form",
                    "floor_closed_form", "channel estimation MSE")
        ax.set_title("Estimation MSE vs pilot power")
    elif kind == "data_sweep":
        _plot_sweep(ax, rows, "mse_empirical", "mse_high_pilot_snr",
                    "floor", "symbol estimation MSE")
        ax.set_title("Data MSE vs data power (high pilot SNR)")
    else:
        _plot_cdf(ax, rows)
        ax.set_title("CDF of data-MSE floors")
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
