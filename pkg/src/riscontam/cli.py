"""Command-line entry points for the experiment harness.

Exit codes: 0 on success, 2 on configuration errors, 3 when a post-run
oracle validation fails (empirical column disagrees with its closed form).
"""

from __future__ import annotations

import sys

import click
import yaml

from .configs import InsufficientPilotsError, build_identical, build_orthogonal, verify_sequences
from .experiments import (
    CdfSpec,
    ConfigError,
    SweepSpec,
    default_data_powers,
    default_pilot_powers,
    run_cdf_floors,
    run_data_sweep,
    run_pilot_sweep,
    validate_oracles,
    write_csv,
)
from .params import SystemParams, table_defaults

EXIT_CONFIG_ERROR = 2
EXIT_ORACLE_FAILURE = 3

PARAM_KEYS = (
    "n_elements",
    "n_pilots",
    "pilot_power_dbm",
    "data_power_dbm",
    "noise_power_dbm",
    "pathloss_ue_ris_db",
    "pathloss_ris_bs_db",
    "seed",
)
SWEEP_KEYS = ("values", "modes", "n_noise_trials", "n_realizations", "sweep_variable")


def _load_config(path) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        data = yaml.safe_load(fh) or {}
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a key/value mapping")
    unknown = set(data) - set(PARAM_KEYS) - set(SWEEP_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def _build_params(config: dict, n, l, seed) -> SystemParams:
    overrides = {k: v for k, v in config.items() if k in PARAM_KEYS}
    if n is not None:
        overrides["n_elements"] = n
    if l is not None:
        overrides["n_pilots"] = l
    if seed is not None:
        overrides["seed"] = seed
    return table_defaults(**overrides)


def _common_options(fn):
    fn = click.option("--params", "params_file", type=click.Path(exists=True),
                      help="YAML file mirroring the SystemParams/sweep fields.")(fn)
    fn = click.option("--n", type=int, default=None, help="RIS elements per surface.")(fn)
    fn = click.option("--l", type=int, default=None, help="Pilot time instances.")(fn)
    fn = click.option("--seed", type=int, default=None, help="Base RNG seed.")(fn)
    return fn


def _fail_config(exc: Exception):
    click.echo(f"config error: {exc}", err=True)
    sys.exit(EXIT_CONFIG_ERROR)


@click.group()
def main():
    """Inter-operator RIS pilot-contamination experiments."""


@main.command("sweep-pilot")
@_common_options
@click.option("--mode", "modes", multiple=True,
              type=click.Choice(["identical", "orthogonal"]),
              help="Configuration modes to sweep (default: both).")
@click.option("--trials", type=int, default=None, help="Noise trials per sweep point.")
@click.option("--out", type=click.Path(), required=True, help="Output CSV path.")
@click.option("--oracle-tol", type=float, default=0.1, show_default=True,
              help="Relative tolerance for empirical vs closed-form validation.")
def sweep_pilot(params_file, n, l, seed, modes, trials, out, oracle_tol):
    """Channel-estimation MSE versus pilot power (one fixed realization)."""
    try:
        config = _load_config(params_file)
        base = _build_params(config, n, l, seed)
        spec = SweepSpec(
            sweep_variable="pilot_power_dbm",
            values=tuple(config.get("values", default_pilot_powers())),
            modes=tuple(modes) or tuple(config.get("modes", ("identical", "orthogonal"))),
            n_noise_trials=trials or int(config.get("n_noise_trials", 10_000)),
            base=base,
        )
        table = run_pilot_sweep(spec)
    except (ConfigError, InsufficientPilotsError, ValueError, OSError) as exc:
        _fail_config(exc)
    write_csv(table, out)
    click.echo(f"wrote {len(table.rows)} rows to {out}")
    violations = validate_oracles(table, oracle_tol)
    if violations:
        for line in violations:
            click.echo(f"oracle violation: {line}", err=True)
        sys.exit(EXIT_ORACLE_FAILURE)


@main.command("sweep-data")
@_common_options
@click.option("--mode", "modes", multiple=True,
              type=click.Choice(["identical", "orthogonal", "perfect_csi"]),
              help="Modes to sweep (default: all three).")
@click.option("--trials", type=int, default=None, help="Symbol/noise draws per sweep point.")
@click.option("--out", type=click.Path(), required=True, help="Output CSV path.")
@click.option("--oracle-tol", type=float, default=0.1, show_default=True,
              help="Relative tolerance for empirical vs closed-form validation.")
def sweep_data(params_file, n, l, seed, modes, trials, out, oracle_tol):
    """Data MSE versus data power at the infinite-pilot-SNR limit."""
    try:
        config = _load_config(params_file)
        base = _build_params(config, n, l, seed)
        spec = SweepSpec(
            sweep_variable="data_power_dbm",
            values=tuple(config.get("values", default_data_powers())),
            modes=tuple(modes)
            or tuple(config.get("modes", ("identical", "orthogonal", "perfect_csi"))),
            n_noise_trials=trials or int(config.get("n_noise_trials", 10_000)),
            base=base,
        )
        table = run_data_sweep(spec)
    except (ConfigError, InsufficientPilotsError, ValueError, OSError) as exc:
        _fail_config(exc)
    write_csv(table, out)
    click.echo(f"wrote {len(table.rows)} rows to {out}")
    violations = validate_oracles(table, oracle_tol)
    if violations:
        for line in violations:
            click.echo(f"oracle violation: {line}", err=True)
        sys.exit(EXIT_ORACLE_FAILURE)


@main.command("cdf-floors")
@_common_options
@click.option("--trials", "n_realizations", type=int, default=None,
              help="Number of channel realizations.")
@click.option("--out", type=click.Path(), required=True, help="Output CSV path.")
def cdf_floors(params_file, n, l, seed, n_realizations, out):
    """High-SNR data-MSE floor pairs over fresh realizations."""
    try:
        config = _load_config(params_file)
        base = _build_params(config, None, l, seed)
        spec = CdfSpec(
            n_elements=n or int(config.get("n_elements", 32)),
            n_realizations=n_realizations or int(config.get("n_realizations", 10_000)),
            base=base,
        )
        table = run_cdf_floors(spec)
        write_csv(table, out)
    except (ConfigError, ValueError, OSError) as exc:
        _fail_config(exc)
    click.echo(f"wrote {len(table.rows)} rows to {out}")


@main.command("validate-config")
@_common_options
def validate_config(params_file, n, l, seed):
    """Check parameters and the RIS sequence invariants for the given (N, L)."""
    try:
        config = _load_config(params_file)
        base = _build_params(config, n, l, seed)
        click.echo(f"parameters ok: N={base.n_elements}, L={base.n_pilots}")
        b1, b2 = build_identical(base.n_pilots, base.n_elements)
        report = verify_sequences(b1, b2)
        click.echo(
            f"identical pair: unit modulus ok={report.unit_modulus_ok}, "
            f"self Gram ok={report.self_gram_ok}"
        )
        b1, b2 = build_orthogonal(base.n_pilots, base.n_elements)
        report = verify_sequences(b1, b2)
        click.echo(
            f"orthogonal pair: unit modulus ok={report.unit_modulus_ok}, "
            f"self Gram ok={report.self_gram_ok}, cross orthogonal={report.cross_orthogonal}"
        )
        if not (report.unit_modulus_ok and report.self_gram_ok and report.cross_orthogonal):
            raise ConfigError("sequence invariants violated")
    except (ConfigError, InsufficientPilotsError, ValueError, OSError) as exc:
        _fail_config(exc)


if __name__ == "__main__":
    main()
