import csv

import numpy as np
import pytest

from riscontam import (
    CdfSpec,
    ConfigError,
    ResultTable,
    SweepSpec,
    run_cdf_floors,
    run_data_sweep,
    run_pilot_sweep,
    table_defaults,
    validate_oracles,
    write_csv,
)
from riscontam.experiments import DATA_SWEEP_COLUMNS, PILOT_SWEEP_COLUMNS


def small_base(**overrides):
    return table_defaults(n_elements=4, n_pilots=8, seed=13, **overrides)


def pilot_spec(**overrides):
    kwargs = dict(
        sweep_variable="pilot_power_dbm",
        values=(-10.0, 0.0, 10.0),
        modes=("identical", "orthogonal"),
        n_noise_trials=400,
        base=small_base(),
    )
    kwargs.update(overrides)
    return SweepSpec(**kwargs)


def test_spec_validation():
    with pytest.raises(ConfigError):
        pilot_spec(values=())
    with pytest.raises(ConfigError):
        pilot_spec(n_noise_trials=0)
    with pytest.raises(ConfigError):
        pilot_spec(modes=("perfect_csi",))
    with pytest.raises(ConfigError):
        pilot_spec(sweep_variable="bandwidth")
    with pytest.raises(ConfigError):
        CdfSpec(n_elements=0, n_realizations=10, base=small_base())


def test_pilot_sweep_table():
    table = run_pilot_sweep(pilot_spec())
    assert table.columns == PILOT_SWEEP_COLUMNS
    assert len(table.rows) == 6
    orth = table.select(mode="orthogonal")
    assert orth.column("floor_closed_form") == [0.0, 0.0, 0.0]
    # closed form scales as 1/P_p in the orthogonal mode
    traces = orth.column("mse_closed_form")
    assert traces[0] / traces[1] == pytest.approx(10.0, rel=1e-9)


def test_pilot_sweep_empirical_tracks_oracle():
    table = run_pilot_sweep(pilot_spec(n_noise_trials=20_000))
    assert validate_oracles(table, rel_tol=0.05) == []


def test_pilot_sweep_determinism(tmp_path):
    spec = pilot_spec()
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    write_csv(run_pilot_sweep(spec), a)
    write_csv(run_pilot_sweep(spec), b)
    assert a.read_bytes() == b.read_bytes()


def test_data_sweep_table():
    spec = SweepSpec(
        sweep_variable="data_power_dbm",
        values=(0.0, 20.0),
        modes=("identical", "orthogonal", "perfect_csi"),
        n_noise_trials=500,
        base=small_base(),
    )
    table = run_data_sweep(spec)
    assert table.columns == DATA_SWEEP_COLUMNS
    assert len(table.rows) == 6
    perfect = table.select(mode="perfect_csi")
    assert perfect.column("floor") == [0.0, 0.0]


def test_data_sweep_requires_data_variable():
    with pytest.raises(ConfigError):
        run_data_sweep(pilot_spec())
    with pytest.raises(ConfigError):
        run_pilot_sweep(
            SweepSpec(
                sweep_variable="data_power_dbm",
                values=(0.0,),
                modes=("identical",),
                n_noise_trials=10,
                base=small_base(),
            )
        )


def test_cdf_floors_sorted_and_deterministic():
    spec = CdfSpec(n_elements=4, n_realizations=50, base=small_base())
    a = run_cdf_floors(spec)
    b = run_cdf_floors(spec)
    assert a.rows == b.rows
    floors = a.column("floor_identical")
    assert floors == sorted(floors)
    assert sorted(a.column("realization")) == list(range(50))


def test_write_csv_round_trip(tmp_path):
    table = ResultTable(columns=("a", "b"), rows=[(0.1 + 0.2, "x")])
    path = tmp_path / "t.csv"
    write_csv(table, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert float(rows[0]["a"]) == 0.1 + 0.2
    assert rows[0]["b"] == "x"


def test_write_csv_empty_table(tmp_path):
    path = tmp_path / "empty.csv"
    write_csv(ResultTable(columns=("a", "b"), rows=[]), path)
    assert path.read_bytes() == b"a,b\r\n"


def test_write_csv_bad_path():
    with pytest.raises(OSError):
        write_csv(ResultTable(columns=("a",), rows=[]), "/nonexistent/dir/t.csv")


def test_validate_oracles_flags_gap():
    table = ResultTable(
        columns=PILOT_SWEEP_COLUMNS,
        rows=[(0.0, "identical", 2.0, 1.0, 1.0)],
    )
    violations = validate_oracles(table, rel_tol=0.1)
    assert len(violations) == 1
    assert "identical" in violations[0]
