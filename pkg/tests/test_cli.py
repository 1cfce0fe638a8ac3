import csv

import yaml
from click.testing import CliRunner

from riscontam.cli import main


def write_config(path, **extra):
    config = dict(
        n_elements=4,
        n_pilots=8,
        noise_power_dbm=-90,
        pathloss_ue_ris_db=-80,
        pathloss_ris_bs_db=-60,
        seed=3,
        values=[-10, 0, 10],
        n_noise_trials=200,
    )
    config.update(extra)
    path.write_text(yaml.safe_dump(config))
    return str(path)


def test_sweep_pilot(tmp_path):
    cfg = write_config(tmp_path / "c.yaml")
    out = tmp_path / "pilot.csv"
    result = CliRunner().invoke(main, ["sweep-pilot", "--params", cfg, "--out", str(out)])
    assert result.exit_code == 0, result.output
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 6
    assert set(r["mode"] for r in rows) == {"identical", "orthogonal"}


def test_sweep_data(tmp_path):
    cfg = write_config(tmp_path / "c.yaml")
    out = tmp_path / "data.csv"
    result = CliRunner().invoke(
        main, ["sweep-data", "--params", cfg, "--out", str(out), "--trials", "300"]
    )
    assert result.exit_code == 0, result.output
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert set(r["mode"] for r in rows) == {"identical", "orthogonal", "perfect_csi"}


def test_cdf_floors(tmp_path):
    cfg = write_config(tmp_path / "c.yaml")
    out = tmp_path / "cdf.csv"
    result = CliRunner().invoke(
        main,
        ["cdf-floors", "--params", cfg, "--n", "4", "--trials", "30", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 30
    assert set(rows[0]) == {"realization", "floor_identical", "floor_orthogonal"}


def test_unknown_config_key_exits_2(tmp_path):
    cfg = write_config(tmp_path / "c.yaml", bandwidth=20)
    result = CliRunner().invoke(
        main, ["sweep-pilot", "--params", cfg, "--out", str(tmp_path / "o.csv")]
    )
    assert result.exit_code == 2
    assert "config error" in result.output


def test_insufficient_pilots_exits_2(tmp_path):
    cfg = write_config(tmp_path / "c.yaml", n_pilots=6)  # < 2N for orthogonal
    result = CliRunner().invoke(
        main, ["sweep-pilot", "--params", cfg, "--out", str(tmp_path / "o.csv")]
    )
    assert result.exit_code == 2


def test_oracle_violation_exits_3(tmp_path):
    cfg = write_config(tmp_path / "c.yaml", n_noise_trials=2)
    result = CliRunner().invoke(
        main,
        [
            "sweep-pilot",
            "--params",
            cfg,
            "--out",
            str(tmp_path / "o.csv"),
            "--oracle-tol",
            "1e-12",
        ],
    )
    assert result.exit_code == 3
    assert "oracle violation" in result.output


def test_validate_config(tmp_path):
    cfg = write_config(tmp_path / "c.yaml")
    result = CliRunner().invoke(main, ["validate-config", "--params", cfg])
    assert result.exit_code == 0, result.output
    assert "orthogonal pair" in result.output

    result = CliRunner().invoke(main, ["validate-config", "--params", cfg, "--l", "6"])
    assert result.exit_code == 2
