import math

import pytest

from riscontam import SystemParams, db_to_linear, table_defaults


def test_db_to_linear_values():
    assert db_to_linear(0.0) == 1.0
    assert db_to_linear(-90.0) == pytest.approx(1e-9, rel=1e-12)
    assert db_to_linear(40.0) == pytest.approx(1e4, rel=1e-12)


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
def test_db_to_linear_rejects_nonfinite(bad):
    with pytest.raises(ValueError):
        db_to_linear(bad)


def test_params_validation():
    with pytest.raises(ValueError):
        table_defaults(n_elements=0)
    with pytest.raises(ValueError):
        table_defaults(n_pilots=0)
    with pytest.raises(ValueError):
        table_defaults(noise_power_dbm=math.inf)
    with pytest.raises(ValueError):
        table_defaults(seed=-1)


def test_linear_properties():
    p = table_defaults()
    assert p.noise_power_mw == pytest.approx(1e-9, rel=1e-12)
    assert p.pathloss_ue_ris == pytest.approx(1e-8, rel=1e-12)
    assert p.pathloss_ris_bs == pytest.approx(1e-6, rel=1e-12)


def test_params_frozen():
    p = table_defaults()
    with pytest.raises(Exception):
        p.n_elements = 3
    assert isinstance(p, SystemParams)
