import numpy as np
import pytest

from riscontam import ChannelRealization, table_defaults


def make_realization(h1, g1, q1, p1, h2=None, g2=None, q2=None, p2=None):
    """Build a two-operator realization from explicit operator-1 vectors."""
    n = len(h1)
    ones = np.ones(n, dtype=complex)

    def pair(a, b):
        return np.stack(
            [
                np.asarray(a, dtype=complex),
                np.asarray(b, dtype=complex) if b is not None else ones,
            ]
        )

    return ChannelRealization(
        h=pair(h1, h2), g=pair(g1, g2), q=pair(q1, q2), p=pair(p1, p2)
    )


@pytest.fixture
def unit_params():
    """Unit-scale scenario: 0 dB losses, 0 dBm powers and noise."""
    return table_defaults(
        n_elements=1,
        n_pilots=1,
        pilot_power_dbm=0.0,
        data_power_dbm=0.0,
        noise_power_dbm=0.0,
        pathloss_ue_ris_db=0.0,
        pathloss_ris_bs_db=0.0,
        seed=0,
    )
