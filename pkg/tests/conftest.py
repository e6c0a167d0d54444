import pytest

from cfbmc import PacketConfig, design_phydyas


@pytest.fixture(scope="session")
def fig2_cfg():
    # 16 subcarriers, 6 real slots, 10-sample CP, sharp edges
    return PacketConfig(16, 3, cp_len=10)


@pytest.fixture(scope="session")
def fig3_cfg():
    return PacketConfig(16, 3, cp_len=10, tx_rolloff=8)


@pytest.fixture(scope="session")
def fig5_cfg():
    # 16 subcarriers, 16 real slots, 8-sample CP, rectangular windows
    return PacketConfig(16, 8, cp_len=8)


@pytest.fixture(scope="session")
def fig6_cfg():
    # raised-cosine variant; the cyclic suffix keeps the extended receive
    # window on the flat transmit span when synchronized
    return PacketConfig(16, 8, cp_len=8, cs_len=8, tx_rolloff=8, rx_rolloff=8)


@pytest.fixture(scope="session")
def proto_m3():
    return design_phydyas(3)


@pytest.fixture(scope="session")
def proto_m8():
    return design_phydyas(8)
