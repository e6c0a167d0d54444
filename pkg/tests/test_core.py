import numpy as np
import pytest
from numpy.testing import assert_allclose

from cfbmc import ComplexSignal, OffsetSpec, PacketConfig, dtft, signal_add


def test_packet_config_geometry():
    cfg = PacketConfig(16, 3, cp_len=10, cs_len=2)
    assert cfg.body_len == 48
    assert cfg.flat_len == 60


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(num_subcarriers=15, num_complex_slots=3),  # odd N
        dict(num_subcarriers=0, num_complex_slots=3),
        dict(num_subcarriers=16, num_complex_slots=0),
        dict(num_subcarriers=16, num_complex_slots=3, cp_len=-1),
    ],
)
def test_packet_config_rejects_bad_geometry(kwargs):
    with pytest.raises(ValueError):
        PacketConfig(**kwargs)


def test_offset_spec_rejects_large_delta_f():
    with pytest.raises(ValueError):
        OffsetSpec(0, 0.5)


def test_signal_add_identity():
    z = ComplexSignal(3, np.zeros(4))
    b = ComplexSignal(0, np.array([1.0, 2.0, 3.0]))
    out = signal_add(z, b)
    n = np.arange(-2, 9)
    ref = ComplexSignal(b.start, b.samples)

    def at(sig, n):
        out = np.zeros(len(n), dtype=complex)
        ok = (n >= sig.start) & (n < sig.stop)
        out[ok] = sig.samples[n[ok] - sig.start]
        return out

    assert_allclose(at(out, n), at(ref, n))


def test_signal_add_disjoint_support():
    a = ComplexSignal(0, [1.0])
    b = ComplexSignal(1, [1j])
    out = signal_add(a, b)
    assert out.start == 0
    assert_allclose(out.samples, [1.0, 1j])


def test_signal_add_cancellation():
    a = ComplexSignal(0, [1.0 + 0j])
    b = ComplexSignal(0, [-1.0 + 0j])
    out = signal_add(a, b)
    assert out.start == 0
    assert_allclose(out.samples, [0.0])


def test_dtft_unit_impulse():
    s = ComplexSignal(0, [1.0])
    for om in (0.0, 0.3, -2.0):
        assert dtft(s, om) == pytest.approx(1.0)


def test_dtft_shifted_impulse():
    s = ComplexSignal(5, [1.0])
    assert dtft(s, np.pi) == pytest.approx(np.exp(-1j * 5 * np.pi))
    assert dtft(s, np.pi).real == pytest.approx(-1.0)


def test_dtft_dirichlet_zeros():
    MN = 48
    s = ComplexSignal(0, np.ones(MN))
    for r in (1, 2, 7, 47):
        assert abs(dtft(s, 2 * np.pi * r / MN)) < 1e-10 * MN
    assert dtft(s, 0.0) == pytest.approx(MN)


def test_dtft_linearity():
    rng = np.random.default_rng(0)
    for _ in range(20):
        la, lb = rng.integers(1, 30, 2)
        a = ComplexSignal(int(rng.integers(-10, 10)), rng.standard_normal(la) + 1j * rng.standard_normal(la))
        b = ComplexSignal(int(rng.integers(-10, 10)), rng.standard_normal(lb) + 1j * rng.standard_normal(lb))
        om = float(rng.uniform(-np.pi, np.pi))
        lhs = dtft(signal_add(a, b), om)
        rhs = dtft(a, om) + dtft(b, om)
        assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs), 1.0)


def test_dtft_shift_theorem():
    rng = np.random.default_rng(1)
    for _ in range(20):
        n = int(rng.integers(1, 40))
        s = ComplexSignal(int(rng.integers(-5, 5)), rng.standard_normal(n) + 1j * rng.standard_normal(n))
        d = int(rng.integers(-20, 20))
        om = float(rng.uniform(-np.pi, np.pi))
        shifted = ComplexSignal(s.start + d, s.samples)
        lhs = dtft(shifted, om)
        rhs = np.exp(-1j * om * d) * dtft(s, om)
        assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1.0)


def test_dtft_vectorized_grid():
    s = ComplexSignal(2, [1.0, -1.0, 0.5])
    om = np.linspace(-np.pi, np.pi, 17)
    vals = dtft(s, om)
    assert vals.shape == om.shape
    assert vals[3] == pytest.approx(dtft(s, float(om[3])))
