import numpy as np
import pytest
from numpy.testing import assert_allclose

from cfbmc import (
    RAISED_COSINE,
    RECTANGULAR,
    ComplexSignal,
    OffsetSpec,
    PacketConfig,
    Window,
    apply_offsets,
    demodulate,
    dtft,
    impulse_response,
    make_rx_window,
    make_tx_window,
    modulate_packet,
    modulate_symbol,
)


def test_tx_window_rectangular_fig2(fig2_cfg):
    w = make_tx_window(fig2_cfg, RECTANGULAR)
    assert w.start == -10
    assert len(w) == 58
    assert_allclose(w.taps, 1.0)


def test_tx_window_zero_rolloff_equals_rectangular(fig2_cfg):
    w_rect = make_tx_window(fig2_cfg, RECTANGULAR)
    w_rc = make_tx_window(fig2_cfg, RAISED_COSINE)
    assert w_rc.start == w_rect.start
    assert_allclose(w_rc.taps, w_rect.taps)


def test_tx_window_rolloff_shape(fig3_cfg):
    w = make_tx_window(fig3_cfg, RAISED_COSINE)
    assert len(w) == fig3_cfg.flat_len + 16
    assert w.start == -10 - 8
    assert 0 < w.taps[0] < 1 and 0 < w.taps[-1] < 1
    flat = w.taps[8:-8]
    assert_allclose(flat, 1.0)
    assert np.all(np.diff(w.taps[:9]) > 0)  # monotone rise into the flat span


def test_rx_window_rectangular_fold(fig5_cfg):
    v = make_rx_window(fig5_cfg, RECTANGULAR)
    assert v.start == 0 and len(v) == fig5_cfg.body_len
    assert_allclose(v.taps, 1.0)


def test_rx_window_raised_cosine_nulls_grid(fig6_cfg):
    v = make_rx_window(fig6_cfg, RAISED_COSINE)
    MN = fig6_cfg.body_len
    M = fig6_cfg.num_complex_slots
    assert v.start == -8 and v.stop == MN + 8
    sig = ComplexSignal(v.start, v.taps.astype(complex))
    for r in range(1, M):
        for s in (+1, -1):
            assert abs(dtft(sig, 2 * np.pi * s * r / MN)) / MN < 1e-12
    assert abs(dtft(sig, 0.0) / MN - 1.0) < 1e-12


def test_rx_window_zero_rolloff_equals_rectangular(fig5_cfg):
    v = make_rx_window(fig5_cfg, RAISED_COSINE)  # rx_rolloff = 0
    assert v.start == 0
    assert_allclose(v.taps, np.ones(fig5_cfg.body_len))


def test_rx_window_rejects_oversize_rolloff():
    cfg = PacketConfig(4, 2, rx_rolloff=5)  # MN = 8, 2R = 10 > MN
    with pytest.raises(ValueError):
        make_rx_window(cfg, RAISED_COSINE)


def test_modulate_symbol_zero_amplitude(fig2_cfg, proto_m3):
    w = make_tx_window(fig2_cfg)
    x = modulate_symbol(fig2_cfg, proto_m3, 2, 1, 0.0, w)
    assert_allclose(x.samples, 0.0)
    assert x.start == w.start and len(x) == len(w)


def test_modulate_symbol_last_slot_wraps(fig2_cfg, proto_m3):
    # k = 0, l = 2M: the pulse shift is one full period, so the samples
    # reduce to (-1)^M h[n]
    MN = fig2_cfg.body_len
    body = Window(0, np.ones(MN), RECTANGULAR)
    x = modulate_symbol(fig2_cfg, proto_m3, 0, 2 * 3, 1.0, body)
    g = impulse_response(proto_m3, 16)
    assert_allclose(x.samples, (-1.0) ** 3 * g, atol=1e-12)


def test_modulate_symbol_index_checks(fig2_cfg, proto_m3):
    w = make_tx_window(fig2_cfg)
    with pytest.raises(ValueError):
        modulate_symbol(fig2_cfg, proto_m3, 16, 1, 1.0, w)
    with pytest.raises(ValueError):
        modulate_symbol(fig2_cfg, proto_m3, 0, 0, 1.0, w)
    with pytest.raises(ValueError):
        modulate_symbol(fig2_cfg, proto_m3, 0, 7, 1.0, w)


def test_modulate_symbol_energy_centered_at_slot(fig2_cfg, proto_m3):
    # circular pulse peaks at l N/2 within the body
    w = make_tx_window(fig2_cfg)
    MN = fig2_cfg.body_len
    for l in range(1, 7):
        x = modulate_symbol(fig2_cfg, proto_m3, 2, l, 1.0, w)
        body = x.samples[0 - x.start : MN - x.start]
        peak = int(np.argmax(np.abs(body)))
        target = (l * 8) % MN
        dist = min((peak - target) % MN, (target - peak) % MN)
        assert dist <= 1, (l, peak, target)


def test_modulate_packet_linearity(fig2_cfg, proto_m3):
    rng = np.random.default_rng(7)
    w = make_tx_window(fig2_cfg)
    shape = (16, 6)
    zero = modulate_packet(fig2_cfg, proto_m3, np.zeros(shape), w)
    assert_allclose(zero.samples, 0.0)

    A = np.zeros(shape)
    A[5, 3] = 2.5
    single = modulate_packet(fig2_cfg, proto_m3, A, w)
    direct = modulate_symbol(fig2_cfg, proto_m3, 5, 4, 2.5, w)
    assert_allclose(single.samples, direct.samples, atol=1e-12)

    A1 = rng.standard_normal(shape)
    A2 = rng.standard_normal(shape)
    lhs = modulate_packet(fig2_cfg, proto_m3, A1 + A2, w)
    rhs = modulate_packet(fig2_cfg, proto_m3, A1, w).samples + modulate_packet(
        fig2_cfg, proto_m3, A2, w
    ).samples
    assert np.max(np.abs(lhs.samples - rhs)) < 1e-12 * max(1.0, np.max(np.abs(rhs)))


def test_modulate_packet_rejects_bad_shape(fig2_cfg, proto_m3):
    w = make_tx_window(fig2_cfg)
    with pytest.raises(ValueError):
        modulate_packet(fig2_cfg, proto_m3, np.zeros((16, 5)), w)


def test_cyclic_prefix_property(fig2_cfg, proto_m3):
    rng = np.random.default_rng(11)
    w = make_tx_window(fig2_cfg)
    A = rng.standard_normal((16, 6))
    x = modulate_packet(fig2_cfg, proto_m3, A, w)
    MN, cp = fig2_cfg.body_len, fig2_cfg.cp_len
    head = x.samples[0 : cp]                       # samples at [-cp, 0)
    tail = x.samples[cp + MN - cp : cp + MN]       # samples at [MN-cp, MN)
    assert_allclose(head, tail, atol=1e-11)


def test_apply_offsets_identity_and_shift():
    s = ComplexSignal(2, [1.0, 2.0, 3.0])
    out = apply_offsets(s, OffsetSpec(0, 0.0))
    assert out.start == 2
    assert_allclose(out.samples, s.samples)

    out = apply_offsets(s, OffsetSpec(4, 0.0))
    assert out.start == 6
    assert_allclose(np.abs(out.samples), np.abs(s.samples))


def test_apply_offsets_modulation_theorem(fig2_cfg, proto_m3):
    w = make_tx_window(fig2_cfg)
    x = modulate_symbol(fig2_cfg, proto_m3, 2, 3, 1.0, w)
    df = 0.05 / 16
    y = apply_offsets(x, OffsetSpec(0, df))
    for om in (0.1, -1.3, 2.2):
        lhs = abs(dtft(y, om))
        rhs = abs(dtft(x, om - 2 * np.pi * df))
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_demodulate_zero_signal(fig5_cfg, proto_m8):
    v = make_rx_window(fig5_cfg)
    out = demodulate(fig5_cfg, proto_m8, v, ComplexSignal(0, np.zeros(4)))
    assert_allclose(out, 0.0)


def test_demodulate_single_symbol(fig5_cfg, proto_m8):
    w = make_tx_window(fig5_cfg)
    v = make_rx_window(fig5_cfg)
    x = modulate_symbol(fig5_cfg, proto_m8, 3, 5, 1.0, w)
    out = demodulate(fig5_cfg, proto_m8, v, x)
    target = np.zeros((16, 16))
    target[3, 4] = 1.0
    assert np.max(np.abs(out - target)) < 1e-9


@pytest.mark.parametrize("kind_fixture", ["rect", "rc"])
def test_perfect_reconstruction(request, fig5_cfg, fig6_cfg, proto_m8, kind_fixture):
    cfg = fig5_cfg if kind_fixture == "rect" else fig6_cfg
    kind = RECTANGULAR if kind_fixture == "rect" else RAISED_COSINE
    w = make_tx_window(cfg, kind)
    v = make_rx_window(cfg, kind)
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        A = rng.standard_normal((16, 16))
        x = modulate_packet(cfg, proto_m8, A, w)
        worst = max(worst, float(np.max(np.abs(demodulate(cfg, proto_m8, v, x) - A))))
    assert worst < 1e-9


def test_mismatched_prototype_overlap_rejected(fig5_cfg, proto_m3):
    w = make_tx_window(fig5_cfg)
    with pytest.raises(ValueError, match="overlap"):
        modulate_symbol(fig5_cfg, proto_m3, 0, 1, 1.0, w)
    with pytest.raises(ValueError, match="overlap"):
        modulate_packet(fig5_cfg, proto_m3, np.zeros((16, 16)), w)
