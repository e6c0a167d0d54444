"""Packet synthesis and recovery: windows, pulses, offsets, demodulation.

The transmit chain follows the circular construction: every symbol
(k, l) rides the periodic pulse h[n - l N/2], is shifted to its
subcarrier, phase-toggled by j^(k+l), and truncated by the transmit
window; the packet is the sum over all symbols.  The receiver windows
the signal, folds it onto one MN-sample period and evaluates the
matched-filter outputs from the prototype's frequency coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ComplexSignal, OffsetSpec, PacketConfig, as_data_matrix
from .prototype import PrototypeCoefficients, impulse_response

__all__ = [
    "RECTANGULAR",
    "RAISED_COSINE",
    "Window",
    "make_tx_window",
    "make_rx_window",
    "modulate_symbol",
    "modulate_packet",
    "apply_offsets",
    "demodulate",
]

RECTANGULAR = "rectangular"
RAISED_COSINE = "raised_cosine"


@dataclass(frozen=True)
class Window:
    """A real tap sequence anchored on the global axis."""

    start: int
    taps: np.ndarray
    kind: str

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=float)
        if taps.size and (taps.min() < 0.0 or taps.max() > 1.0):
            raise ValueError("window taps must lie in [0, 1]")
        object.__setattr__(self, "taps", taps)

    def __len__(self) -> int:
        return len(self.taps)

    @property
    def stop(self) -> int:
        return self.start + len(self.taps)

    def value_at(self, n) -> np.ndarray:
        """Window value at global indices n (zero outside the support)."""
        n = np.asarray(n)
        out = np.zeros(n.shape, dtype=float)
        ok = (n >= self.start) & (n < self.stop)
        out[ok] = self.taps[n[ok] - self.start]
        return out


def _check_kind(kind: str):
    if kind not in (RECTANGULAR, RAISED_COSINE):
        raise ValueError(f"unknown window kind {kind!r}")


def check_overlap(cfg: PacketConfig, proto: PrototypeCoefficients):
    """The prototype's overlap factor must equal the packet's slot count M."""
    if proto.M != cfg.num_complex_slots:
        raise ValueError(
            f"prototype overlap M={proto.M} does not match "
            f"num_complex_slots={cfg.num_complex_slots}"
        )


def make_tx_window(cfg: PacketConfig, kind: str = RECTANGULAR) -> Window:
    """Transmit window: flat ones over CP + body + CS, optional roll-offs.

    The flat span is [-cp_len, MN + cs_len).  For the raised-cosine kind
    a half-cosine ramp of tx_rolloff samples rises before the flat span,
    with values (1 - cos(pi (i+1) / (R+1))) / 2, and its mirror falls
    after it, extending the support by tx_rolloff on each side.
    """
    _check_kind(kind)
    flat = np.ones(cfg.flat_len)
    if kind == RECTANGULAR or cfg.tx_rolloff == 0:
        return Window(-cfg.cp_len, flat, kind)
    R = cfg.tx_rolloff
    ramp = (1.0 - np.cos(np.pi * (np.arange(R) + 1) / (R + 1))) / 2.0
    taps = np.concatenate([ramp, flat, ramp[::-1]])
    return Window(-cfg.cp_len - R, taps, kind)


def make_rx_window(cfg: PacketConfig, kind: str = RECTANGULAR) -> Window:
    """Receive window with the fold-to-one property.

    The defining contract is sum_i v[n + i*MN] = 1 for every n, which is
    equivalent to the nulling of the normalized V at all nonzero
    multiples of 2 pi / MN.  The rectangular kind is ones over [0, MN).
    The raised-cosine kind extends the support to [-R, MN + R) with a
    monotone transition of width 2R straddling each body boundary; the
    down-transition is the exact complement 1 - t of the up-transition,
    so the fold is one in exact arithmetic.
    """
    _check_kind(kind)
    MN = cfg.body_len
    R = cfg.rx_rolloff
    if kind == RAISED_COSINE and 2 * R > MN:
        raise ValueError("rx_rolloff must not exceed MN/2")
    if kind == RECTANGULAR or R == 0:
        w = Window(0, np.ones(MN), kind)
    else:
        t = (1.0 - np.cos(np.pi * (np.arange(2 * R) + 1) / (2 * R + 1))) / 2.0
        taps = np.concatenate([t, np.ones(MN - 2 * R), 1.0 - t])
        w = Window(-R, taps, kind)
    fold = np.zeros(MN)
    np.add.at(fold, np.arange(w.start, w.stop) % MN, w.taps)
    dev = float(np.max(np.abs(fold - 1.0)))
    if dev > 1e-12:
        raise ValueError(f"receive window violates fold-to-one by {dev:.3e}")
    return w


def modulate_symbol(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    k: int,
    l: int,
    a: float,
    window: Window,
) -> ComplexSignal:
    """Windowed contribution of one real symbol a at position (k, l).

    x[n] = j^(k+l) a h[n - l N/2] exp(j 2 pi k n / N) w[n] on the
    window's support.
    """
    check_overlap(cfg, proto)
    N = cfg.num_subcarriers
    M = cfg.num_complex_slots
    if not 0 <= k < N:
        raise ValueError(f"subcarrier index k={k} out of range 0..{N - 1}")
    if not 1 <= l <= 2 * M:
        raise ValueError(f"slot index l={l} out of range 1..{2 * M}")
    g = impulse_response(proto, N)
    n = np.arange(window.start, window.stop)
    h_shift = g[(n - l * N // 2) % cfg.body_len]
    phase = 1j ** ((k + l) % 4)
    samples = phase * a * h_shift * np.exp(2j * np.pi * k / N * n) * window.taps
    return ComplexSignal(window.start, samples)


def modulate_packet(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    data,
    window: Window,
) -> ComplexSignal:
    """Full packet: the sum of modulate_symbol over all matrix entries."""
    check_overlap(cfg, proto)
    A = as_data_matrix(data, cfg)
    N = cfg.num_subcarriers
    M = cfg.num_complex_slots
    MN = cfg.body_len
    g = impulse_response(proto, N)
    n = np.arange(window.start, window.stop)
    # shifted pulse bank, one row per slot l
    H = np.empty((2 * M, len(n)))
    for j in range(2 * M):
        H[j] = g[(n - (j + 1) * N // 2) % MN]
    jl = 1j ** (np.arange(1, 2 * M + 1) % 4)
    per_k = (A * jl) @ H
    jk = 1j ** (np.arange(N) % 4)
    carriers = np.exp(2j * np.pi / N * np.outer(np.arange(N), n))
    samples = ((jk[:, None] * carriers) * per_k).sum(axis=0) * window.taps
    return ComplexSignal(window.start, samples)


def apply_offsets(s: ComplexSignal, off: OffsetSpec) -> ComplexSignal:
    """Delay by delta_n and apply exp(j 2 pi delta_f n) on the global axis."""
    start = s.start + off.delta_n
    if off.delta_f == 0.0:
        return ComplexSignal(start, s.samples)
    n = np.arange(start, start + len(s))
    return ComplexSignal(start, s.samples * np.exp(2j * np.pi * off.delta_f * n))


def _windowed_fold(r: ComplexSignal, v: Window, MN: int) -> np.ndarray:
    """Fold r[n] v[n] onto one MN-sample period (global indices mod MN)."""
    lo = max(r.start, v.start)
    hi = min(r.stop, v.stop)
    folded = np.zeros(MN, dtype=complex)
    if hi > lo:
        n = np.arange(lo, hi)
        q = r.samples[lo - r.start : hi - r.start] * v.taps[lo - v.start : hi - v.start]
        np.add.at(folded, n % MN, q)
    return folded


def demodulate(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    v: Window,
    r: ComplexSignal,
) -> np.ndarray:
    """Matched-filter estimates for every (subcarrier, slot) position.

    Windows r by v, folds onto one period, and evaluates

        a_hat[p, m] = Re{ j^-(p+m) / MN *
                          sum_r c_r Z_p(2 pi r / MN) e^(j pi m r / M) } / M

    where Z_p is the DTFT of the windowed signal downconverted from
    subcarrier p.  All Z_p samples fall on integer bins s = r + p M of
    the MN-point DFT of the folded product, which equals the exact DTFT
    at those frequencies, so a single FFT serves the whole grid.  The
    1/MN and 1/M factors make a synchronized clean packet return its
    data matrix exactly.
    """
    check_overlap(cfg, proto)
    N = cfg.num_subcarriers
    M = cfg.num_complex_slots
    MN = cfg.body_len
    F = np.fft.fft(_windowed_fold(r, v, MN))
    rr = np.arange(-(M - 1), M)
    bins = (rr[None, :] + M * np.arange(N)[:, None]) % MN
    Z = F[bins]  # (N, 2M-1)
    mm = np.arange(1, 2 * M + 1)
    E = np.exp(1j * np.pi / M * np.outer(mm, rr))  # (2M, 2M-1)
    corr = (Z * proto.c) @ E.T  # (N, 2M)
    rot = 1j ** ((-(np.arange(N)[:, None] + mm[None, :])) % 4)
    return (rot * corr).real / (M * MN)
