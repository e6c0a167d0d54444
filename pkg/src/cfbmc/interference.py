"""Leakage gains between asynchronous symbol pairs.

The central quantity is the real gain I[p, m | k, l]: the contribution
of a unit symbol transmitted at (k, l) with time/frequency offsets
(delta_n, delta_f) to the receiver output that estimates the symbol at
(p, m).  It is computed two independent ways:

* `leakage_analytic` — a closed double sum over the prototype
  coefficients with exact DTFT samples of the combined window
  u[n] = w[n - delta_n] v[n];
* `leakage_oracle` — the transceiver chain run literally (modulate,
  offset, window, fold, circular correlation in the time domain).

Their agreement over random sweeps is the repository's central
verification.  All gains are normalized by the synchronized self-gain
M, so a synchronized map is the Kronecker delta at the source.

A note on phases: the closed forms below were re-derived from the
transceiver definition.  The timing phase enters as exp(-j 2 pi k
delta_n / N) together with a per-coefficient term exp(-j 2 pi r delta_n
/ (MN)), and the frequency offset shifts the window spectrum argument by
-2 pi delta_f; the oracle pins these conventions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import ComplexSignal, OffsetSpec, PacketConfig, dtft
from .prototype import PrototypeCoefficients, impulse_response
from .waveform import Window, apply_offsets, check_overlap, modulate_symbol

__all__ = [
    "CombinedWindow",
    "LeakageMap",
    "combine_windows",
    "flat_coverage",
    "leakage_sync",
    "leakage_timing_flat",
    "leakage_analytic",
    "leakage_oracle",
    "leakage_map",
    "gains_to_db",
]

DB_FLOOR = -300.0


@dataclass(frozen=True)
class CombinedWindow:
    """u[n] = w[n - delta_n] v[n] on the intersection of the supports."""

    start: int
    taps: np.ndarray

    def __len__(self) -> int:
        return len(self.taps)

    @property
    def stop(self) -> int:
        return self.start + len(self.taps)


def combine_windows(w: Window, v: Window, delta_n: int) -> CombinedWindow:
    lo = max(w.start + delta_n, v.start)
    hi = min(w.stop + delta_n, v.stop)
    if hi <= lo:
        return CombinedWindow(0, np.zeros(0))
    taps = (
        w.taps[lo - delta_n - w.start : hi - delta_n - w.start]
        * v.taps[lo - v.start : hi - v.start]
    )
    return CombinedWindow(lo, taps)


def flat_coverage(w: Window, v: Window, delta_n: int) -> bool:
    """True iff the shifted transmit window is exactly 1 wherever v > 0."""
    n = np.arange(v.start, v.stop)
    active = v.taps > 0
    return bool(np.all(w.value_at(n[active] - delta_n) == 1.0))


def gains_to_db(gains: np.ndarray) -> np.ndarray:
    """20 log10 |gain| with exact zeros clamped to the -300 dB floor."""
    mag = np.abs(np.asarray(gains, dtype=float))
    floor_mag = 10.0 ** (DB_FLOOR / 20.0)
    return 20 * np.log10(np.maximum(mag, floor_mag))


@dataclass(frozen=True)
class LeakageMap:
    """Leakage gains of one asynchronous source into the full (p, m) grid."""

    source: tuple[int, int]
    offsets: OffsetSpec
    gains: np.ndarray
    gains_db: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "gains", np.asarray(self.gains, dtype=float))
        object.__setattr__(self, "gains_db", gains_to_db(self.gains))


def leakage_sync(
    proto: PrototypeCoefficients, k: int, l: int, p: int, m: int
) -> float:
    """Closed-form leakage gain with both users fully synchronized.

    Zero unless (p, m) = (k, l): for |k - p| >= 2 the coefficient
    supports are disjoint; for |k - p| <= 1 the sums cancel through the
    prototype's even symmetry and Nyquist pairing.
    """
    return _closed_form(proto, k, l, p, m, 0, None)


def leakage_timing_flat(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    k: int,
    l: int,
    p: int,
    m: int,
    delta_n: int,
) -> float:
    """Closed-form gain for a pure timing offset under flat coverage.

    Valid when the receive window sees only the flat part of the shifted
    transmit window (caller-checked via `flat_coverage`); then the
    combined window keeps its grid-nulling property and the general
    expression collapses to a single coefficient sum.  Entries with
    |k - p| >= 2 remain exactly zero; adjacent subcarriers pick up
    cosine (odd m - l) or sine (even m - l) sums whose odd symmetry the
    timing phase breaks.
    """
    check_overlap(cfg, proto)
    return _closed_form(proto, k, l, p, m, delta_n, cfg)


def _closed_form(proto, k, l, p, m, delta_n, cfg) -> float:
    M = proto.M
    kp = k - p
    if abs(kp) >= 2:
        return 0.0
    rr = proto.r_index()
    prod = proto.c * proto.coeff(rr - kp * M)
    theta = np.pi * (m - l) / M * rr
    psi = 0.0
    if delta_n:
        N = cfg.num_subcarriers
        theta = theta - 2 * np.pi * delta_n / cfg.body_len * rr
        psi = 2 * np.pi * p * delta_n / N
    # prefactor j^(k-p+l-m) (-1)^(l(k-p)) e^(-j psi), split by parity
    sign = -1.0 if (l * kp) % 2 else 1.0
    quarter = (kp + l - m) % 4
    if quarter % 2 == 0:
        eps = 1.0 if quarter == 0 else -1.0
        val = eps * sign * np.sum(prod * np.cos(theta - psi))
    else:
        eps = 1.0 if quarter == 1 else -1.0
        val = -eps * sign * np.sum(prod * np.sin(theta - psi))
    return float(val) / M


def _window_spectrum(u: CombinedWindow, s_lo: int, s_hi: int, delta_f: float, MN: int):
    """U(2 pi s / MN - 2 pi delta_f) for integer s = s_lo..s_hi."""
    sig = ComplexSignal(u.start, u.taps.astype(complex))
    s = np.arange(s_lo, s_hi + 1)
    return dtft(sig, 2 * np.pi * s / MN - 2 * np.pi * delta_f)


def leakage_analytic(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    w: Window,
    v: Window,
    k: int,
    l: int,
    p: int,
    m: int,
    off: OffsetSpec,
) -> float:
    """Leakage gain from the closed double sum over (r, r').

    I = Re{ j^(k-p+l-m) e^(-j 2 pi k dn / N)
            sum_r c_r e^(j pi m r / M)
            sum_r' c_r' e^(-j 2 pi r' (dn + l N/2) / MN)
            U(2 pi (r - r' - (k-p) M) / MN - 2 pi df) } / (M * MN)

    with U the exact DTFT of the combined window.
    """
    check_overlap(cfg, proto)
    N = cfg.num_subcarriers
    M = proto.M
    MN = cfg.body_len
    u = combine_windows(w, v, off.delta_n)
    if len(u) == 0:
        return 0.0
    rr = proto.r_index()
    smat = rr[:, None] - rr[None, :] - (k - p) * M
    U = _window_spectrum(u, int(smat.min()), int(smat.max()), off.delta_f, MN)
    av = proto.c * np.exp(1j * np.pi * m / M * rr)
    bv = proto.c * np.exp(-2j * np.pi * rr * (off.delta_n + l * N // 2) / MN)
    S = np.einsum("i,ij,j->", av, U[smat - smat.min()], bv)
    pref = (1j ** ((k - p + l - m) % 4)) * np.exp(-2j * np.pi * k * off.delta_n / N)
    return float((pref * S).real) / (M * MN)


def leakage_oracle(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    w: Window,
    v: Window,
    k: int,
    l: int,
    p: int,
    m: int,
    off: OffsetSpec,
) -> float:
    """Brute-force leakage gain: the receiver chain run sample by sample.

    Modulate a unit symbol, apply the offsets, window by v, downconvert
    subcarrier p, fold onto one period, and circularly correlate with
    the time-domain pulse at lag m N/2.  Shares no algebra with
    `leakage_analytic` beyond the prototype itself.
    """
    N = cfg.num_subcarriers
    M = proto.M
    MN = cfg.body_len
    y = apply_offsets(modulate_symbol(cfg, proto, k, l, 1.0, w), off)
    lo = max(y.start, v.start)
    hi = min(y.stop, v.stop)
    if hi <= lo:
        return 0.0
    n = np.arange(lo, hi)
    z = (
        y.samples[lo - y.start : hi - y.start]
        * v.taps[lo - v.start : hi - v.start]
        * np.exp(-2j * np.pi * p / N * n)
    )
    folded = np.zeros(MN, dtype=complex)
    np.add.at(folded, n % MN, z)
    g = impulse_response(proto, N)
    corr = folded @ g[(m * N // 2 - np.arange(MN)) % MN]
    return float(((1j ** ((-(p + m)) % 4)) * corr).real) / (M * MN)


def leakage_map(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    w: Window,
    v: Window,
    k: int,
    l: int,
    off: OffsetSpec,
) -> LeakageMap:
    """Analytic leakage gains of source (k, l) into every (p, m)."""
    check_overlap(cfg, proto)
    N = cfg.num_subcarriers
    M = proto.M
    MN = cfg.body_len
    u = combine_windows(w, v, off.delta_n)
    gains = np.zeros((N, 2 * M))
    if len(u):
        rr = proto.r_index()
        # all U samples needed across p, shared through one spectrum sweep
        kp_all = k - np.arange(N)
        s_lo = int(rr.min() - rr.max() - kp_all.max() * M)
        s_hi = int(rr.max() - rr.min() - kp_all.min() * M)
        U = _window_spectrum(u, s_lo, s_hi, off.delta_f, MN)
        bv = proto.c * np.exp(-2j * np.pi * rr * (off.delta_n + l * N // 2) / MN)
        mm = np.arange(1, 2 * M + 1)
        A = proto.c * np.exp(1j * np.pi / M * np.outer(mm, rr))  # (2M, 2M-1)
        for p in range(N):
            smat = rr[:, None] - rr[None, :] - (k - p) * M
            S = A @ (U[smat - s_lo] @ bv)  # (2M,)
            pref = (1j ** ((k - p + l - mm) % 4)) * np.exp(
                -2j * np.pi * k * off.delta_n / N
            )
            gains[p] = (pref * S).real / (M * MN)
    return LeakageMap((k, l), off, gains)
