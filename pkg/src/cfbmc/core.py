"""Shared domain types and elementary signal operations.

All signals live on a single integer "global" time axis: the circular
packet body occupies samples [0, MN), the cyclic prefix extends into
negative indices, and a cyclic suffix (if any) follows the body.
Subcarriers are indexed k = 0..N-1; real-symbol slots are indexed
l = 1..2M (slot l is centered at sample l*N/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PacketConfig",
    "ComplexSignal",
    "OffsetSpec",
    "as_data_matrix",
    "signal_add",
    "dtft",
]


@dataclass(frozen=True)
class PacketConfig:
    """Geometry of one multicarrier packet.

    Parameters
    ----------
    num_subcarriers : int
        N, must be even so the half-symbol spacing N/2 is an integer.
    num_complex_slots : int
        M; each subcarrier carries 2M real (offset-QAM) symbols and the
        packet body spans MN samples.
    cp_len, cs_len : int
        Cyclic prefix / suffix lengths in samples.
    tx_rolloff, rx_rolloff : int
        Window roll-off lengths in samples.  Carried here as data; the
        window constructors in :mod:`cfbmc.waveform` interpret them.
    """

    num_subcarriers: int
    num_complex_slots: int
    cp_len: int = 0
    cs_len: int = 0
    tx_rolloff: int = 0
    rx_rolloff: int = 0

    def __post_init__(self):
        if self.num_subcarriers <= 0 or self.num_subcarriers % 2:
            raise ValueError("num_subcarriers must be a positive even integer")
        if self.num_complex_slots <= 0:
            raise ValueError("num_complex_slots must be a positive integer")
        for name in ("cp_len", "cs_len", "tx_rolloff", "rx_rolloff"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def body_len(self) -> int:
        """MN, the period of the circularly shaped body."""
        return self.num_subcarriers * self.num_complex_slots

    @property
    def flat_len(self) -> int:
        """Total flat transmit span: cp_len + MN + cs_len."""
        return self.cp_len + self.body_len + self.cs_len


@dataclass(frozen=True)
class ComplexSignal:
    """A finite complex sample sequence anchored on the global axis.

    Samples outside [start, start + len) are implicitly zero.
    """

    start: int
    samples: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "samples", np.atleast_1d(np.asarray(self.samples, dtype=complex))
        )

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def stop(self) -> int:
        return self.start + len(self.samples)

    def index(self) -> np.ndarray:
        """Global sample indices of the support."""
        return np.arange(self.start, self.stop)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2))


@dataclass(frozen=True)
class OffsetSpec:
    """Timing/frequency mismatch of an asynchronous transmission.

    delta_n is an integer sample delay.  delta_f is in cycles per sample,
    stored literally (a normalized offset of 0.05 at N subcarriers is
    stored as 0.05/N).  The frequency-offset phase exp(j 2 pi delta_f n)
    is referenced to the global axis origin n = 0.
    """

    delta_n: int = 0
    delta_f: float = 0.0

    def __post_init__(self):
        if not abs(self.delta_f) < 0.5:
            raise ValueError("delta_f must satisfy |delta_f| < 0.5")


def as_data_matrix(values, cfg: PacketConfig) -> np.ndarray:
    """Validate an N x 2M real symbol matrix and return it as float64.

    Row k holds subcarrier k; column j holds the symbol of slot l = j + 1.
    """
    a = np.asarray(values, dtype=float)
    shape = (cfg.num_subcarriers, 2 * cfg.num_complex_slots)
    if a.shape != shape:
        raise ValueError(f"data matrix must have shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("data matrix entries must be finite")
    return a


def signal_add(a: ComplexSignal, b: ComplexSignal) -> ComplexSignal:
    """Pointwise sum of two signals on the union of their supports."""
    if len(a) == 0:
        return b
    if len(b) == 0:
        return a
    start = min(a.start, b.start)
    stop = max(a.stop, b.stop)
    out = np.zeros(stop - start, dtype=complex)
    out[a.start - start : a.stop - start] += a.samples
    out[b.start - start : b.stop - start] += b.samples
    return ComplexSignal(start, out)


def dtft(s: ComplexSignal, omega):
    """Exact finite DTFT sum of `s`: sum_n s[n] exp(-j omega n).

    `omega` is in radians per sample and may be a scalar or an array; the
    sum runs over the signal's support with its true global indices, so
    no FFT-grid approximation is involved.
    """
    om = np.asarray(omega, dtype=float)
    n = s.index()
    out = np.exp(-1j * np.multiply.outer(om, n)) @ s.samples
    if np.ndim(omega) == 0:
        return complex(out)
    return out
