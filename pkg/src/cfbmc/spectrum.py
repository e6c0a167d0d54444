"""Energy spectral density of packet elements and whole packets.

Two routes to the same per-symbol quantity: the closed form built from
shifted samples of the transmit window's DTFT, and the direct squared
DTFT of the synthesized symbol.  Their pointwise agreement is one of the
repository's standing checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ComplexSignal, PacketConfig, dtft
from .prototype import PrototypeCoefficients
from .waveform import Window, check_overlap, modulate_symbol

__all__ = [
    "EsdCurve",
    "default_grid",
    "esd_symbol_analytic",
    "esd_symbol_numeric",
    "esd_packet",
    "oob_metric",
    "esd_db",
]

DB_FLOOR = -120.0
ZERO_DB_SENTINEL = -300.0


@dataclass(frozen=True)
class EsdCurve:
    """Energy density (per radian/sample) on an ascending grid in [-pi, pi)."""

    omega: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if om.shape != vals.shape:
            raise ValueError("omega and values must have matching shapes")
        if np.any(np.diff(om) <= 0):
            raise ValueError("omega grid must be strictly ascending")
        if vals.size and vals.min() < 0:
            raise ValueError("energy density must be non-negative")
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "values", vals)


def default_grid(size: int = 4096) -> np.ndarray:
    """Uniform grid of `size` points over [-pi, pi)."""
    if size < 2:
        raise ValueError("grid size must be at least 2")
    return -np.pi + 2 * np.pi * np.arange(size) / size


def esd_symbol_analytic(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    w: Window,
    k: int,
    l: int,
    grid: np.ndarray,
    sigma_a2: float = 1.0,
) -> EsdCurve:
    """Closed-form per-symbol ESD.

    E(omega) = sigma_a^2 | sum_r c_r e^(-j pi l r / M)
                           W(omega - 2 pi (r + k M) / (MN)) |^2
    with W the exact DTFT of the transmit window.
    """
    check_overlap(cfg, proto)
    N = cfg.num_subcarriers
    M = cfg.num_complex_slots
    if not 0 <= k < N:
        raise ValueError("subcarrier index out of range")
    if not 1 <= l <= 2 * M:
        raise ValueError("slot index out of range")
    grid = np.asarray(grid, dtype=float)
    wsig = ComplexSignal(w.start, w.taps.astype(complex))
    rr = proto.r_index()
    shifts = 2 * np.pi * (rr + k * M) / cfg.body_len
    coeffs = proto.c * np.exp(-1j * np.pi * l * rr / M)
    X = np.zeros(grid.shape, dtype=complex)
    for cr, sh in zip(coeffs, shifts):
        X += cr * dtft(wsig, grid - sh)
    return EsdCurve(grid, sigma_a2 * np.abs(X) ** 2)


def esd_symbol_numeric(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    w: Window,
    k: int,
    l: int,
    grid: np.ndarray,
    sigma_a2: float = 1.0,
) -> EsdCurve:
    """Per-symbol ESD by brute force: |DTFT of the synthesized symbol|^2."""
    grid = np.asarray(grid, dtype=float)
    x = modulate_symbol(cfg, proto, k, l, 1.0, w)
    X = dtft(x, grid)
    return EsdCurve(grid, sigma_a2 * np.abs(X) ** 2)


def esd_packet(
    cfg: PacketConfig,
    proto: PrototypeCoefficients,
    w: Window,
    grid: np.ndarray,
    sigma_a2: float = 1.0,
    subcarriers=None,
) -> EsdCurve:
    """Packet ESD under independent unit-variance symbols.

    The density is the sum of the per-symbol densities over all (k, l);
    `subcarriers` restricts the sum to a subset of k.
    """
    grid = np.asarray(grid, dtype=float)
    if subcarriers is None:
        subcarriers = range(cfg.num_subcarriers)
    total = np.zeros(grid.shape)
    for k in subcarriers:
        for l in range(1, 2 * cfg.num_complex_slots + 1):
            total += esd_symbol_analytic(cfg, proto, w, k, l, grid, sigma_a2).values
    return EsdCurve(grid, total)


def oob_metric(curve: EsdCurve, band: tuple[float, float]) -> float:
    """Out-of-band energy ratio, 10 log10(E_out / E_in), in dB.

    `band` = (lo, hi) is an arc of the frequency circle (membership is
    evaluated modulo 2 pi, so bands may straddle +-pi).  All energy
    inside the band reports the -300 dB floor; all energy outside
    reports +300.
    """
    lo, hi = band
    width = hi - lo
    if not 0 < width < 2 * np.pi:
        raise ValueError("band must have width in (0, 2*pi)")
    inb = np.mod(curve.omega - lo, 2 * np.pi) < width
    e_in = float(curve.values[inb].sum())
    e_out = float(curve.values[~inb].sum())
    if e_in == 0.0 and e_out == 0.0:
        raise ValueError("curve carries no energy")
    if e_out == 0.0:
        return ZERO_DB_SENTINEL
    if e_in == 0.0:
        return -ZERO_DB_SENTINEL
    return float(10 * np.log10(e_out / e_in))


def esd_db(curve: EsdCurve, floor: float = DB_FLOOR) -> np.ndarray:
    """Curve values in dB, floored (exact zeros clamp to the floor too)."""
    vals = np.maximum(curve.values, 10.0 ** (floor / 10.0))
    return 10 * np.log10(vals)
