"""Per-slot circular pulses and their spectra in one subcarrier band.

Recreates the classic picture: with a sharp rectangular packet window,
slots near the block edges radiate far more out-of-band energy than the
center slot, and a raised-cosine window flattens that dependence.

Run:  python demos/pulse_spectra.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cfbmc import (
    RAISED_COSINE,
    RECTANGULAR,
    PacketConfig,
    default_grid,
    design_phydyas,
    esd_db,
    esd_symbol_analytic,
    make_tx_window,
    modulate_symbol,
    oob_metric,
)

K = 2  # the subcarrier under the microscope
cfg_rect = PacketConfig(16, 3, cp_len=10)
cfg_rc = PacketConfig(16, 3, cp_len=10, tx_rolloff=8)
proto = design_phydyas(cfg_rect.num_complex_slots)
grid = default_grid(4096)
band = (2 * np.pi * K / 16 - 2 * np.pi / 16, 2 * np.pi * K / 16 + 2 * np.pi / 16)

fig, axes = plt.subplots(2, 2, figsize=(12, 7))
print(f"out-of-band metric per slot, subcarrier {K}")
print(f"{'l':>3} {'rectangular':>14} {'raised cosine':>14}")
for (cfg, kind), (ax_t, ax_f) in zip(
    ((cfg_rect, RECTANGULAR), (cfg_rc, RAISED_COSINE)),
    ((axes[0, 0], axes[0, 1]), (axes[1, 0], axes[1, 1])),
):
    w = make_tx_window(cfg, kind)
    oobs = []
    for l in range(1, 7):
        x = modulate_symbol(cfg, proto, K, l, 1.0, w)
        curve = esd_symbol_analytic(cfg, proto, w, K, l, grid)
        oobs.append(oob_metric(curve, band))
        ax_t.plot(x.index(), np.abs(x.samples), label=f"l={l}")
        ax_f.plot(grid, esd_db(curve), lw=0.8)
    ax_t.plot(np.arange(w.start, w.stop), w.taps, "r--", lw=1.2, label="window")
    ax_t.set_title(f"{kind} window: |pulse| per slot")
    ax_t.set_xlabel("n")
    ax_f.set_title("energy spectral density (dB)")
    ax_f.set_xlabel("rad/sample")
    ax_f.set_ylim(-100, 40)
    ax_f.axvspan(band[0], band[1], color="0.9")
    if kind == RECTANGULAR:
        rect_oobs = oobs
    else:
        for l, (a, b) in enumerate(zip(rect_oobs, oobs), start=1):
            print(f"{l:>3} {a:>12.2f} dB {b:>12.2f} dB")
axes[0, 0].legend(fontsize=7, ncols=4)
fig.tight_layout()
out = "demos/output/pulse_spectra.png"
fig.savefig(out, dpi=120)
print(f"\nthe center slot (l = M = 3) is the quietest under the sharp window;")
print(f"the roll-off trades a little center-slot cleanliness for the edges.")
print(f"wrote {out}")
