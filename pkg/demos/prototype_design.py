"""Walk through the prototype filter design for several overlap factors.

Prints the frequency coefficient tables, checks the square-root Nyquist
structure, and plots the time pulses next to their interpolated spectra.

Run:  python demos/prototype_design.py
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from cfbmc import ComplexSignal, check_sqrt_nyquist, design_phydyas, dtft, impulse_response

N = 16

print("Mirabbasi-Martin frequency-sampled prototypes")
print("=" * 60)
for M in (2, 3, 4, 8):
    p = design_phydyas(M)
    ok, dev = check_sqrt_nyquist(p, N)
    half = ", ".join(f"{c:.8f}" for c in p.c[M - 1 :])
    print(f"M={M}:  c_0..c_{M-1} = [{half}]")
    print(f"       sqrt-Nyquist check: {'pass' if ok else 'FAIL'} (max deviation {dev:.2e})")

fig, axes = plt.subplots(2, 2, figsize=(11, 7))
grid = np.linspace(-np.pi / 4, np.pi / 4, 2001)
for ax_t, ax_f, M in ((axes[0, 0], axes[0, 1], 4), (axes[1, 0], axes[1, 1], 8)):
    g = impulse_response(design_phydyas(M), N)
    ax_t.plot(np.arange(M * N), g)
    ax_t.set_title(f"time pulse g[n], M={M}, N={N}")
    ax_t.set_xlabel("n")

    G = np.abs(dtft(ComplexSignal(0, g.astype(complex)), grid))
    ax_f.plot(grid, 20 * np.log10(np.maximum(G / G.max(), 1e-8)))
    ax_f.set_title("normalized spectrum of one period (dB)")
    ax_f.set_xlabel("rad/sample")
    ax_f.set_ylim(-120, 3)
fig.tight_layout()
out = "demos/output/prototype_design.png"
fig.savefig(out, dpi=120)
print(f"\nwrote {out}")
