"""Self-check suite: invariant checks and dual-path sweeps.

Each check returns a record {name, status, deviation, tolerance, detail}
with status "pass", "fail", or "skipped".  The CLI's validate command
runs them against a packet configuration and reports the results as
machine-readable JSON.
"""

from __future__ import annotations

import numpy as np

from .core import ComplexSignal, OffsetSpec, PacketConfig, dtft
from .interference import (
    flat_coverage,
    leakage_analytic,
    leakage_map,
    leakage_oracle,
)
from .prototype import PrototypeCoefficients, design_phydyas
from .spectrum import default_grid, esd_symbol_analytic, esd_symbol_numeric
from .waveform import (
    RECTANGULAR,
    demodulate,
    make_rx_window,
    make_tx_window,
    modulate_packet,
)

__all__ = ["run_validation"]


def _record(name, status, deviation, tolerance, detail=""):
    return {
        "name": name,
        "status": status,
        "deviation": None if deviation is None else float(deviation),
        "tolerance": tolerance,
        "detail": detail,
    }


def _judge(name, deviation, tolerance, detail=""):
    status = "pass" if deviation <= tolerance else "fail"
    return _record(name, status, deviation, tolerance, detail)


def _perturbed(proto: PrototypeCoefficients, perturb) -> PrototypeCoefficients:
    if not perturb:
        return proto
    r = int(perturb["r"])
    delta = float(perturb["delta"])
    c = proto.c.copy()
    c[proto.M - 1 + r] += delta
    c[proto.M - 1 - r] += delta  # keep even symmetry; breaks the Nyquist pairing
    return PrototypeCoefficients(proto.M, c)


def run_validation(
    cfg: PacketConfig,
    tx_kind: str = RECTANGULAR,
    rx_kind: str = RECTANGULAR,
    trials: int = 40,
    seed: int = 0,
    perturb_c=None,
) -> dict:
    """Run every applicable check; returns {"checks": [...], "all_passed": bool}."""
    M = cfg.num_complex_slots
    N = cfg.num_subcarriers
    MN = cfg.body_len
    checks = []
    proto = _perturbed(design_phydyas(M), perturb_c)
    w = make_tx_window(cfg, tx_kind)
    v = make_rx_window(cfg, rx_kind)
    rng = np.random.default_rng(seed)

    # --- prototype identities
    dev = max(
        abs(proto.c[M - 1] - 1.0), float(np.max(np.abs(proto.c - proto.c[::-1])))
    )
    checks.append(_judge("prototype_symmetry", dev, 1e-9, "c_0 = 1 and c_r = c_-r"))

    if M == 1:
        checks.append(
            _record("prototype_pair_identity", "skipped", None, 1e-9, "needs M >= 2")
        )
        checks.append(
            _record("prototype_odd_series", "skipped", None, 1e-10, "needs M >= 2")
        )
    else:
        half = proto.c[M - 1 :]
        dev = float(np.max(np.abs(half[1:] ** 2 + half[:0:-1] ** 2 - 1.0)))
        checks.append(
            _judge("prototype_pair_identity", dev, 1e-9, "c_r^2 + c_{M-r}^2 = 1")
        )
        rr = proto.r_index()
        dev = 0.0
        for s in (+1, -1):
            prod = proto.c * proto.coeff(rr + s * M)
            for d in range(-2 * M, 2 * M + 1):
                trig = np.sin if d % 2 == 0 else np.cos
                dev = max(dev, abs(float(np.sum(prod * trig(np.pi * rr * d / M)))))
        checks.append(
            _judge("prototype_odd_series", dev, 1e-10, "adjacent-band cancellation sums")
        )

    dev = abs(float(np.sum(proto.c**2)) - M)
    checks.append(_judge("prototype_power_sum", dev, 1e-9, "sum c_r^2 = M"))

    # --- receive window fold and grid nulling
    fold = np.zeros(MN)
    np.add.at(fold, np.arange(v.start, v.stop) % MN, v.taps)
    checks.append(
        _judge("rx_window_fold_to_one", float(np.max(np.abs(fold - 1.0))), 1e-12)
    )
    vr = dtft(
        ComplexSignal(v.start, v.taps.astype(complex)),
        2 * np.pi * np.arange(-(M - 1), M) / MN,
    )
    vr = np.delete(vr, M - 1) / MN
    dev = float(np.max(np.abs(vr))) if vr.size else 0.0
    checks.append(
        _judge("rx_window_grid_nulling", dev, 1e-12, "V(2 pi r / MN) = 0 for r != 0")
    )

    # --- spectrum dual route
    grid = default_grid(512)
    dev = 0.0
    k_probe = min(2, N - 1)
    for l in range(1, 2 * M + 1):
        ea = esd_symbol_analytic(cfg, proto, w, k_probe, l, grid).values
        en = esd_symbol_numeric(cfg, proto, w, k_probe, l, grid).values
        scale = max(float(en.max()), 1e-300)
        dev = max(dev, float(np.max(np.abs(ea - en))) / scale)
    checks.append(
        _judge("esd_dual_route", dev, 1e-9, "closed form vs squared DTFT, sup-relative")
    )

    # --- synchronized orthogonality
    dev = 0.0
    for k, l in ((0, 1), (N // 2, M)):
        mp = leakage_map(cfg, proto, w, v, k, l, OffsetSpec(0, 0.0)).gains
        target = np.zeros_like(mp)
        target[k, l - 1] = 1.0
        dev = max(dev, float(np.max(np.abs(mp - target))))
    checks.append(
        _judge("sync_orthogonality", dev, 1e-9, "synchronized map is a Kronecker delta")
    )

    # --- dual-path sweep
    dev = 0.0
    for _ in range(trials):
        k, p = (int(x) for x in rng.integers(0, N, 2))
        l, m = (int(x) for x in rng.integers(1, 2 * M + 1, 2))
        off = OffsetSpec(
            int(rng.integers(-cfg.cp_len, cfg.cp_len + 1)),
            float(rng.uniform(-0.1 / N, 0.1 / N)),
        )
        va = leakage_analytic(cfg, proto, w, v, k, l, p, m, off)
        vo = leakage_oracle(cfg, proto, w, v, k, l, p, m, off)
        dev = max(dev, abs(va - vo))
    checks.append(
        _judge("dual_path_equivalence", dev, 1e-9, f"{trials} random offset trials")
    )

    # --- perfect reconstruction (needs the rx window on the flat tx span)
    if flat_coverage(w, v, 0):
        dev = 0.0
        for _ in range(min(trials, 20)):
            A = rng.standard_normal((N, 2 * M))
            x = modulate_packet(cfg, proto, A, w)
            dev = max(dev, float(np.max(np.abs(demodulate(cfg, proto, v, x) - A))))
        checks.append(_judge("perfect_reconstruction", dev, 1e-9))
    else:
        checks.append(
            _record(
                "perfect_reconstruction",
                "skipped",
                None,
                1e-9,
                "rx window is not covered by the flat tx span in this geometry",
            )
        )

    return {"checks": checks, "all_passed": all(c["status"] != "fail" for c in checks)}
