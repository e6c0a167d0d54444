"""Command-line front end: run experiments from JSON configs or presets.

Subcommands
-----------
spectrum   per-slot pulse and energy-spectral-density curves for one subcarrier
leakage    leakage-gain maps for asynchronous (source, offset) pairs
validate   invariant suite and dual-path sweeps, machine-readable report

Exit codes: 0 ok, 1 config error, 2 validation failure.  All CSV numbers
are written as %.12e so identical configs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import copy
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import OffsetSpec, PacketConfig
from .interference import leakage_map
from .prototype import design_phydyas
from .spectrum import (
    default_grid,
    esd_db,
    esd_symbol_analytic,
    esd_symbol_numeric,
    oob_metric,
)
from .validation import run_validation
from .waveform import RAISED_COSINE, RECTANGULAR, make_rx_window, make_tx_window, modulate_symbol

__all__ = ["ExperimentConfig", "PRESETS", "main", "cmd_spectrum", "cmd_leakage", "cmd_validate"]

FMT = "%.12e"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    packet: PacketConfig
    tx_window: str = RECTANGULAR
    rx_window: str = RECTANGULAR
    grid_size: int = 4096
    spectrum: dict = field(default_factory=dict)
    leakage: dict = field(default_factory=dict)
    validate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "packet": {
                "num_subcarriers": self.packet.num_subcarriers,
                "num_complex_slots": self.packet.num_complex_slots,
                "cp_len": self.packet.cp_len,
                "cs_len": self.packet.cs_len,
                "tx_rolloff": self.packet.tx_rolloff,
                "rx_rolloff": self.packet.rx_rolloff,
            },
            "tx_window": self.tx_window,
            "rx_window": self.rx_window,
            "grid_size": self.grid_size,
            "spectrum": copy.deepcopy(self.spectrum),
            "leakage": copy.deepcopy(self.leakage),
            "validate": copy.deepcopy(self.validate),
        }

    def to_canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_dict(d: dict) -> "ExperimentConfig":
        try:
            packet = PacketConfig(**d["packet"])
            cfg = ExperimentConfig(
                experiment=d["experiment"],
                packet=packet,
                tx_window=d.get("tx_window", RECTANGULAR),
                rx_window=d.get("rx_window", RECTANGULAR),
                grid_size=int(d.get("grid_size", 4096)),
                spectrum=copy.deepcopy(d.get("spectrum", {})),
                leakage=copy.deepcopy(d.get("leakage", {})),
                validate=copy.deepcopy(d.get("validate", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid config: {exc}") from exc
        for name in ("spectrum", "leakage", "validate"):
            if not isinstance(getattr(cfg, name), dict):
                raise ConfigError(f"config section {name!r} must be an object")
        for kind in (cfg.tx_window, cfg.rx_window):
            if kind not in (RECTANGULAR, RAISED_COSINE):
                raise ConfigError(f"unknown window kind {kind!r}")
        if cfg.experiment not in ("spectrum", "leakage", "validate"):
            raise ConfigError(f"unknown experiment {cfg.experiment!r}")
        if cfg.grid_size < 2:
            raise ConfigError("grid_size must be at least 2")
        return cfg


def _preset_configs() -> dict[str, ExperimentConfig]:
    slots6 = list(range(1, 7))
    sources = [[8, 1], [8, 3], [8, 7]]
    offsets = [[4, 0.0], [-4, 0.0], [0, 0.05 / 16]]
    return {
        # single-subcarrier pulse/spectrum sweep, sharp rectangular packet edges
        "fig2": ExperimentConfig(
            "spectrum",
            PacketConfig(16, 3, cp_len=10),
            spectrum={"subcarrier": 2, "slots": slots6},
        ),
        # same sweep with raised-cosine packet edges
        "fig3": ExperimentConfig(
            "spectrum",
            PacketConfig(16, 3, cp_len=10, tx_rolloff=8),
            tx_window=RAISED_COSINE,
            spectrum={"subcarrier": 2, "slots": slots6},
        ),
        # asynchronous leakage maps, rectangular windows
        "fig5": ExperimentConfig(
            "leakage",
            PacketConfig(16, 8, cp_len=8),
            leakage={"sources": sources, "offsets": offsets},
        ),
        # same maps with raised-cosine windows; the cyclic suffix keeps the
        # extended receive window on the flat transmit span when synchronized
        "fig6": ExperimentConfig(
            "leakage",
            PacketConfig(16, 8, cp_len=8, cs_len=8, tx_rolloff=8, rx_rolloff=8),
            tx_window=RAISED_COSINE,
            rx_window=RAISED_COSINE,
            leakage={"sources": sources, "offsets": offsets},
        ),
        "validate": ExperimentConfig(
            "validate",
            PacketConfig(16, 4, cp_len=8, cs_len=8, tx_rolloff=8, rx_rolloff=8),
            tx_window=RAISED_COSINE,
            rx_window=RAISED_COSINE,
            validate={"trials": 40, "seed": 0},
        ),
    }


PRESETS = _preset_configs()


def load_config(path=None, preset=None, grid=None) -> ExperimentConfig:
    if (path is None) == (preset is None):
        raise ConfigError("exactly one of --config and --preset is required")
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r} (have {sorted(PRESETS)})")
        cfg = PRESETS[preset]
    else:
        try:
            d = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        cfg = ExperimentConfig.from_dict(d)
    if grid is not None:
        d = cfg.to_dict()
        d["grid_size"] = int(grid)
        cfg = ExperimentConfig.from_dict(d)
    return cfg


def _write_csv(path: Path, header: str, columns) -> None:
    rows = np.column_stack(columns)
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(FMT % x for x in row) + "\n")


def _write_map_csv(path: Path, gains, gains_db) -> None:
    N, cols = gains.shape
    with open(path, "w") as fh:
        fh.write("p,m,gain,gain_db\n")
        for p in range(N):
            for m in range(1, cols + 1):
                fh.write(
                    "%d,%d,%s,%s\n"
                    % (p, m, FMT % gains[p, m - 1], FMT % gains_db[p, m - 1])
                )


def _write_signal_csv(path: Path, start: int, samples) -> None:
    samples = np.asarray(samples, dtype=complex)
    n = np.arange(start, start + len(samples))
    with open(path, "w") as fh:
        fh.write("n,re,im\n")
        for i, s in zip(n, samples):
            fh.write("%d,%s,%s\n" % (i, FMT % s.real, FMT % s.imag))


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def cmd_spectrum(cfg: ExperimentConfig, out_dir) -> int:
    params = cfg.spectrum
    if "subcarrier" not in params or "slots" not in params:
        raise ConfigError("spectrum config requires 'subcarrier' and 'slots'")
    k = int(params["subcarrier"])
    slots = [int(l) for l in params["slots"]]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    proto = design_phydyas(cfg.packet.num_complex_slots)
    w = make_tx_window(cfg.packet, cfg.tx_window)
    grid = default_grid(cfg.grid_size)
    N = cfg.packet.num_subcarriers
    band = (2 * np.pi * k / N - 2 * np.pi / N, 2 * np.pi * k / N + 2 * np.pi / N)

    (out / "config.json").write_text(cfg.to_canonical_json())
    _write_json(out / "prototype.json", {"M": proto.M, "c": list(proto.c)})
    _write_signal_csv(out / "window_tx.csv", w.start, w.taps)

    curves = []
    for l in slots:
        pulse = modulate_symbol(cfg.packet, proto, k, l, 1.0, w)
        curve = esd_symbol_analytic(cfg.packet, proto, w, k, l, grid)
        check = esd_symbol_numeric(cfg.packet, proto, w, k, l, grid)
        scale = max(float(check.values.max()), 1e-300)
        if float(np.max(np.abs(curve.values - check.values))) / scale > 1e-9:
            raise RuntimeError(f"ESD dual-route mismatch at (k={k}, l={l})")
        pulse_csv = f"pulse_l{l:02d}.csv"
        esd_csv = f"esd_l{l:02d}.csv"
        _write_signal_csv(out / pulse_csv, pulse.start, pulse.samples)
        _write_csv(out / esd_csv, "omega,esd_db", (grid, esd_db(curve)))
        curves.append(
            {
                "k": k,
                "l": l,
                "window": cfg.tx_window,
                "pulse_csv": pulse_csv,
                "esd_csv": esd_csv,
                "oob_db": oob_metric(curve, band),
            }
        )
    _write_json(
        out / "manifest.json",
        {
            "config": cfg.to_dict(),
            "curves": curves,
            "prototype": "prototype.json",
            "tx_window_csv": "window_tx.csv",
        },
    )
    return 0


def cmd_leakage(cfg: ExperimentConfig, out_dir) -> int:
    params = cfg.leakage
    if "sources" not in params or "offsets" not in params:
        raise ConfigError("leakage config requires 'sources' and 'offsets'")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    proto = design_phydyas(cfg.packet.num_complex_slots)
    w = make_tx_window(cfg.packet, cfg.tx_window)
    v = make_rx_window(cfg.packet, cfg.rx_window)

    (out / "config.json").write_text(cfg.to_canonical_json())
    _write_signal_csv(out / "window_tx.csv", w.start, w.taps)
    _write_signal_csv(out / "window_rx.csv", v.start, v.taps)

    maps = []
    for k, l in (tuple(s) for s in params["sources"]):
        for j, (dn, df) in enumerate(tuple(o) for o in params["offsets"]):
            off = OffsetSpec(int(dn), float(df))
            mp = leakage_map(cfg.packet, proto, w, v, int(k), int(l), off)
            stem = f"map_k{int(k):02d}_l{int(l):02d}_off{j}"
            _write_map_csv(out / f"{stem}.csv", mp.gains, mp.gains_db)
            meta = {
                "source": [int(k), int(l)],
                "offsets": {"delta_n": off.delta_n, "delta_f": off.delta_f},
                "window_kinds": {"tx": cfg.tx_window, "rx": cfg.rx_window},
                "config": cfg.to_dict(),
                "csv": f"{stem}.csv",
            }
            _write_json(out / f"{stem}.json", meta)
            maps.append(meta)
    _write_json(
        out / "manifest.json",
        {
            "config": cfg.to_dict(),
            "maps": maps,
            "tx_window_csv": "window_tx.csv",
            "rx_window_csv": "window_rx.csv",
        },
    )
    return 0


def cmd_validate(cfg: ExperimentConfig, out_dir) -> int:
    params = cfg.validate
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report = run_validation(
        cfg.packet,
        tx_kind=cfg.tx_window,
        rx_kind=cfg.rx_window,
        trials=int(params.get("trials", 40)),
        seed=int(params.get("seed", 0)),
        perturb_c=params.get("perturb_c"),
    )
    report["config"] = cfg.to_dict()
    _write_json(out / "report.json", report)
    for c in report["checks"]:
        dev = "-" if c["deviation"] is None else "%.3e" % c["deviation"]
        print(f"{c['status']:>7}  {c['name']:<28} deviation={dev}")
    return 0 if report["all_passed"] else 2


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cfbmc",
        description="Circular multicarrier packet spectrum and leakage experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "leakage", "validate"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", metavar="PATH", help="JSON experiment config")
        sp.add_argument("--preset", metavar="NAME", help=f"one of {sorted(PRESETS)}")
        sp.add_argument("--out", metavar="DIR", default="out", help="output directory")
        sp.add_argument("--grid", metavar="SIZE", type=int, help="frequency grid size")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, args.preset, args.grid)
        runner = {"spectrum": cmd_spectrum, "leakage": cmd_leakage, "validate": cmd_validate}
        return runner[args.command](cfg, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
