"""Render cfbmc experiment artifacts into figures.

Consumes only the CLI's file formats: `n,re,im` signal dumps,
`omega,esd_db` spectrum curves, and `p,m,gain,gain_db` leakage maps with
their JSON sidecars.  A figure is described by a JSON spec:

    {
      "kind": "pulses" | "esd" | "windows" | "heatmap",
      "inputs": ["out/fig5/map_k08_l01_off0.csv", ...],
      "output": "fig5_panel.png",
      "db_clamp": [-60, 0],          # heatmap color range, optional
      "title": "..."                 # optional
    }

Parsing keeps the exact on-disk representation recoverable: every reader
has a writer that re-emits the parsed data byte-identically (the CLI
writes %.12e floats, which round-trip through binary doubles).

Usage: cfbmc-render --spec FILE   (exit 0 on success, 1 on any error)
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "FigureSpec",
    "load_spec",
    "read_signal_csv",
    "write_signal_csv",
    "read_esd_csv",
    "write_esd_csv",
    "read_map_csv",
    "write_map_csv",
    "render",
    "main",
]

FMT = "%.12e"
KINDS = ("pulses", "esd", "windows", "heatmap")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[str, ...]
    output: str
    db_clamp: tuple[float, float] = (-60.0, 0.0)
    title: str = ""
    meta: dict = field(default_factory=dict)


def load_spec(path) -> FigureSpec:
    try:
        d = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec {path}: {exc}") from exc
    kind = d.get("kind")
    if kind not in KINDS:
        raise SpecError(f"kind must be one of {KINDS}, got {kind!r}")
    inputs = tuple(d.get("inputs", ()))
    if not inputs:
        raise SpecError("spec lists no inputs")
    for p in inputs:
        if not Path(p).is_file():
            raise SpecError(f"input does not exist: {p}")
    if not d.get("output"):
        raise SpecError("spec needs an output image path")
    clamp = tuple(d.get("db_clamp", (-60.0, 0.0)))
    if len(clamp) != 2 or not clamp[0] < clamp[1]:
        raise SpecError(f"bad db_clamp {clamp}")
    return FigureSpec(kind, inputs, d["output"], clamp, d.get("title", ""))


def _read_table(path, header) -> np.ndarray:
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != header:
        raise SpecError(f"{path}: expected header {header!r}")
    if len(lines) < 2:
        raise SpecError(f"{path}: no data rows")
    try:
        rows = [[float(x) for x in ln.split(",")] for ln in lines[1:]]
    except ValueError as exc:
        raise SpecError(f"{path}: unparsable row ({exc})") from exc
    arr = np.asarray(rows)
    if arr.shape[1] != len(header.split(",")):
        raise SpecError(f"{path}: wrong column count")
    return arr


def read_signal_csv(path):
    """-> (n, re, im) from an `n,re,im` dump."""
    arr = _read_table(path, "n,re,im")
    return arr[:, 0].astype(int), arr[:, 1], arr[:, 2]


def write_signal_csv(path, n, re, im=None):
    im = np.zeros_like(re) if im is None else im
    with open(path, "w") as fh:
        fh.write("n,re,im\n")
        for i, a, b in zip(n, re, im):
            fh.write("%d,%s,%s\n" % (i, FMT % a, FMT % b))


def read_esd_csv(path):
    """-> (omega, esd_db)."""
    arr = _read_table(path, "omega,esd_db")
    return arr[:, 0], arr[:, 1]


def write_esd_csv(path, omega, esd_db):
    with open(path, "w") as fh:
        fh.write("omega,esd_db\n")
        for row in zip(omega, esd_db):
            fh.write(",".join(FMT % x for x in row) + "\n")


def read_map_csv(path):
    """-> (gains, gains_db, meta) with gains shaped (N, 2M).

    The sidecar JSON (same stem, .json) supplies the source position and
    offsets when present.
    """
    arr = _read_table(path, "p,m,gain,gain_db")
    p = arr[:, 0].astype(int)
    m = arr[:, 1].astype(int)
    N, cols = p.max() + 1, m.max()
    if len(arr) != N * cols:
        raise SpecError(f"{path}: incomplete map grid")
    gains = np.zeros((N, cols))
    gains_db = np.zeros((N, cols))
    gains[p, m - 1] = arr[:, 2]
    gains_db[p, m - 1] = arr[:, 3]
    meta = {}
    sidecar = Path(path).with_suffix(".json")
    if sidecar.is_file():
        meta = json.loads(sidecar.read_text())
    return gains, gains_db, meta


def write_map_csv(path, gains, gains_db):
    N, cols = gains.shape
    with open(path, "w") as fh:
        fh.write("p,m,gain,gain_db\n")
        for p in range(N):
            for m in range(1, cols + 1):
                fh.write(
                    "%d,%d,%s,%s\n"
                    % (p, m, FMT % gains[p, m - 1], FMT % gains_db[p, m - 1])
                )


def _render_curves(spec: FigureSpec, reader, xlabel, ylabel, magnitude=False):
    fig, ax = plt.subplots(figsize=(8, 5))
    for path in spec.inputs:
        if reader is read_signal_csv:
            n, re, im = reader(path)
            y = np.hypot(re, im) if magnitude else re
            ax.plot(n, y, lw=1.0, label=Path(path).stem)
        else:
            x, y = reader(path)
            ax.plot(x, y, lw=0.9, label=Path(path).stem)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(spec.title or spec.kind)
    if len(spec.inputs) <= 12:
        ax.legend(fontsize=7)
    return fig


def _render_heatmap(spec: FigureSpec):
    n = len(spec.inputs)
    ncols = 3 if n > 2 else n
    nrows = int(np.ceil(n / ncols))
    fig, axes = plt.subplots(nrows, ncols, figsize=(4 * ncols, 3.3 * nrows), squeeze=False)
    lo, hi = spec.db_clamp
    im = None
    for ax in axes.ravel()[n:]:
        ax.set_visible(False)
    for path, ax in zip(spec.inputs, axes.ravel()):
        gains, gains_db, meta = read_map_csv(path)
        N, cols = gains.shape
        im = ax.imshow(
            np.clip(gains_db, lo, hi),
            origin="lower",
            aspect="auto",
            vmin=lo,
            vmax=hi,
            extent=(0.5, cols + 0.5, -0.5, N - 0.5),
        )
        title = Path(path).stem
        if meta.get("source"):
            k, l = meta["source"]
            ax.plot(l, k, "w*", markersize=11)
            off = meta.get("offsets", {})
            title = f"src ({k},{l})  dn={off.get('delta_n', '?')} df={off.get('delta_f', '?'):g}"
        ax.set_title(title, fontsize=8)
        ax.set_xlabel("time slot m")
        ax.set_ylabel("subcarrier p")
    fig.suptitle(spec.title or "leakage gain (dB)")
    fig.colorbar(im, ax=axes, shrink=0.8, label="dB")
    return fig


def render(spec: FigureSpec) -> str:
    """Render the figure described by `spec`; returns the output path."""
    if spec.kind == "pulses":
        fig = _render_curves(spec, read_signal_csv, "n", "|x[n]|", magnitude=True)
    elif spec.kind == "windows":
        fig = _render_curves(spec, read_signal_csv, "n", "tap value")
    elif spec.kind == "esd":
        fig = _render_curves(spec, read_esd_csv, "rad/sample", "energy density (dB)")
    else:
        fig = _render_heatmap(spec)
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=110)
    plt.close(fig)
    return str(out)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="cfbmc-render", description=__doc__)
    parser.add_argument("--spec", required=True, metavar="FILE", help="figure spec JSON")
    args = parser.parse_args(argv)
    try:
        out = render(load_spec(args.spec))
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
