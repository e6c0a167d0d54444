"""Renders real preset artifacts produced by the cfbmc CLI (invoked as a
subprocess, the only coupling to the primary package) and checks the
lossless data round-trip through the renderer's readers/writers."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from cfbmc_plots import (
    load_spec,
    read_esd_csv,
    read_map_csv,
    read_signal_csv,
    render,
    write_esd_csv,
    write_map_csv,
    write_signal_csv,
)
from cfbmc_plots.render import SpecError, main


@pytest.fixture(scope="session")
def preset_outputs(tmp_path_factory):
    root = tmp_path_factory.mktemp("artifacts")
    for preset in ("fig2", "fig3", "fig5", "fig6"):
        cmd = "spectrum" if preset in ("fig2", "fig3") else "leakage"
        out = root / preset
        res = subprocess.run(
            [sys.executable, "-m", "cfbmc.cli", cmd, "--preset", preset, "--out", str(out)],
            capture_output=True,
            text=True,
        )
        assert res.returncode == 0, res.stderr
    return root


def _spec(tmp_path, name, **kw):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(kw))
    return path


def test_heatmap_panels_from_leakage_presets(preset_outputs, tmp_path):
    for preset in ("fig5", "fig6"):
        maps = sorted(str(p) for p in (preset_outputs / preset).glob("map_*.csv"))
        assert len(maps) == 9
        spec = _spec(
            tmp_path,
            f"heat_{preset}",
            kind="heatmap",
            inputs=maps,
            output=str(tmp_path / f"{preset}_panel.png"),
            db_clamp=[-60, 0],
        )
        assert main(["--spec", str(spec)]) == 0
        out = tmp_path / f"{preset}_panel.png"
        assert out.is_file() and out.stat().st_size > 10_000


def test_pulse_and_esd_overlays(preset_outputs, tmp_path):
    for preset in ("fig2", "fig3"):
        base = preset_outputs / preset
        pulses = sorted(str(p) for p in base.glob("pulse_l*.csv"))
        esds = sorted(str(p) for p in base.glob("esd_l*.csv"))
        assert len(pulses) == 6 and len(esds) == 6
        p_spec = _spec(
            tmp_path, f"pulses_{preset}",
            kind="pulses", inputs=pulses, output=str(tmp_path / f"{preset}_pulses.png"),
        )
        e_spec = _spec(
            tmp_path, f"esd_{preset}",
            kind="esd", inputs=esds, output=str(tmp_path / f"{preset}_esd.png"),
        )
        assert main(["--spec", str(p_spec)]) == 0
        assert main(["--spec", str(e_spec)]) == 0
        assert (tmp_path / f"{preset}_pulses.png").is_file()
        assert (tmp_path / f"{preset}_esd.png").is_file()


def test_window_figure(preset_outputs, tmp_path):
    base = preset_outputs / "fig6"
    spec = _spec(
        tmp_path, "windows",
        kind="windows",
        inputs=[str(base / "window_tx.csv"), str(base / "window_rx.csv")],
        output=str(tmp_path / "windows.png"),
    )
    assert main(["--spec", str(spec)]) == 0
    assert (tmp_path / "windows.png").is_file()


def test_signal_round_trip_is_lossless(preset_outputs, tmp_path):
    for name in ("pulse_l01.csv", "window_tx.csv"):
        src = preset_outputs / "fig2" / name
        n, re, im = read_signal_csv(src)
        dst = tmp_path / name
        write_signal_csv(dst, n, re, im)
        assert dst.read_bytes() == src.read_bytes()


def test_esd_round_trip_is_lossless(preset_outputs, tmp_path):
    src = preset_outputs / "fig3" / "esd_l03.csv"
    omega, db = read_esd_csv(src)
    dst = tmp_path / "esd.csv"
    write_esd_csv(dst, omega, db)
    assert dst.read_bytes() == src.read_bytes()


def test_map_round_trip_is_lossless(preset_outputs, tmp_path):
    for preset in ("fig5", "fig6"):
        src = sorted((preset_outputs / preset).glob("map_*.csv"))[0]
        gains, gains_db, meta = read_map_csv(src)
        assert meta["source"] == [8, 1]
        dst = tmp_path / f"{preset}_map.csv"
        write_map_csv(dst, gains, gains_db)
        assert dst.read_bytes() == src.read_bytes()


def test_missing_input_errors(tmp_path):
    spec = _spec(
        tmp_path, "missing",
        kind="esd", inputs=[str(tmp_path / "nope.csv")], output=str(tmp_path / "x.png"),
    )
    assert main(["--spec", str(spec)]) == 1


def test_empty_map_file_errors(tmp_path):
    empty = tmp_path / "empty_map.csv"
    empty.write_text("p,m,gain,gain_db\n")
    spec = _spec(
        tmp_path, "empty",
        kind="heatmap", inputs=[str(empty)], output=str(tmp_path / "x.png"),
    )
    assert main(["--spec", str(spec)]) == 1


def test_spec_validation(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "sculpture", "inputs": ["x"], "output": "y"}))
    with pytest.raises(SpecError):
        load_spec(bad)
    assert main(["--spec", str(bad)]) == 1
    assert main(["--spec", str(tmp_path / "definitely_absent.json")]) == 1


def test_single_esd_curve(preset_outputs, tmp_path):
    spec = _spec(
        tmp_path, "single",
        kind="esd",
        inputs=[str(preset_outputs / "fig2" / "esd_l01.csv")],
        output=str(tmp_path / "single.png"),
    )
    assert render(load_spec(spec)) == str(tmp_path / "single.png")
    assert (tmp_path / "single.png").is_file()
