"""Figure scripts against the committed sample sweep files (no simulator)."""

import os
import sys

import pytest

from lmg_dtc_figures import FigureSpec, SchemaError, read_sweep_file, render
from lmg_dtc_figures.curves import main as curves_main
from lmg_dtc_figures.dft_density import main as dft_main
from lmg_dtc_figures.heatmap import main as heatmap_main

SAMPLES = os.path.join(os.path.dirname(__file__), "..", "sample_data")


def sample(name):
    return os.path.join(SAMPLES, name)


def read_bytes(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_consumes_files_only():
    # the figure package must not pull in the simulator
    assert not any(mod == "lmg_dtc" or mod.startswith("lmg_dtc.") for mod in sys.modules)


def test_reader_parses_samples():
    data = read_sweep_file(sample("uniform_scan.csv"))
    assert data.mode == "uniform-scan"
    assert data.config["j"] == "0.5"
    assert len(data.rows) == 101
    line = read_sweep_file(sample("dft_line_quantum.csv"))
    assert line.mode == "dft-line"
    assert line.config["source"] == "quantum"


def test_curves_script(tmp_path):
    out = str(tmp_path / "curves.png")
    before = read_bytes(sample("uniform_scan.csv"))
    assert curves_main([sample("uniform_scan.csv"), "--out", out]) == 0
    assert os.path.getsize(out) > 0
    assert read_bytes(sample("uniform_scan.csv")) == before  # input untouched


@pytest.mark.parametrize("name", ["decorrelator_map.csv", "fotoc_map.csv"])
def test_heatmap_script_both_maps(tmp_path, name):
    out = str(tmp_path / f"{name}.png")
    assert heatmap_main([sample(name), "--out", out]) == 0
    assert os.path.getsize(out) > 0


def test_heatmap_log_scale(tmp_path):
    out = str(tmp_path / "lg.png")
    assert heatmap_main([sample("decorrelator_map.csv"), "--out", out, "--scale", "log"]) == 0
    assert os.path.getsize(out) > 0


def test_dft_density_two_panel(tmp_path):
    out = str(tmp_path / "density.png")
    code = dft_main([sample("dft_line_semiclassical.csv"), sample("dft_line_quantum.csv"), "--out", out])
    assert code == 0
    assert os.path.getsize(out) > 0


def test_rendering_is_idempotent(tmp_path):
    out = str(tmp_path / "again.png")
    spec = FigureSpec(inputs=[sample("fotoc_map.csv")], kind="heatmap", out=out)
    render(spec)
    first = read_bytes(out)
    render(spec)
    assert read_bytes(out) == first


def test_schema_mismatch_names_expected_mode(tmp_path, capsys):
    out = str(tmp_path / "x.png")
    assert curves_main([sample("decorrelator_map.csv"), "--out", out]) == 1
    err = capsys.readouterr().err
    assert "uniform-scan" in err and "decorrelator-map" in err
    assert not os.path.exists(out)

    assert heatmap_main([sample("uniform_scan.csv"), "--out", out]) == 1
    assert "decorrelator-map or fotoc-map" in capsys.readouterr().err

    assert dft_main([sample("fotoc_map.csv"), "--out", out]) == 1
    assert "dft-line" in capsys.readouterr().err


def test_garbage_input_rejected(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("this,is,not\na,sweep,file\n")
    assert heatmap_main([str(bad), "--out", str(tmp_path / "x.png")]) == 1
    assert "match no sweep mode" in capsys.readouterr().err


def test_single_row_heatmap_is_valid(tmp_path):
    # degenerate one-pixel map
    tiny = tmp_path / "tiny.csv"
    tiny.write_text("# config: mode=decorrelator-map\nh1,h2,D_avg\n0.5,0.5,0.003\n")
    out = str(tmp_path / "tiny.png")
    assert heatmap_main([str(tiny), "--out", out]) == 0
    assert os.path.getsize(out) > 0


def test_a10_acceptance(tmp_path, capsys):
    """Regenerate all four images from committed samples; mismatch errors declared."""
    outputs = {
        "curves": curves_main([sample("uniform_scan.csv"), "--out", str(tmp_path / "a_curves.png")]),
        "heatmap-d": heatmap_main([sample("decorrelator_map.csv"), "--out", str(tmp_path / "a_dmap.png")]),
        "heatmap-f": heatmap_main([sample("fotoc_map.csv"), "--out", str(tmp_path / "a_fmap.png")]),
        "dft-two-panel": dft_main([sample("dft_line_semiclassical.csv"), sample("dft_line_quantum.csv"),
                                   "--out", str(tmp_path / "a_dft.png")]),
    }
    mismatch = curves_main([sample("fotoc_map.csv"), "--out", str(tmp_path / "a_bad.png")])
    err = capsys.readouterr().err
    ok = all(code == 0 for code in outputs.values()) and mismatch == 1 and "uniform-scan" in err
    print(f"A10 {'PASS' if ok else 'FAIL'}  rendered {list(outputs)} from committed samples; "
          "schema mismatch names the expected mode")
    assert ok
