import numpy as np
import pytest

from homwell_plots import FrameManifest, ManifestError, load_grid, load_table

from conftest import STATS, write_grid, write_manifest, write_psep


def test_manifest_round_trip(scenario_dir):
    manifest = FrameManifest.load(scenario_dir / "manifest.csv")
    assert manifest.times() == [0.0, 0.25, 0.5]
    assert manifest.statistics_tags() == list(STATS)
    assert len(manifest.frames_for("boson")) == 3
    entry = manifest.entry(0.25, "fermion")
    assert entry.path.name == "frame_0001_fermion.csv"


def test_manifest_missing_file(tmp_path):
    out = tmp_path / "s"
    out.mkdir()
    manifest_path = write_manifest(out, [0.0, 0.5])
    (out / "frame_0001_fermion.csv").unlink()
    with pytest.raises(ManifestError, match="missing file"):
        FrameManifest.load(manifest_path)


def test_manifest_time_order(tmp_path):
    out = tmp_path / "s"
    out.mkdir()
    write_manifest(out, [0.0, 0.5])
    manifest = out / "manifest.csv"
    body = manifest.read_text().replace("1,0.5,boson", "1,0.0,boson")
    manifest.write_text(body)
    with pytest.raises(ManifestError, match="strictly increasing"):
        FrameManifest.load(manifest)


def test_manifest_unknown_entry(scenario_dir):
    manifest = FrameManifest.load(scenario_dir / "manifest.csv")
    with pytest.raises(ManifestError):
        manifest.entry(0.33, "boson")


def test_load_grid_layout(tmp_path):
    path = write_grid(tmp_path / "g.csv", 0.25, "boson", n=17)
    frame = load_grid(path)
    assert frame.x1.shape == (17,) and frame.x2.shape == (17,)
    assert frame.values.shape == (17, 17)
    assert frame.header["statistics"] == "boson"
    assert float(frame.header["tau"]) == 0.25
    assert np.all(frame.values >= 0.0)


def test_load_table(tmp_path):
    path = write_psep(tmp_path / "p.csv", 0.1)
    table = load_table(path)
    assert set(table.columns) == {"r", "boson", "fermion", "distinguishable"}
    assert float(table.header["tau"]) == 0.1
    assert table["r"].shape == (101,)


def test_load_empty_table(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("# name=x\nr,boson,fermion,distinguishable\n")
    with pytest.raises(ValueError, match="no rows"):
        load_table(path)
