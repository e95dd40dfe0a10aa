import hashlib
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from gzk import cli

NAMES = ["simulate", "blowup-sweep", "weighted-decay", "estimate-audit", "smoothing", "contraction"]


@pytest.fixture
def out_root(tmp_path, monkeypatch):
    root = tmp_path / "runs"
    monkeypatch.setenv(cli.OUTPUT_ROOT_ENV, str(root))
    return root


def write(tmp_path, text, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return p


ZERO = """schema_version: 1
experiment: simulate
output: zero
grid: {n_axis: 16, box_len: 30.0}
solver: {T: 0.1, snapshot_stride: 5}
data: {kind: zero}
"""

SMALL_SIM = """schema_version: 1
experiment: simulate
output: small
seed: 3
grid: {n_axis: 16, box_len: 20.0}
solver: {T: 0.1, dt: 0.01, snapshot_stride: 5}
data: {kind: gaussian, amplitude: 0.1, width: 2.5}
"""


def test_listing_names_and_anchors(capsys):
    assert cli.main(["list-experiments"]) == 0
    text = capsys.readouterr().out
    for name in NAMES:
        assert f"\n{name}\n" in text + "\n"
    assert text.count("anchor:") == 6
    assert "listing v1" in text


def test_listing_stable():
    assert cli.listing() == cli.listing()


def test_zero_simulate(tmp_path, out_root):
    assert cli.run(write(tmp_path, ZERO)) == 0
    outdir = out_root / "zero"
    side = json.loads((outdir / "u.json").read_text())
    data = np.fromfile(outdir / "u.f64", dtype="<f8").reshape(side["shape"])
    assert side["shape"] == [len(side["times"]), 16, 16, 16]
    assert np.all(data == 0)
    report = json.loads((outdir / "report.json").read_text())
    assert report["verdict"] == "PASS"


def test_missing_n_axis_names_field(tmp_path, out_root, capsys):
    cfg = write(tmp_path, ZERO.replace("n_axis: 16, ", ""))
    assert cli.run(cfg) == 2
    err = capsys.readouterr().err
    assert "grid.n_axis" in err and "line 4" in err


def test_unknown_field_rejected(tmp_path, out_root, capsys):
    cfg = write(tmp_path, ZERO.replace("T: 0.1", "T: 0.1, dtt: 0.2"))
    assert cli.run(cfg) == 2
    assert "solver.dtt" in capsys.readouterr().err


@pytest.mark.parametrize("text,field", [
    (ZERO.replace("n_axis: 16", "n_axis: 15"), "grid.n_axis"),
    (ZERO.replace("kind: zero", "kind: noise"), "data.kind"),
    (ZERO.replace("T: 0.1", "T: fast"), "solver.T"),
    (ZERO.replace("schema_version: 1", "schema_version: 9"), "schema_version"),
    (ZERO.replace("experiment: simulate", "experiment: dance"), "experiment"),
])
def test_invalid_values(tmp_path, out_root, capsys, text, field):
    assert cli.run(write(tmp_path, text)) == 2
    assert field in capsys.readouterr().err


def test_missing_file(tmp_path, out_root):
    assert cli.run(tmp_path / "absent.yaml") == 2


def test_solver_error_exit_code(tmp_path, out_root, capsys):
    text = SMALL_SIM.replace("dt: 0.01", "dt: 0.03")  # does not divide T
    assert cli.run(write(tmp_path, text)) == 2
    manifest = json.loads((out_root / "small" / "manifest.json").read_text())
    assert manifest["verdict"] == "ERROR"


def test_deterministic_tables(tmp_path, monkeypatch):
    cfg = write(tmp_path, SMALL_SIM)
    blobs = []
    for i in range(2):
        monkeypatch.setenv(cli.OUTPUT_ROOT_ENV, str(tmp_path / f"r{i}"))
        assert cli.run(cfg) == 0
        d = tmp_path / f"r{i}" / "small"
        blobs.append(((d / "invariants.csv").read_bytes(), (d / "u.f64").read_bytes()))
    assert blobs[0] == blobs[1]


def test_manifest_complete(tmp_path, out_root):
    assert cli.run(write(tmp_path, SMALL_SIM)) == 0
    outdir = out_root / "small"
    manifest = json.loads((outdir / "manifest.json").read_text())
    listed = {e["file"]: e for e in manifest["outputs"]}
    written = {p.name for p in outdir.iterdir()} - {"manifest.json"}
    assert set(listed) == written
    for name, e in listed.items():
        blob = (outdir / name).read_bytes()
        assert e["sha256"] == hashlib.sha256(blob).hexdigest()
        assert e["bytes"] == len(blob)
    assert manifest["config"]["seed"] == 3
    assert manifest["defaults"]["grid"] == {"n_axis": 64, "box_len": 30.0}
    assert manifest["defaults"]["probe"]["delta"] == "4 * spacing"
    assert manifest["artifact_version"]
    assert manifest["wall_time_s"] >= 0


def test_invariants_table_header(tmp_path, out_root):
    cli.run(write(tmp_path, SMALL_SIM))
    lines = (out_root / "small" / "invariants.csv").read_text().splitlines()
    assert lines[0] == "t,mass,mean,hamiltonian"
    assert len(lines) == 4  # t = 0, 0.05, 0.1


def test_blowup_sweep_table(tmp_path, out_root):
    text = """schema_version: 1
experiment: blowup-sweep
output: sweep
grid: {n_axis: 32, box_len: 30.0}
data: {kind: blowup, j_max: 1, k_max: 1}
"""
    rc = cli.run(write(tmp_path, text))
    assert rc in (0, 1)
    lines = (out_root / "sweep" / "sweep.csv").read_text().splitlines()
    assert lines[0] == "t,score,is_armed_rational"
    rows = [r.split(",") for r in lines[1:]]
    assert any(r[2] == "true" and float(r[0]) == 1.0 for r in rows)
    report = json.loads((out_root / "sweep" / "report.json").read_text())
    assert report["verdict"] == ("PASS" if rc == 0 else "FAIL")


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "gzk", "list-experiments"],
                         capture_output=True, text=True, check=True)
    assert res.stdout == cli.listing() + "\n"


@pytest.mark.parametrize("path", sorted(Path(__file__).parent.parent.joinpath("configs").glob("*.yaml")),
                         ids=lambda p: p.name)
def test_shipped_configs_parse(path):
    cfg = cli.load_config(path)
    assert cfg.experiment in NAMES
