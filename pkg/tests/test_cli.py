import json
from pathlib import Path

import numpy as np
import pytest

from schmidtgen.circuit import Circuit, simulate
from schmidtgen.cli import cli_main
from schmidtgen.ensemble import read_histogram_csv

GRAPHS = Path(__file__).resolve().parent.parent / "graphs"


def test_gen_writes_normalised_state(tmp_path):
    out = tmp_path / "state.json"
    circ = tmp_path / "circ.json"
    assert cli_main(["gen", "--qubits", "4", "--split", "2:2", "--seed", "7", "--out", str(out),
                     "--circuit", str(circ)]) == 0
    d = json.loads(out.read_text())
    psi = np.array(d["amplitudes"])
    assert d["n_qubits"] == 4 and psi.shape == (16,)
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-12
    np.testing.assert_allclose(simulate(Circuit.from_json(circ.read_text())), psi, atol=1e-15)


def test_gen_explicit_coefficients(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert cli_main(["gen", "--split", "1:1", "--coeffs", "1,1", "--out", str(out)]) == 0
    assert "entropy 1.0000000000" in capsys.readouterr().out


def test_gen_is_deterministic(capsys):
    cli_main(["gen", "--split", "1:2", "--seed", "0x10"])
    a = capsys.readouterr().out
    cli_main(["gen", "--split", "1:2", "--seed", "16"])
    assert capsys.readouterr().out == a


def test_graph_verify(capsys):
    assert cli_main(["graph", "--in", str(GRAPHS / "star8.txt"), "--seed", "7", "--verify", "--random-basis"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1 + 7 + 1
    assert float(lines[-1].split()[-1]) < 1e-9


def test_ensemble_pair_count(tmp_path, capsys):
    hist = tmp_path / "out.csv"
    stats_path = tmp_path / "stats.json"
    assert cli_main(["ensemble", "--graph", str(GRAPHS / "star5.txt"), "--count", "1000", "--fixed-coeffs",
                     "--seed", "7", "--hist", str(hist), "--stats", str(stats_path)]) == 0
    rows = read_histogram_csv(hist.read_text())
    assert len(rows) == 20 and sum(r.count for r in rows) == 499500
    assert json.loads(stats_path.read_text())["n_angles"] == 499500


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--split", "2x2"],
        ["gen", "--qubits", "3", "--split", "2:2"],
        ["gen", "--split", "1:1", "--coeffs", "1,1,1"],
        ["gen", "--seed", "-4", "--split", "1:1"],
        ["graph", "--in", "/nonexistent/graph.txt"],
        ["ensemble", "--split", "1:1", "--count", "0"],
        ["ensemble", "--graph", "x", "--split", "1:1"],
        ["frobnicate"],
        ["gen", "--entropy-base", "10", "--split", "1:1"],
    ],
)
def test_invalid_input_exits_one(argv, capsys):
    assert cli_main(argv) == 1
    assert capsys.readouterr().err


def test_bad_graph_file_reports_line(tmp_path, capsys):
    p = tmp_path / "tri.txt"
    p.write_text("1 2 0.5\n2 3 0.5\n3 1 0.5\n")
    assert cli_main(["graph", "--in", str(p)]) == 1
    assert "line 3" in capsys.readouterr().err
