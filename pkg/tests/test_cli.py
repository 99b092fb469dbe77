import json
import subprocess
import sys

import pytest

from gallai_ramsey.cli import run
from gallai_ramsey.graph import read_graph


def manifest_from(stderr: str) -> dict:
    lines = [ln for ln in stderr.splitlines() if ln.startswith("manifest: ")]
    assert len(lines) == 1
    return json.loads(lines[0][len("manifest: "):])


def test_construct_then_check(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert run(["construct", "--n", "2", "--k", "2", "--out", str(out)]) == 0
    capsys.readouterr()
    assert run(["check", "--in", str(out), "--cycle-length", "5"]) == 0
    captured = capsys.readouterr()
    assert "no rainbow triangle; no monochromatic C5" in captured.out
    man = manifest_from(captured.err)
    assert man["exitStatus"] == 0 and man["config"]["cycle_length"] == 5
    assert "version" in man and "wallSeconds" in man


def test_construct_output_reserializes_identically(tmp_path):
    out = tmp_path / "g.txt"
    run(["construct", "--n", "3", "--k", "2", "--out", str(out)])
    assert read_graph(out).to_text() == out.read_text()


def test_check_reports_refutation(tmp_path, capsys):
    path = tmp_path / "r.txt"
    path.write_text("3 3\n0 1 1\n0 2 2\n1 2 3\n")
    assert run(["check", "--in", str(path)]) == 1
    assert "rainbow triangle" in capsys.readouterr().out
    mono = tmp_path / "m.txt"
    mono.write_text("5 1\n" + "".join(f"{u} {v} 1\n" for u in range(5) for v in range(u + 1, 5)))
    assert run(["--json", "check", "--in", str(mono), "--cycle-length", "5"]) == 1
    rec = json.loads(capsys.readouterr().out)
    assert rec["monoCycle"]["kind"] == "cycle" and len(rec["monoCycle"]["vertices"]) == 5


def test_search_exhausted_and_witness(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert run(["search", "--order", "9", "--colors", "2", "--cycle-length", "5", "--budget", "600",
                "--certificate", str(cert)]) == 0
    assert "Exhausted" in capsys.readouterr().out
    assert json.loads(cert.read_text())["status"] == "Exhausted"
    assert run(["search", "--order", "8", "--colors", "2", "--cycle-length", "5", "--expect", "exhausted"]) == 1
    assert run(["search", "--order", "8", "--colors", "2", "--cycle-length", "5", "--expect", "witness"]) == 0


def test_search_gallai_tree_and_timeout(capsys):
    assert run(["search", "--order", "8", "--colors", "2", "--cycle-length", "5", "--gallai",
                "--method", "gallai-tree"]) == 0
    assert run(["search", "--order", "15", "--colors", "3", "--cycle-length", "5", "--budget", "0.05"]) == 2
    assert run(["search", "--order", "8", "--colors", "2", "--cycle-length", "5", "--method", "gallai-tree"]) == 64


def test_bounds_table(capsys):
    assert run(["bounds", "--n-range", "8:8", "--k-range", "3:3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    header, row = lines[0].split(), lines[1].split()
    assert dict(zip(header, row))["lower"] == "65"
    assert run(["bounds", "--n-range", "8:9", "--k-range", "3:3", "--csv"]) == 0
    assert capsys.readouterr().out.count("\n") == 3


def test_partition_and_tree(tmp_path, capsys):
    out = tmp_path / "g.txt"
    run(["construct", "--n", "2", "--k", "3", "--out", str(out)])
    capsys.readouterr()
    assert run(["partition", "--in", str(out)]) == 0
    assert "Gallai partition" in capsys.readouterr().out
    assert run(["partition", "--in", str(out), "--tree"]) == 0
    assert "23 nodes" in capsys.readouterr().out
    bad = tmp_path / "r.txt"
    bad.write_text("3 3\n0 1 1\n0 2 2\n1 2 3\n")
    assert run(["partition", "--in", str(bad)]) == 1


def test_verify_gr(capsys):
    assert run(["verify-gr", "--n", "2", "--k", "2", "--budget", "30"]) == 0
    assert "upper certified" in capsys.readouterr().out


def test_harness_commands_are_seeded(capsys):
    assert run(["--json", "harness", "lemma12", "--n", "3", "--t", "3", "--trials", "10", "--seed", "4"]) == 0
    first = json.loads(capsys.readouterr().out)
    run(["--json", "harness", "lemma12", "--n", "3", "--t", "3", "--trials", "10", "--seed", "4"])
    assert json.loads(capsys.readouterr().out) == first
    assert run(["harness", "lemma15", "--n", "2", "--trials", "5"]) == 0
    assert run(["harness", "lemma13", "--trials", "50"]) == 0
    assert run(["harness", "lemma12", "--n", "3"]) == 64


def test_manifest_to_file(tmp_path, capsys):
    man = tmp_path / "m.json"
    assert run(["--manifest", str(man), "bounds", "--n-range", "8:8", "--k-range", "3:4"]) == 0
    rec = json.loads(man.read_text())
    assert rec["config"]["n_range"] == [8, 8] and rec["exitStatus"] == 0
    assert "manifest" not in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["search", "--order", "3"],
        ["bounds", "--n-range", "8", "--k-range", "3:3"],
        ["search", "--order", "5", "--colors", "2", "--cycle-length", "2"],
        ["check", "--in", "/nonexistent/graph.txt"],
        ["construct", "--n", "1", "--k", "2", "--out", "x.txt"],
        ["nosuch"],
    ],
)
def test_usage_errors_exit_64(argv, capsys):
    assert run(argv) == 64
    assert "error" in capsys.readouterr().err


def test_console_entry_point_exit_status():
    proc = subprocess.run([sys.executable, "-m", "gallai_ramsey", "search", "--order", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 64
    assert "required" in proc.stderr
