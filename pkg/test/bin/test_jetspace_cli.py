"""Tests for bin/jetspace.py - the command line: each subcommand end to end through main(argv), and the
exit statuses 0 (done), 1 (a red check) and 2 (bad config or arguments) as a caller of the script sees them.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from jetspace import build_parser, main

SCRIPT = Path(__file__).resolve().parents[2] / "bin" / "jetspace.py"


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_witt_poly_json(capsys):
    assert main(["witt-poly", "--n", "1", "--format", "json"]) == 0
    document = _json(capsys)
    assert document["op"] == "add"
    assert [poly["name"] for poly in document["polynomials"]] == ["S_0", "S_1"]
    assert document["header"]["p"] == 3
    terms = document["polynomials"][0]["terms"]
    assert sorted(tuple(term["monomial"]) for term in terms) == [("x0",), ("y0",)]


def test_witt_poly_text(capsys):
    assert main(["witt-poly", "--n", "0", "--op", "mul"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# jetspace: p=3 e=1 E=1,-3")
    assert lines[1].startswith("P_0 = ")


def test_ghost(capsys):
    assert main(["ghost", "--vector", "1,2,0"]) == 0
    assert capsys.readouterr().out.splitlines()[1:] == ["w_0 = 1", "w_1 = 7", "w_2 = 25"]


def test_ghost_inverse(capsys):
    assert main(["ghost", "--vector", "1,7,25", "--inverse", "--format", "json"]) == 0
    assert _json(capsys)["vector"] == ["1", "2", "0"]


def test_ghost_outside_the_image(capsys):
    assert main(["ghost", "--vector", "1,2", "--inverse"]) == 2
    assert capsys.readouterr().err.startswith("jetspace: ")


def test_lateral_readings(capsys):
    assert main(["lateral", "--n", "2", "--iterate", "1", "--format", "json"]) == 0
    document = _json(capsys)
    assert document["readings"] == {"b_1": False, "b_2": True}


def test_lateral_iterate_out_of_range(capsys):
    assert main(["lateral", "--n", "2", "--iterate", "2"]) == 2
    assert "need 1 ≤ i ≤ n − 1" in capsys.readouterr().err


def test_jet_coords(capsys):
    assert main(["jet-coords", "--n", "1", "--format", "json"]) == 0
    document = _json(capsys)
    assert len(document["p"]) == 2
    assert len(document["p_plus"]) == 1
    assert document["kernel_jets"] == ["p1"]
    # f* maps N_0A = O, which has no coordinates, into N_1A
    assert document["lateral_pullback"] == []


def test_jet_coords_lateral_pullback(capsys):
    assert main(["jet-coords", "--n", "2", "--format", "json"]) == 0
    document = _json(capsys)
    (pullback,) = document["lateral_pullback"]
    assert pullback.replace(" ", "") in {"p1**3+3*p2", "3*p2+p1**3"}


def test_certify_green(capsys):
    assert main(["group-law", "--law", "Gm{1}", "--op", "certify", "--D", "24"]) == 0
    captured = capsys.readouterr()
    assert "certify Gm{1} D=24" in captured.out
    assert "✓ certify Gm{1} D=24" in captured.err


def test_certify_red(capsys):
    assert main(["group-law", "--law", "Gm", "--D", "12"]) == 1
    assert "✗ certify Gm D=12" in capsys.readouterr().err


def test_kernel_law(capsys):
    assert main(["group-law", "--law", "Gm", "--op", "kernel", "--D", "6", "--format", "json"]) == 0
    law = _json(capsys)["law"]
    assert law["name"] == "N1(Gm)"
    assert law["D"] == 6


def test_logarithm_valuations(capsys):
    assert main(["group-law", "--law", "Gm", "--op", "log", "--D", "4", "--format", "json"]) == 0
    rows = _json(capsys)["coefficients"]
    assert [row["j"] for row in rows] == [1, 2, 3, 4]
    assert [row["valuation"] for row in rows] == [0, 0, -1, 0]


def test_missing_law_file(tmp_path, capsys):
    assert main(["group-law", "--law", str(tmp_path / "absent.json")]) == 2
    assert "cannot read law file" in capsys.readouterr().err


def test_verify_writes_report(tmp_path, capsys):
    path = tmp_path / "witt.json"
    assert main(["verify", "witt", "--n", "1", "--format", "json", "--report", str(path)]) == 0
    document = json.loads(path.read_text(encoding="utf-8"))
    assert document["green"] is True
    assert document["header"]["suites"] == ["witt"]
    assert capsys.readouterr().out == path.read_text(encoding="utf-8")


def test_verify_skipped_case_is_not_a_pass(tmp_path, capsys):
    catalog = tmp_path / "catalog.json5"
    catalog.write_text("{algebras: [{pi_power: 1}]}")
    argv = ["verify", "main", "--n", "1", "--algebras", str(catalog), "--size-limit", "2", "--format", "json"]
    assert main(argv) == 1
    captured = capsys.readouterr()
    document = json.loads(captured.out)
    assert document["green"] is False
    assert document["reports"][0]["checks"][0]["status"] == "skipped"
    assert "(skipped)" in captured.err


@pytest.mark.parametrize(
    "argv, message",
    [
        (["ghost", "--vector", "1", "--p", "4"], "not prime"),
        (["verify", "bogus"], "unknown suite"),
        (["witt-poly", "--n", "9"], "must satisfy"),
    ],
)
def test_bad_config_exits_2(argv, message, capsys):
    assert main(argv) == 2
    assert message in capsys.readouterr().err


def test_config_file_values(tmp_path, capsys):
    path = tmp_path / "run.json5"
    path.write_text("{base: {p: 5}, format: 'json'}")
    assert main(["ghost", "--vector", "1,1", "--config", str(path)]) == 0
    document = _json(capsys)
    assert document["header"]["p"] == 5
    assert document["ghost"] == ["1", "6"]


def test_bad_vector_is_a_usage_error():
    with pytest.raises(SystemExit) as raised:
        build_parser().parse_args(["ghost", "--vector", "1,x"])
    assert raised.value.code == 2


# ── as a script ──────────────────────────────────────────────────────────────


def run_script(tmp_path, *args: str) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, str(SCRIPT), *args], cwd=tmp_path, capture_output=True, text=True)


@pytest.mark.parametrize(
    "args, status",
    [
        (("ghost", "--vector", "1,2,0"), 0),
        (("group-law", "--law", "Gm", "--D", "12"), 1),
        (("ghost", "--vector", "1", "--p", "4"), 2),
        (("ghost",), 2),
    ],
)
def test_script_exit_status(tmp_path, args, status):
    assert run_script(tmp_path, *args).returncode == status


def test_script_reads_dotenv(tmp_path):
    (tmp_path / ".env").write_text("JETSPACE_P=5\n")
    result = run_script(tmp_path, "ghost", "--vector", "1,1")
    assert result.stdout.splitlines()[0].startswith("# jetspace: p=5 e=1")
