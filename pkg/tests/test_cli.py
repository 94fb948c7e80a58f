import json
import subprocess
import sys

import pytest

from splitgrass.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_ts(text):
    doc = json.loads(text)
    doc.pop("timestamp")
    return doc


def test_secant_json(capsys):
    code, out, _ = run(capsys, "secant", "--variety", "grassmann", "--k", "2", "--N", "6", "--s", "3", "--trials", "4")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "secant"
    (row,) = doc["results"]
    assert (row["computed_proj_dim"], row["expected_proj_dim"], row["defect_observed"]) == (33, 34, 1)
    assert row["status"] == "defective (observed)"


def test_secant_reproducible(capsys):
    argv = ["secant", "--variety", "split", "--n", "2:3", "--d", "2", "--s", "1:2", "--trials", "3", "--seed", "5"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert strip_ts(a) == strip_ts(b)
    a_lines = [l for l in a.splitlines() if '"timestamp"' not in l]
    b_lines = [l for l in b.splitlines() if '"timestamp"' not in l]
    assert a_lines == b_lines
    assert len(json.loads(a)["results"]) == 4


def test_secant_csv_and_text(capsys):
    code, out, _ = run(capsys, "secant", "--variety", "veronese", "--n", "2", "--d", "3", "--s", "2", "--trials", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("variety,n,d,k,N,s,")
    assert lines[1].startswith("veronese,2,3,,,2,")
    code, out, _ = run(capsys, "secant", "--variety", "veronese", "--n", "2", "--d", "3", "--s", "2", "--trials", "2", "--format", "text")
    assert "Veronese(2,3) s=2: computed 5" in out


def test_identify_poly(capsys):
    code, out, _ = run(capsys, "identify", "--poly", "x1*(x0-x1)*(x1-x2)")
    assert code == 0
    (res,) = json.loads(out)["results"]
    assert res["pluecker_primitive"] == [0, 0, 0, 2, -1, 0, -4, 2, 0, 0]


def test_identify_pluecker(capsys):
    code, out, _ = run(capsys, "identify", "--pluecker", "[1,0,0,0,0,0,0,0,0,0]", "--format", "text")
    assert code == 0 and out.strip() == "x0^3"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "five-lines")
    assert code == 0
    assert out.strip().endswith("1/1 pass")
    code, out, _ = run(capsys, "verify", "minors-table", "--format", "json")
    assert json.loads(out)["results"][0]["verdict"] == "pass"


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "no-such-scenario"],
        ["secant", "--variety", "split", "--n", "2"],
        ["secant", "--variety", "split", "--n", "x", "--d", "2", "--s", "1"],
        ["identify", "--poly", "x0+"],
        ["identify", "--poly", "x0^2"],
        ["identify", "--pluecker", "[1,2]"],
        ["identify", "--n", "9", "--poly", "x0"],
        ["verify", "cubic-line", "--format", "csv"],
        ["secant", "--variety", "split", "--n", "2", "--d", "2", "--s", "1", "--field", "p:4"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_argparse_errors_exit_2(capsys):
    assert main(["secant", "--variety", "cone"]) == 2
    assert main([]) == 2
    assert main(["--help"]) == 0


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"variety": "split", "n": 3, "d": 2, "s": "1:2", "trials": 2, "seed": 9}))
    _, out, _ = run(capsys, "secant", "--config", str(cfg), "--seed", "4")
    doc = json.loads(out)
    assert doc["config"]["seed"] == 4 and doc["config"]["trials"] == 2
    assert [r["s"] for r in doc["results"]] == [1, 2]
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert main(["secant", "--config", str(bad)]) == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "o.json"
    assert main(["identify", "--poly", "x0^3", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["command"] == "identify"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "splitgrass", "verify", "cubic-line"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
