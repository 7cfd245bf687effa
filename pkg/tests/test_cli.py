import csv
import io
import json
import subprocess
import sys

import pytest

from weylmul.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, expected", [
    (["mul", "D", "x"], "1 + x*D"),
    (["mul", "0", "x*D"], "0"),
    (["reflect", "x"], "D"),
    (["reflect", "--inverse", "D"], "x"),
    (["reflect", "x*D"], "-1 - x*D"),
    (["--field", "fp:7", "mul", "3*D", "x"], "3 + 3*x*D"),
    (["mul", "--field", "fp:7", "3*D", "x"], "3 + 3*x*D"),
])
def test_spec_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_algorithms_agree(capsys):
    left = "3*x^5*D^2 - x*D^7 + 1/2*x^2 + D^4"
    right = "x^6*D - 2*D^3 + x^3*D^5 - 7"
    outs = {run(capsys, "mul", "--algorithm", a, left, right)[1] for a in ("naive", "fast", "auto")}
    assert len(outs) == 1


def test_exit_codes(capsys):
    assert run(capsys, "mul", "D*x", "x")[0] == 2
    assert run(capsys, "mul", "--field", "fp:91", "x", "x")[0] == 2
    code, _, err = run(capsys, "--field", "fp:5", "mul", "--algorithm", "fast", "x^9*D^9", "x^9*D^9")
    assert code == 3 and "fp:5" in err


def test_file_and_json_inputs(capsys, tmp_path):
    code, out, _ = run(capsys, "mul", "--json", "D", "x")
    assert json.loads(out) == {"field": "rational", "terms": [[0, 0, "1"], [1, 1, "1"]]}
    jfile = tmp_path / "op.json"
    jfile.write_text(out)
    tfile = tmp_path / "op.txt"
    tfile.write_text("x\n")
    assert run(capsys, "mul", str(jfile), str(tfile))[1].strip() == "2*x + x^2*D"
    target = tmp_path / "out.txt"
    assert run(capsys, "reflect", "--output", str(target), "x")[0] == 0
    assert target.read_text() == "D\n"
    assert run(capsys, "mul", "--field", "fp:7", str(jfile), "x")[0] == 2


def test_verify_passes_and_is_deterministic(capsys):
    argv = ["verify", "--seed", "7", "--trials", "3", "--profiles", "5x5,3x8"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0 and first == second
    assert first.rstrip().endswith("PASS")


def test_verify_reports_injected_fault(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "3", "--trials", "2", "--profiles", "4x4", "--inject-fault")
    assert code == 1
    assert "FAIL" in out
    assert "reproducer: weylmul verify --seed 3" in out and "--profiles 4x4" in out


def test_bench_csv(capsys, tmp_path):
    target = tmp_path / "bench.csv"
    code, _, _ = run(capsys, "bench", "--grid", "8x4,16x4", "--reps", "3", "--output", str(target))
    assert code == 0
    rows = list(csv.reader(io.StringIO(target.read_text())))
    assert rows[0] == ["algorithm", "d", "r", "field", "reps", "median_ns"]
    assert [r[0] for r in rows[1:]] == ["naive", "naive", "fast", "fast"]
    assert all(int(r[4]) == 3 and int(r[5]) > 0 for r in rows[1:])
    assert run(capsys, "bench", "--reps", "2", "--grid", "8x4")[0] == 2
    assert run(capsys, "bench", "--field", "fp:17", "--grid", "8x4", "--algorithms", "fast")[0] == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "weylmul", "mul", "D", "x"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "1 + x*D\n"
