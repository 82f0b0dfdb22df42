import subprocess
import sys

import pytest

from icbench.cli import main


def run(args, stdin=None):
    return subprocess.run([sys.executable, "-m", "icbench", *args], input=stdin,
                          capture_output=True, text=True)


def test_fit_from_stdin():
    p = run(["fit", "--model", "gauss"], stdin="1 2\n3\n")
    assert p.returncode == 0
    out = dict(line.split(": ") for line in p.stdout.splitlines())
    assert out["n"] == "3" and out["location"] == "2" and out["variance"] == "0.666667"
    assert float(out["tic_hat"]) == pytest.approx(1.25)


def test_fit_laplace_file(tmp_path):
    f = tmp_path / "x.txt"
    f.write_text("1 2 6")
    p = run(["fit", "--model", "laplace", str(f)])
    assert p.returncode == 0
    assert "scale: 1.66667" in p.stdout and "tic_hat" not in p.stdout


def test_data_errors_exit_1(tmp_path, capsys):
    assert main(["fit", "--model", "gauss", str(tmp_path / "missing.txt")]) == 1
    f = tmp_path / "bad.txt"
    f.write_text("1 two 3")
    assert main(["fit", "--model", "gauss", str(f)]) == 1
    f.write_text("4 4 4")
    assert main(["fit", "--model", "laplace", str(f)]) == 1
    f.write_text("4")
    assert main(["fit", "--model", "laplace", str(f)]) == 1
    assert "error" in capsys.readouterr().err


def test_usage_errors_exit_2():
    assert run(["bogus"]).returncode == 2
    assert run(["table1", "--frobnicate"]).returncode == 2
    assert run(["bias", "--data", "gauss", "--model", "gauss", "--n", "25", "--order", "7"]).returncode == 2
    assert run(["bias", "--data", "gauss", "--model", "gauss", "--n", "3", "--reps", "10"]).returncode == 2


def test_bias_csv(capsys):
    assert main(["bias", "--data", "laplace", "--model", "gauss", "--n", "25", "--reps", "200",
                 "--boot-reps", "20", "--nb", "10", "--format", "csv", "--threads", "1"]) == 0
    rows = capsys.readouterr().out.splitlines()
    cn = [r for r in rows if ",cn," in r][0]
    assert cn.split(",")[4] == "4.04000"


def test_table2_csv_has_empty_tic_cells(capsys):
    assert main(["table2", "--sizes", "10", "--reps", "100", "--boot-reps", "10", "--nb", "5",
                 "--format", "csv", "--threads", "1"]) == 0
    tic = [r for r in capsys.readouterr().out.splitlines() if ",tic," in r]
    assert len(tic) == 2 and all(r.split(",")[4] == "" for r in tic)


@pytest.mark.parametrize("cmd", ["table1", "table2", "table3"])
def test_tables_byte_identical_across_threads(cmd, tmp_path):
    outs = []
    for threads in ("1", "4"):
        f = tmp_path / f"{cmd}-{threads}.md"
        p = run([cmd, "--sizes", "10,20", "--reps", "9000", "--boot-reps", "300", "--nb", "8",
                 "--seed", "17", "--threads", threads, "--out", str(f)])
        assert p.returncode == 0, p.stderr
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]
