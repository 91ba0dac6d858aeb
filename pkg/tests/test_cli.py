import json
import subprocess
import sys

import pytest

from lorenzhole.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_seq_canon(capsys):
    code, out, _ = run(capsys, "seq", "canon", "1(01)")
    assert code == 0
    doc = json.loads(out)
    assert doc["canonical"] == "(10)" and doc["schema"] == 1
    code, out, _ = run(capsys, "seq", "canon", "0(00)", "--format", "text")
    assert out == "(0)\n"


def test_survivor_example(capsys):
    code, out, _ = run(capsys, "survivor", "--a", "0(111001011110)", "--b", "1(0101111010)")
    assert code == 0
    doc = json.loads(out)
    assert (doc["s"], doc["t"]) == ("(011)", "(110)")


def test_entropy_full_shift(capsys):
    code, out, _ = run(capsys, "entropy")
    assert code == 0
    assert abs(float(json.loads(out)["entropy_nats"]) - 0.693147180559945) < 1e-12


def test_invalid_literal_exit_2(capsys):
    code, out, _ = run(capsys, "seq", "canon", "1(2)")
    assert code == 2
    assert json.loads(out)["error"]["code"]


def test_text_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "seq", "canon", "(", "--format", "text")
    assert code == 2 and out == "" and err.startswith("error [")


def test_usage_error(capsys):
    code, out, _ = run(capsys, "survivor", "--kplus", "1(0)")
    assert code == 2 and json.loads(out)["error"]["code"] == "usage"


def test_non_periodic_bound_is_validation(capsys):
    code, out, _ = run(capsys, "plateau", "--a", "c", "--b", "1(0)")
    assert code == 2 and json.loads(out)["error"]["code"] == "non_periodic_bound"


def test_computation_failure_exit_3(capsys, monkeypatch):
    from lorenzhole import cli
    from lorenzhole.errors import IterationCapExceeded

    def boom(args):
        raise IterationCapExceeded("no fixed point", [])

    monkeypatch.setitem(cli.COMMANDS, "survivor", boom)
    code, out, _ = run(capsys, "survivor", "--a", "(011)", "--b", "(10)")
    assert code == 3 and json.loads(out)["error"]["code"] == "iteration_cap_exceeded"


@pytest.mark.parametrize(
    "argv",
    [
        ["plateau", "--a", "c", "--b", "(100)", "--kplus", "1(0)", "--kminus", "(011001)"],
        ["oracle", "--a", "(011)", "--b", "(10)"],
        ["staircase", "--beta", "golden", "--alpha", "sym", "--grid", "5"],
        ["simulate", "--beta", "golden", "--alpha", "sym", "--a", "0.45", "--b", "0.55", "--points", "500", "--iters", "50"],
    ],
)
def test_repeat_output_identical(argv):
    cmd = [sys.executable, "-m", "lorenzhole.cli", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_out_file(tmp_path, capsys):
    target = tmp_path / "o.json"
    assert main(["bifurcation", "--a", "(011)", "--b", "(10)", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["in_bifurcation_set"] is True
