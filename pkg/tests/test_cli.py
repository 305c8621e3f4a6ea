import json

import pytest

from negsssp import cli
from negsssp.conf import settings

SHIFTED = """c potential shifted, no negative cycle
p sp 4 5
a 1 2 -2
a 2 3 3
a 3 4 -4
a 1 4 1
a 4 2 6
"""

PLANTED = """p sp 5 5
a 1 2 1
a 2 3 1
a 3 1 -5
a 4 1 2
a 3 5 3
"""

QUICK = ["--iters", "1", "--h3", "8"]

@pytest.fixture
def shifted(tmp_path):
    path = tmp_path / "shifted.gr"
    path.write_text(SHIFTED)
    return str(path)

@pytest.fixture
def planted(tmp_path):
    path = tmp_path / "planted.gr"
    path.write_text(PLANTED)
    return str(path)

@pytest.fixture
def one_probe(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text(json.dumps({"find_thresh_repeats": 1}))
    return str(path)

def run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr().out
    return status, out

def report(capsys, *argv):
    status, out = run(capsys, *argv)
    return status, json.loads(out)

def test_sssp_with_check(capsys, shifted):
    status, data = report(capsys, "sssp", shifted, "--check", "--seed", "7", *QUICK)
    assert status == cli.EXIT_OK
    assert data["distances"] == [0, -2, 1, -3]
    assert data["bellman_ford_agrees"] is True
    assert data["seed"] == 7
    assert data["params"]["run"]["iters"] == 1
    assert data["stats"]["per_tag"]["spmain"] == 1

def test_sssp_is_deterministic(capsys, shifted):
    first = run(capsys, "sssp", shifted, "--seed", "3", *QUICK)
    second = run(capsys, "sssp", shifted, "--seed", "3", *QUICK)
    assert first == second

def test_sssp_tsv(capsys, shifted):
    status, out = run(capsys, "sssp", shifted, "--format", "tsv", "--source", "2", *QUICK)
    assert status == cli.EXIT_OK
    assert out.splitlines() == ["1\tinf", "2\t0", "3\t3", "4\t-1"]

def test_sssp_error_on_negative_cycle(capsys, planted):
    status, data = report(capsys, "sssp", planted, "--expect-no-cycle", "--retries", "1", "--check", *QUICK)
    assert status == cli.EXIT_ERROR
    assert data["error"] is True
    assert data["retries"] == 1
    assert data["bellman_ford_agrees"] is True

def test_solve_reports_cycle(capsys, planted, one_probe):
    status, data = report(capsys, "solve", planted, "--check", "--config", one_probe, *QUICK)
    assert status == cli.EXIT_OK
    assert data["weight"] == -3
    assert sorted(data["cycle"][:-1]) == [1, 2, 3]
    assert sorted(data["edges"]) == [1, 2, 3]
    assert data["verified"] is True
    assert settings.find_thresh_repeats == 0

def test_solve_reports_distances(capsys, shifted, one_probe):
    status, data = report(capsys, "solve", shifted, "--config", one_probe, *QUICK)
    assert status == cli.EXIT_OK
    assert data["distances"] == [0, -2, 1, -3]

def test_scc(capsys, planted):
    status, data = report(capsys, "scc", planted)
    assert status == cli.EXIT_OK
    assert data["check"] == "ok"
    assert data["components"] == 3
    assert data["condensation_edges"] == 2
    labels = dict(data["labels"])
    assert labels[1] == labels[2] == labels[3]
    assert labels[4] > labels[1] > labels[5]

def test_ldd(capsys, shifted):
    status, data = report(capsys, "ldd", shifted, "--d", "3")
    assert status == cli.EXIT_OK
    assert data["verification"] == {"verdict": "ok", "method": "all-pairs", "violations": []}
    assert all(1 <= e <= 5 for e in data["erem"])
    assert data["removed"] == len(data["erem"])

def test_check(capsys, shifted):
    status, data = report(capsys, "check", shifted, *QUICK)
    assert status == cli.EXIT_OK
    assert data["checks"] == {"sssp": True, "solve": True, "scc": True, "ldd": True}
    assert data["negative_cycle"] is False

def test_gen_to_file(capsys, tmp_path):
    path = str(tmp_path / "g.gr")
    status, data = report(capsys, "gen", "--n", "7", "--p", "0.4", "--wmin", "-3", "--wmax", "8",
                          "--no-negative-cycle", "--seed", "4", "-o", path)
    assert status == cli.EXIT_OK
    assert data["n"] == 7 and data["negative_cycle"] is False
    status, data = report(capsys, "scc", path)
    assert status == cli.EXIT_OK

def test_gen_planted_to_stdout(capsys):
    status, out = run(capsys, "gen", "--n", "6", "--wmin", "0", "--plant-negative-cycle", "--seed", "2")
    assert status == cli.EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "c generated by negsssp gen --seed 2"
    assert lines[1].startswith("p sp 6 ")

def test_gen_is_reproducible(capsys):
    assert run(capsys, "gen", "--seed", "5") == run(capsys, "gen", "--seed", "5")

@pytest.mark.parametrize("argv", [
    ["sssp", "/nonexistent/graph.gr"],
    ["sssp", "{graph}", "--source", "9"],
    ["sssp", "{graph}", "--seed", "-1"],
    ["sssp", "{graph}", "--k", "1"],
    ["ldd", "{graph}", "--d", "0"],
    ["gen", "--plant-negative-cycle", "--n", "2", "--cycle-length", "3"],
    ["scc", "{broken}"],
])
def test_usage_and_io_errors(capsys, tmp_path, shifted, argv):
    broken = tmp_path / "broken.gr"
    broken.write_text("p sp 2 1\na 1 5 2\n")
    argv = [a.format(graph=shifted, broken=str(broken)) for a in argv]
    status, out = run(capsys, *argv)
    assert status == cli.EXIT_IO
    assert out == ""

def test_sssp_report_schema(capsys, shifted):
    status, data = report(capsys, "sssp", shifted, "--seed", "11", *QUICK)
    assert status == cli.EXIT_OK
    assert {"distances", "error", "reason", "retries", "seed", "stats", "params"} <= set(data)
    assert data["error"] is False and data["retries"] == 0
    assert data["stats"]["calls"] >= 1

def test_sssp_expect_no_cycle(capsys, shifted):
    status, data = report(capsys, "sssp", shifted, "--expect-no-cycle", *QUICK)
    assert status == cli.EXIT_OK
    assert data["distances"] == [0, -2, 1, -3]

def test_undecodable_input_is_an_io_error(capsys, tmp_path):
    path = tmp_path / "binary.gr"
    path.write_bytes(b"\xff\xfe\x00p sp 2 1\n")
    status, out = run(capsys, "sssp", str(path))
    assert status == cli.EXIT_IO
    assert out == ""

def test_unknown_setting_in_config(capsys, tmp_path, shifted):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"threds": 2}))
    assert run(capsys, "sssp", shifted, "--config", str(path))[0] == cli.EXIT_IO

@pytest.mark.parametrize("argv", [[], ["sssp"], ["solve", "g.gr", "--format", "xml"], ["gen", "--plant-negative-cycle", "--no-negative-cycle"]])
def test_argument_errors_exit_with_usage_status(argv):
    with pytest.raises(SystemExit) as caught:
        cli.main(argv)
    assert caught.value.code == cli.EXIT_IO
