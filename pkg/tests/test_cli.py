import json
import subprocess
import sys

import pytest

from test_engine import _hub_graph
from tinsep.cli import main, survey
from tinsep.formats import to_edgelist, to_graph6
from tinsep.generators import complete, complete_bipartite, cycle, path


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return put


def test_check(capsys, write):
    src = write("g.g6", "\n".join(to_graph6(G) for G in (cycle(6), complete_bipartite(2, 3), path(6))) + "\n")
    code, out, _ = run(capsys, ["check", src, "--t", "3"])
    assert code == 0
    rows = json.loads(out)["results"]
    assert [r["p6_free"] for r in rows] == [True, True, False]
    assert [r["k2t_free"] for r in rows] == [True, False, True]
    assert sorted(rows[1]["k2t_witness"]) == [0, 1, 2, 3, 4]
    assert len(rows[2]["p6_witness"]) == 6


def test_check_reads_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, ["check"], stdin=to_graph6(cycle(4)) + "\n", monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["results"][0]["k2t_free"] is False


def test_exact_csv(capsys, write):
    src = write("c4.txt", to_edgelist(cycle(4)))
    code, out, _ = run(capsys, ["exact", src, "--format", "edgelist", "--out", "csv"])
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "input,n,tin,tw" and row.endswith(",4,2,2")


def test_decompose(capsys, write):
    src = write("k5.g6", to_graph6(complete(5)) + "\n")
    for oracle in ("neighbourhood", "combined", "exact"):
        code, out, _ = run(capsys, ["decompose", src, "--oracle", oracle])
        row = json.loads(out)["results"][0]
        assert code == 0 and row["bags"] == 1 and row["alpha_width"] == 1 and row["valid"]


def test_separate(capsys, write):
    src = write("p4.g6", to_graph6(path(4)) + "\n")
    code, out, _ = run(capsys, ["separate", src, "--a", "0", "--b", "3"])
    row = json.loads(out)["results"][0]
    assert code == 0 and row["separator"] == [1] and row["reverified"]


def test_balance(capsys, write):
    src = write("c6.g6", to_graph6(cycle(6)) + "\n")
    for method in ("neighbourhood", "combined"):
        code, out, _ = run(capsys, ["balance", src, "--method", method, "--weights", "[1, 1, 1, 1, 1, 1]"])
        assert code == 0 and json.loads(out)["results"][0]["reverified"]


def test_survey_small_rows(capsys):
    rows = survey(4, 2)
    assert [(r["n"], r["count"], r["max_tin"]) for r in rows] == [(1, 1, 1), (2, 2, 1), (3, 4, 1), (4, 10, 1)]
    code, out, _ = run(capsys, ["survey", "--n-max", "3", "--out", "csv"])
    assert code == 0 and out.splitlines()[0] == "n,count,max_tin,extremal_graph6"


def test_generate(capsys):
    code, out, _ = run(capsys, ["generate", "--kind", "free", "--param", "n=15", "--param", "p=0.5", "--param", "count=3"])
    report = json.loads(out)
    assert code == 0 and len(report["results"]) == 3
    code2, out2, _ = run(capsys, ["generate", "--spec", json.dumps({"kind": "enumerate", "params": {"n": 4, "t": 2}})])
    assert code2 == 0 and json.loads(out2)["stats"]["graphs"] == 10


def test_reports_are_deterministic(capsys, write):
    src = write("g.g6", to_graph6(cycle(7)) + "\n")
    outs = {run(capsys, ["balance", src, "--seed", "5"])[1] for _ in range(3)}
    assert len(outs) == 1
    report = json.loads(outs.pop())
    assert set(report) == {"command", "version", "inputs_digest", "results", "stats"}
    code, out, _ = run(capsys, ["balance", src, "--timing"])
    assert "wall_time" in json.loads(out)


def test_precondition_exit_code(capsys, write):
    src = write("p4.g6", to_graph6(path(4)) + "\n")
    code, _, err = run(capsys, ["separate", src, "--a", "0", "--b", "1"])
    assert code == 2 and json.loads(err)["type"] == "PreconditionError"
    bad = write("bad.g6", "not graph6 ~~~\n")
    assert run(capsys, ["check", bad])[0] == 2
    assert run(capsys, ["check", "/nonexistent/file"])[0] == 2


def test_counterexample_exit_code(capsys, write):
    G, _ = _hub_graph()
    src = write("hub.txt", to_edgelist(G))
    weights = json.dumps([0] * 36 + [1] * 16)
    code, _, err = run(capsys, ["balance", src, "--format", "edgelist", "--t", "3", "--q", "3", "--weights", weights])
    assert code == 2 and json.loads(err)["type"] == "counterexample"
    code, out, _ = run(capsys, ["balance", src, "--format", "edgelist", "--t", "3", "--q", "3",
                                "--weights", weights, "--assert-mode", "off"])
    assert code == 0 and json.loads(out)["results"][0]["route"].startswith("fallback")


def test_budget_exit_code(capsys, write):
    G, _ = _hub_graph()
    src = write("hub.txt", to_edgelist(G))
    weights = json.dumps([0] * 36 + [1] * 16)
    code, _, err = run(capsys, ["balance", src, "--format", "edgelist", "--t", "3", "--q", "3",
                                "--weights", weights, "--assert-mode", "off", "--budget", "1"])
    assert code == 3 and json.loads(err)["type"] == "budget"


def test_module_entry_point(tmp_path):
    src = tmp_path / "c5.g6"
    src.write_text(to_graph6(cycle(5)) + "\n")
    res = subprocess.run([sys.executable, "-m", "tinsep", "exact", str(src)], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["results"][0]["tin"] == 2
