import csv
import io
import json

import pytest

from dimerlab.cli import run
from dimerlab.clusters import Cluster, enumerate_clusters, psi_of_cluster
from dimerlab.graph import complete_graph


@pytest.fixture
def k7_json(tmp_path):
    path = tmp_path / "k7.json"
    path.write_text(json.dumps(complete_graph(7).to_json()))
    return str(path)


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_ursell_k7(k7_json, capsys):
    assert run(["ursell", "--graph", k7_json]) == 0
    assert capsys.readouterr().out.strip() == "720"


@pytest.mark.parametrize("method", ["brute", "delcon", "bhkk"])
def test_ursell_methods(tmp_path, capsys, method):
    path = tmp_path / "k4.json"
    path.write_text(json.dumps(complete_graph(4).to_json()))
    assert run(["ursell", "--graph", str(path), "--method", method]) == 0
    assert capsys.readouterr().out.strip() == "-6"


def test_tutte_full_output(tmp_path, capsys):
    path = tmp_path / "c3.json"
    path.write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2], [2, 0]]}))
    assert run(["tutte", "--graph", str(path), "--full"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"n": 3, "m": 3, "T10": 2, "psi": 2, "tutte": [[0, 1], [1], [1]]}


def test_tutte_disconnected_is_computation_error(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 3, "edges": [[0, 1]]}))
    assert run(["tutte", "--graph", str(path)]) == 1
    assert "error" in capsys.readouterr().err


def test_bad_graph_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 2, "edges": [[0, 5]]}))
    assert run(["ursell", "--graph", str(path)]) == 1
    assert run(["ursell", "--graph", str(tmp_path / "missing.json")]) == 1


def test_usage_errors():
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["series", "--d", "2", "--bogus"]) == 2
    assert run(["--threads", "0", "selfcheck"]) == 2


def test_series_grid_zero(capsys):
    assert run(["series", "--d", "2", "--order", "7", "--grid", "0"]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert len(rows) == 1
    assert float(rows[0]["lambda"]) == 0.0 and float(rows[0]["p"]) == 0.0


def test_series_grid_count_and_csv(tmp_path):
    out = tmp_path / "t.csv"
    assert run(["series", "--d", "2", "--order", "7", "--grid", "11", "--csv", str(out)]) == 0
    rows = read_csv(out.read_text())
    assert len(rows) == 11
    assert list(rows[0]) == ["p", "lambda", "leading", "correction"]
    assert float(rows[-1]["lambda"]) == pytest.approx(0.2745628474, abs=1e-10)


def test_series_unsupported_order():
    assert run(["series", "--d", "3", "--order", "7", "--grid", "0"]) == 1


def test_clusters_jsonl(capsys):
    assert run(["clusters", "--k", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    expected = list(enumerate_clusters(3))
    assert len(lines) == len(expected)
    for line, c in zip(lines, expected):
        rec = json.loads(line)
        assert set(rec) == {"dimers", "psi"}
        assert Cluster.from_json(rec["dimers"]) == c
        assert rec["psi"] == psi_of_cluster(c)


def test_clusters_count_only(capsys):
    assert run(["clusters", "--k", "4", "--count-only"]) == 0
    assert json.loads(capsys.readouterr().out) == {"k": 4, "count": 88}


def test_clusters_threads_same_output(capsys, monkeypatch):
    assert run(["clusters", "--k", "3"]) == 0
    serial = capsys.readouterr().out
    monkeypatch.setenv("DIMERLAB_THREADS", "2")
    assert run(["clusters", "--k", "3"]) == 0
    assert capsys.readouterr().out == serial


def test_clusters_bad_k():
    assert run(["clusters", "--k", "12"]) == 1


def test_strip_csv(capsys):
    assert run(["strip", "--p", "0.3", "--widths", "4,6"]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert list(rows[0]) == ["p", "estimate", "spread", "series_value", "delta"]
    r = rows[0]
    assert float(r["delta"]) == pytest.approx(float(r["estimate"]) - float(r["series_value"]), abs=1e-15)


def test_strip_free_boundary(capsys):
    assert run(["strip", "--p", "0.5", "--widths", "1", "--boundary", "free"]) == 0
    assert len(read_csv(capsys.readouterr().out)) == 1


def test_bench_k7(k7_json, capsys):
    assert run(["bench", "--graph", k7_json]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert rows[0]["T10_bhkk"] == rows[0]["T10_brute"] == "720"
    assert float(rows[0]["seconds_bhkk"]) < float(rows[0]["seconds_brute"])


def test_bench_random(capsys):
    assert run(["bench", "--random", "3", "--seed", "4"]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert len(rows) == 4
    assert all(r["T10_bhkk"] == r["T10_brute"] for r in rows)


def test_selfcheck_deterministic(capsys):
    assert run(["selfcheck", "--seed", "3", "--random-graphs", "20"]) == 0
    first = capsys.readouterr().out
    assert run(["selfcheck", "--seed", "3", "--random-graphs", "20"]) == 0
    second = capsys.readouterr().out
    assert first == second
    report = json.loads(first)
    assert report["ok"] and report["seed"] == 3


def test_selfcheck_reports_failure(monkeypatch, capsys):
    from dimerlab import series

    monkeypatch.setattr(series, "JBAR7", series.JBAR7 + 1)
    assert run(["selfcheck", "--random-graphs", "2"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert [c["name"] for c in report["checks"] if not c["ok"]] == ["constants"]
