import csv
import io
import json

import pytest

from pathseries import cli
from pathseries.graph import format_edge_list
from pathseries.testing import complete_graph, path_graph, petersen, random_digraph

TRIANGLE = "n 3\n0 1\n1 2\n2 0\n"


@pytest.fixture
def write_graph(tmp_path):
    def write(text, name="g.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def undirected_text(g):
    return "".join(f"{u} {v}\n" for u, v in g.arcs if u < v)


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out)
    return code, out.getvalue()


def test_triangle_count(write_graph):
    code, text = run(["count", "--input", write_graph(TRIANGLE)])
    assert code == 0
    report = json.loads(text)
    assert report["open_totals"] == {"1": "3", "2": "3", "3": "0"}
    assert report["cycles"]["directed"] == {"1": "0", "2": "0", "3": "1"}
    assert report["stats"]["method"] == "connected"
    assert report["n"] == 3 and report["m"] == 3 and report["L"] == 3


def test_undirected_flag(write_graph):
    code, text = run(["count", "--undirected", "--input", write_graph("0 1\n1 2\n2 0\n")])
    assert code == 0
    cycles = json.loads(text)["cycles"]
    assert cycles["undirected"]["3"] == "1"
    assert cycles["degenerate"] == [1, 2]


def test_methods_identical_outside_stats(write_graph):
    path = write_graph(format_edge_list(random_digraph(7, 0.4, 0.2)))
    reports = []
    for method in ("connected", "all-subsets", "oracle"):
        code, text = run(["count", "--input", path, "--method", method, "--no-timing"])
        assert code == 0
        report = json.loads(text)
        del report["stats"]
        reports.append(json.dumps(report, sort_keys=True))
    assert reports[0] == reports[1] == reports[2]


def test_word_hamiltonian_is_usage_error(write_graph):
    path = write_graph(TRIANGLE)
    assert run(["count", "--ring", "word", "--kind", "hamiltonian", "--input", path])[0] == 1
    assert run(["hamiltonian", "--ring", "word", "--input", path])[0] == 1


def test_argparse_error_is_usage():
    with pytest.raises(SystemExit) as exc:
        cli.main(["count"])
    assert exc.value.code == 1


def test_parse_error(write_graph):
    assert run(["count", "--input", write_graph("0 1\n0 x\n")])[0] == 2
    assert run(["count", "--input", write_graph("0 1\n0 1\n")])[0] == 2


def test_limit_error(write_graph):
    path = write_graph(TRIANGLE)
    assert run(["count", "--method", "all-subsets", "--limit-n", "2", "--input", path])[0] == 3
    big = write_graph("n 21\n0 1\n")
    assert run(["count", "--method", "all-subsets", "--max-length", "2", "--input", big])[0] == 3
    assert run(["count", "--max-length", "2", "--input", big])[0] == 0


def test_max_length_out_of_range(write_graph):
    assert run(["count", "--max-length", "4", "--input", write_graph(TRIANGLE)])[0] == 1


def test_csv_output(write_graph):
    code, text = run(["count", "--output", "csv", "--input", write_graph(TRIANGLE)])
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["table", "i", "j", "k", "value", "path"]
    assert ["open", "0", "2", "2", "1", ""] in rows
    assert ["closed", "1", "1", "3", "1", ""] in rows


def test_word_csv(write_graph):
    code, text = run(["count", "--ring", "word", "--output", "csv",
                      "--input", write_graph(TRIANGLE)])
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert ["open", "0", "2", "2", "1", "0>1>2"] in rows


def test_word_json_truncation(write_graph):
    path = write_graph(TRIANGLE)
    report = json.loads(run(["count", "--ring", "word", "--input", path])[1])
    assert report["words_truncated"] is False and report["cycles"] is None
    assert report["open_totals"] == {"1": "3", "2": "3", "3": "0"}
    report = json.loads(run(["count", "--ring", "word", "--max-words", "2", "--input", path])[1])
    assert report["words_truncated"] is True and "open" not in report


def test_hamiltonian_reports(write_graph):
    report = json.loads(run(["hamiltonian", "--undirected",
                             "--input", write_graph(undirected_text(complete_graph(4)))])[1])
    assert len(report["h_op"]) == 12 and all(v == "2" for _, _, v in report["h_op"])
    assert report["ham_cycles"] == "6"

    text = format_edge_list(path_graph(3))
    for method in ("connected", "oracle"):
        report = json.loads(run(["hamiltonian", "--method", method,
                                 "--input", write_graph(text)])[1])
        assert [(i, j) for i, j, _ in report["h_op"]] == [(0, 2), (2, 0)]
        assert report["ham_cycles"] == "0"

    report = json.loads(run(["count", "--kind", "hamiltonian",
                             "--undirected", "--input", write_graph(undirected_text(petersen()))])[1])
    assert report["ham_cycles"] == "0"


def test_subgraphs(write_graph):
    path = write_graph(format_edge_list(path_graph(3)))
    report = json.loads(run(["subgraphs", "--input", path, "--list-max-size", "2"])[1])
    assert report["counts"] == {"1": 3, "2": 2, "3": 1}
    assert report["total"] == 6
    assert report["sets"] == [[0], [0, 1], [1], [1, 2], [2]]
    code, text = run(["subgraphs", "--input", path, "--output", "csv"])
    assert text.splitlines() == ["size,count", "1,3", "2,2", "3,1"]


def test_bench_agree(write_graph):
    code, text = run(["bench", "--census", "--input", write_graph(TRIANGLE)])
    assert code == 0
    report = json.loads(text)
    assert report["agree"] is True
    assert [m["method"] for m in report["methods"]] == ["connected", "all-subsets", "oracle"]
    assert report["connected_total"] == 7


def test_bench_mismatch(write_graph, monkeypatch):
    original = cli.run_series

    def broken(g, L, method, cfg):
        res = original(g, L, method, cfg)
        if method == "oracle":
            res.open.pop(min(res.open))
        return res

    monkeypatch.setattr(cli, "run_series", broken)
    code, text = run(["bench", "--input", write_graph(TRIANGLE)])
    assert code == 4
    assert json.loads(text)["agree"] is False


@pytest.mark.parametrize("args", [["count", "--directed"], ["count", "--undirected"],
                                  ["hamiltonian", "--undirected"]])
def test_threads_deterministic(write_graph, args):
    path = write_graph(undirected_text(petersen()))
    outputs = {run(args + ["--input", path, "--no-timing", "--threads", t])[1]
               for t in ("1", "2", "8")}
    assert len(outputs) == 1


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(TRIANGLE))
    code, text = run(["oracle", "--input", "-"])
    assert code == 0
    assert json.loads(text)["stats"]["method"] == "oracle"
