import io
import subprocess
import sys

import pytest

from fracture.attack import greedy_spectral_removal, random_removal, run_strategy
from fracture.cli import main
from fracture.corpus import gnp
from fracture.exceptions import ParseError
from fracture.graph import Graph, write_edge_list
from fracture.trace_io import HEADER, TraceRecord, read_csv, to_csv, write_csv

HEADER_LINE = "strategy,seed,q,removed_node,lcc_nodes,lcc_edges,edge_bound,vcut_size\n"


@pytest.fixture
def random100(tmp_path):
    g = gnp(100, 0.04, 17)
    path = tmp_path / "g100.txt"
    path.write_text(write_edge_list(g))
    return g, path


@pytest.fixture
def four_node_path(request):
    return str(request.config.rootpath / "data" / "four_node.net")


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestTraceIO:
    def test_header_exact(self):
        assert ",".join(HEADER) + "\n" == HEADER_LINE
        assert to_csv([]) == HEADER_LINE

    def test_row_format(self, path3):
        text = to_csv([TraceRecord.from_trace(greedy_spectral_removal(path3, 1))])
        row = text.splitlines()[1].split(",")
        assert row[:6] == ["spectral", "0", "1", "1", "1", "0"]
        assert row[6] == "0.000000"
        assert row[7] == "2"

    def test_vcut_empty_for_baselines(self, path3):
        text = to_csv([TraceRecord.from_trace(random_removal(path3, 1, seed=2))])
        assert text.splitlines()[1].endswith(",")

    def test_round_trip(self):
        g = gnp(60, 0.06, 4)
        records = [TraceRecord.from_trace(run_strategy(g, s, 8, seed=3)) for s in ("spectral", "degree", "random")]
        assert read_csv(to_csv(records)) == records
        assert to_csv(read_csv(to_csv(records))) == to_csv(records)

    def test_read_stream(self, path3):
        rec = TraceRecord.from_trace(greedy_spectral_removal(path3, 1))
        buf = io.StringIO()
        write_csv([rec], buf)
        buf.seek(0)
        assert read_csv(buf) == [rec]

    @pytest.mark.parametrize(
        "text",
        ["", "a,b\n", HEADER_LINE + "spectral,0,1\n", HEADER_LINE + "spectral,0,x,1,1,0,0.0,\n"],
    )
    def test_bad_csv(self, text):
        with pytest.raises(ParseError):
            read_csv(text)


class TestCommands:
    def test_attack_four_node(self, four_node_path, capsys):
        code, out, err = run(["attack", four_node_path, "--strategy", "spectral", "--q", "1"], capsys)
        assert code == 0 and err == ""
        assert out.splitlines()[0] + "\n" == HEADER_LINE
        row = out.splitlines()[1].split(",")
        assert row[3] == "0" and row[4] == "1"

    def test_zero_budget(self, random100, capsys):
        _, path = random100
        code, out, _ = run(["attack", path, "--strategy", "degree", "--q", "0"], capsys)
        assert code == 0
        assert out == HEADER_LINE

    def test_output_file(self, random100, tmp_path, capsys):
        _, path = random100
        dest = tmp_path / "out.csv"
        code, out, _ = run(["attack", path, "--strategy", "betweenness", "--q", "3", "-o", dest], capsys)
        assert code == 0 and out == ""
        assert dest.read_bytes().startswith(HEADER_LINE.encode())
        assert len(dest.read_text().splitlines()) == 4

    def test_compare_matches_attack(self, random100, capsys):
        g, path = random100
        _, merged, _ = run(["compare", path, "--q", "5", "--seed", "7"], capsys)
        records = read_csv(merged)
        assert [r.strategy for r in records] == ["spectral", "degree", "betweenness", "random"]
        for rec in records:
            _, single, _ = run(["attack", path, "--strategy", rec.strategy, "--q", "5", "--seed", "7"], capsys)
            assert read_csv(single) == [rec]
            assert rec == TraceRecord.from_trace(run_strategy(g, rec.strategy, 5, seed=7))

    def test_compare_edgeless(self, tmp_path, capsys):
        path = tmp_path / "empty.txt"
        path.write_text(write_edge_list(Graph(range(6))))
        code, out, _ = run(["compare", path, "--q", "4"], capsys)
        assert code == 0
        for rec in read_csv(out):
            assert all(r.lcc_nodes == 1 for r in rec.rows)

    def test_byte_stable(self, random100, capsys):
        _, path = random100
        for argv in (["attack", path, "--strategy", "random", "--q", "6", "--seed", "3"],
                     ["compare", path, "--q", "4", "--mode", "faithful"]):
            first = run(argv, capsys)[1]
            assert run(argv, capsys)[1] == first

    def test_verbose_goes_to_stderr(self, random100, capsys):
        _, path = random100
        code, out, err = run(["-v", "attack", path, "--strategy", "spectral", "--q", "2"], capsys)
        quiet = run(["attack", path, "--strategy", "spectral", "--q", "2"], capsys)[1]
        assert code == 0 and out == quiet
        assert "q=1" in err

    def test_format_override(self, tmp_path, capsys):
        path = tmp_path / "graph.dat"
        path.write_text("*Vertices 3\n*Edges\n1 2\n2 3\n")
        code, out, _ = run(["attack", path, "--format", "pajek", "--strategy", "degree", "--q", "1"], capsys)
        assert code == 0
        assert out.splitlines()[1].split(",")[3] == "1"


class TestVerify:
    def test_four_node(self, four_node_path, capsys):
        code, out, _ = run(["verify", four_node_path], capsys)
        assert code == 0
        assert "||X||_1=2" in out
        assert "FAIL" not in out
        assert out.strip().endswith("5/5 checks passed")

    def test_trials(self, random100, capsys):
        _, path = random100
        code, out, _ = run(["verify", path, "--trials", "3", "--seed", "1"], capsys)
        assert code == 0
        assert out.count("PASS") == 20

    def test_failed_check_exits_one(self, four_node_path, capsys, monkeypatch):
        monkeypatch.setattr("fracture.verify.check_edge_bound", lambda g, tol: (False, "forced"))
        code, out, _ = run(["verify", four_node_path], capsys)
        assert code == 1
        assert "FAIL edge-bound [input] forced" in out


class TestErrors:
    @pytest.mark.parametrize(
        "content, kind",
        [("0 1\n0 1\n", "DuplicateEdge"), ("2 2\n", "SelfLoop"), ("0 one\n", "ParseError")],
    )
    def test_corrupt_input(self, tmp_path, capsys, content, kind):
        path = tmp_path / "bad.txt"
        path.write_text(content)
        code, out, err = run(["attack", path, "--strategy", "spectral", "--q", "1"], capsys)
        assert code == 1 and out == ""
        assert err.startswith(f"fracture: error: {kind}")

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(["verify", tmp_path / "nope.txt"], capsys)
        assert code == 1 and "error" in err

    def test_budget_too_large(self, four_node_path, capsys):
        code, _, err = run(["attack", four_node_path, "--strategy", "degree", "--q", "4"], capsys)
        assert code == 1 and "BudgetExceedsNodes" in err

    @pytest.mark.parametrize(
        "argv",
        [[], ["attack"], ["attack", "g.txt", "--q", "1", "--strategy", "pagerank"],
         ["attack", "g.txt", "--strategy", "degree"], ["compare", "g.txt", "--q", "-1"],
         ["attack", "g.txt", "--strategy", "degree", "--q", "1", "--mode", "exact"]],
    )
    def test_usage_errors(self, argv, capsys):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
        assert capsys.readouterr().out == ""


def test_console_script(four_node_path):
    proc = subprocess.run(
        [sys.executable, "-m", "fracture.cli", "attack", four_node_path, "--strategy", "spectral", "--q", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith(HEADER_LINE)
