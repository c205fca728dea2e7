import csv
import subprocess
import sys
from pathlib import Path

import pytest

from interdiv.cli import main

DATA = Path(__file__).parent / "data"
FIXTURE = DATA / "fixture_6x4.net"
GOLDEN = (DATA / "golden_6x4.csv").read_text(encoding="utf-8")


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestCompute:
    def test_stdout(self, capsys):
        assert main(["compute", "--input", str(FIXTURE)]) == 0
        assert capsys.readouterr().out == GOLDEN

    def test_out_file_and_force(self, tmp_path, capsys):
        out = tmp_path / "div.csv"
        assert main(["compute", "--input", str(FIXTURE), "--out", str(out)]) == 0
        assert out.read_text() == GOLDEN
        assert main(["compute", "--input", str(FIXTURE), "--out", str(out)]) == 2
        assert "[write]" in capsys.readouterr().err
        assert main(["compute", "--input", str(FIXTURE), "--out", str(out), "--force"]) == 0

    def test_all_flags(self, tmp_path, capsys):
        argv = [
            "compute", "--input", str(DATA / "fixture_6x4_transposed.net"), "--direction", "cited",
            "--measure", "cosine", "--gini-support", "nonzero", "--n-policy", "rows",
            "--alpha", "1", "--beta", "1", "--coocc", str(DATA / "coocc_6x4.net"), "--workers", "2",
        ]
        assert main(argv) == 0
        assert capsys.readouterr().out == GOLDEN

    def test_explicit_n(self, capsys):
        assert main(["compute", "--input", str(FIXTURE), "--n-policy", "12", "--full-precision"]) == 0
        rows = capsys.readouterr().out.splitlines()
        assert rows[1].split(",")[-1] == "12"
        assert float(rows[1].split(",")[8]) == 4 / 12

    def test_bad_n_policy_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["compute", "--input", str(FIXTURE), "--n-policy", "lots"])
        assert info.value.code == 2

    def test_parse_failure(self, tmp_path, capsys):
        bad = tmp_path / "bad.net"
        bad.write_text("*Arcs\n")
        assert main(["compute", "--input", str(bad)]) == 2
        err = capsys.readouterr().err
        assert err.startswith("interdiv: error [parse]") and "line 1" in err

    def test_drop_loops_logged(self, tmp_path, caplog):
        net = tmp_path / "loops.net"
        net.write_text('*Vertices 2\n1 "a"\n2 "b"\n*Arcs\n1 1 4\n1 2 1\n2 1 1\n')
        with caplog.at_level("INFO", logger="interdiv"):
            assert main(["-v", "compute", "--input", str(net), "--drop-loops"]) == 0
        assert "removed 1 loops" in caplog.text

    def test_drop_loops_needs_square_labels(self, capsys):
        assert main(["compute", "--input", str(FIXTURE), "--drop-loops"]) == 2
        assert "[transform]" in capsys.readouterr().err


class TestAnalyze:
    def test_outputs(self, tmp_path, capsys):
        extra = tmp_path / "bc.csv"
        extra.write_text("unit,bc\nu1,3\nu2,1\nu3,2\nu9,5\n")
        corr, hist = tmp_path / "corr.csv", tmp_path / "hist.csv"
        argv = [
            "analyze", "--indicators", str(DATA / "golden_6x4.csv"), "--join", str(extra),
            "--top", "2", "--correlations", str(corr), "--range-hist", str(hist),
        ]
        assert main(argv) == 0
        top = capsys.readouterr().out.splitlines()
        assert top[0] == "field,rank,unit,value"
        assert "bc,1,u9,5" in top
        table = read_csv(corr)
        assert table[0][:3] == ["variable", "statistic", "rs"]
        assert "bc" in table[0]
        assert read_csv(hist)[0] == ["bin_lo", "bin_hi", "rs", "div"]

    def test_top_out(self, tmp_path):
        out = tmp_path / "top.csv"
        assert main(["analyze", "--indicators", str(DATA / "golden_6x4.csv"), "--top-out", str(out)]) == 0
        assert read_csv(out)[1][:3] == ["rs", "1", "u1"]

    def test_join_collision(self, tmp_path, capsys):
        extra = tmp_path / "dup.csv"
        extra.write_text("unit,rs\nu1,3\n")
        argv = ["analyze", "--indicators", str(DATA / "golden_6x4.csv"), "--join", str(extra)]
        assert main(argv) == 2
        assert "[analyze]" in capsys.readouterr().err

    def test_missing_table(self, tmp_path, capsys):
        assert main(["analyze", "--indicators", str(tmp_path / "none.csv")]) == 2


class TestGraphStats:
    def test_path_graph(self, tmp_path, capsys):
        net = tmp_path / "path.net"
        net.write_text('*Vertices 3\n1 "a"\n2 "b"\n3 "c"\n*Edges\n1 2\n2 3\n')
        desc = tmp_path / "desc.txt"
        assert main(["graph-stats", "--input", str(net), "--descriptives", str(desc)]) == 0
        rows = capsys.readouterr().out.splitlines()
        assert rows == ["unit,bc_raw,bc,bc_x1000", "a,0,0,0", "b,1,1,1000", "c,0,0,0"]
        text = desc.read_text()
        assert "max_distance: 2" in text and "nodes: 3" in text

    def test_largest_component_and_directed(self, tmp_path, capsys):
        net = tmp_path / "two.net"
        net.write_text('*Vertices 5\n*Arcs\n1 2\n2 3\n4 5\n')
        assert main(["graph-stats", "--input", str(net), "--largest-component", "--directed"]) == 0
        captured = capsys.readouterr()
        assert [r.split(",")[0] for r in captured.out.splitlines()[1:]] == ["1", "2", "3"]
        assert "nodes: 3" in captured.err

    def test_tiny_graph_normalised_empty(self, tmp_path, capsys):
        net = tmp_path / "pair.net"
        net.write_text("*Vertices 2\n*Edges\n1 2\n")
        assert main(["graph-stats", "--input", str(net)]) == 0
        assert capsys.readouterr().out.splitlines()[1] == "1,0,,"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "interdiv", "compute", "--input", str(FIXTURE)],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == GOLDEN
