"""Tests for the plumbline command line."""

import json
import logging

from typer.testing import CliRunner

from src.commands import app
from src.poincare.zeta import reduced_series
from src.services.corpus import get_graph
from src.utils.logger import set_level

runner = CliRunner()


def run_json(*args):
    result = runner.invoke(app, [*args, "--json"])
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestLatticeCommands:
    def test_zmin(self):
        data = run_json("zmin", "corpus:ex-dimim")
        assert data == {"zmin": {"a": "3", "b": "6", "c": "1", "d": "1", "e": "2"}}

    def test_invariants(self):
        data = run_json("invariants", "corpus:ex-dimim")
        assert data["det"] == 1
        assert data["h1_zmin"] == 1
        assert data["zmin_squared"] == "-1"
        assert data["rational"] is False

    def test_chi(self):
        data = run_json("chi", "corpus:E7", "Zmin")
        assert data["chi"] == "1"

    def test_sdom_of_elliptic(self):
        data = run_json("sdom", "corpus:elliptic-237")
        assert data["in_sdom"] is False
        data = run_json("van", "corpus:elliptic-237")
        assert data["in_van"] is True

    def test_dominant_on_rational_graph(self):
        data = run_json("dominant", "corpus:E8")
        assert data["dominant"] is True
        assert data["generic_h1"] == 0

    def test_dot(self):
        result = runner.invoke(app, ["invariants", "corpus:A2", "--dot"])
        assert result.exit_code == 0
        assert '"v1" -- "v2";' in result.stdout

    def test_graph_file(self, tmp_path):
        path = tmp_path / "a2.graph"
        path.write_text("vertex x -2\nvertex y -2\nedge x y\n")
        data = run_json("zmin", str(path))
        assert data["zmin"] == {"x": "1", "y": "1"}


class TestSeriesCommands:
    def test_counting(self):
        data = run_json("counting", "corpus:ex-dimim", "--target", "Zmin")
        assert data["sigma"] == 1
        data = run_json("counting", "corpus:ex-dimim", "--target", "Zmin", "--reduce", "d")
        assert data["sigma"] == 1
        assert data["reduced_to"] == ["d"]

    def test_reduced_series(self):
        data = run_json("series", "corpus:ex-445", "--reduce", "v0", "--bound", "4")
        assert data["reduced_to"] == ["v0"]
        assert data["bound"] == 4
        assert data["reduced"][0] == {"x": {"v0": 0}, "coefficient": 1}
        expected = reduced_series(get_graph("ex-445"), ["v0"], 4)
        assert {row["x"]["v0"]: row["coefficient"] for row in data["reduced"]} == {
            x[0]: c for x, c in expected.items()
        }

    def test_periodic_constant(self):
        data = run_json("periodic-constant", "corpus:A1", "--l", "E", "--n-range", "1,4")
        assert data["periodic_constant"] == 0
        assert len(data["table"]) == 4


class TestWeightedHomogeneousCommands:
    def test_pg(self):
        data = run_json("wh", "pg", "--seifert", "b0=1 legs=5,1x4")
        assert data["pg"] == 4

    def test_invariants_from_corpus(self):
        data = run_json("wh", "invariants", "--seifert", "corpus:ex-whsing")
        assert data["pg"] == 3
        assert data["s0"] == 1
        assert data["dim_im_central"] == 2

    def test_h1_end(self):
        data = run_json("wh", "h1-end", "--seifert", "corpus:ex-whsing", "--leg", "1")
        assert data["h1"] == 2
        assert data["h1_printed_formula"] == 1
        assert data["h1_residue"] == 2

    def test_dim_v(self):
        data = run_json("wh", "dim-v", "--seifert", "corpus:ex-445", "--I", "v1_1")
        assert data["dim_V"] == 3

    def test_abel_rank(self):
        data = run_json("abel", "rank", "--seifert", "corpus:ex-445", "--mode", "central", "--k", "1")
        assert data["rank"] == 3
        assert data["closed_form_rank"] == 3


class TestSuperisolatedCommands:
    def test_dimim(self):
        data = run_json("si", "dimim", "--d", "4", "--k", "3")
        assert data["dim_im"] == 4

    def test_pg(self):
        assert run_json("si", "pg", "--d", "5")["pg"] == 10

    def test_conic_rank(self):
        data = run_json("si", "rank", "--d", "5", "--instance", "conic")
        assert data["rank"] == 9
        assert data["generic"] == 10


class TestAbelCommands:
    def test_delta(self):
        data = run_json("abel", "delta", "--n", "2", "--c", "0,2,3")
        assert data["delta"] == ["-3", "-2"]
        assert data["agree"] is True


class TestLogOptions:
    def test_log_file_gets_debug_records(self, tmp_path):
        path = tmp_path / "run.log"
        root = logging.getLogger("plumbline")
        try:
            result = runner.invoke(app, ["--verbose", "--log-file", str(path), "zmin", "corpus:A3", "--json"])
            assert result.exit_code == 0, result.output
            assert "Laufer sequence for Z_min" in path.read_text()
        finally:
            for handler in [h for h in root.handlers if isinstance(h, logging.FileHandler)]:
                root.removeHandler(handler)
                handler.close()
            set_level(logging.INFO)


class TestErrors:
    def test_unknown_corpus_entry(self):
        result = runner.invoke(app, ["zmin", "corpus:no-such-graph"])
        assert result.exit_code == 1
        assert "UnknownCorpusEntry" in result.output

    def test_wrong_coefficient_count(self):
        result = runner.invoke(app, ["chi", "corpus:ex-dimim", "1,2"])
        assert result.exit_code == 2

    def test_bad_seifert(self):
        result = runner.invoke(app, ["wh", "pg", "--seifert", "b0=1 legs=4,2;3,1;5,1"])
        assert result.exit_code == 1
        assert "NotCoprime" in result.output

    def test_reduction_missing_support(self):
        result = runner.invoke(app, ["counting", "corpus:ex-dimim", "--target", "Zmin", "--reduce", "a"])
        assert result.exit_code == 1
        assert "BadRange" in result.output

    def test_reduction_unknown_vertex(self):
        result = runner.invoke(app, ["series", "corpus:ex-445", "--reduce", "w"])
        assert result.exit_code == 1
        assert "UnknownVertex" in result.output

    def test_output_file_is_immutable(self, tmp_path):
        path = tmp_path / "zmin.json"
        first = runner.invoke(app, ["zmin", "corpus:ex-dimim", "--output", str(path)])
        assert first.exit_code == 0
        assert json.loads(path.read_text())["zmin"]["b"] == "6"
        clash = runner.invoke(app, ["zmin", "corpus:E8", "--output", str(path)])
        assert clash.exit_code == 1
        forced = runner.invoke(app, ["zmin", "corpus:E8", "--output", str(path), "--force"])
        assert forced.exit_code == 0
