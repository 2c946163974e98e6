"""Tests for the corpus, validation, cycle expressions, config and IO helpers."""

import json
import logging
from fractions import Fraction

import pytest

from src.config import RunConfig, get_curve_model_name, get_n_range, get_seed
from src.errors import UnknownCorpusEntry, UnknownVertex
from src.lattice.core import dual_cycle
from src.lattice.laufer import laufer_zmin
from src.services.corpus import (
    family_graph,
    get_entry,
    get_graph,
    get_seifert,
    list_entries,
    resolve_graph_ref,
)
from src.services.expressions import parse_cycle
from src.services.validator import (
    ValidationResult,
    validate_corpus,
    validate_graph_file,
    validate_graph_text,
)
from src.utils.io import read_file, stable_json_dumps, write_json_immutable
from src.utils.logger import configure_logging, get_logger, set_level


class TestCorpus:
    def test_entries(self):
        names = list_entries()
        assert names == sorted(names)
        for name in ("ex-dimim", "ex-445", "ex-whsing", "elliptic-237"):
            assert name in names

    def test_unknown_entry(self):
        with pytest.raises(UnknownCorpusEntry):
            get_entry("no-such-graph")
        with pytest.raises(UnknownCorpusEntry):
            get_graph("no-such-graph")

    def test_seifert_entries(self):
        assert get_seifert("ex-445").legs == ((5, 1),) * 4
        assert get_seifert("ex-dimim") is None
        assert get_seifert("E8") is None

    def test_families(self):
        d5 = family_graph("D5")
        assert d5.vertices == ("v1", "v2", "v3", "v4", "v5")
        assert ("v3", "v5") in d5.edges
        e6 = family_graph("E6")
        assert ("v3", "v6") in e6.edges
        assert set(e6.euler) == {-2}

    def test_family_out_of_range(self):
        for name in ("A0", "D3", "E9", "F4"):
            with pytest.raises(UnknownCorpusEntry):
                family_graph(name)

    def test_resolve_reference(self, tmp_path):
        assert resolve_graph_ref("corpus:ex-dimim") == get_graph("ex-dimim")
        path = tmp_path / "pair.graph"
        path.write_text("vertex p -2\nvertex q -3\nedge p q\n")
        g = resolve_graph_ref(str(path))
        assert g.name == "pair"
        assert g.euler == (-2, -3)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            resolve_graph_ref(str(tmp_path / "missing.graph"))


class TestValidator:
    def test_corpus_passes(self):
        result = validate_corpus()
        assert result.passed, result.errors

    def test_error_is_named(self):
        result = validate_graph_text("vertex a 1\n")
        assert not result.passed
        assert result.errors[0].startswith("NotNegativeDefinite:")

    def test_minus_one_leaf_warns(self):
        result = validate_graph_text("vertex a -1\n")
        assert result.passed
        assert len(result.warnings) == 1

    def test_missing_file(self, tmp_path):
        result = validate_graph_file(tmp_path / "nope.graph")
        assert not result.passed

    def test_merge_with_prefix(self):
        outer = ValidationResult(passed=True)
        inner = ValidationResult(passed=True)
        inner.add_error("boom")
        outer.merge(inner, prefix="x: ")
        assert not outer.passed
        assert outer.to_dict()["errors"] == ["x: boom"]


class TestCycleExpressions:
    def test_coefficient_list(self):
        g = get_graph("ex-dimim")
        assert parse_cycle(g, "3,6,1,1,2") == laufer_zmin(g)

    def test_named_cycles(self):
        g = get_graph("ex-dimim")
        assert parse_cycle(g, "Zmin") == laufer_zmin(g)
        assert parse_cycle(g, "ZK - E").coeffs == (3, 7, 1, 0, 2)
        assert parse_cycle(g, "0").is_zero()

    def test_sums(self):
        g = get_graph("ex-dimim")
        assert parse_cycle(g, "2*Zmin - E:a").coeffs == (5, 12, 2, 2, 4)
        assert parse_cycle(g, "-E*:d") == -dual_cycle(g, "d")

    def test_single_vertex_list(self):
        g = get_graph("A1")
        assert parse_cycle(g, "1/2").coeffs == (Fraction(1, 2),)

    def test_errors(self):
        g = get_graph("ex-dimim")
        with pytest.raises(UnknownVertex):
            parse_cycle(g, "E:zz")
        for text in ("1,2", "Zmin E", "Zmin +", "", "3*"):
            with pytest.raises(ValueError):
                parse_cycle(g, text)


class TestConfig:
    def test_seed_from_env(self, monkeypatch):
        monkeypatch.setenv("PLUMBLINE_SEED", "17")
        assert get_seed() == 17
        assert get_seed(3) == 3

    def test_bad_seed(self, monkeypatch):
        monkeypatch.setenv("PLUMBLINE_SEED", "seventeen")
        with pytest.raises(ValueError):
            get_seed()

    def test_curve_models(self):
        assert get_curve_model_name(None) == "cusp"
        with pytest.raises(ValueError):
            get_curve_model_name("nodal")

    def test_n_range(self):
        assert get_n_range(None) == (1, 6)
        with pytest.raises(ValueError):
            get_n_range((0, 3))

    def test_run_config(self, monkeypatch):
        monkeypatch.delenv("PLUMBLINE_SEED", raising=False)
        config = RunConfig.from_options(seed=5, json_output=True)
        assert config.seed == 5
        assert config.json_output
        assert config.curve_model == "cusp"


class TestLogging:
    def test_child_records_reach_log_file(self, tmp_path):
        path = tmp_path / "logs" / "run.log"
        root = configure_logging(logging.DEBUG, path)
        try:
            get_logger("plumbline.lattice").debug("box volume %d", 42)
            configure_logging(logging.DEBUG, path)
            file_handlers = [h for h in root.handlers if isinstance(h, logging.FileHandler)]
            assert len(file_handlers) == 1
            assert "plumbline.lattice | box volume 42" in path.read_text()
        finally:
            for handler in [h for h in root.handlers if isinstance(h, logging.FileHandler)]:
                root.removeHandler(handler)
                handler.close()
            set_level(logging.INFO)

    def test_console_handler_added_once(self):
        configure_logging()
        root = configure_logging()
        consoles = [h for h in root.handlers if type(h) is logging.StreamHandler]
        assert len(consoles) == 1
        assert get_logger() is root


class TestResultFiles:
    def test_stable_json(self):
        assert stable_json_dumps({"b": 1, "a": 2}).startswith('{\n  "a": 2')

    def test_write_json_immutable(self, tmp_path):
        path = tmp_path / "out" / "result.json"
        assert write_json_immutable(path, {"pg": 4})
        assert not write_json_immutable(path, {"pg": 4})
        with pytest.raises(FileExistsError):
            write_json_immutable(path, {"pg": 5})
        assert write_json_immutable(path, {"pg": 5}, force=True)
        assert json.loads(path.read_text()) == {"pg": 5}
        assert [p.name for p in path.parent.iterdir()] == ["result.json"]

    def test_read_file_rejects_directory(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="is a directory"):
            read_file(tmp_path)
        assert not validate_graph_file(tmp_path).passed
