"""Bundled corpus of resolution graphs and the `corpus:<name>` reference syntax."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import yaml

from src.domain.graph import ResolutionGraph
from src.domain.seifert import SeifertData, parse_seifert
from src.errors import UnknownCorpusEntry
from src.lattice.core import parse_graph, validate_graph
from src.seifert.wh import graph_from_seifert
from src.utils.io import read_file
from src.utils.logger import get_logger

logger = get_logger("plumbline.corpus")

CORPUS_FILE = Path(__file__).resolve().parent.parent / "data" / "corpus.yaml"

CORPUS_PREFIX = "corpus:"

FAMILY_RE = re.compile(r"^(A|D|E)(\d+)$")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str = ""
    graph_text: str | None = None
    seifert: str | None = None

    def seifert_data(self) -> SeifertData | None:
        return parse_seifert(self.seifert) if self.seifert else None

    def graph(self) -> ResolutionGraph:
        if self.graph_text is not None:
            return parse_graph(self.graph_text, name=self.name)
        graph = graph_from_seifert(self.seifert_data(), name=self.name)
        return validate_graph(graph)

    def to_dict(self) -> dict:
        data = {"name": self.name, "description": self.description}
        if self.seifert:
            data["seifert"] = self.seifert
        return data


@lru_cache(maxsize=1)
def load_corpus(path: Path = CORPUS_FILE) -> dict[str, CorpusEntry]:
    """Read the YAML corpus file into entries keyed by name."""
    raw = yaml.safe_load(read_file(path)) or {}
    entries = {}
    for name, data in raw.items():
        entries[name] = CorpusEntry(
            name=name,
            description=data.get("description", ""),
            graph_text=data.get("graph"),
            seifert=data.get("seifert"),
        )
    logger.debug("Loaded %d corpus entries from %s", len(entries), path)
    return entries


# =============================================================================
# PARAMETRIC FAMILIES
# =============================================================================


def _chain(n: int) -> tuple[list[str], list[tuple[str, str]]]:
    vertices = [f"v{i}" for i in range(1, n + 1)]
    return vertices, list(zip(vertices, vertices[1:]))


def family_graph(name: str) -> ResolutionGraph:
    """A_n (n >= 1), D_n (n >= 4) and E_6, E_7, E_8 as -2 graphs.

    Raises:
        UnknownCorpusEntry
    """
    match = FAMILY_RE.match(name)
    if not match:
        raise UnknownCorpusEntry(f"'{name}' is not a rational family name")
    kind, n = match.group(1), int(match.group(2))
    if kind == "A" and n >= 1:
        vertices, edges = _chain(n)
    elif kind == "D" and n >= 4:
        vertices, edges = _chain(n - 1)
        vertices.append(f"v{n}")
        edges.append((vertices[n - 3], f"v{n}"))
    elif kind == "E" and n in (6, 7, 8):
        vertices, edges = _chain(n - 1)
        vertices.append(f"v{n}")
        edges.append(("v3", f"v{n}"))
    else:
        raise UnknownCorpusEntry(f"no rational family member '{name}'")
    graph = ResolutionGraph(
        vertices=tuple(vertices),
        euler=(-2,) * len(vertices),
        edges=tuple(edges),
        name=name,
    )
    return validate_graph(graph)


# =============================================================================
# LOOKUP
# =============================================================================


def list_entries() -> list[str]:
    return sorted(load_corpus())


def get_entry(name: str) -> CorpusEntry:
    """Raises:
    UnknownCorpusEntry
    """
    entries = load_corpus()
    if name not in entries:
        raise UnknownCorpusEntry(
            f"unknown corpus entry '{name}'. Available: {', '.join(sorted(entries))} and A<n>, D<n>, E6-E8"
        )
    return entries[name]


def get_graph(name: str) -> ResolutionGraph:
    if FAMILY_RE.match(name):
        return family_graph(name)
    return get_entry(name).graph()


def get_seifert(name: str) -> SeifertData | None:
    if FAMILY_RE.match(name):
        return None
    return get_entry(name).seifert_data()


def resolve_graph_ref(ref: str) -> ResolutionGraph:
    """`corpus:<name>` or a path to a graph file.

    Raises:
        UnknownCorpusEntry, FileNotFoundError, graph validation errors
    """
    if ref.startswith(CORPUS_PREFIX):
        return get_graph(ref[len(CORPUS_PREFIX):])
    path = Path(ref)
    return parse_graph(read_file(path), name=path.stem)
