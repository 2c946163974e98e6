"""Validation service for graph files and the bundled corpus.

Hard failures (anything the parser or lattice checks raise) are errors;
properties that are legal but usually unintended are warnings.
"""

from dataclasses import dataclass, field
from pathlib import Path

from src.domain.graph import ResolutionGraph
from src.errors import PlumblineError
from src.lattice.core import parse_graph
from src.utils.io import read_file
from src.utils.logger import get_logger

logger = get_logger("plumbline.validator")


@dataclass
class ValidationResult:
    """Result of validating one graph or a set of graphs."""

    passed: bool
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def add_error(self, msg: str):
        self.errors.append(msg)
        self.passed = False

    def add_warning(self, msg: str):
        self.warnings.append(msg)

    def merge(self, other: "ValidationResult", prefix: str = "") -> None:
        self.errors.extend(f"{prefix}{e}" for e in other.errors)
        self.warnings.extend(f"{prefix}{w}" for w in other.warnings)
        if not other.passed:
            self.passed = False

    def to_dict(self) -> dict:
        return {"passed": self.passed, "errors": list(self.errors), "warnings": list(self.warnings)}


def check_graph(graph: ResolutionGraph) -> ValidationResult:
    """Warnings for a graph that already passed the lattice checks.

    Checks:
    - (-1)-vertices of degree <= 2 (the resolution is not minimal good)
    - nonnegative Euler numbers
    """
    result = ValidationResult(passed=True)
    for v, e, deg in zip(graph.vertices, graph.euler, graph.degrees):
        if e == -1 and deg <= 2:
            result.add_warning(f"vertex '{v}' is a (-1)-curve of degree {deg}; graph is not minimal")
        elif e >= 0:
            result.add_warning(f"vertex '{v}' has Euler number {e} >= 0")
    return result


def validate_graph_text(text: str, name: str = "") -> ValidationResult:
    """Parse and validate graph-file text."""
    result = ValidationResult(passed=True)
    try:
        graph = parse_graph(text, name=name)
    except PlumblineError as e:
        result.add_error(f"{e.name}: {e}")
        return result
    result.merge(check_graph(graph))
    return result


def validate_graph_file(path: Path) -> ValidationResult:
    result = ValidationResult(passed=True)
    path = Path(path)
    if not path.is_file():
        result.add_error(f"graph file not found at {path}")
        return result
    result.merge(validate_graph_text(read_file(path), name=path.stem))
    return result


def validate_corpus() -> ValidationResult:
    """Every bundled entry builds and passes the lattice checks."""
    from src.services.corpus import get_graph, list_entries

    result = ValidationResult(passed=True)
    for name in list_entries():
        try:
            graph = get_graph(name)
        except PlumblineError as e:
            result.add_error(f"{name}: {e.name}: {e}")
            continue
        result.merge(check_graph(graph), prefix=f"{name}: ")
    logger.debug("validated %d corpus entries", len(list_entries()))
    return result
