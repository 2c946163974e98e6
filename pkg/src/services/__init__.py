from .corpus import (
    CorpusEntry,
    family_graph,
    get_graph,
    get_seifert,
    list_entries,
    load_corpus,
    resolve_graph_ref,
)
from .validator import (
    ValidationResult,
    check_graph,
    validate_corpus,
    validate_graph_file,
    validate_graph_text,
)

__all__ = [
    # Corpus
    "CorpusEntry",
    "family_graph",
    "get_graph",
    "get_seifert",
    "list_entries",
    "load_corpus",
    "resolve_graph_ref",
    # Validation
    "ValidationResult",
    "check_graph",
    "validate_corpus",
    "validate_graph_file",
    "validate_graph_text",
]
