"""File helpers for graph inputs and JSON result files."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Mapping, Union

PathLike = Union[str, Path]


def read_file(path: PathLike, encoding: str = "utf-8") -> str:
    """Text of a graph, Seifert or points file.

    Raises:
        FileNotFoundError: missing path, or a directory where a file is expected
    """
    path = Path(path)
    if not path.is_file():
        what = "is a directory" if path.is_dir() else "not found"
        raise FileNotFoundError(f"{path}: {what}")
    return path.read_text(encoding=encoding)


def write_file(path: PathLike, content: str, encoding: str = "utf-8") -> Path:
    """Write through a sibling temporary file and rename, creating parents.

    A reader never sees a half-written result file.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.tmp")
    tmp.write_text(content, encoding=encoding)
    os.replace(tmp, path)
    return path


def stable_json_dumps(obj: Any) -> str:
    """Deterministic JSON encoding."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def write_json_immutable(
    path: PathLike,
    payload: Mapping[str, Any] | list,
    *,
    force: bool = False,
) -> bool:
    """Write a JSON result file deterministically.

    Rules:
    - If file does not exist: write it.
    - If file exists with identical content: do nothing.
    - If file exists and differs: raise unless force=True.

    Returns:
        True if wrote bytes, False if skipped due to identical content.
    """
    path = Path(path)
    new_text = stable_json_dumps(payload)

    if path.exists():
        old_text = path.read_text(encoding="utf-8")
        if old_text == new_text:
            return False
        if not force:
            raise FileExistsError(
                f"Refusing to overwrite existing file: {path}. "
                f"Pass --force to overwrite."
            )

    write_file(path, new_text)
    return True
