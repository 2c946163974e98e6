"""Logging for plumbline.

Library modules take a child of the ``plumbline`` logger at import time and only
emit records; handlers are attached to ``plumbline`` itself, once, by the CLI or
by the first ``get_logger()`` call for the root name.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

ROOT = "plumbline"

CONSOLE_FORMAT = logging.Formatter("%(asctime)s | %(levelname)-8s | %(message)s", datefmt="%H:%M:%S")
FILE_FORMAT = logging.Formatter(
    "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)


def _has_file_handler(logger: logging.Logger, path: Path) -> bool:
    return any(
        isinstance(h, logging.FileHandler) and Path(h.baseFilename) == path.resolve()
        for h in logger.handlers
    )


def configure_logging(level: int = logging.INFO, log_file: Optional[Path] = None) -> logging.Logger:
    """Attach the stderr handler (and optionally a file handler) to the root logger.

    Safe to call repeatedly: the stderr handler is added once, a given log file
    once, and the level is always updated. stdout is left to JSON output.
    """
    root = logging.getLogger(ROOT)
    root.setLevel(level)
    root.propagate = False

    if not any(getattr(h, "_plumbline_console", False) for h in root.handlers):
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(CONSOLE_FORMAT)
        console._plumbline_console = True
        root.addHandler(console)

    if log_file is not None:
        log_file = Path(log_file)
        if not _has_file_handler(root, log_file):
            log_file.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setFormatter(FILE_FORMAT)
            root.addHandler(file_handler)

    for handler in root.handlers:
        handler.setLevel(level)
    return root


def get_logger(
    name: str = ROOT,
    level: int = logging.INFO,
    log_file: Optional[Path] = None,
) -> logging.Logger:
    """Logger for `name`.

    Child names (``plumbline.lattice``) are returned unconfigured and propagate
    to the root. Asking for the root configures it if nothing has yet.
    """
    if name != ROOT:
        return logging.getLogger(name)
    root = logging.getLogger(ROOT)
    if root.handlers and log_file is None:
        return root
    return configure_logging(level, log_file)


def set_level(level: int) -> None:
    """Change the level of the root logger and every handler on it."""
    root = logging.getLogger(ROOT)
    root.setLevel(level)
    for handler in root.handlers:
        handler.setLevel(level)
