from .io import read_file, stable_json_dumps, write_file, write_json_immutable
from .logger import get_logger

__all__ = ["read_file", "write_file", "stable_json_dumps", "write_json_immutable", "get_logger"]
