import glob
import json
from pathlib import Path
from typing import Any, Dict, List


def write_text_file(path: str, content: str) -> str:
    """Write content to path, creating parent directories.

    Args:
        path (str): File path
        content (str): Content to write

    Returns:
        str: The path written
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(content, encoding="utf-8")
    return str(target)


def read_text_file(path: str) -> str:
    """Read a UTF-8 text file; OSError propagates to the caller."""
    return Path(path).read_text(encoding="utf-8")


def expand_glob(pattern: str) -> List[str]:
    """Files matching pattern in sorted order, directories skipped."""
    return sorted(p for p in glob.glob(pattern, recursive=True) if Path(p).is_file())


def dump_json(data: Dict[str, Any]) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def dump_json_line(data: Dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))
