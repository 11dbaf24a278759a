import datetime
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from .. import __version__

logger = logging.getLogger(__name__)


class RunRecorder:
    def __init__(self, base_path: str):
        """Initialize the run recorder.

        Args:
            base_path (str): Directory under which records are kept
        """
        self.base_path = Path(base_path)
        self.runs_path = self.base_path / "runs"
        self.runs_path.mkdir(parents=True, exist_ok=True)

    def record_run(
        self,
        command: str,
        arguments: Dict[str, Any],
        exit_code: int,
        summary: Optional[Dict[str, Any]] = None,
    ) -> str:
        """Write one YAML record for a CLI run.

        Args:
            command (str): Subcommand name
            arguments (Dict[str, Any]): Parsed arguments
            exit_code (int): Process exit code
            summary (Optional[Dict[str, Any]]): Report highlights such as width or chi

        Returns:
            str: Path to the record
        """
        now = datetime.datetime.now()
        stem = f"{command}_{now.strftime('%Y%m%d_%H%M%S_%f')}"
        record_path = self.runs_path / f"{stem}.yaml"
        record = {
            "timestamp": now.isoformat(),
            "version": __version__,
            "command": command,
            "arguments": {k: v for k, v in arguments.items() if isinstance(v, (str, int, float, bool, type(None)))},
            "exit_code": exit_code,
            "verdict": _verdict(exit_code),
            "summary": summary or {},
        }
        with open(record_path, "w", encoding="utf-8") as f:
            yaml.dump(record, f, sort_keys=False)
        logger.debug("run record written to %s", record_path)
        return str(record_path)

    def list_runs(self, command: Optional[str] = None) -> List[str]:
        pattern = f"{command}_*.yaml" if command else "*.yaml"
        return sorted(str(p) for p in self.runs_path.glob(pattern))

    def load_run(self, path: str) -> Dict[str, Any]:
        with open(path, "r", encoding="utf-8") as f:
            return yaml.safe_load(f) or {}


def _verdict(exit_code: int) -> str:
    return {0: "ok", 1: "negative"}.get(exit_code, "input-error")
