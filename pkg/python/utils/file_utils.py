"""
File I/O and JSON report utilities
"""
import json
import re
import numpy as np
from pathlib import Path
from typing import Any, Sequence


class NumpyEncoder(json.JSONEncoder):
    """JSON encoder that handles numpy types"""
    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, np.bool_):
            return bool(obj)
        return super().default(obj)


class FileUtils:
    """File and JSON utilities for command reports"""

    @staticmethod
    def ensure_directory(path: Path) -> Path:
        """Ensure directory exists, create if needed"""
        path.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def dumps(data: Any, indent: int = 2) -> str:
        """Canonical JSON text: sorted keys so identical reports print identically"""
        return json.dumps(data, indent=indent, sort_keys=True, ensure_ascii=False, cls=NumpyEncoder)

    @staticmethod
    def to_native(data: Any) -> Any:
        """Round-trip through the encoder so numpy scalars become plain Python values"""
        return json.loads(FileUtils.dumps(data))

    @staticmethod
    def report_filename(command: str, n: int, t: int, u: Sequence[int], suffix: str = "json") -> str:
        """
        File name for a saved report, e.g. ``dual_n9_t2_u2-4-9.json``

        Args:
            command: CLI subcommand that produced the report
            n: Ambient variable count
            t: Spread parameter
            u: Borel generator as index list
        """
        safe_command = re.sub(r'[^a-z0-9]+', '_', command.lower()).strip('_') or "report"
        u_part = "-".join(str(i) for i in u)
        return f"{safe_command}_n{n}_t{t}_u{u_part}.{suffix}"

    @staticmethod
    def write_json(data: Any, file_path: Path, indent: int = 2) -> None:
        """Write data to JSON file with proper formatting"""
        with open(file_path, 'w', encoding='utf-8') as f:
            f.write(FileUtils.dumps(data, indent=indent))
            f.write("\n")

    @staticmethod
    def read_json(file_path: Path) -> Any:
        """Read data from JSON file"""
        with open(file_path, 'r', encoding='utf-8') as f:
            return json.load(f)
