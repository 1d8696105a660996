import json
import sys
from pathlib import Path
from typing import Optional

import pandas as pd

from config.config import CSV_FLOAT_FORMAT
from src.core.errors import InvalidArgument, NonFinite
from src.core.spectra import Matrix3
from src.utils.logger import get_logger

logger = get_logger(__name__)


class ResultStorage:
    """
    Writes JSON reports and CSV tables to a file or stdout, and reads
    matrix files (a JSON array of 3 arrays of 3 numbers).
    """

    def __init__(self, stdout=None, stdin=None):
        self.stdout = stdout
        self.stdin = stdin

    def _ensure_parent(self, path: Path):
        path.parent.mkdir(parents=True, exist_ok=True)
        logger.debug(f"Ensured directory exists: {path.parent}")

    def save_json(self, payload: dict, out: Optional[str] = None):
        text = json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False)
        if out is None:
            print(text, file=self.stdout or sys.stdout)
            return
        path = Path(out)
        self._ensure_parent(path)
        path.write_text(text + "\n", encoding="utf-8")
        logger.info(f"Saved JSON report to {path.resolve()}")

    def save_csv(self, frame: pd.DataFrame, out: Optional[str] = None):
        if frame.empty:
            logger.warning("Empty table; writing header only")
        if out is None:
            frame.to_csv(self.stdout or sys.stdout, index=False, float_format=CSV_FLOAT_FORMAT)
            return
        path = Path(out)
        self._ensure_parent(path)
        frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
        logger.info(f"Saved CSV for {len(frame)} rows to {path.resolve()}")

    def load_matrix(self, source: str = "-") -> Matrix3:
        try:
            if source == "-":
                text = (self.stdin or sys.stdin).read()
            else:
                text = Path(source).read_text(encoding="utf-8")
            data = json.loads(text)
        except (OSError, json.JSONDecodeError) as e:
            raise InvalidArgument(f"Failed to read matrix from {source}: {e}")

        if not (isinstance(data, list) and len(data) == 3 and all(isinstance(row, list) and len(row) == 3 for row in data)):
            raise InvalidArgument(f"Matrix in {source} must be a JSON array of 3 arrays of 3 numbers")
        try:
            matrix = Matrix3([[float(x) for x in row] for row in data])
        except (TypeError, ValueError) as e:
            if isinstance(e, NonFinite):
                raise
            raise InvalidArgument(f"Matrix in {source} has a non-numeric entry: {e}")
        logger.debug(f"Loaded matrix from {source}")
        return matrix
