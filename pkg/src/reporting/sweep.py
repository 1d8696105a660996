import numpy as np
import pandas as pd

from src.core.bounds import classify_region_Q, classify_region_R, omega1_range
from src.core.conditions import realizable
from src.core.errors import InvalidArgument
from src.core.spectra import MatrixClass, RealTriple, Tolerance
from src.utils.logger import get_logger

logger = get_logger(__name__)

# grid points this far outside region R still count as inside
REGION_SLACK = 1e-12


def column_key(matrix_class: MatrixClass) -> str:
    return matrix_class.label.replace("-", "_")


class RegionSweep:
    """Realizability, ω1 ranges and region labels over region R with λ1 = 1."""

    def __init__(self, grid: int, tol: Tolerance):
        if grid < 2:
            raise InvalidArgument(f"Sweep grid must be at least 2, got {grid}")
        self.grid = grid
        self.tol = tol

    def points(self):
        for l2 in np.linspace(-0.5, 1.0, self.grid):
            for l3 in np.linspace(-1.0, 1.0, self.grid):
                if l3 <= l2 and l3 >= -(2.0 + l2) / 3 - REGION_SLACK:
                    yield float(l2), float(l3)

    def row(self, l2: float, l3: float) -> dict:
        s = RealTriple(1.0, l2, l3)
        row = {"lambda2": l2, "lambda3": l3}
        for matrix_class in MatrixClass:
            key = column_key(matrix_class)
            row[f"realizable_{key}"] = realizable(matrix_class, s, self.tol).satisfied
            interval = omega1_range(matrix_class, s, self.tol)
            row[f"lo_{key}"] = interval.lo
            row[f"hi_{key}"] = interval.hi
        row["region_R"] = classify_region_R(s, self.tol).value
        row["region_Q"] = classify_region_Q(s, self.tol).value
        return row

    def build(self) -> pd.DataFrame:
        try:
            frame = pd.DataFrame([self.row(l2, l3) for l2, l3 in self.points()])
            logger.info(f"Sweep over region R at grid {self.grid}: {len(frame)} rows")
            return frame
        except Exception as e:
            logger.error(f"Sweep failed at grid {self.grid}: {e}", exc_info=True)
            raise
