"""
Disk cache of fine-grid reference solutions.

Files are CSV, one per (problem, N, t), named `<problem>_n<N>_t<t>.csv`,
with columns `x,rho,mom,energy` holding conserved cell averages written
with 17 significant digits.
"""

import os
from typing import Callable, Tuple

import numpy as np
import pandas as pd
from cachetools import LRUCache

from app.exceptions import OutputError
from app.utils.log import get_logger

REFERENCE_COLUMNS = ['x', 'rho', 'mom', 'energy']


class ReferenceCache:
    """
    Reference solutions keyed by (problem, N, t), kept in memory and on disk.
    """

    def __init__(self, directory: str, maxsize: int = 8):
        self.directory = directory
        self._memory: LRUCache = LRUCache(maxsize=maxsize)
        self.logger = get_logger(__name__)

    def filename(self, problem: str, n: int, time: float) -> str:
        return os.path.join(self.directory, f"{problem}_n{n}_t{time:g}.csv")

    def get(
        self,
        problem: str,
        n: int,
        time: float,
        compute: Callable[[], Tuple[np.ndarray, np.ndarray]]
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        Load a reference solution, computing and storing it on a miss.

        Args:
            problem: Problem id value
            n: Reference grid size
            time: Output time
            compute: Returns (centers, conserved) with conserved shaped (3, n)

        Returns:
            (centers, conserved)
        """
        key = (problem, n, float(time))
        if key in self._memory:
            return self._memory[key]

        path = self.filename(problem, n, time)
        if os.path.exists(path):
            frame = pd.read_csv(path)
            result = (frame['x'].to_numpy(), frame[REFERENCE_COLUMNS[1:]].to_numpy().T)
            self.logger.info(f"Loaded reference solution {path}")
        else:
            self.logger.info(f"Computing reference solution for {problem} with N={n} at t={time:g}")
            result = compute()
            self._store(path, *result)

        self._memory[key] = result
        return result

    def _store(self, path: str, centers: np.ndarray, conserved: np.ndarray) -> None:
        frame = pd.DataFrame({'x': centers})
        for name, values in zip(REFERENCE_COLUMNS[1:], conserved):
            frame[name] = values
        try:
            os.makedirs(self.directory, exist_ok=True)
            frame.to_csv(path, index=False, float_format='%.17g')
        except OSError as e:
            self.logger.error(f"Failed to store reference solution {path}: {str(e)}")
            raise OutputError(f"cannot write reference solution {path}: {e}") from e
