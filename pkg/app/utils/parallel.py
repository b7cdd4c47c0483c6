"""
Deterministic chunked execution over independent faces.

Every chunk writes a disjoint slice of the output, so the result does not
depend on the worker count.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List

import numpy as np


def chunk_slices(n: int, workers: int) -> List[slice]:
    """Split range(n) into at most `workers` contiguous slices."""
    workers = max(1, min(int(workers), n)) if n > 0 else 1
    bounds = np.linspace(0, n, workers + 1).round().astype(int)
    return [slice(int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def map_chunks(
    func: Callable[[slice], np.ndarray],
    n: int,
    workers: int = 1,
    axis: int = -1
) -> np.ndarray:
    """
    Evaluate `func` on contiguous slices of range(n) and concatenate.

    Args:
        func: Computes the output block for one slice
        n: Number of independent items (faces)
        workers: Thread count; 1 runs inline
        axis: Axis along which the blocks are concatenated

    Returns:
        Concatenated result in slice order
    """
    slices = chunk_slices(n, workers)
    if len(slices) <= 1:
        return func(slice(0, n))

    with ThreadPoolExecutor(max_workers=len(slices)) as pool:
        blocks = list(pool.map(func, slices))

    return np.concatenate(blocks, axis=axis)
