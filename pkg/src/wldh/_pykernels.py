"""Interpreted twins of the compiled kernels (numpy, no compilation)."""
from __future__ import annotations

import numpy as np


def pair_keys(color: np.ndarray, k: int) -> np.ndarray:
    """Refinement keys of all pairs, one row per pair ``a*n + b``.

    Column 0 is ``color[a, b]``; columns ``1..n`` are the codes
    ``color[a, g] * k + color[g, b]`` over all ``g``, sorted ascending.
    """
    c = np.asarray(color, dtype=np.int64)
    n = c.shape[0]
    # codes[a, b, g] = c[a, g] * k + c[g, b]
    codes = c[:, None, :] * k + c.T[None, :, :]
    codes.sort(axis=2)
    out = np.empty((n * n, n + 1), dtype=np.int64)
    out[:, 0] = c.ravel()
    out[:, 1:] = codes.reshape(n * n, n)
    return out


def rank_rows(keys: np.ndarray) -> np.ndarray:
    """Dense lexicographic rank of each row of an int64 matrix."""
    m = np.asarray(keys, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return np.zeros(rows, dtype=np.int64)
    order = np.lexsort(m.T[::-1])
    srt = m[order]
    step = np.any(srt[1:] != srt[:-1], axis=1)
    ranks = np.empty(rows, dtype=np.int64)
    ranks[order] = np.concatenate(([0], np.cumsum(step)))
    return ranks
