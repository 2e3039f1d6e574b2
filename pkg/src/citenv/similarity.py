"""Cosine normalization of environment matrices.

Every pair of members is compared through the cosine of the angle between
their citation profiles: being-cited columns for cited maps, citing rows for
citing maps. The cosine ignores the arithmetic mean, which keeps sparse
profiles comparable, and stays within [0, 1] for count data. Values under
the display cutoff are stored as exact zeros so that exports are stable.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 0.2

VectorAxis = Literal["cited", "citing"]


@dataclass(frozen=True, eq=False)
class CosineMatrix:
    """Symmetric member-by-member cosine values with a zero diagonal."""

    members: tuple[str, ...]
    values: np.ndarray
    cutoff: float
    vector_axis: VectorAxis
    include_diagonal: bool

    def __post_init__(self):
        self.values.setflags(write=False)

    def value(self, a: str, b: str) -> float:
        i, j = self.members.index(a), self.members.index(b)
        return float(self.values[i, j])

    def edges(self) -> list[tuple[int, int, float]]:
        """Retained pairs (i < j) with their cosine, in index order."""
        n = len(self.members)
        return [
            (i, j, float(self.values[i, j]))
            for i in range(n)
            for j in range(i + 1, n)
            if self.values[i, j] > 0.0
        ]


def cosine(x: Sequence[float], y: Sequence[float]) -> float:
    """Cosine of the angle between two equal-length non-negative vectors.

    A zero vector is not an error: the pair is maximally dissimilar and the
    result is 0 by convention (logged, since it usually means an uncited or
    inactive journal).
    """
    if len(x) != len(y):
        raise ValueError(f"vector lengths differ: {len(x)} vs {len(y)}")
    if len(x) == 0:
        raise ValueError("vectors must have at least one component")
    nx = math.sqrt(math.fsum(v * v for v in x))
    ny = math.sqrt(math.fsum(v * v for v in y))
    if nx == 0.0 or ny == 0.0:
        logger.debug("cosine of a zero vector requested; returning 0 by convention")
        return 0.0
    return math.fsum(a * b for a, b in zip(x, y)) / (nx * ny)


def apply_cutoff(values: np.ndarray, cutoff: float) -> np.ndarray:
    """Zero all off-diagonal entries strictly below ``cutoff`` (diagonal too)."""
    out = np.array(values, dtype=float, copy=True)
    out[out < cutoff] = 0.0
    np.fill_diagonal(out, 0.0)
    return out


def cosine_map(
    env_matrix,
    direction: VectorAxis,
    include_diagonal: bool = True,
    cutoff: float = DEFAULT_CUTOFF,
) -> CosineMatrix:
    """All pairwise cosines between member profiles of an environment matrix.

    ``direction`` selects the profile axis: columns for cited maps, rows for
    citing maps. ``include_diagonal`` controls whether the within-journal
    cell participates in the profiles. Cosines below ``cutoff`` are stored
    as exact 0; the diagonal is always 0.
    """
    if direction not in ("cited", "citing"):
        raise ValueError(f"direction must be 'cited' or 'citing', got {direction!r}")
    cells = np.asarray(env_matrix.cells, dtype=float)
    if not include_diagonal:
        cells = cells.copy()
        np.fill_diagonal(cells, 0.0)
    profiles = cells if direction == "citing" else cells.T  # one profile per row

    gram = profiles @ profiles.T
    norms = np.sqrt(np.diag(gram))
    zero = norms == 0.0
    if zero.any():
        logger.debug(
            "%d member(s) have an all-zero %s profile; their cosines are 0",
            int(zero.sum()),
            direction,
        )
    safe = np.where(zero, 1.0, norms)
    values = gram / np.outer(safe, safe)
    values[zero, :] = 0.0
    values[:, zero] = 0.0
    # Mirror the upper triangle and clip; guarantees exact symmetry and range
    # even when the matrix product rounds asymmetrically.
    upper = np.triu(values, k=1)
    values = np.clip(upper + upper.T, 0.0, 1.0)
    values = apply_cutoff(values, cutoff)

    return CosineMatrix(
        members=tuple(env_matrix.members),
        values=values,
        cutoff=cutoff,
        vector_axis=direction,
        include_diagonal=include_diagonal,
    )
