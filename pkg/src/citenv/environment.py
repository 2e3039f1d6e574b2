"""Citation environment extraction around a seed journal.

An environment is the set of journals that cite (or are cited by) the seed
above a fractional threshold of the seed's citation total in that direction,
always including the seed itself. The directional variants can differ
sharply for the same seed; ``combined`` takes the union of both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import EmptyDirectionError
from .store import CitationDataset

Direction = Literal["cited", "citing", "combined"]

DEFAULT_THRESHOLD = 0.01
DEFAULT_CELL_FLOOR = 2

# Relative slack absorbing float noise in threshold * total (e.g. 100 * 0.07
# evaluating to 7.000000000000001 must still give a minimum count of 7).
_REL_EPS = 1e-9


@dataclass(frozen=True)
class Environment:
    seed: str
    direction: Direction
    threshold_fraction: float
    members: tuple[str, ...]  # sorted by label, case-insensitive; seed included


@dataclass(frozen=True, eq=False)
class EnvironmentMatrix:
    """Dense citing x cited submatrix over the environment members.

    Cells below ``cell_floor`` are zeroed before the grandsum is taken, so
    ``grandsum`` is exactly the sum of the retained cells.
    """

    members: tuple[str, ...]
    cells: np.ndarray  # |members| x |members|, rows citing, columns cited
    grandsum: int
    cell_floor: int

    def __post_init__(self):
        self.cells.setflags(write=False)


def min_count(total: int, threshold_fraction: float) -> int:
    """Smallest integer k with k >= threshold_fraction * total.

    A raw count qualifies for the environment iff it is >= the returned
    value; exact equality with an integral product qualifies.
    """
    if total < 0:
        raise ValueError("total must be non-negative")
    if not 0.0 < threshold_fraction < 1.0:
        raise ValueError("threshold_fraction must lie in (0, 1)")
    product = threshold_fraction * total
    nearest = round(product)
    if abs(product - nearest) <= _REL_EPS * max(1.0, abs(product)):
        return int(nearest)
    return math.ceil(product)


def _qualifying(counts: dict[str, int], total: int, threshold_fraction: float) -> set[str]:
    floor = min_count(total, threshold_fraction)
    return {j for j, c in counts.items() if c >= floor}


def extract(
    dataset: CitationDataset,
    seed: str,
    direction: Direction,
    threshold_fraction: float = DEFAULT_THRESHOLD,
) -> Environment:
    """Collect the seed's citation environment in the given direction.

    cited: journals whose citations *to* the seed reach the threshold share
    of the seed's total-cited. citing: journals the seed cites that often,
    relative to its total-citing. combined: union of both perspectives.
    """
    record = dataset.journal(seed)
    members: set[str] = {seed}

    if direction in ("cited", "combined"):
        if record.total_cited > 0:
            members |= _qualifying(dataset.col(seed), record.total_cited, threshold_fraction)
        elif direction == "cited":
            raise EmptyDirectionError(
                f"{seed!r} has no recorded citations in the cited direction;"
                " try direction='citing'"
            )
    if direction in ("citing", "combined"):
        if record.total_citing > 0:
            members |= _qualifying(dataset.row(seed), record.total_citing, threshold_fraction)
        elif direction == "citing":
            raise EmptyDirectionError(
                f"{seed!r} has no recorded citations in the citing direction;"
                " try direction='cited'"
            )
    if direction == "combined" and record.total_cited == 0 and record.total_citing == 0:
        raise EmptyDirectionError(f"{seed!r} has no recorded citations in either direction")

    ordered = sorted(members, key=lambda i: (dataset.journal(i).label.casefold(), i))
    return Environment(
        seed=seed,
        direction=direction,
        threshold_fraction=threshold_fraction,
        members=tuple(ordered),
    )


def build_matrix(
    dataset: CitationDataset,
    environment: Environment,
    cell_floor: int = DEFAULT_CELL_FLOOR,
) -> EnvironmentMatrix:
    """Dense submatrix over the environment members with small cells zeroed.

    The default floor of 2 mirrors source data in which single relations are
    suppressed into the tail; pass 1 for unsuppressed data.
    """
    if cell_floor < 1:
        raise ValueError("cell_floor must be >= 1")
    members = environment.members
    index = {m: i for i, m in enumerate(members)}
    n = len(members)
    cells = np.zeros((n, n), dtype=np.int64)
    for i, citing in enumerate(members):
        for cited, count in dataset.row(citing).items():
            j = index.get(cited)
            if j is not None and count >= cell_floor:
                cells[i, j] = count
    return EnvironmentMatrix(
        members=members,
        cells=cells,
        grandsum=int(cells.sum()),
        cell_floor=cell_floor,
    )
