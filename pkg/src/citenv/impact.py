"""Local citation impact and activity shares over an environment matrix.

A member's share is its margin within the environment as a percentage of the
grandsum: column sums measure impact (being cited), row sums measure citing
activity. The within-journal cell is reported both ways: included (the
vertical node size downstream) and excluded (the horizontal one), so the
shape of a node shows how much of a journal's local weight is an inner
circle citing itself. Shares are environment-dependent by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import EmptyMatrixError
from .store import CitationDataset

ShareAxis = Literal["cited", "citing"]


@dataclass(frozen=True)
class MemberShare:
    member: str
    share_incl: float  # percent of grandsum, within-journal cell included
    share_excl: float  # percent after subtracting the within-journal cell
    raw_in_env: int | None = None  # margin count inside the environment
    self_count: int | None = None  # diagonal cell


@dataclass(frozen=True)
class ImpactShares:
    direction: ShareAxis
    grandsum: int
    shares: tuple[MemberShare, ...]

    def by_member(self, member: str) -> MemberShare:
        for share in self.shares:
            if share.member == member:
                return share
        raise KeyError(member)


@dataclass(frozen=True)
class SelfCitationProfile:
    self_count: int
    total_cited: int
    percent: float


def share_values(raw_in_env: int, self_count: int, grandsum: int) -> tuple[float, float]:
    """(including, excluding) percentage shares of the grandsum.

    Full precision is kept here; rounding to 6 decimals happens only at
    export time.
    """
    if grandsum <= 0:
        raise EmptyMatrixError("empty environment matrix")
    return (
        100.0 * raw_in_env / grandsum,
        100.0 * (raw_in_env - self_count) / grandsum,
    )


def local_shares(env_matrix, direction: ShareAxis) -> ImpactShares:
    """Per-member impact (cited) or activity (citing) shares of the grandsum."""
    if direction not in ("cited", "citing"):
        raise ValueError(f"direction must be 'cited' or 'citing', got {direction!r}")
    if env_matrix.grandsum <= 0:
        raise EmptyMatrixError("empty environment matrix")
    cells = np.asarray(env_matrix.cells)
    axis = 0 if direction == "cited" else 1  # column sums for cited maps
    margins = cells.sum(axis=axis)
    diagonal = np.diag(cells)
    shares = []
    for i, member in enumerate(env_matrix.members):
        incl, excl = share_values(int(margins[i]), int(diagonal[i]), env_matrix.grandsum)
        shares.append(
            MemberShare(
                member=member,
                share_incl=incl,
                share_excl=excl,
                raw_in_env=int(margins[i]),
                self_count=int(diagonal[i]),
            )
        )
    return ImpactShares(direction=direction, grandsum=env_matrix.grandsum, shares=tuple(shares))


def self_citation_profile(dataset: CitationDataset, journal_id: str) -> SelfCitationProfile:
    """Within-journal citations against the journal's full being-cited total."""
    record = dataset.journal(journal_id)
    if record.total_cited <= 0:
        raise EmptyMatrixError(f"{journal_id!r} has no recorded cited total")
    self_count = dataset.count(journal_id, journal_id)
    return SelfCitationProfile(
        self_count=self_count,
        total_cited=record.total_cited,
        percent=100.0 * self_count / record.total_cited,
    )
