"""Request and response models for the exploration API.

These define the wire contract: the CLI is a thin client over the same
models, so a JSON payload streamed to stdout and an API response for the
same request are identical. Numeric fields are rounded to 6 decimals at
this boundary, matching the file exports.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

Direction = Literal["cited", "citing", "combined"]

DEGENERATE_THRESHOLD_HINT = 0.001


class EnvironmentRequest(BaseModel):
    """Parameters of one environment extraction; defaults are the standard
    pipeline values (1% threshold, 0.2 cutoff, cell floor 2, diagonal in)."""

    seed: str = Field(min_length=1)
    direction: Direction = "cited"
    threshold_fraction: float = Field(default=0.01, gt=0.0, lt=1.0)
    cosine_cutoff: float = Field(default=0.2, ge=0.0, le=1.0)
    cell_floor: int = Field(default=2, ge=1)
    include_diagonal: bool = True
    want_layout: bool = True
    rng_seed: int = 0


class FactorRequest(BaseModel):
    seed: str = Field(min_length=1)
    direction: Direction = "citing"
    threshold_fraction: float = Field(default=0.01, gt=0.0, lt=1.0)
    cell_floor: int = Field(default=2, ge=1)
    components: int | None = Field(default=None, ge=1)


class MemberShareModel(BaseModel):
    member: str
    label: str
    share_incl: float
    share_excl: float
    raw_in_env: int | None = None
    self_count: int | None = None


class EdgeModel(BaseModel):
    source: str
    target: str
    cosine: float


class CoordinateModel(BaseModel):
    member: str
    x: float
    y: float


class ProvenanceModel(BaseModel):
    seed: str
    direction: str
    threshold_fraction: float
    cosine_cutoff: float
    cell_floor: int
    include_diagonal: bool
    year_tag: str = ""
    totals_derived: bool = False
    rng_seed: int | None = None
    grandsum: int | None = None
    notes: list[str] = []


class EnvironmentPayload(BaseModel):
    seed: str
    direction: Direction
    members: list[str]
    labels: list[str]
    shares: list[MemberShareModel]
    edges: list[EdgeModel]
    coordinates: list[CoordinateModel] | None = None
    provenance: ProvenanceModel
    warnings: list[str] = []

    @classmethod
    def from_document(cls, doc, warnings: list[str]) -> "EnvironmentPayload":
        prov = doc.provenance
        coordinates = None
        if doc.layout is not None:
            coordinates = [
                CoordinateModel(member=m, x=round(float(x), 6), y=round(float(y), 6))
                for m, (x, y) in zip(doc.members, doc.layout.coords)
            ]
        return cls(
            seed=prov.seed,
            direction=prov.direction,
            members=list(doc.members),
            labels=list(doc.labels),
            shares=[
                MemberShareModel(
                    member=s.member,
                    label=label,
                    share_incl=round(s.share_incl, 6),
                    share_excl=round(s.share_excl, 6),
                    raw_in_env=s.raw_in_env,
                    self_count=s.self_count,
                )
                for s, label in zip(doc.shares.shares, doc.labels)
            ],
            edges=[
                EdgeModel(
                    source=doc.members[i],
                    target=doc.members[j],
                    cosine=round(value, 6),
                )
                for i, j, value in doc.cosines.edges()
            ],
            coordinates=coordinates,
            provenance=ProvenanceModel(
                seed=prov.seed,
                direction=prov.direction,
                threshold_fraction=prov.threshold_fraction,
                cosine_cutoff=prov.cosine_cutoff,
                cell_floor=prov.cell_floor,
                include_diagonal=prov.include_diagonal,
                year_tag=prov.year_tag,
                totals_derived=prov.totals_derived,
                rng_seed=prov.rng_seed,
                grandsum=prov.grandsum,
                notes=list(prov.notes),
            ),
            warnings=warnings,
        )


class JournalInfo(BaseModel):
    id: str
    label: str
    total_citing: int
    total_cited: int


class StatsPayload(BaseModel):
    n_source_journals: int
    n_unprocessed_citing: int
    n_unique_relations: int
    density_percent: float
    sum_relations: int
    total_citing: int
    total_cited: int
    within_journal_total: int
    year_tag: str = ""
    totals_derived: bool = False


class FactorPayload(BaseModel):
    seed: str
    direction: Direction
    variables: list[str]
    dropped: list[str]
    components: int
    eigenvalues: list[float]
    loadings: list[list[float]]
    variance_explained_percent: float
    rotation_iterations: int
    report: str
    warnings: list[str] = []
