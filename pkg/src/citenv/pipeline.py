"""Composition of the full pipeline into map documents, batch trees and
factor reports.

Everything downstream of a dataset is a pure function of the request, so
the HTTP handlers, the CLI and the batch exporter all derive their output
from the same :class:`~citenv.netio.MapDocument`; there is no second code
path that could drift.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from pathlib import Path

from .environment import build_matrix, extract
from .errors import CitenvError, EmptyDirectionError, EmptyMatrixError
from .factors import correlation_matrix, format_loadings_table, pca, rotate_loadings
from .impact import local_shares
from .layout import kk_layout, target_distances
from .netio import MapDocument, Provenance, write_pajek
from .service.schemas import (
    DEGENERATE_THRESHOLD_HINT,
    EnvironmentPayload,
    EnvironmentRequest,
    FactorPayload,
    FactorRequest,
)
from .similarity import cosine_map
from .store import CitationDataset

TOTALS_DERIVED_WARNING = (
    "journal totals were derived from the stored margins; thresholds are"
    " relative to the stored sums, not full citation totals"
)


def _map_axis(direction: str) -> str:
    # Combined membership is mapped on the being-cited axis (impact view).
    return "citing" if direction == "citing" else "cited"


def _factor_axis(direction: str) -> str:
    # Factor tables validate citing patterns unless explicitly cited-side.
    return "cited" if direction == "cited" else "citing"


def build_map_document(
    dataset: CitationDataset, request: EnvironmentRequest
) -> tuple[MapDocument, list[str]]:
    """Run extract -> matrix -> cosines -> shares (-> layout) for a request."""
    env = extract(dataset, request.seed, request.direction, request.threshold_fraction)
    axis = _map_axis(request.direction)
    matrix = build_matrix(dataset, env, request.cell_floor)
    cosines = cosine_map(
        matrix, axis, include_diagonal=request.include_diagonal, cutoff=request.cosine_cutoff
    )
    shares = local_shares(matrix, axis)
    layout = None
    if request.want_layout:
        layout = kk_layout(target_distances(cosines), request.rng_seed)

    warnings: list[str] = []
    if len(env.members) == 1:
        warnings.append(
            f"environment of {request.seed!r} contains no other journal at threshold"
            f" {request.threshold_fraction:g}; consider threshold_fraction ="
            f" {DEGENERATE_THRESHOLD_HINT}"
        )
    if dataset.totals_derived:
        warnings.append(TOTALS_DERIVED_WARNING)

    notes = []
    if request.direction == "combined":
        notes.append(f"combined membership mapped on the {axis} axis")
    provenance = Provenance(
        seed=request.seed,
        direction=request.direction,
        threshold_fraction=request.threshold_fraction,
        cosine_cutoff=request.cosine_cutoff,
        cell_floor=request.cell_floor,
        include_diagonal=request.include_diagonal,
        year_tag=dataset.year_tag,
        totals_derived=dataset.totals_derived,
        rng_seed=request.rng_seed if request.want_layout else None,
        grandsum=matrix.grandsum,
        notes=tuple(notes),
    )
    labels = tuple(dataset.journal(m).label for m in env.members)
    doc = MapDocument(
        members=env.members,
        labels=labels,
        shares=shares,
        cosines=cosines,
        layout=layout,
        provenance=provenance,
    )
    return doc, warnings


def handle_environment(dataset: CitationDataset, request: EnvironmentRequest) -> EnvironmentPayload:
    """The environment endpoint/CLI payload for one request."""
    doc, warnings = build_map_document(dataset, request)
    return EnvironmentPayload.from_document(doc, warnings)


@dataclass(frozen=True)
class BatchResult:
    root: Path
    index_path: Path
    files: tuple[Path, ...]
    skipped: tuple[tuple[str, str, str], ...]  # (label, direction, reason)


class BatchExportError(CitenvError):
    """Raised when the export aborts mid-tree; lists what was written."""

    def __init__(self, message: str, written: list[Path]):
        super().__init__(f"{message}; partial tree: {len(written)} file(s) already written")
        self.written = tuple(written)


def batch_export(
    dataset: CitationDataset,
    output_root: str | Path,
    threshold_fraction: float = 0.01,
    cosine_cutoff: float = 0.2,
    cell_floor: int = 2,
    include_diagonal: bool = True,
    max_workers: int = 4,
) -> BatchResult:
    """Write cited/ and citing/ Pajek files for every journal, plus an index.

    File indices are the journals' alphabetical ranks, so re-running on the
    same dataset reproduces the tree byte for byte. Journals without
    citations in a direction (or whose floored matrix is empty) are skipped
    and noted in the index.
    """
    root = Path(output_root)
    tasks = []  # (rank, journal, direction)
    for rank, journal in enumerate(dataset.journals, start=1):
        for direction in ("cited", "citing"):
            tasks.append((rank, journal, direction))

    def compute(task):
        rank, journal, direction = task
        total = journal.total_cited if direction == "cited" else journal.total_citing
        if total == 0:
            return task, None, "no citations in this direction"
        request = EnvironmentRequest(
            seed=journal.id,
            direction=direction,
            threshold_fraction=threshold_fraction,
            cosine_cutoff=cosine_cutoff,
            cell_floor=cell_floor,
            include_diagonal=include_diagonal,
            want_layout=False,
        )
        try:
            doc, _ = build_map_document(dataset, request)
        except (EmptyMatrixError, EmptyDirectionError) as exc:
            return task, None, str(exc)
        return task, write_pajek(doc), ""

    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(pool.map(compute, tasks))

    written: list[Path] = []
    skipped: list[tuple[str, str, str]] = []
    index_rows: dict[tuple[int, str], dict[str, str]] = {}
    try:
        for direction in ("cited", "citing"):
            (root / direction).mkdir(parents=True, exist_ok=True)
        for (rank, journal, direction), text, reason in results:
            row = index_rows.setdefault((rank, journal.label), {"cited": "-", "citing": "-"})
            if text is None:
                skipped.append((journal.label, direction, reason))
                continue
            relative = f"{direction}/v{rank}.txt"
            (root / relative).write_text(text, encoding="utf-8", newline="")
            written.append(root / relative)
            row[direction] = relative
        index_lines = []
        if dataset.totals_derived:
            index_lines.append("# totals derived from stored margins")
        index_lines.append("index\tlabel\tcited\tciting")
        for (rank, label), row in sorted(index_rows.items()):
            index_lines.append(f"v{rank}\t{label}\t{row['cited']}\t{row['citing']}")
        index_path = root / "index.txt"
        index_path.write_text("\n".join(index_lines) + "\n", encoding="utf-8", newline="")
    except OSError as exc:
        raise BatchExportError(f"batch export aborted: {exc}", written) from exc

    return BatchResult(
        root=root,
        index_path=index_path,
        files=tuple(written),
        skipped=tuple(skipped),
    )


def factor_report(dataset: CitationDataset, request: FactorRequest) -> FactorPayload:
    """Correlation -> principal components -> varimax for an environment."""
    env = extract(dataset, request.seed, request.direction, request.threshold_fraction)
    if len(env.members) < 3:
        raise CitenvError(
            f"insufficient variables: environment of {request.seed!r} has only"
            f" {len(env.members)} member(s); factor analysis needs at least 3"
        )
    matrix = build_matrix(dataset, env, request.cell_floor)
    axis = _factor_axis(request.direction)
    correlation = correlation_matrix(matrix, axis)
    if len(correlation.variables) < 3:
        raise CitenvError(
            "insufficient variables: fewer than 3 non-constant profiles remain"
        )
    label_of = {m: dataset.journal(m).label for m in env.members}
    unrotated = pca(
        correlation.values,
        k=request.components,
        variables=[label_of[m] for m in correlation.variables],
    )
    rotated = rotate_loadings(unrotated) if unrotated.n_components >= 2 else unrotated

    warnings = []
    if correlation.dropped:
        warnings.append(
            "dropped constant-profile variable(s): "
            + ", ".join(label_of[m] for m in correlation.dropped)
        )
    if rotated.n_components == len(correlation.variables):
        warnings.append(
            "component count equals the variable count: no factor structure detected"
        )

    return FactorPayload(
        seed=request.seed,
        direction=request.direction,
        variables=list(rotated.variables),
        dropped=[label_of[m] for m in correlation.dropped],
        components=rotated.n_components,
        eigenvalues=[round(float(v), 6) for v in rotated.eigenvalues],
        loadings=[[round(float(v), 6) for v in row] for row in rotated.loadings],
        variance_explained_percent=round(rotated.variance_explained_percent, 6),
        rotation_iterations=rotated.rotation_iterations,
        report=format_loadings_table(rotated),
        warnings=warnings,
    )
