"""Citation environment analysis: extraction, cosine maps, local impact,
spring layouts, factor validation, and graph file interchange."""

__version__ = "0.1.0"

from .environment import Environment, EnvironmentMatrix, build_matrix, extract, min_count
from .errors import (
    CitenvError,
    EmptyDirectionError,
    EmptyMatrixError,
    FormatError,
    IngestError,
    UnknownJournalError,
)
from .factors import correlation_matrix, pca, varimax
from .impact import ImpactShares, local_shares, self_citation_profile
from .layout import kk_layout, spring_energy, spring_gradient, target_distances
from .netio import MapDocument, Provenance, parse_dl, parse_pajek, write_dl, write_pajek, write_svg
from .similarity import CosineMatrix, cosine, cosine_map
from .store import (
    CitationDataset,
    DatasetStats,
    JournalRecord,
    citers_of,
    dataset_stats,
    ingest,
    load_dataset,
    margins,
)

__all__ = [
    "__version__",
    "CitenvError",
    "IngestError",
    "UnknownJournalError",
    "EmptyDirectionError",
    "EmptyMatrixError",
    "FormatError",
    "JournalRecord",
    "CitationDataset",
    "DatasetStats",
    "ingest",
    "load_dataset",
    "margins",
    "citers_of",
    "dataset_stats",
    "Environment",
    "EnvironmentMatrix",
    "min_count",
    "extract",
    "build_matrix",
    "CosineMatrix",
    "cosine",
    "cosine_map",
    "ImpactShares",
    "local_shares",
    "self_citation_profile",
    "target_distances",
    "kk_layout",
    "spring_energy",
    "spring_gradient",
    "correlation_matrix",
    "pca",
    "varimax",
    "MapDocument",
    "Provenance",
    "write_pajek",
    "parse_pajek",
    "write_dl",
    "parse_dl",
    "write_svg",
]
