"""Ingestion and querying of aggregated journal-journal citation data.

The dataset is an immutable sparse matrix of citing -> cited counts plus
per-journal citation totals. Totals are kept separately from the stored
edges because aggregated source data usually discards the long tail of
each journal's distribution ("all others"), so the stored margins are a
lower bound on the true totals. When no totals file is supplied the
margins are used instead and the dataset is flagged ``totals_derived``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IngestError, UnknownJournalError

# Edge record: (citing, cited, count) with an optional trailing source line
# number used in error messages. Totals record: (journal, citing, cited [, line]).
EdgeRecord = Sequence
TotalsRecord = Sequence


@dataclass(frozen=True)
class JournalRecord:
    """A journal's identity, display label and citation totals.

    ``total_citing`` / ``total_cited`` include the discarded tail, so each is
    at least the corresponding margin sum over the stored edges.
    """

    id: str
    label: str
    total_citing: int
    total_cited: int


@dataclass(frozen=True)
class DatasetStats:
    n_source_journals: int
    n_unprocessed_citing: int
    n_unique_relations: int
    density_percent: float
    sum_relations: int
    total_citing: int
    total_cited: int
    within_journal_total: int


class CitationDataset:
    """Immutable view over journals, edges and totals.

    Rows and columns are indexed separately so both citation directions can
    be queried without scanning. Instances are safe to share across threads;
    all mutation happens inside :func:`ingest`.
    """

    def __init__(
        self,
        journals: Sequence[JournalRecord],
        rows: dict[str, dict[str, int]],
        cols: dict[str, dict[str, int]],
        year_tag: str = "",
        totals_derived: bool = False,
    ):
        self.journals: tuple[JournalRecord, ...] = tuple(journals)
        self._by_id = {j.id: j for j in self.journals}
        self._rows = rows
        self._cols = cols
        self.year_tag = year_tag
        self.totals_derived = totals_derived

    def __len__(self) -> int:
        return len(self.journals)

    def __contains__(self, journal_id: str) -> bool:
        return journal_id in self._by_id

    def journal(self, journal_id: str) -> JournalRecord:
        try:
            return self._by_id[journal_id]
        except KeyError:
            raise UnknownJournalError(journal_id) from None

    def count(self, citing: str, cited: str) -> int:
        return self._rows.get(citing, {}).get(cited, 0)

    def row(self, journal_id: str) -> dict[str, int]:
        """Stored outgoing counts of ``journal_id`` (copy)."""
        self.journal(journal_id)
        return dict(self._rows.get(journal_id, {}))

    def col(self, journal_id: str) -> dict[str, int]:
        """Stored incoming counts of ``journal_id`` (copy)."""
        self.journal(journal_id)
        return dict(self._cols.get(journal_id, {}))

    def search(self, prefix: str, limit: int = 20) -> list[JournalRecord]:
        """Journals whose label starts with ``prefix``, case-insensitive,
        ranked by label; substring matches fill remaining slots."""
        needle = prefix.casefold()
        starts = [j for j in self.journals if j.label.casefold().startswith(needle)]
        if len(starts) < limit and needle:
            rest = [
                j
                for j in self.journals
                if needle in j.label.casefold() and not j.label.casefold().startswith(needle)
            ]
            starts.extend(rest)
        return starts[:limit]


def _label_for(journal_id: str) -> str:
    # Display labels are the id with all whitespace removed, ready for export.
    return "".join(journal_id.split())


def _check_count(value, line: int) -> int:
    try:
        as_int = int(str(value).strip())
    except ValueError:
        raise IngestError(f"line {line}: count {value!r} is not an integer") from None
    if as_int <= 0:
        raise IngestError(f"line {line}: count must be a positive integer, got {as_int}")
    return as_int


def ingest(
    edge_records: Iterable[EdgeRecord],
    totals_records: Iterable[TotalsRecord] | None = None,
    year_tag: str = "",
) -> CitationDataset:
    """Build an immutable dataset from edge and (optional) totals records.

    Each edge record is ``(citing, cited, count)``, optionally followed by a
    source line number for error reporting; record order is irrelevant to the
    result. Journals appearing only as cited endpoints are retained (they were
    not processed on the citing side). Without totals the margins substitute
    for the true totals and ``totals_derived`` is set.
    """
    rows: dict[str, dict[str, int]] = {}
    cols: dict[str, dict[str, int]] = {}
    first_seen: dict[tuple[str, str], int] = {}

    n = 0
    for position, record in enumerate(edge_records, start=1):
        if len(record) not in (3, 4):
            raise IngestError(f"record {position}: expected (citing, cited, count), got {record!r}")
        line = int(record[3]) if len(record) == 4 else position
        citing = str(record[0]).strip()
        cited = str(record[1]).strip()
        if not citing or not cited:
            raise IngestError(f"line {line}: empty journal id")
        count = _check_count(record[2], line)
        key = (citing, cited)
        if key in first_seen:
            raise IngestError(
                f"duplicate edge {citing!r} -> {cited!r} at line {line}"
                f" (first at line {first_seen[key]})"
            )
        first_seen[key] = line
        rows.setdefault(citing, {})[cited] = count
        cols.setdefault(cited, {})[citing] = count
        n += 1

    if n == 0:
        raise IngestError("empty dataset: no edge records")

    ids = sorted(set(rows) | set(cols), key=lambda i: (_label_for(i).casefold(), i))
    margin_citing = {i: sum(rows.get(i, {}).values()) for i in ids}
    margin_cited = {i: sum(cols.get(i, {}).values()) for i in ids}

    totals: dict[str, tuple[int, int]] = {}
    if totals_records is not None:
        for position, record in enumerate(totals_records, start=1):
            if len(record) not in (3, 4):
                raise IngestError(
                    f"totals record {position}: expected (journal, total_citing, total_cited)"
                )
            line = int(record[3]) if len(record) == 4 else position
            journal = str(record[0]).strip()
            if journal not in margin_citing:
                raise IngestError(f"line {line}: totals for unknown journal {journal!r}")
            if journal in totals:
                raise IngestError(f"line {line}: duplicate totals for {journal!r}")
            t_citing = _check_totals_value(record[1], line)
            t_cited = _check_totals_value(record[2], line)
            if t_citing < margin_citing[journal] or t_cited < margin_cited[journal]:
                raise IngestError(
                    f"line {line}: totals for {journal!r} are below the stored margins"
                    f" ({t_citing}/{t_cited} < {margin_citing[journal]}/{margin_cited[journal]})"
                )
            totals[journal] = (t_citing, t_cited)

    totals_derived = totals_records is None
    journals = []
    for i in ids:
        t_citing, t_cited = totals.get(i, (margin_citing[i], margin_cited[i]))
        journals.append(
            JournalRecord(id=i, label=_label_for(i), total_citing=t_citing, total_cited=t_cited)
        )

    return CitationDataset(journals, rows, cols, year_tag=year_tag, totals_derived=totals_derived)


def _check_totals_value(value, line: int) -> int:
    try:
        as_int = int(str(value).strip())
    except ValueError:
        raise IngestError(f"line {line}: total {value!r} is not an integer") from None
    if as_int < 0:
        raise IngestError(f"line {line}: total must be non-negative, got {as_int}")
    return as_int


def margins(dataset: CitationDataset, journal_id: str) -> tuple[int, int, int]:
    """(row_sum, col_sum, diagonal) of the stored edges for one journal."""
    dataset.journal(journal_id)
    row = dataset.row(journal_id)
    col = dataset.col(journal_id)
    return sum(row.values()), sum(col.values()), row.get(journal_id, 0)


def citers_of(dataset: CitationDataset, journal_id: str) -> list[tuple[str, int]]:
    """Journals citing ``journal_id``, highest count first, ties by label."""
    col = dataset.col(journal_id)
    return sorted(
        col.items(), key=lambda item: (-item[1], dataset.journal(item[0]).label.casefold(), item[0])
    )


def dataset_stats(dataset: CitationDataset) -> DatasetStats:
    n = len(dataset.journals)
    relations = 0
    sum_relations = 0
    within = 0
    processed_citing = 0
    for j in dataset.journals:
        row = dataset.row(j.id)
        if row:
            processed_citing += 1
        relations += len(row)
        sum_relations += sum(row.values())
        within += row.get(j.id, 0)
    return DatasetStats(
        n_source_journals=n,
        n_unprocessed_citing=n - processed_citing,
        n_unique_relations=relations,
        density_percent=100.0 * relations / (n * n),
        sum_relations=sum_relations,
        total_citing=sum(j.total_citing for j in dataset.journals),
        total_cited=sum(j.total_cited for j in dataset.journals),
        within_journal_total=within,
    )


def _looks_numeric(text: str) -> bool:
    try:
        int(text.strip())
        return True
    except ValueError:
        return False


def _read_delimited(path: Path, delimiter: str, numeric_from: int, what: str) -> list[tuple]:
    """Read a 3-column delimited text file into records with line numbers.

    A header row is auto-detected: if any column from ``numeric_from`` on in
    the first row fails to parse as an integer, that row is skipped.
    """
    records: list[tuple] = []
    with io.open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle, delimiter=delimiter)
        for lineno, fields in enumerate(reader, start=1):
            if not fields or all(not f.strip() for f in fields):
                continue
            if len(fields) < 3:
                raise IngestError(f"line {lineno}: expected 3 {what} columns, got {len(fields)}")
            if lineno == 1 and not all(_looks_numeric(f) for f in fields[numeric_from:3]):
                continue  # header row
            records.append((fields[0].strip(), fields[1].strip(), fields[2].strip(), lineno))
    return records


def read_edge_file(path: str | Path, delimiter: str = "\t") -> list[tuple]:
    """Parse a citing/cited/count file into edge records (line numbers kept)."""
    return _read_delimited(Path(path), delimiter, numeric_from=2, what="edge")


def read_totals_file(path: str | Path, delimiter: str = "\t") -> list[tuple]:
    """Parse a journal/total_citing/total_cited file into totals records."""
    return _read_delimited(Path(path), delimiter, numeric_from=1, what="totals")


def load_dataset(
    edges_path: str | Path,
    totals_path: str | Path | None = None,
    delimiter: str = "\t",
    year_tag: str = "",
) -> CitationDataset:
    """Load a dataset from disk (the delimited text files are authoritative)."""
    edges = read_edge_file(edges_path, delimiter)
    totals = read_totals_file(totals_path, delimiter) if totals_path else None
    return ingest(edges, totals, year_tag=year_tag)
