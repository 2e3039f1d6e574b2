"""Graph interchange writers and parsers, plus SVG rendering.

The Pajek dialect is the primary export: a vertex block carrying the node
magnification parameters (x_fact = share excluding within-journal citations,
y_fact = share including them) followed by a full cosine matrix block. The
DL fullmatrix dialect carries labels and matrix only; node size parameters
do not survive that format. Output is byte-deterministic: 6-decimal fixed
point everywhere, single line feeds, no trailing spaces. Input parsing is
whitespace-tolerant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import FormatError
from .impact import ImpactShares, MemberShare
from .layout import LayoutResult
from .similarity import CosineMatrix


@dataclass(frozen=True)
class Provenance:
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
    notes: tuple[str, ...] = ()


@dataclass(frozen=True, eq=False)
class MapDocument:
    """Everything one citation-environment map needs: members, their impact
    shares, the cosine matrix, and (optionally) layout coordinates.

    All member orderings must be identical. ``provenance`` is None only for
    documents re-imported from files, which carry no pipeline parameters.
    """

    members: tuple[str, ...]
    labels: tuple[str, ...]
    shares: ImpactShares
    cosines: CosineMatrix
    layout: LayoutResult | None = None
    provenance: Provenance | None = None

    def __post_init__(self):
        n = len(self.members)
        if len(self.labels) != n or len(self.shares.shares) != n:
            raise ValueError("member, label and share orderings must match")
        if self.cosines.values.shape != (n, n):
            raise ValueError("cosine matrix shape does not match the member count")
        if self.layout is not None and self.layout.coords.shape != (n, 2):
            raise ValueError("layout coordinate count does not match the member count")


def _fmt(value: float) -> str:
    return f"{value:.6f}"  # round-half-even fixed point


def write_pajek(doc: MapDocument) -> str:
    """Serialize a map document in the Pajek dialect (byte-deterministic).

    Without a layout, the three coordinate slots are the literal
    ``0.0 0.0 0.0``; with one, they carry x, y, 0.0 at 6 decimals and a
    leading comment flags the embedded coordinates.
    """
    lines = []
    if doc.layout is not None:
        lines.append(f"% coordinates embedded: spring layout, rng_seed={doc.layout.rng_seed}")
    lines.append(f"*Vertices {len(doc.members)}")
    for i, label in enumerate(doc.labels):
        if '"' in label:
            raise ValueError(f"label {label!r} contains a double quote")
        share = doc.shares.shares[i]
        if doc.layout is None:
            coords = "0.0 0.0 0.0"
        else:
            x, y = doc.layout.coords[i]
            coords = f"{_fmt(float(x))} {_fmt(float(y))} 0.000000"
        lines.append(
            f'{i + 1} "{label}" {coords}'
            f" x_fact {_fmt(share.share_excl)} y_fact {_fmt(share.share_incl)}"
        )
    lines.append("*Matrix")
    for row in np.asarray(doc.cosines.values):
        lines.append(" ".join(_fmt(float(v)) for v in row))
    return "\n".join(lines) + "\n"


_VERTEX_RE = re.compile(r'^(\d+)\s+"([^"]*)"\s*(.*)$')


def _parse_share_params(tail: str, line: int) -> tuple[float, float]:
    tokens = tail.split()
    params = {}
    i = 0
    while i < len(tokens):
        if tokens[i] in ("x_fact", "y_fact"):
            if i + 1 >= len(tokens):
                raise FormatError(f"{tokens[i]} missing a value", line)
            try:
                params[tokens[i]] = float(tokens[i + 1])
            except ValueError:
                raise FormatError(f"{tokens[i]} value {tokens[i + 1]!r} is not a number", line)
            i += 2
        else:
            i += 1
    return params.get("x_fact", 0.0), params.get("y_fact", 0.0)


def parse_pajek(text: str) -> MapDocument:
    """Parse the dialect written by :func:`write_pajek` (tolerant input).

    Returns a partial document: labels, shares and matrix; no provenance or
    environment counts. ``parse_pajek(write_pajek(doc))`` reproduces the
    exported fields of ``doc`` exactly.
    """
    numbered = [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("%")
    ]
    if not numbered:
        raise FormatError("empty file", 1)

    line_no, header = numbered[0]
    fields = header.split()
    if len(fields) != 2 or fields[0].lower() != "*vertices":
        raise FormatError(f"expected '*Vertices <n>', got {header!r}", line_no)
    try:
        n = int(fields[1])
    except ValueError:
        raise FormatError(f"malformed vertex count {fields[1]!r}", line_no)
    if n < 1:
        raise FormatError(f"vertex count must be positive, got {n}", line_no)
    if len(numbered) < 1 + n + 1:
        raise FormatError("file ends before the matrix block", numbered[-1][0])

    labels: list[str] = []
    shares: list[MemberShare] = []
    for offset in range(n):
        line_no, line = numbered[1 + offset]
        match = _VERTEX_RE.match(line)
        if not match:
            raise FormatError(f"malformed vertex line {line!r}", line_no)
        index = int(match.group(1))
        if index != offset + 1:
            raise FormatError(f"vertex index gap: expected {offset + 1}, got {index}", line_no)
        label = match.group(2)
        x_fact, y_fact = _parse_share_params(match.group(3), line_no)
        labels.append(label)
        shares.append(MemberShare(member=label, share_incl=y_fact, share_excl=x_fact))

    line_no, marker = numbered[1 + n]
    if marker.lower() != "*matrix":
        raise FormatError(f"expected '*Matrix', got {marker!r}", line_no)
    if len(numbered) < 1 + n + 1 + n:
        raise FormatError("matrix block is truncated", numbered[-1][0])

    values = np.zeros((n, n))
    for row in range(n):
        line_no, line = numbered[2 + n + row]
        cells = line.split()
        if len(cells) != n:
            raise FormatError(f"matrix row has {len(cells)} values, expected {n}", line_no)
        try:
            values[row] = [float(c) for c in cells]
        except ValueError:
            raise FormatError(f"non-numeric matrix value in {line!r}", line_no)
        for col in range(row):
            if values[row, col] != values[col, row]:
                raise FormatError(
                    f"matrix is not symmetric at ({row + 1}, {col + 1})", line_no
                )

    members = tuple(labels)
    return MapDocument(
        members=members,
        labels=members,
        shares=ImpactShares(direction="cited", grandsum=0, shares=tuple(shares)),
        cosines=CosineMatrix(
            members=members,
            values=values,
            cutoff=0.0,
            vector_axis="cited",
            include_diagonal=True,
        ),
    )


def write_dl(doc: MapDocument) -> str:
    """Serialize the cosine matrix in the DL fullmatrix dialect.

    Labels and matrix only; the node magnification parameters have no slot
    in this format and are dropped.
    """
    for label in doc.labels:
        if '"' in label:
            raise ValueError(f"label {label!r} contains a double quote")
    lines = [f"dl n={len(doc.members)} format=fullmatrix", "labels:", ",".join(doc.labels), "data:"]
    for row in np.asarray(doc.cosines.values):
        lines.append(" ".join(_fmt(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_dl(text: str) -> MapDocument:
    """Parse the DL fullmatrix dialect back into a partial map document
    (labels and matrix; shares are zero since DL does not carry them)."""
    numbered = [
        (i, line.strip()) for i, line in enumerate(text.splitlines(), start=1) if line.strip()
    ]
    if not numbered:
        raise FormatError("empty file", 1)
    line_no, header = numbered[0]
    match = re.match(r"^dl\s+n\s*=\s*(\d+)\s+format\s*=\s*fullmatrix$", header, re.IGNORECASE)
    if not match:
        raise FormatError(f"expected 'dl n=<n> format=fullmatrix', got {header!r}", line_no)
    n = int(match.group(1))

    cursor = 1
    if cursor >= len(numbered) or numbered[cursor][1].lower() != "labels:":
        raise FormatError("expected 'labels:' block", numbered[min(cursor, len(numbered) - 1)][0])
    cursor += 1
    labels: list[str] = []
    while cursor < len(numbered) and numbered[cursor][1].lower() != "data:":
        labels.extend(part.strip() for part in numbered[cursor][1].split(",") if part.strip())
        cursor += 1
    if len(labels) != n:
        raise FormatError(f"expected {n} labels, found {len(labels)}", numbered[cursor - 1][0])
    if cursor >= len(numbered):
        raise FormatError("expected 'data:' block", numbered[-1][0])
    cursor += 1
    if len(numbered) - cursor < n:
        raise FormatError("data block is truncated", numbered[-1][0])

    values = np.zeros((n, n))
    for row in range(n):
        line_no, line = numbered[cursor + row]
        cells = line.split()
        if len(cells) != n:
            raise FormatError(f"data row has {len(cells)} values, expected {n}", line_no)
        try:
            values[row] = [float(c) for c in cells]
        except ValueError:
            raise FormatError(f"non-numeric data value in {line!r}", line_no)

    members = tuple(labels)
    shares = tuple(MemberShare(member=m, share_incl=0.0, share_excl=0.0) for m in members)
    return MapDocument(
        members=members,
        labels=members,
        shares=ImpactShares(direction="cited", grandsum=0, shares=shares),
        cosines=CosineMatrix(
            members=members,
            values=values,
            cutoff=0.0,
            vector_axis="cited",
            include_diagonal=True,
        ),
    )


SVG_WIDTH = 800
SVG_HEIGHT = 600
SVG_MARGIN = 80
EDGE_WIDTH_SCALE = 4.0
MIN_RADIUS_PX = 1.0


def _px(value: float) -> str:
    return f"{value:.2f}"


def write_svg(doc: MapDocument) -> str:
    """Render the map as SVG: one ellipse per member (vertical radius from
    the including share, horizontal from the excluding one), a label, and a
    line per retained cosine edge with width proportional to the cosine.

    A member whose excluding share is zero degenerates to a vertical line.
    Requires layout coordinates.
    """
    if doc.layout is None:
        raise ValueError("document has no layout; run the spring embedding first")
    span_x = SVG_WIDTH - 2 * SVG_MARGIN
    span_y = SVG_HEIGHT - 2 * SVG_MARGIN
    points = [
        (SVG_MARGIN + float(x) * span_x, SVG_MARGIN + (1.0 - float(y)) * span_y)
        for x, y in np.asarray(doc.layout.coords)
    ]

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}"'
        f' viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
    ]
    if doc.provenance is not None:
        prov = doc.provenance
        parts.append(
            f"<!-- seed={prov.seed} direction={prov.direction}"
            f" threshold={prov.threshold_fraction} cutoff={prov.cosine_cutoff} -->"
        )

    for i, j, value in doc.cosines.edges():
        (x1, y1), (x2, y2) = points[i], points[j]
        parts.append(
            f'<line x1="{_px(x1)}" y1="{_px(y1)}" x2="{_px(x2)}" y2="{_px(y2)}"'
            f' stroke="#9aa7b0" stroke-width="{_px(EDGE_WIDTH_SCALE * value)}" />'
        )

    for i, label in enumerate(doc.labels):
        share = doc.shares.shares[i]
        x, y = points[i]
        ry = max(share.share_incl / 200.0 * SVG_HEIGHT, MIN_RADIUS_PX)
        if share.share_excl == 0.0:
            parts.append(
                f'<line x1="{_px(x)}" y1="{_px(y - ry)}" x2="{_px(x)}" y2="{_px(y + ry)}"'
                ' stroke="#2c6e49" stroke-width="1" />'
            )
        else:
            rx = max(share.share_excl / 200.0 * SVG_HEIGHT, MIN_RADIUS_PX)
            parts.append(
                f'<ellipse cx="{_px(x)}" cy="{_px(y)}" rx="{_px(rx)}" ry="{_px(ry)}"'
                ' fill="#74a892" fill-opacity="0.8" stroke="#2c6e49" />'
            )
        parts.append(
            f'<text x="{_px(x)}" y="{_px(y - ry - 4.0)}" font-family="sans-serif"'
            f' font-size="11" text-anchor="middle">{_escape(label)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
