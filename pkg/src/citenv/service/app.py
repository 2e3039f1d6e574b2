"""FastAPI application exposing the exploration pipeline.

One immutable dataset is loaded at startup and shared by all request
handlers; every endpoint is read-only, so identical requests return
identical payloads. The built frontend, when present, is served from the
root path.
"""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

from fastapi import Depends, FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..errors import CitenvError, UnknownJournalError
from ..netio import write_dl, write_pajek, write_svg
from ..pipeline import build_map_document, factor_report, handle_environment
from ..store import CitationDataset, dataset_stats
from .schemas import (
    EnvironmentPayload,
    EnvironmentRequest,
    FactorPayload,
    FactorRequest,
    JournalInfo,
    StatsPayload,
)


def create_app(dataset: CitationDataset, frontend_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(
        title="citenv",
        version=__version__,
        description=(
            "Journal citation environments: pick a seed journal and direction,"
            " get the cosine-normalized environment map with local impact"
            " shares, layout coordinates, factor reports and file downloads."
        ),
    )

    @app.exception_handler(UnknownJournalError)
    async def unknown_journal(_: Request, exc: UnknownJournalError) -> JSONResponse:
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(CitenvError)
    async def user_error(_: Request, exc: CitenvError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/api/journals", response_model=list[JournalInfo])
    def journals(
        q: str = "", limit: Annotated[int, Query(ge=1, le=500)] = 20
    ) -> list[JournalInfo]:
        return [
            JournalInfo(
                id=j.id, label=j.label, total_citing=j.total_citing, total_cited=j.total_cited
            )
            for j in dataset.search(q, limit=limit)
        ]

    @app.get("/api/stats", response_model=StatsPayload)
    def stats() -> StatsPayload:
        s = dataset_stats(dataset)
        return StatsPayload(
            n_source_journals=s.n_source_journals,
            n_unprocessed_citing=s.n_unprocessed_citing,
            n_unique_relations=s.n_unique_relations,
            density_percent=s.density_percent,
            sum_relations=s.sum_relations,
            total_citing=s.total_citing,
            total_cited=s.total_cited,
            within_journal_total=s.within_journal_total,
            year_tag=dataset.year_tag,
            totals_derived=dataset.totals_derived,
        )

    @app.get("/api/environment", response_model=EnvironmentPayload)
    def environment(request: Annotated[EnvironmentRequest, Depends()]) -> EnvironmentPayload:
        return handle_environment(dataset, request)

    def _download(request: EnvironmentRequest, writer, suffix: str, media_type: str) -> Response:
        doc, _ = build_map_document(dataset, request)
        label = dataset.journal(request.seed).label
        return PlainTextResponse(
            writer(doc),
            media_type=media_type,
            headers={
                "Content-Disposition": (
                    f'attachment; filename="{label}_{request.direction}.{suffix}"'
                )
            },
        )

    @app.get("/api/environment.net", response_class=PlainTextResponse)
    def environment_net(request: Annotated[EnvironmentRequest, Depends()]) -> Response:
        return _download(request, write_pajek, "net", "text/plain; charset=utf-8")

    @app.get("/api/environment.dl", response_class=PlainTextResponse)
    def environment_dl(request: Annotated[EnvironmentRequest, Depends()]) -> Response:
        return _download(request, write_dl, "dl", "text/plain; charset=utf-8")

    @app.get("/api/environment.svg", response_class=PlainTextResponse)
    def environment_svg(request: Annotated[EnvironmentRequest, Depends()]) -> Response:
        return _download(request, write_svg, "svg", "image/svg+xml")

    @app.get("/api/factors", response_model=FactorPayload)
    def factors(request: Annotated[FactorRequest, Depends()]) -> FactorPayload:
        return factor_report(dataset, request)

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="frontend")

    return app
