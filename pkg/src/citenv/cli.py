"""Command-line client for the citation environment pipeline.

Thin by design: every subcommand builds the same request models the HTTP
service uses and prints the same payloads, so output is identical whichever
entry point produced it. Logs go to stderr; exit codes are 0 (ok),
1 (user error), 2 (internal error).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import traceback
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .errors import CitenvError
from .netio import write_dl, write_pajek, write_svg
from .pipeline import batch_export, build_map_document, factor_report, handle_environment
from .service.schemas import EnvironmentRequest, FactorRequest
from .store import CitationDataset, dataset_stats, load_dataset

logger = logging.getLogger("citenv")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--edges",
        default=os.environ.get("CITENV_DATA"),
        help="edge file: citing<TAB>cited<TAB>count (default: $CITENV_DATA)",
    )
    parser.add_argument(
        "--totals",
        default=os.environ.get("CITENV_TOTALS"),
        help="totals file: journal<TAB>total_citing<TAB>total_cited (default: $CITENV_TOTALS)",
    )
    parser.add_argument("--delimiter", default="\t", help="column delimiter (default: tab)")
    parser.add_argument("--year-tag", default="", help="free-text tag recorded in provenance")


def _add_request_args(
    parser: argparse.ArgumentParser, with_map_args: bool = True, default_direction: str = "cited"
) -> None:
    parser.add_argument("--seed", required=True, help="seed journal id")
    parser.add_argument(
        "--direction", choices=("cited", "citing", "combined"), default=default_direction
    )
    parser.add_argument("--threshold-fraction", type=float, default=0.01)
    parser.add_argument("--cell-floor", type=int, default=2)
    if with_map_args:
        parser.add_argument(
            "--include-diagonal", action=argparse.BooleanOptionalAction, default=True
        )
        parser.add_argument("--cosine-cutoff", type=float, default=0.2)
        parser.add_argument(
            "--want-layout", action=argparse.BooleanOptionalAction, default=True
        )
        parser.add_argument("--rng-seed", type=int, default=0)


def _load(args: argparse.Namespace) -> CitationDataset:
    if not args.edges:
        raise CitenvError("no edge file given: pass --edges or set CITENV_DATA")
    return load_dataset(
        args.edges, args.totals, delimiter=args.delimiter, year_tag=args.year_tag
    )


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _stats_json(dataset: CitationDataset) -> str:
    s = dataset_stats(dataset)
    payload = {
        "n_source_journals": s.n_source_journals,
        "n_unprocessed_citing": s.n_unprocessed_citing,
        "n_unique_relations": s.n_unique_relations,
        "density_percent": round(s.density_percent, 6),
        "sum_relations": s.sum_relations,
        "total_citing": s.total_citing,
        "total_cited": s.total_cited,
        "within_journal_total": s.within_journal_total,
        "year_tag": dataset.year_tag,
        "totals_derived": dataset.totals_derived,
    }
    return json.dumps(payload, indent=2) + "\n"


def _cmd_ingest(args: argparse.Namespace) -> int:
    dataset = _load(args)
    s = dataset_stats(dataset)
    flag = " (totals derived from margins)" if dataset.totals_derived else ""
    print(
        f"ok: {s.n_source_journals} journals, {s.n_unique_relations} relations,"
        f" sum {s.sum_relations}, within-journal {s.within_journal_total}{flag}"
    )
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    _emit(_stats_json(_load(args)), args.out)
    return 0


def _cmd_env(args: argparse.Namespace) -> int:
    dataset = _load(args)
    request = EnvironmentRequest(
        seed=args.seed,
        direction=args.direction,
        threshold_fraction=args.threshold_fraction,
        cosine_cutoff=args.cosine_cutoff,
        cell_floor=args.cell_floor,
        include_diagonal=args.include_diagonal,
        want_layout=args.want_layout,
        rng_seed=args.rng_seed,
    )
    if args.format == "json":
        payload = handle_environment(dataset, request)
        _emit(payload.model_dump_json(indent=2) + "\n", args.out)
        return 0
    doc, warnings = build_map_document(dataset, request)
    for warning in warnings:
        logger.warning(warning)
    writer = {"net": write_pajek, "dl": write_dl, "svg": write_svg}[args.format]
    _emit(writer(doc), args.out)
    return 0


def _cmd_batch(args: argparse.Namespace) -> int:
    dataset = _load(args)
    result = batch_export(
        dataset,
        args.out_dir,
        threshold_fraction=args.threshold_fraction,
        cosine_cutoff=args.cosine_cutoff,
        cell_floor=args.cell_floor,
        include_diagonal=args.include_diagonal,
        max_workers=args.max_workers,
    )
    print(f"wrote {len(result.files)} files under {result.root} (index: {result.index_path})")
    for label, direction, reason in result.skipped:
        logger.info("skipped %s (%s): %s", label, direction, reason)
    return 0


def _cmd_factors(args: argparse.Namespace) -> int:
    dataset = _load(args)
    request = FactorRequest(
        seed=args.seed,
        direction=args.direction,
        threshold_fraction=args.threshold_fraction,
        cell_floor=args.cell_floor,
        components=args.components,
    )
    payload = factor_report(dataset, request)
    if args.json:
        _emit(payload.model_dump_json(indent=2) + "\n", args.out)
    else:
        _emit(payload.report, args.out)
        for warning in payload.warnings:
            logger.warning(warning)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    dataset = _load(args)
    logger.info("dataset loaded: %d journals", len(dataset))
    app = create_app(dataset, frontend_dir=args.frontend)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="citenv", description=__doc__)
    parser.add_argument("--version", action="version", version=f"citenv {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("ingest", parents=[], help="validate the data files")
    _add_dataset_args(p)
    p.set_defaults(func=_cmd_ingest)

    p = commands.add_parser("stats", help="descriptive statistics of the dataset")
    _add_dataset_args(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_stats)

    p = commands.add_parser("env", help="extract one citation environment")
    _add_dataset_args(p)
    _add_request_args(p)
    p.add_argument("--format", choices=("json", "net", "dl", "svg"), default="json")
    p.add_argument("--out", default="-", help="output path, or - for stdout")
    p.set_defaults(func=_cmd_env)

    p = commands.add_parser("batch", help="export Pajek files for every journal")
    _add_dataset_args(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--threshold-fraction", type=float, default=0.01)
    p.add_argument("--cosine-cutoff", type=float, default=0.2)
    p.add_argument("--cell-floor", type=int, default=2)
    p.add_argument("--include-diagonal", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--max-workers", type=int, default=4)
    p.set_defaults(func=_cmd_batch)

    p = commands.add_parser("factors", help="principal components of an environment")
    _add_dataset_args(p)
    _add_request_args(p, with_map_args=False, default_direction="citing")
    p.add_argument("--components", type=int, default=None, help="override the Kaiser rule")
    p.add_argument("--json", action="store_true", help="emit the structured payload")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_factors)

    p = commands.add_parser("serve", help="run the exploration HTTP service")
    _add_dataset_args(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--frontend", default=None, help="directory of built frontend assets")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (CitenvError, FileNotFoundError, ValueError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
