"""Command-line entry point: ``citerank score|aggregate|distributions``."""

from __future__ import annotations

import argparse
import io
import logging
import os
import sys
import tempfile
from collections.abc import Sequence
from pathlib import Path

from . import dataset, report
from .errors import CiteRankError
from .indicators import DEFAULT_BOUNDARIES, Indicator, RankClassScheme

logger = logging.getLogger("citerank")


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0 or value != value:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _threshold(text: str) -> float:
    value = _positive_float(text)
    if not value < 100:
        raise argparse.ArgumentTypeError(f"must lie in (0, 100), got {text}")
    return value


def _log_base(text: str) -> float:
    value = _positive_float(text)
    if not value > 1:
        raise argparse.ArgumentTypeError(f"must be > 1, got {text}")
    return value


def _scheme(text: str) -> RankClassScheme:
    try:
        return RankClassScheme.parse(text)
    except CiteRankError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citerank",
        description="Citation-rank indicators (P100, P100', percentiles) over year/category reference sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="{score,aggregate,distributions}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, type=Path, help="publication records (CSV with header or JSON lines)")
    common.add_argument("--format", choices=dataset.FORMATS, help="input format (default: from file extension)")
    common.add_argument("--output", required=True, type=Path,
                        help="output file; .json writes a JSON array, .jsonl JSON lines, anything else CSV")
    common.add_argument("--full-precision", action="store_true", help="do not round values to 2 decimals")
    common.add_argument("-v", "--verbose", action="store_true")

    sub.add_parser("score", parents=[common], help="per-paper indicator values")

    agg = sub.add_parser("aggregate", parents=[common], help="per-unit summaries")
    agg.add_argument("--indicator", choices=[i.value for i in Indicator], default=Indicator.P100_PRIME.value,
                     help="indicator used for rank classes and top share (default: p100prime)")
    agg.add_argument("--classes", type=_scheme, default=RankClassScheme(DEFAULT_BOUNDARIES),
                     help="comma-separated rank-class boundaries (default: 50,75,90,99)")
    agg.add_argument("--top-threshold", type=_threshold, default=90.0,
                     help="values at or above this count as top papers (default: 90)")

    dist = sub.add_parser("distributions", parents=[common], help="log(citations+1) histograms per reference set")
    dist.add_argument("--log-base", type=_log_base, default=10.0)
    dist.add_argument("--bin-width", type=_positive_float, default=report.DEFAULT_BIN_WIDTH)
    return parser


def _input_format(path: Path, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "jsonl" if path.suffix.lower() in (".jsonl", ".json", ".ndjson") else "csv"


def _output_kind(path: Path) -> str:
    suffix = path.suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix in (".jsonl", ".ndjson"):
        return "jsonl"
    return "csv"


def _load(args: argparse.Namespace) -> list[dataset.PublicationRecord]:
    fmt = _input_format(args.input, args.format)
    try:
        with open(args.input, encoding="utf-8", newline="") as fh:
            return dataset.parse_records(fh, fmt)
    except FileNotFoundError:
        raise CiteRankError(f"input file not found: {args.input}") from None
    except IsADirectoryError:
        raise CiteRankError(f"input path is a directory: {args.input}") from None
    except UnicodeDecodeError as exc:
        raise CiteRankError(f"{args.input}: not valid UTF-8 ({exc.reason})") from None
    except CiteRankError as exc:
        raise CiteRankError(f"{args.input}: {exc}") from None


def _render(args: argparse.Namespace, records: list[dataset.PublicationRecord]) -> str:
    kind = _output_kind(args.output)
    buf = io.StringIO()
    full = args.full_precision

    if args.command == "score":
        rows = dataset.score_all(dataset.build_reference_sets(records))
        if kind == "csv":
            report.write_csv(report.score_table(rows, records, full), report.SCORE_COLUMNS, buf)
        else:
            report.write_json(report.score_json(rows, records, full), buf, lines=kind == "jsonl")
    elif args.command == "aggregate":
        rows = dataset.score_all(dataset.build_reference_sets(records))
        summaries = report.aggregate_units(rows, records, args.classes, args.top_threshold, args.indicator)
        table = report.unit_table(summaries, full)
        if kind == "csv":
            report.write_csv(table, report.UNIT_COLUMNS, buf)
        else:
            report.write_json(table, buf, lines=kind == "jsonl")
    else:
        sets = dataset.build_reference_sets(records)
        per_set = [
            (key, report.export_distributions(ref, args.log_base, args.bin_width)) for key, ref in sets.items()
        ]
        table = report.histogram_table(per_set)
        if kind == "csv":
            report.write_csv(table, report.HISTOGRAM_COLUMNS, buf)
        else:
            report.write_json(table, buf, lines=kind == "jsonl")
    return buf.getvalue()


def _write_atomic(path: Path, text: str) -> None:
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return its exit code (0 ok, 1 validation error, 2 usage error)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        records = _load(args)
        logger.info("read %d records from %s", len(records), args.input)
        text = _render(args, records)
        if not args.output.parent.is_dir():
            raise CiteRankError(f"output directory does not exist: {args.output.parent}")
        _write_atomic(args.output, text)
    except CiteRankError as exc:
        print(f"citerank: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"citerank: error: {exc}", file=sys.stderr)
        return 1
    logger.info("wrote %s", args.output)
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
