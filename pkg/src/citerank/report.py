"""Unit-level aggregation, log-citation histograms and tabular writers."""

from __future__ import annotations

import csv
import json
import math
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from statistics import fmean
from typing import IO, Any

from . import indicators
from .dataset import PublicationRecord, ReferenceSet, ScoreRow
from .errors import EmptyReferenceSet, UnknownPaper
from .indicators import DEFAULT_SCHEME, Indicator, RankClassScheme

NO_UNIT = "(none)"
ALL_PAPERS = "all_papers"
UNIQUE_CITATIONS = "unique_citations"
DEFAULT_BIN_WIDTH = 0.25


@dataclass(frozen=True)
class UnitSummary:
    """Aggregated indicator values for one scientist or institution.

    ``top_share`` and ``class_counts`` use the selected indicator. Papers
    that have no value for it (all their reference sets degenerate) are
    counted in ``unrated`` instead of a class.
    """

    unit: str
    paper_count: int
    mean_p100: float | None
    mean_p100prime: float | None
    mean_percentile: float
    top_share: float | None
    class_counts: tuple[tuple[int, int], ...]
    unrated: int = 0


@dataclass(frozen=True)
class HistogramRow:
    series: str
    bin_low: float
    bin_high: float
    count: int


def aggregate_units(
    rows: Iterable[ScoreRow],
    records: Iterable[PublicationRecord],
    scheme: RankClassScheme = DEFAULT_SCHEME,
    threshold: float = 90.0,
    indicator: Indicator | str = Indicator.P100_PRIME,
) -> list[UnitSummary]:
    """Summarise combined paper scores per unit, sorted by unit name.

    Each paper counts once however many reference sets it belongs to.
    Papers without a unit are pooled under ``"(none)"``.
    """
    if not 0.0 < threshold < 100.0:
        raise ValueError(f"threshold must lie in (0, 100), got {threshold}")
    indicator = Indicator(indicator)
    by_id = {rec.id: rec for rec in records}
    grouped: dict[str, list[ScoreRow]] = defaultdict(list)
    for row in rows:
        rec = by_id.get(row.paper_id)
        if rec is None:
            raise UnknownPaper(row.paper_id)
        grouped[rec.unit or NO_UNIT].append(row)

    out = []
    for unit in sorted(grouped):
        members = grouped[unit]
        combined = [r.combined for r in members]
        p1 = [c.p100 for c in combined if c.p100 is not None]
        p1p = [c.p100prime for c in combined if c.p100prime is not None]
        selected = [v for v in (c.get(indicator) for c in combined) if v is not None]

        counts = [0] * scheme.n_classes
        for v in selected:
            counts[indicators.assign_rank_class(v, scheme)] += 1
        out.append(
            UnitSummary(
                unit=unit,
                paper_count=len(members),
                mean_p100=fmean(p1) if p1 else None,
                mean_p100prime=fmean(p1p) if p1p else None,
                mean_percentile=fmean(c.percentile for c in combined),
                top_share=indicators.top_share(selected, threshold) if selected else None,
                class_counts=tuple(enumerate(counts)),
                unrated=len(members) - len(selected),
            )
        )
    return out


def _bin_index(x: float, width: float) -> int:
    k = math.floor(x / width)
    # keep k * width <= x < (k + 1) * width despite rounding in the division
    if (k + 1) * width <= x:
        k += 1
    elif k * width > x:
        k -= 1
    return k


def export_distributions(
    ref_set: ReferenceSet | Sequence[int],
    base: float = 10.0,
    bin_width: float = DEFAULT_BIN_WIDTH,
) -> list[HistogramRow]:
    """Histogram ``log(citations + 1)`` for all papers and for unique citation counts.

    Both series share bins of ``bin_width`` aligned at 0 and span the bins
    from the lowest to the highest occupied one, empty bins included.
    """
    if not bin_width > 0:
        raise ValueError(f"bin width must be > 0, got {bin_width}")
    citations = ref_set.citations if isinstance(ref_set, ReferenceSet) else list(ref_set)
    if not citations:
        raise EmptyReferenceSet("cannot export distributions of an empty set")
    sf = indicators.size_frequency(citations)

    all_counts: dict[int, int] = defaultdict(int)
    unique_counts: dict[int, int] = defaultdict(int)
    for citation, n_papers in sf.entries:
        k = _bin_index(indicators.log_transform(citation, base), bin_width)
        all_counts[k] += n_papers
        unique_counts[k] += 1

    lo, hi = min(all_counts), max(all_counts)
    rows = []
    for series, counts in ((ALL_PAPERS, all_counts), (UNIQUE_CITATIONS, unique_counts)):
        for k in range(lo, hi + 1):
            rows.append(HistogramRow(series, k * bin_width, (k + 1) * bin_width, counts.get(k, 0)))
    return rows


# -- rendering ---------------------------------------------------------------

_CENT = Decimal("0.01")


def round_half_up(value: float, places: int = 2) -> float:
    # repr() gives the shortest round-tripping string, so 0.125 stays 0.125
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))


def fmt_value(value: float | None, full_precision: bool = False) -> str:
    if value is None:
        return ""
    if full_precision:
        return repr(float(value))
    return str(Decimal(repr(float(value))).quantize(_CENT, rounding=ROUND_HALF_UP))


def fmt_edge(value: float) -> str:
    # bin edges are k * width; trim float noise such as 0.30000000000000004
    return format(round(value, 10), ".10g")


SCORE_COLUMNS = (
    "paperId", "unit", "scope", "year", "category", "p100", "p100prime", "percentile", "degenerate",
)
UNIT_COLUMNS = (
    "unit", "paperCount", "meanP100", "meanP100Prime", "meanPercentile", "topShare", "classCounts", "unrated",
)
HISTOGRAM_COLUMNS = ("year", "category", "series", "binLow", "binHigh", "count")


def _unit_of(records: Iterable[PublicationRecord]) -> dict[str, str]:
    return {rec.id: rec.unit or NO_UNIT for rec in records}


def ordered_score_rows(rows: Iterable[ScoreRow], records: Iterable[PublicationRecord]) -> list[tuple[str, ScoreRow]]:
    """Pair rows with their unit and sort by (unit, paper id)."""
    units = _unit_of(records)
    pairs = []
    for row in rows:
        if row.paper_id not in units:
            raise UnknownPaper(row.paper_id)
        pairs.append((units[row.paper_id], row))
    pairs.sort(key=lambda p: (p[0], p[1].paper_id))
    return pairs


def score_table(
    rows: Iterable[ScoreRow], records: Iterable[PublicationRecord], full_precision: bool = False
) -> list[dict[str, str]]:
    """Flatten score rows: one line per (paper, reference set) then one combined line."""
    f = lambda v: fmt_value(v, full_precision)  # noqa: E731
    table = []
    for unit, row in ordered_score_rows(rows, records):
        for s in row.per_set:
            table.append({
                "paperId": row.paper_id, "unit": unit, "scope": "set",
                "year": str(s.key.year), "category": s.key.category,
                "p100": f(s.p100), "p100prime": f(s.p100prime), "percentile": f(s.percentile),
                "degenerate": str(s.degenerate).lower(),
            })
        c = row.combined
        table.append({
            "paperId": row.paper_id, "unit": unit, "scope": "combined", "year": "", "category": "",
            "p100": f(c.p100), "p100prime": f(c.p100prime), "percentile": f(c.percentile),
            "degenerate": str(row.degenerate).lower(),
        })
    return table


def score_json(
    rows: Iterable[ScoreRow], records: Iterable[PublicationRecord], full_precision: bool = False
) -> list[dict[str, Any]]:
    r = (lambda v: v) if full_precision else (lambda v: None if v is None else round_half_up(v))
    out = []
    for unit, row in ordered_score_rows(rows, records):
        out.append({
            "paperId": row.paper_id,
            "unit": unit,
            "perSet": [
                {
                    "year": s.key.year, "category": s.key.category,
                    "p100": r(s.p100), "p100prime": r(s.p100prime), "percentile": r(s.percentile),
                    "degenerate": s.degenerate,
                }
                for s in row.per_set
            ],
            "combined": {
                "p100": r(row.combined.p100), "p100prime": r(row.combined.p100prime),
                "percentile": r(row.combined.percentile), "degenerate": row.degenerate,
            },
        })
    return out


def unit_table(summaries: Iterable[UnitSummary], full_precision: bool = False) -> list[dict[str, str]]:
    table = []
    for s in summaries:
        share = "" if s.top_share is None else (repr(s.top_share) if full_precision else f"{s.top_share:.4f}")
        table.append({
            "unit": s.unit,
            "paperCount": str(s.paper_count),
            "meanP100": fmt_value(s.mean_p100, full_precision),
            "meanP100Prime": fmt_value(s.mean_p100prime, full_precision),
            "meanPercentile": fmt_value(s.mean_percentile, full_precision),
            "topShare": share,
            "classCounts": ";".join(f"{k}:{n}" for k, n in s.class_counts),
            "unrated": str(s.unrated),
        })
    return table


def histogram_table(
    per_set: Iterable[tuple[Any, Sequence[HistogramRow]]],
) -> list[dict[str, str]]:
    table = []
    for key, hist in per_set:
        for h in hist:
            table.append({
                "year": str(key.year), "category": key.category, "series": h.series,
                "binLow": fmt_edge(h.bin_low), "binHigh": fmt_edge(h.bin_high), "count": str(h.count),
            })
    return table


def write_csv(table: Sequence[dict[str, str]], columns: Sequence[str], stream: IO[str]) -> None:
    writer = csv.DictWriter(stream, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    writer.writerows(table)


def write_json(table: Sequence[Any], stream: IO[str], lines: bool = False) -> None:
    if lines:
        for item in table:
            stream.write(json.dumps(item, sort_keys=False) + "\n")
    else:
        json.dump(list(table), stream, indent=2)
        stream.write("\n")
