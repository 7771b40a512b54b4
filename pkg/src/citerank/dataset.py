"""Publication records, reference-set grouping and per-paper scoring."""

from __future__ import annotations

import csv
import json
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from statistics import fmean
from typing import IO, Any

from . import indicators
from .errors import DuplicateId, InvalidCitation, ParseError

CSV_COLUMNS = ("id", "year", "categories", "citations", "unit")
REQUIRED_COLUMNS = ("id", "year", "categories", "citations")
FORMATS = ("csv", "jsonl")


@dataclass(frozen=True)
class PublicationRecord:
    id: str
    year: int
    categories: tuple[str, ...]
    citations: int
    unit: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("paper id must be non-empty")
        cats = tuple(c.strip() for c in self.categories)
        if not cats or any(not c for c in cats):
            raise ValueError(f"paper {self.id!r}: categories must be non-empty strings")
        if len(set(cats)) != len(cats):
            raise ValueError(f"paper {self.id!r}: duplicate category in {list(cats)}")
        indicators.check_citation(self.citations)
        object.__setattr__(self, "categories", cats)
        if self.unit == "":
            object.__setattr__(self, "unit", None)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "year": self.year,
            "categories": ";".join(self.categories),
            "citations": self.citations,
            "unit": self.unit or "",
        }


@dataclass(frozen=True, order=True)
class ReferenceSetKey:
    year: int
    category: str

    def __post_init__(self) -> None:
        category = self.category.strip()
        if not category:
            raise ValueError("reference-set category must be non-empty")
        object.__setattr__(self, "category", category)

    def __str__(self) -> str:
        return f"{self.year}/{self.category}"


@dataclass(frozen=True)
class ReferenceSet:
    key: ReferenceSetKey
    members: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError(f"reference set {self.key} is empty")

    @property
    def citations(self) -> list[int]:
        return [c for _, c in self.members]

    def size_frequency(self) -> indicators.SizeFrequency:
        return indicators.size_frequency(self.citations)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SetScore:
    """Indicator values of one paper inside one of its reference sets."""

    key: ReferenceSetKey
    p100: float | None
    p100prime: float | None
    percentile: float
    degenerate: bool


@dataclass(frozen=True)
class CombinedScore:
    p100: float | None
    p100prime: float | None
    percentile: float

    def get(self, indicator: indicators.Indicator | str) -> float | None:
        return getattr(self, indicators.Indicator(indicator).value)


@dataclass(frozen=True)
class ScoreRow:
    paper_id: str
    per_set: tuple[SetScore, ...]
    combined: CombinedScore

    @property
    def degenerate(self) -> bool:
        """True when no reference set of this paper could be ranked."""
        return all(s.degenerate for s in self.per_set)


# -- parsing ---------------------------------------------------------------


def _split_categories(raw: Any, line: int) -> tuple[str, ...]:
    if isinstance(raw, str):
        parts = raw.split(";")
    elif isinstance(raw, list) and all(isinstance(p, str) for p in raw):
        parts = raw
    else:
        raise ParseError(f"expected ';'-separated string or list of strings, got {raw!r}", line, "categories")
    cats = [p.strip() for p in parts if p.strip()]
    if not cats:
        raise ParseError("at least one category is required", line, "categories")
    seen = set()
    for c in cats:
        if c in seen:
            raise ParseError(f"category {c!r} listed twice", line, "categories")
        seen.add(c)
    return tuple(cats)


def _as_int(raw: Any, line: int, column: str) -> int:
    if isinstance(raw, bool):
        raise ParseError(f"expected an integer, got {raw!r}", line, column)
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            return int(raw.strip())
        except ValueError:
            pass
    raise ParseError(f"expected an integer, got {raw!r}", line, column)


def _record_from_fields(fields: Mapping[str, Any], line: int) -> PublicationRecord:
    for col in REQUIRED_COLUMNS:
        if fields.get(col) is None:
            raise ParseError("missing value", line, col)
    pid = fields["id"]
    if not isinstance(pid, str) or not pid.strip():
        raise ParseError("paper id must be a non-empty string", line, "id")
    year = _as_int(fields["year"], line, "year")
    categories = _split_categories(fields["categories"], line)
    citations = _as_int(fields["citations"], line, "citations")
    try:
        indicators.check_citation(citations)
    except InvalidCitation as exc:
        raise ParseError(str(exc), line, "citations") from None
    unit = fields.get("unit")
    if unit is not None and not isinstance(unit, str):
        raise ParseError(f"unit must be a string, got {unit!r}", line, "unit")
    unit = unit.strip() if unit else None
    return PublicationRecord(pid.strip(), year, categories, citations, unit or None)


def _iter_csv(stream: IO[str]) -> Iterable[tuple[int, dict[str, Any]]]:
    reader = csv.DictReader(stream)
    header = reader.fieldnames
    if header is None:
        raise ParseError("input is empty; a header row is required", 1)
    header = [h.strip() for h in header]
    reader.fieldnames = header
    for col in REQUIRED_COLUMNS:
        if col not in header:
            raise ParseError(f"header lacks required column (found {header})", 1, col)
    for row in reader:
        line = reader.line_num
        if None in row:
            raise ParseError(f"row has {len(header) + len(row[None])} fields, header has {len(header)}", line)
        if all(not (v or "").strip() for v in row.values()):
            continue
        yield line, row


def _iter_jsonl(stream: IO[str]) -> Iterable[tuple[int, dict[str, Any]]]:
    for line, text in enumerate(stream, start=1):
        if not text.strip():
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line) from None
        if not isinstance(obj, dict):
            raise ParseError("each line must be a JSON object", line)
        yield line, obj


def parse_records(stream: IO[str], format: str = "csv") -> list[PublicationRecord]:
    """Read publication records from CSV (with header) or JSON lines.

    Raises
    ------
    ParseError
        On a malformed row; the message carries the line number and column.
    DuplicateId
        If two rows share a paper id.
    """
    if format == "csv":
        rows = _iter_csv(stream)
    elif format == "jsonl":
        rows = _iter_jsonl(stream)
    else:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    records = []
    seen: set[str] = set()
    for line, fields in rows:
        rec = _record_from_fields(fields, line)
        if rec.id in seen:
            raise DuplicateId(rec.id, line)
        seen.add(rec.id)
        records.append(rec)
    return records


def write_records(records: Iterable[PublicationRecord], stream: IO[str], format: str = "csv") -> None:
    if format == "csv":
        writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow(rec.to_dict())
    elif format == "jsonl":
        for rec in records:
            stream.write(json.dumps(rec.to_dict()) + "\n")
    else:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


# -- grouping and scoring ---------------------------------------------------


def build_reference_sets(records: Iterable[PublicationRecord]) -> dict[ReferenceSetKey, ReferenceSet]:
    """Group papers by (year, category); a paper with k categories lands in k sets.

    Keys come back sorted by year, then category. Members keep input order.
    """
    groups: dict[ReferenceSetKey, list[tuple[str, int]]] = defaultdict(list)
    for rec in records:
        for cat in rec.categories:
            groups[ReferenceSetKey(rec.year, cat)].append((rec.id, rec.citations))
    return {key: ReferenceSet(key, tuple(groups[key])) for key in sorted(groups)}


def _mean(values: list[float]) -> float | None:
    return fmean(values) if values else None


def score_set(ref_set: ReferenceSet) -> dict[str, SetScore]:
    """Score every member of one reference set; degenerate sets get percentiles only."""
    sf = ref_set.size_frequency()
    pct = indicators.percentile_cumfreq(sf)
    if sf.is_degenerate:
        p1 = p1p = None
    else:
        p1 = indicators.p100(sf)
        p1p = indicators.p100_prime(sf)
    out = {}
    for pid, c in ref_set.members:
        out[pid] = SetScore(
            key=ref_set.key,
            p100=None if p1 is None else p1[c],
            p100prime=None if p1p is None else p1p[c],
            percentile=pct[c],
            degenerate=sf.is_degenerate,
        )
    return out


def score_all(sets: Mapping[ReferenceSetKey, ReferenceSet]) -> list[ScoreRow]:
    """Score each paper in each of its sets and combine by unweighted mean.

    Degenerate sets never raise here: they are flagged and contribute only
    their percentile. Rows are sorted by paper id; per-set entries follow
    key order.
    """
    per_paper: dict[str, list[SetScore]] = defaultdict(list)
    for key in sorted(sets):
        for pid, score in score_set(sets[key]).items():
            per_paper[pid].append(score)

    rows = []
    for pid in sorted(per_paper):
        scores = per_paper[pid]
        combined = CombinedScore(
            p100=_mean([s.p100 for s in scores if s.p100 is not None]),
            p100prime=_mean([s.p100prime for s in scores if s.p100prime is not None]),
            percentile=fmean(s.percentile for s in scores),
        )
        rows.append(ScoreRow(pid, tuple(scores), combined))
    return rows
