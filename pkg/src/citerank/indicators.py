"""Citation-rank indicators over a single reference set.

All indicators are computed once per unique citation count and returned as
a mapping ``citation -> value``; papers are scored by looking up their own
count, so tied papers always share a value.

Two rank scales are provided. ``p100`` ranks the unique citation counts
only (rank ``i`` over ``i_max = unique - 1``). ``p100_prime`` gives every
tie group the rank of its lowest member, i.e. the number of papers with
strictly fewer citations (rank ``j`` over ``j_max = n - 1``). The classical
cumulative-frequency percentile is included for comparison.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import DegenerateReferenceSet, EmptyReferenceSet, InvalidCitation, InvalidScheme

__all__ = [
    "DEFAULT_BOUNDARIES",
    "DEFAULT_SCHEME",
    "Indicator",
    "RankClassScheme",
    "RankTable",
    "SizeFrequency",
    "assign_rank_class",
    "broadcast",
    "check_citation",
    "compute",
    "log_transform",
    "p100",
    "p100_prime",
    "percentile_cumfreq",
    "rank_table",
    "size_frequency",
    "top_share",
]


class Indicator(str, enum.Enum):
    P100 = "p100"
    P100_PRIME = "p100prime"
    PERCENTILE = "percentile"


def check_citation(value: object) -> int:
    """Return ``value`` as a citation count or raise :class:`InvalidCitation`."""
    # bool is an int subclass; True citations is almost certainly a bug upstream
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidCitation(f"citation count must be an integer, got {value!r}")
    if value < 0:
        raise InvalidCitation(f"citation count must be >= 0, got {value}")
    return value


@dataclass(frozen=True)
class SizeFrequency:
    """Unique citation counts in ascending order with the number of papers at each."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise EmptyReferenceSet("size-frequency distribution needs at least one entry")
        prev = None
        for citation, count in self.entries:
            check_citation(citation)
            if prev is not None and citation <= prev:
                raise ValueError("citations must be strictly increasing")
            if not isinstance(count, int) or count < 1:
                raise ValueError(f"paper count must be a positive integer, got {count!r}")
            prev = citation

    @property
    def citations(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.entries)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.entries)

    @property
    def n(self) -> int:
        """Number of papers in the reference set."""
        return sum(self.counts)

    @property
    def is_degenerate(self) -> bool:
        return len(self.entries) < 2

    def __len__(self) -> int:
        return len(self.entries)


def size_frequency(citations: Iterable[int]) -> SizeFrequency:
    """Collapse a multiset of citation counts into its size-frequency distribution.

    >>> size_frequency([4, 0, 4]).entries
    ((0, 1), (4, 2))
    """
    tally = Counter(check_citation(c) for c in citations)
    if not tally:
        raise EmptyReferenceSet("reference set is empty")
    return SizeFrequency(tuple(sorted(tally.items())))


def _as_sf(data: SizeFrequency | Iterable[int]) -> SizeFrequency:
    return data if isinstance(data, SizeFrequency) else size_frequency(data)


@dataclass(frozen=True)
class RankTable:
    """Both rank scales for each unique citation count of one reference set."""

    citations: tuple[int, ...]
    unique_ranks: tuple[int, ...]
    tie_aware_ranks: tuple[int, ...]
    i_max: int
    j_max: int


def rank_table(sf: SizeFrequency | Iterable[int]) -> RankTable:
    sf = _as_sf(sf)
    tie_aware = []
    below = 0
    for _, count in sf.entries:
        tie_aware.append(below)
        below += count
    return RankTable(
        citations=sf.citations,
        unique_ranks=tuple(range(len(sf))),
        tie_aware_ranks=tuple(tie_aware),
        i_max=len(sf) - 1,
        j_max=sf.n - 1,
    )


def _require_spread(sf: SizeFrequency) -> None:
    if sf.is_degenerate:
        raise DegenerateReferenceSet(
            f"all {sf.n} papers have {sf.entries[0][0]} citations; citation ranks are undefined"
        )


def p100(sf: SizeFrequency | Iterable[int]) -> dict[int, float]:
    """P100 for every unique citation count: ``100 * i / i_max``.

    Raises
    ------
    DegenerateReferenceSet
        If the set holds a single unique citation count.
    """
    sf = _as_sf(sf)
    _require_spread(sf)
    table = rank_table(sf)
    return {c: 100.0 * i / table.i_max for c, i in zip(table.citations, table.unique_ranks)}


def p100_prime(sf: SizeFrequency | Iterable[int]) -> dict[int, float]:
    """P100' for every unique citation count: ``100 * j / (n - 1)``.

    ``j`` is the number of papers with strictly fewer citations, so a tie
    group takes the lowest rank it spans. When several papers share the top
    count their value stays below 100.

    Raises
    ------
    DegenerateReferenceSet
        If the set holds a single unique citation count.
    """
    sf = _as_sf(sf)
    _require_spread(sf)
    table = rank_table(sf)
    return {c: 100.0 * j / table.j_max for c, j in zip(table.citations, table.tie_aware_ranks)}


def percentile_cumfreq(sf: SizeFrequency | Iterable[int]) -> dict[int, float]:
    """Percentage of papers with citations at or below each unique count."""
    sf = _as_sf(sf)
    n = sf.n
    out = {}
    at_or_below = 0
    for citation, count in sf.entries:
        at_or_below += count
        out[citation] = 100.0 * at_or_below / n
    return out


_COMPUTE = {
    Indicator.P100: p100,
    Indicator.P100_PRIME: p100_prime,
    Indicator.PERCENTILE: percentile_cumfreq,
}


def compute(indicator: Indicator | str, sf: SizeFrequency | Iterable[int]) -> dict[int, float]:
    return _COMPUTE[Indicator(indicator)](sf)


@dataclass(frozen=True)
class RankClassScheme:
    """Class boundaries on the 0-100 scale; ``k`` boundaries make ``k + 1`` classes."""

    boundaries: tuple[float, ...]

    def __post_init__(self) -> None:
        bounds = tuple(float(b) for b in self.boundaries)
        for b in bounds:
            if not (0.0 < b < 100.0) or math.isnan(b):
                raise InvalidScheme(f"boundary {b} outside the open interval (0, 100)")
        for lo, hi in zip(bounds, bounds[1:]):
            if not lo < hi:
                raise InvalidScheme(f"boundaries must be strictly increasing: {lo} !< {hi}")
        object.__setattr__(self, "boundaries", bounds)

    @property
    def n_classes(self) -> int:
        return len(self.boundaries) + 1

    @classmethod
    def parse(cls, text: str) -> RankClassScheme:
        """Build a scheme from a comma-separated list such as ``"50,75,90,99"``."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            return cls(tuple(float(p) for p in parts))
        except ValueError as exc:
            if isinstance(exc, InvalidScheme):
                raise
            raise InvalidScheme(f"cannot parse class boundaries {text!r}") from exc


DEFAULT_BOUNDARIES = (50.0, 75.0, 90.0, 99.0)
DEFAULT_SCHEME = RankClassScheme(DEFAULT_BOUNDARIES)


def assign_rank_class(value: float, scheme: RankClassScheme = DEFAULT_SCHEME) -> int:
    """Return the 0-based class of ``value``; a value on a boundary joins the upper class."""
    if not 0.0 <= value <= 100.0:
        raise ValueError(f"indicator value {value} outside [0, 100]")
    k = 0
    for b in scheme.boundaries:
        if value >= b:
            k += 1
        else:
            break
    return k


def top_share(values: Sequence[float], threshold: float = 90.0) -> float:
    """Unweighted fraction of ``values`` at or above ``threshold``."""
    if not 0.0 < threshold < 100.0:
        raise ValueError(f"threshold must lie in (0, 100), got {threshold}")
    if not values:
        raise EmptyReferenceSet("top_share needs at least one value")
    return sum(1 for v in values if v >= threshold) / len(values)


def log_transform(citations: int, base: float = 10.0) -> float:
    """``log_base(citations + 1)``; zero citations map to 0."""
    check_citation(citations)
    if not base > 1:
        raise ValueError(f"log base must be > 1, got {base}")
    x = citations + 1
    if base == 10:
        return math.log10(x)
    if base == 2:
        return math.log2(x)
    return math.log(x) / math.log(base)


def broadcast(values: Mapping[int, float], citations: Iterable[int]) -> list[float]:
    """Per-paper values in input order from a per-citation mapping."""
    return [values[c] for c in citations]
