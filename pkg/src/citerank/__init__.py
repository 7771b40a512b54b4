"""Citation-rank indicators for bibliometric reference sets."""

from .dataset import (
    PublicationRecord,
    ReferenceSet,
    ReferenceSetKey,
    ScoreRow,
    build_reference_sets,
    parse_records,
    score_all,
    write_records,
)
from .errors import (
    CiteRankError,
    DegenerateReferenceSet,
    DuplicateId,
    EmptyReferenceSet,
    InvalidCitation,
    InvalidScheme,
    ParseError,
    UnknownPaper,
)
from .indicators import (
    DEFAULT_SCHEME,
    Indicator,
    RankClassScheme,
    SizeFrequency,
    assign_rank_class,
    log_transform,
    p100,
    p100_prime,
    percentile_cumfreq,
    rank_table,
    size_frequency,
    top_share,
)
from .report import HistogramRow, UnitSummary, aggregate_units, export_distributions

__version__ = "0.1.0"
