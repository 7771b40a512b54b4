"""Exception types raised by citerank."""

from __future__ import annotations


class CiteRankError(Exception):
    """Base class for all citerank errors."""


class EmptyReferenceSet(CiteRankError, ValueError):
    """A computation needed at least one paper and got none."""


class InvalidCitation(CiteRankError, ValueError):
    """A citation count was negative or not an integer."""


class DegenerateReferenceSet(CiteRankError, ValueError):
    """Every paper in the set has the same citation count, so ranks are undefined."""


class InvalidScheme(CiteRankError, ValueError):
    """Rank-class boundaries are not strictly increasing inside (0, 100)."""


class ParseError(CiteRankError, ValueError):
    """A record could not be parsed.

    ``line`` is 1-based and counts the header row for CSV input.
    """

    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class DuplicateId(CiteRankError, ValueError):
    def __init__(self, paper_id: str, line: int | None = None):
        self.paper_id = paper_id
        self.line = line
        at = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate paper id {paper_id!r}{at}")


class UnknownPaper(CiteRankError, KeyError):
    def __init__(self, paper_id: str):
        self.paper_id = paper_id
        super().__init__(paper_id)

    def __str__(self) -> str:
        return f"score row refers to unknown paper id {self.paper_id!r}"
