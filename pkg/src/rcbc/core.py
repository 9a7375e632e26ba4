"""Data model and verification for batch placements with server redundancy.

A placement stores n files across m servers; column j of the m x n incidence
matrix is the set of servers holding a copy of file j.  The placement is a
code for batch size k and redundancy r when every demand of at most k files
can be served by every set of m - r servers, at most one file per server.

`verify` offers three equivalent strategies for that property and returns a
small, independently checkable witness on failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal

__all__ = [
    "BatchCode",
    "CardinalityProfile",
    "CodeParams",
    "ColumnUnionWitness",
    "ParameterError",
    "RowContainmentWitness",
    "ServiceWitness",
    "StrategyDisagreement",
    "VerifyReport",
    "canonicalize",
    "cardinality_profile",
    "cross_check",
    "move_ones",
    "normalize_types",
    "validate_params",
    "verify",
    "weight",
]

Strategy = Literal["auto", "definitional", "column-union", "row-containment"]

STRATEGIES = ("definitional", "column-union", "row-containment")


class ParameterError(ValueError):
    """No code exists for the given (n, k, m, r)."""


@dataclass(frozen=True)
class CodeParams:
    """Problem parameters: n files, batch size k, m servers, redundancy r.

    One file per server is taken when serving a batch.  A code exists
    exactly when r < m and k <= min(n, m - r).
    """

    n: int
    k: int
    m: int
    r: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.k < 1 or self.m < 1 or self.r < 0:
            raise ValueError(f"nonsensical parameters {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.m, self.r)

    @property
    def is_valid(self) -> bool:
        return self.r < self.m and self.k <= min(self.n, self.m - self.r)


def validate_params(p: CodeParams) -> None:
    """Raise ParameterError naming the violated inequality, if any."""
    if p.r >= p.m:
        raise ParameterError(f"r={p.r} must be smaller than m={p.m}")
    if p.k > p.m - p.r:
        raise ParameterError(
            f"k={p.k} exceeds m-r={p.m - p.r}; a batch cannot outnumber the "
            "guaranteed available servers"
        )
    if p.k > p.n:
        raise ParameterError(f"k={p.k} exceeds n={p.n}; a batch repeats no file")


@dataclass(frozen=True)
class BatchCode:
    """A placement, held column-wise as an ordered multiset of server sets.

    Column j lists the servers (1-based) holding file j.  Duplicate columns
    are allowed and column order is preserved as given; each column is
    normalized to a sorted tuple.
    """

    m: int
    columns: tuple[tuple[int, ...], ...]

    def __init__(self, m: int, columns: Iterable[Iterable[int]]) -> None:
        if m < 1:
            raise ValueError(f"need at least one server, got m={m}")
        norm = []
        for col in columns:
            c = tuple(sorted(set(col)))
            if c and (c[0] < 1 or c[-1] > m):
                raise ValueError(f"column {c} is not within servers 1..{m}")
            norm.append(c)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "columns", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.columns)

    def column(self, j: int) -> tuple[int, ...]:
        """Server set of file j (1-based)."""
        if not 1 <= j <= self.n:
            raise IndexError(f"column index {j} out of range 1..{self.n}")
        return self.columns[j - 1]


def weight(code: BatchCode) -> int:
    """Total number of stored file copies (ones in the incidence matrix)."""
    return sum(len(col) for col in code.columns)


def canonicalize(code: BatchCode) -> BatchCode:
    """Equivalent code with columns sorted lexicographically."""
    return BatchCode(code.m, sorted(code.columns))


@dataclass(frozen=True)
class CardinalityProfile:
    """Histogram of column cardinalities relative to the [r+1, r+k] band."""

    band: dict[int, int]  # every cardinality r+1 .. r+k, zeros included
    out_of_band: dict[int, int]  # other cardinalities actually present

    @property
    def total(self) -> int:
        return sum(self.band.values()) + sum(self.out_of_band.values())


def cardinality_profile(code: BatchCode, p: CodeParams) -> CardinalityProfile:
    """Count columns of each cardinality; optimal codes stay inside the band."""
    _check_dimensions(code, p)
    band = {i: 0 for i in range(p.r + 1, p.r + p.k + 1)}
    out: dict[int, int] = {}
    for col in code.columns:
        c = len(col)
        if c in band:
            band[c] += 1
        else:
            out[c] = out.get(c, 0) + 1
    return CardinalityProfile(band=band, out_of_band=out)


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class ColumnUnionWitness:
    """Columns whose joint server span is too small: |span| < r + |columns|."""

    columns: tuple[int, ...]  # 1-based file indices
    span: tuple[int, ...]  # the servers those columns cover

    def confirms(self, code: BatchCode, p: CodeParams) -> bool:
        union: set[int] = set()
        for j in self.columns:
            union.update(code.column(j))
        return union == set(self.span) and len(union) < p.r + len(self.columns)


@dataclass(frozen=True)
class RowContainmentWitness:
    """A server set holding more than |rows| - r whole columns."""

    rows: tuple[int, ...]  # 1-based server indices
    columns: tuple[int, ...]  # the files entirely inside those servers

    def confirms(self, code: BatchCode, p: CodeParams) -> bool:
        rows = set(self.rows)
        contained = tuple(
            j for j in range(1, code.n + 1) if set(code.column(j)) <= rows
        )
        return contained == self.columns and len(contained) > len(rows) - p.r


@dataclass(frozen=True)
class ServiceWitness:
    """A demand / availability pair that admits no one-file-per-server match."""

    demand: tuple[int, ...]
    available: tuple[int, ...]
    hall_set: tuple[int, ...]  # demanded files whose joint availability is short

    def confirms(self, code: BatchCode, p: CodeParams) -> bool:
        avail = set(self.available)
        span: set[int] = set()
        for y in self.hall_set:
            span.update(set(code.column(y)) & avail)
        return set(self.hall_set) <= set(self.demand) and len(span) < len(self.hall_set)


Witness = ColumnUnionWitness | RowContainmentWitness | ServiceWitness


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    strategy: str
    witness: Witness | None = None


class StrategyDisagreement(RuntimeError):
    """The supposedly equivalent strategies returned different verdicts."""


def _check_dimensions(code: BatchCode, p: CodeParams) -> None:
    if code.m != p.m or code.n != p.n:
        raise ValueError(
            f"code is {code.m} x {code.n} but parameters say {p.m} x {p.n}"
        )


def _check_serviceability(p: CodeParams) -> None:
    # Only the server-side existence conditions: a code with fewer than k
    # columns is still judged by the same subset conditions below.
    if p.r >= p.m:
        raise ParameterError(f"r={p.r} must be smaller than m={p.m}")
    if p.k > p.m - p.r:
        raise ParameterError(f"k={p.k} exceeds m-r={p.m - p.r}")


def _masks(code: BatchCode) -> list[int]:
    return [sum(1 << (s - 1) for s in col) for col in code.columns]


def verify(code: BatchCode, p: CodeParams, strategy: Strategy = "auto") -> VerifyReport:
    """Decide whether `code` serves every batch under every r-server outage.

    Three equivalent strategies are available, each reporting the first
    violation in its own enumeration order (subset sizes ascending, subsets
    lexicographic within a size):

    - "definitional": exhaust demand / availability pairs and match files to
      servers; witness is an unservable pair.
    - "column-union": every choice of c <= k columns must span at least r + c
      servers; witness is a column set spanning too few.
    - "row-containment": every set of d servers, r <= d < r + k, may fully
      contain at most d - r columns; witness is an overloaded server set.

    "auto" picks the cheaper of the last two by enumeration count.
    """
    _check_dimensions(code, p)
    _check_serviceability(p)
    if strategy == "auto":
        row_cost = sum(math.comb(p.m, d) for d in range(p.r, p.r + p.k))
        col_cost = sum(math.comb(p.n, c) for c in range(1, p.k + 1))
        strategy = "row-containment" if row_cost <= col_cost else "column-union"
    if strategy == "column-union":
        return _verify_column_union(code, p)
    if strategy == "row-containment":
        return _verify_row_containment(code, p)
    if strategy == "definitional":
        return _verify_definitional(code, p)
    raise ValueError(f"unknown strategy {strategy!r}")


def _verify_column_union(code: BatchCode, p: CodeParams) -> VerifyReport:
    masks = _masks(code)
    for c in range(1, min(p.k, p.n) + 1):
        for J in combinations(range(p.n), c):
            union = 0
            for j in J:
                union |= masks[j]
            if union.bit_count() < p.r + c:
                span = tuple(s for s in range(1, p.m + 1) if union >> (s - 1) & 1)
                witness = ColumnUnionWitness(tuple(j + 1 for j in J), span)
                return VerifyReport(False, "column-union", witness)
    return VerifyReport(True, "column-union")


def _verify_row_containment(code: BatchCode, p: CodeParams) -> VerifyReport:
    masks = _masks(code)
    for d in range(p.r, min(p.r + p.k - 1, p.m) + 1):
        for rows in combinations(range(1, p.m + 1), d):
            imask = sum(1 << (s - 1) for s in rows)
            contained = tuple(
                j + 1 for j, cm in enumerate(masks) if cm & ~imask == 0
            )
            if len(contained) > d - p.r:
                witness = RowContainmentWitness(rows, contained)
                return VerifyReport(False, "row-containment", witness)
    return VerifyReport(True, "row-containment")


def _verify_definitional(code: BatchCode, p: CodeParams) -> VerifyReport:
    from . import retrieval  # deferred: retrieval builds on these types

    failure = retrieval.exhaustive_service_check(code, p)
    if failure is None:
        return VerifyReport(True, "definitional")
    witness = ServiceWitness(failure.demand, failure.available, failure.hall_set)
    return VerifyReport(False, "definitional", witness)


def cross_check(code: BatchCode, p: CodeParams) -> VerifyReport:
    """Run all three strategies; raise StrategyDisagreement if they differ."""
    reports = [verify(code, p, s) for s in STRATEGIES]
    verdicts = {rep.ok for rep in reports}
    if len(verdicts) != 1:
        detail = ", ".join(f"{rep.strategy}={rep.ok}" for rep in reports)
        raise StrategyDisagreement(f"verification strategies disagree: {detail}")
    return reports[1]  # column-union report, the classic witness form


# ---------------------------------------------------------------------------
# Weight-preserving transforms


def move_ones(code: BatchCode, i: int, j: int, moved: Iterable[int]) -> BatchCode:
    """Shift the servers in `moved` from column j to column i.

    Requires column i to be a proper subset of column j and `moved` to be a
    nonempty subset of their difference.  The result serves every batch the
    original did, at the same total weight.
    """
    a_i = set(code.column(i))
    a_j = set(code.column(j))
    r_set = set(moved)
    if i == j:
        raise ValueError("columns i and j must differ")
    if not a_i < a_j:
        raise ValueError(f"column {i} is not a proper subset of column {j}")
    if not r_set:
        raise ValueError("moved server set is empty")
    if not r_set <= a_j - a_i:
        raise ValueError(
            f"moved servers {sorted(r_set)} are not all in the difference "
            f"{sorted(a_j - a_i)}"
        )
    cols = list(code.columns)
    cols[i - 1] = tuple(sorted(a_i | r_set))
    cols[j - 1] = tuple(sorted(a_j - r_set))
    return BatchCode(code.m, cols)


def _smallest_superset(col: tuple[int, ...], size: int, m: int) -> tuple[int, ...]:
    # Lexicographically smallest `size`-superset of col within 1..m.
    have = set(col)
    extra = [v for v in range(1, m + 1) if v not in have]
    return tuple(sorted(col + tuple(extra[: size - len(col)])))


def normalize_types(code: BatchCode, p: CodeParams) -> BatchCode:
    """Rework column cardinalities into one of the two extremal shapes.

    Type (i): every cardinality in [r+1, r+k-1].  Type (ii): every
    cardinality in {r+k-1, r+k}.  Requires a verifying code whose columns
    already sit in [r+1, r+k]; weight and verification are preserved.  Codes
    with no column at r+k, or none below r+k-1, come back unchanged.

    Each round rewrites one cardinality-(r+k) column (any such column can be
    swapped for any other of the same cardinality without losing the service
    property) and then moves servers from it onto the first short column,
    lifting that column to cardinality r+k-1.
    """
    _check_dimensions(code, p)
    low, high = p.r + 1, p.r + p.k
    for col in code.columns:
        if not low <= len(col) <= high:
            raise ValueError(
                f"column cardinality {len(col)} outside [{low}, {high}]"
            )
    if not verify(code, p).ok:
        raise ValueError("code does not verify; refusing to transform")
    cols = [tuple(c) for c in code.columns]
    while True:
        smalls = [idx for idx, c in enumerate(cols) if len(c) <= high - 2]
        bigs = [idx for idx, c in enumerate(cols) if len(c) == high]
        if not smalls or not bigs:
            return BatchCode(code.m, cols)
        i, j = smalls[0], bigs[0]
        small = cols[i]
        target = _smallest_superset(small, high, code.m)
        moved = [v for v in target if v not in small][: high - 1 - len(small)]
        cols[i] = tuple(sorted(small + tuple(moved)))
        cols[j] = tuple(v for v in target if v not in moved)
