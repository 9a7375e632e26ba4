"""Exact combinatorial search oracles.

Searches run over multisets of candidate columns in nondecreasing
(cardinality, lexicographic) order, so every result and witness is
deterministic.  Feasibility is tracked incrementally: for each server subset
I with r+1 <= |I| <= r+k-1, at most |I| - r columns may sit inside I.  A
completed multiset passing every counter is exactly a code, and columns of
cardinality r+k touch no counter at all.

Row relabeling symmetry is broken at the first column only: the least column
of an optimal multiset can always be relabeled to a prefix {1, ..., c}.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Literal

from .core import BatchCode, CodeParams, ParameterError, validate_params

__all__ = [
    "DEFAULT_BUDGET",
    "SearchBudget",
    "SearchResult",
    "exact_min_weight",
    "gap_base_max",
    "trivial_weight_max",
    "uniform_packing_max",
]


@dataclass(frozen=True)
class SearchBudget:
    """Node and wall-clock caps for a search; both must be positive."""

    node_limit: int = 20_000_000
    time_limit: float = 600.0

    def __post_init__(self) -> None:
        if self.node_limit <= 0:
            raise ValueError(f"node_limit must be positive, got {self.node_limit}")
        if self.time_limit <= 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a search.

    With exact=True, `value` is the quantity searched for and `witness` (when
    the quantity has one) achieves it; value None means no finite answer
    exists.  With exact=False the budget ran out: `bound` says which side of
    the truth `value` is on, and `witness` is the best object found so far.
    """

    value: int | None
    witness: BatchCode | None
    exact: bool
    bound: Literal["exact", "lower", "upper"] = "exact"
    nodes: int = 0

    @property
    def unbounded(self) -> bool:
        return self.exact and self.value is None


class _BudgetExhausted(Exception):
    pass


class _Meter:
    """Counts search nodes and enforces the budget."""

    def __init__(self, budget: SearchBudget) -> None:
        self.nodes = 0
        self.limit = budget.node_limit
        self.deadline = time.monotonic() + budget.time_limit

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes >= self.limit:
            raise _BudgetExhausted
        if self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted


def _counter_capacities(m: int, k: int, r: int) -> dict[int, int]:
    """Capacity |I| - r for every tracked server subset I, as bitmasks."""
    caps: dict[int, int] = {}
    for d in range(r + 1, min(r + k - 1, m) + 1):
        for rows in combinations(range(m), d):
            caps[sum(1 << b for b in rows)] = d - r
    return caps


def _tracked_supersets(mask: int, card: int, m: int, k: int, r: int) -> tuple[int, ...]:
    """All counter subsets containing a column of this mask and cardinality."""
    if card >= r + k:
        return ()
    rest = [b for b in range(m) if not mask >> b & 1]
    out = [mask]
    for extra in range(1, (r + k - 1) - card + 1):
        for add in combinations(rest, extra):
            out.append(mask | sum(1 << b for b in add))
    return tuple(out)


def _prefix_tuple(card: int) -> tuple[int, ...]:
    return tuple(range(1, card + 1))


def exact_min_weight(p: CodeParams, budget: SearchBudget | None = None) -> SearchResult:
    """Minimum total weight of any code for p, by branch and bound.

    Candidate columns take every cardinality in [r+1, r+k]: smaller columns
    appear in no code, and any column above r+k could be shrunk.  Branches
    are pruned when the current weight plus (slots left) * (current column
    cardinality) cannot beat the best complete code found.
    """
    validate_params(p)
    budget = budget or DEFAULT_BUDGET
    n, k, m, r = p.n, p.k, p.m, p.r

    cands: list[tuple[int, tuple[int, ...], int]] = []  # (card, column, mask)
    for card in range(r + 1, min(r + k, m) + 1):
        for col in combinations(range(1, m + 1), card):
            cands.append((card, col, sum(1 << (s - 1) for s in col)))
    caps = _counter_capacities(m, k, r)
    supersets = [
        _tracked_supersets(mask, card, m, k, r) for card, _, mask in cands
    ]
    counts = {imask: 0 for imask in caps}

    meter = _Meter(budget)
    best_weight = math.inf
    best: list[int] | None = None
    chosen: list[int] = []

    def descend(start: int, slots: int, acc: int) -> None:
        nonlocal best_weight, best
        if slots == 0:
            if acc < best_weight:
                best_weight = acc
                best = chosen.copy()
            return
        for idx in range(start, len(cands)):
            card = cands[idx][0]
            if acc + card * slots >= best_weight:
                break  # later candidates only get wider
            if not chosen and cands[idx][1] != _prefix_tuple(card):
                continue  # symmetry: first column is a prefix set
            meter.tick()
            ok = True
            touched = supersets[idx]
            for pos, imask in enumerate(touched):
                if counts[imask] + 1 > caps[imask]:
                    ok = False
                    for undo in touched[:pos]:
                        counts[undo] -= 1
                    break
                counts[imask] += 1
            if not ok:
                continue
            chosen.append(idx)
            descend(idx, slots - 1, acc + card)
            chosen.pop()
            for imask in touched:
                counts[imask] -= 1

    exhausted = False
    try:
        descend(0, n, 0)
    except _BudgetExhausted:
        exhausted = True

    witness = (
        BatchCode(m, [cands[idx][1] for idx in best]) if best is not None else None
    )
    if exhausted:
        # Sound floor: every column needs at least r+1 servers.
        return SearchResult((r + 1) * n, witness, False, "lower", meter.nodes)
    assert best is not None  # all-(r+k)-cardinality multisets are always codes
    return SearchResult(int(best_weight), witness, True, "exact", meter.nodes)


def uniform_packing_max(
    k: int,
    m: int,
    r: int,
    cardinality: int,
    limit: int | None = None,
    budget: SearchBudget | None = None,
) -> SearchResult:
    """Largest code whose columns all have the given cardinality.

    Searches multisets of cardinality-`cardinality` columns under the same
    containment counters as exact_min_weight, maximizing the column count.
    `limit` caps the count when the caller only needs that much.
    """
    if not 0 <= r < m:
        raise ParameterError(f"need 0 <= r < m, got r={r}, m={m}")
    if k < 1 or k > m - r:
        raise ParameterError(f"need 1 <= k <= m-r, got k={k}, m-r={m - r}")
    if not r + 1 <= cardinality <= min(r + k - 1, m):
        # Cardinality-(r+k) columns satisfy every subset condition, so their
        # packings are unbounded; nothing to search there.
        raise ValueError(
            f"cardinality {cardinality} outside the constrained band "
            f"[{r + 1}, {min(r + k - 1, m)}]"
        )
    budget = budget or DEFAULT_BUDGET

    cols = list(combinations(range(1, m + 1), cardinality))
    masks = [sum(1 << (s - 1) for s in col) for col in cols]
    caps = _counter_capacities(m, k, r)
    supersets = [
        _tracked_supersets(mask, cardinality, m, k, r) for mask in masks
    ]
    counts = {imask: 0 for imask in caps}

    # Max copies of each column if placed alone; used for suffix pruning.
    solo = [min(caps[imask] for imask in sup) for sup in supersets]
    suffix = [0] * (len(cols) + 1)
    for idx in range(len(cols) - 1, -1, -1):
        suffix[idx] = suffix[idx + 1] + solo[idx]

    meter = _Meter(budget)
    best = -1
    best_cols: list[int] = []
    chosen: list[int] = []
    cap_count = limit if limit is not None else math.inf

    def descend(start: int) -> None:
        nonlocal best, best_cols
        if len(chosen) > best:
            best = len(chosen)
            best_cols = chosen.copy()
        if len(chosen) >= cap_count:
            return
        for idx in range(start, len(cols)):
            if len(chosen) + suffix[idx] <= best:
                return
            if not chosen and cols[idx] != _prefix_tuple(cardinality):
                continue  # symmetry: first column is a prefix set
            meter.tick()
            ok = True
            touched = supersets[idx]
            for pos, imask in enumerate(touched):
                if counts[imask] + 1 > caps[imask]:
                    ok = False
                    for undo in touched[:pos]:
                        counts[undo] -= 1
                    break
                counts[imask] += 1
            if not ok:
                continue
            chosen.append(idx)
            descend(idx)
            chosen.pop()
            for imask in touched:
                counts[imask] -= 1

    exhausted = False
    try:
        descend(0)
    except _BudgetExhausted:
        exhausted = True

    witness = BatchCode(m, [cols[idx] for idx in best_cols])
    if exhausted:
        return SearchResult(best, witness, False, "lower", meter.nodes)
    return SearchResult(best, witness, True, "exact", meter.nodes)


def gap_base_max(
    k: int, m: int, r: int, budget: SearchBudget | None = None
) -> SearchResult:
    """Largest code with every column of cardinality r+k-2.

    This is the base packing the gap-regime construction shortens and
    extends.  Requires k >= 3 and m >= r+k.  The count never exceeds
    (k-1) C(m, r+k-2) / (r+k-1); that inequality is asserted against the
    search output, never assumed to be tight.
    """
    if k < 3:
        raise ValueError(f"base packings need k >= 3, got k={k}")
    if m < r + k:
        raise ValueError(f"need m >= r+k, got m={m}, r+k={r + k}")
    result = uniform_packing_max(k, m, r, r + k - 2, budget=budget)
    assert result.value is not None
    bound_lhs = result.value * (r + k - 1)
    bound_rhs = (k - 1) * math.comb(m, r + k - 2)
    if bound_lhs > bound_rhs:
        raise RuntimeError(
            f"packing of size {result.value} exceeds the counting bound "
            f"{bound_rhs}/{r + k - 1}; the search is unsound"
        )
    return result


def trivial_weight_max(
    k: int,
    m: int,
    r: int,
    limit: int | None = None,
    budget: SearchBudget | None = None,
) -> SearchResult:
    """Largest n for which some code meets the weight floor (r+1)n.

    A code meets the floor exactly when every column has cardinality r+1.
    For k=1 the answer is unbounded (repeat any column), reported as value
    None; `limit` caps the search otherwise.
    """
    if not 0 <= r < m:
        raise ParameterError(f"need 0 <= r < m, got r={r}, m={m}")
    if k < 1 or k > m - r:
        raise ParameterError(f"need 1 <= k <= m-r, got k={k}, m-r={m - r}")
    if k == 1:
        return SearchResult(None, None, True, "exact", 0)
    return uniform_packing_max(k, m, r, r + 1, limit=limit, budget=budget)
