"""Closed-form constructions for the solved parameter regimes.

Each constructor returns a code proven optimal in its regime; the regime
dispatcher `predicted_weight` evaluates every formula whose hypothesis holds
and insists they agree.  The extension machinery appends cardinality-(r+k-1)
columns up to a counted capacity, and packing-design complements give codes
directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, cycle, islice
from typing import Literal

from . import search
from .core import BatchCode, CodeParams, canonicalize, validate_params, verify, weight

__all__ = [
    "NoKnownConstruction",
    "PackingDesign",
    "RegimePrediction",
    "complete_packing_design",
    "construct_circulant",
    "construct_from_design",
    "construct_gap",
    "construct_large_n",
    "construct_max_k",
    "construct_optimal",
    "extend_with_columns",
    "extension_capacity",
    "predicted_weight",
]


def _comb(a: int, b: int) -> int:
    return math.comb(a, b) if 0 <= b <= a else 0


def _window(start: int, width: int, m: int) -> tuple[int, ...]:
    return tuple(sorted((start - 1 + x) % m + 1 for x in range(width)))


def construct_circulant(p: CodeParams) -> BatchCode:
    """Optimal code for n <= m: column j holds servers j, j+1, ..., j+r (mod m).

    Any c columns span at least r + c servers, so the weight floor (r+1)n is
    met with every batch size up to m - r.
    """
    validate_params(p)
    if p.n > p.m:
        raise ValueError(f"circulant construction needs n <= m, got n={p.n}, m={p.m}")
    return BatchCode(p.m, [_window(j, p.r + 1, p.m) for j in range(1, p.n + 1)])


def construct_max_k(n: int, m: int, r: int) -> BatchCode:
    """Optimal code for the largest admissible batch, k = m - r, when n >= m.

    The first m columns are the width-(r+1) cyclic windows; the remaining
    n - m columns hold every server.  Weight is m(n - m + r + 1).
    """
    if not 0 <= r < m:
        raise ValueError(f"need 0 <= r < m, got r={r}, m={m}")
    if n < m:
        raise ValueError(f"max-batch construction needs n >= m, got n={n}, m={m}")
    full = tuple(range(1, m + 1))
    cols = [_window(j, r + 1, m) for j in range(1, m + 1)]
    cols.extend([full] * (n - m))
    return BatchCode(m, cols)


def construct_large_n(p: CodeParams) -> BatchCode:
    """Optimal code for n at or above (k-1) C(m, r+k-1).

    Takes k-1 copies of every cardinality-(r+k-1) column, then pads with
    cardinality-(r+k) columns (cycled lexicographically).  Weight is
    (r+k)n - (k-1) C(m, r+k-1).
    """
    validate_params(p)
    if p.k < 2:
        raise ValueError("large-n construction needs k >= 2; use windows for k=1")
    threshold = (p.k - 1) * _comb(p.m, p.r + p.k - 1)
    if p.n < threshold:
        raise ValueError(
            f"large-n construction needs n >= {threshold}, got n={p.n}"
        )
    cols: list[tuple[int, ...]] = []
    for col in combinations(range(1, p.m + 1), p.r + p.k - 1):
        cols.extend([col] * (p.k - 1))
    fillers = combinations(range(1, p.m + 1), p.r + p.k)
    cols.extend(islice(cycle(fillers), p.n - threshold))
    return BatchCode(p.m, cols)


# ---------------------------------------------------------------------------
# Extension by cardinality-(r+k-1) columns


def extension_capacity(code: BatchCode, p: CodeParams) -> int:
    """How many cardinality-(r+k-1) columns can still be appended.

    Requires a verifying code with every column cardinality at most r+k-1.
    Each cardinality-(r+k-1) server set C tolerates k-1 contained columns;
    the capacity is the total remaining headroom,
    (k-1) C(m, r+k-1) - sum_j C(m - |A_j|, r+k-1 - |A_j|).
    """
    p_here = CodeParams(code.n, p.k, p.m, p.r)
    top = p.r + p.k - 1
    for col in code.columns:
        if len(col) > top:
            raise ValueError(
                f"column cardinality {len(col)} exceeds r+k-1 = {top}"
            )
    if not verify(code, p_here).ok:
        raise ValueError("code does not verify; capacity is undefined")
    used = sum(_comb(p.m - len(col), top - len(col)) for col in code.columns)
    return (p.k - 1) * _comb(p.m, top) - used


def extend_with_columns(code: BatchCode, p: CodeParams, count: int) -> BatchCode:
    """Append `count` cardinality-(r+k-1) columns, keeping the code verifying.

    Walks the (r+k-1)-subsets lexicographically, appending each until it
    holds k-1 whole columns.  Any count up to extension_capacity(code, p) is
    reachable this way.
    """
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    capacity = extension_capacity(code, p)
    if count > capacity:
        raise ValueError(f"count {count} exceeds extension capacity {capacity}")
    top = p.r + p.k - 1
    colsets = [set(col) for col in code.columns]
    cols = list(code.columns)
    remaining = count
    for cand in combinations(range(1, p.m + 1), top):
        if remaining == 0:
            break
        cset = set(cand)
        inside = sum(1 for col in colsets if col <= cset)
        take = min(p.k - 1 - inside, remaining)
        for _ in range(take):
            cols.append(cand)
            colsets.append(cset)
            remaining -= 1
    assert remaining == 0  # guaranteed by the capacity count
    return BatchCode(p.m, cols)


# ---------------------------------------------------------------------------
# Packing designs


@dataclass(frozen=True)
class PackingDesign:
    """Blocks of fixed size over points 1..points, with bounded coverage:
    every `strength`-subset of points lies in at most `max_coverage` blocks.
    """

    points: int
    block_size: int
    strength: int
    max_coverage: int
    blocks: tuple[tuple[int, ...], ...]

    def __init__(
        self,
        points: int,
        block_size: int,
        strength: int,
        max_coverage: int,
        blocks,
    ) -> None:
        if points < 1 or block_size < 1 or strength < 1 or max_coverage < 0:
            raise ValueError("design parameters must be positive (coverage >= 0)")
        if strength > block_size:
            raise ValueError(f"strength {strength} exceeds block size {block_size}")
        norm = []
        for block in blocks:
            b = tuple(sorted(set(block)))
            if len(b) != block_size:
                raise ValueError(f"block {b} does not have size {block_size}")
            if b[0] < 1 or b[-1] > points:
                raise ValueError(f"block {b} is not within points 1..{points}")
            norm.append(b)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "block_size", block_size)
        object.__setattr__(self, "strength", strength)
        object.__setattr__(self, "max_coverage", max_coverage)
        object.__setattr__(self, "blocks", tuple(norm))

    def coverage_violation(self) -> tuple[int, ...] | None:
        """A strength-subset covered by too many blocks, or None."""
        for sub in combinations(range(1, self.points + 1), self.strength):
            sset = set(sub)
            covered = sum(1 for b in self.blocks if sset <= set(b))
            if covered > self.max_coverage:
                return sub
        return None

    def max_block_multiplicity(self) -> int:
        seen: dict[tuple[int, ...], int] = {}
        for b in self.blocks:
            seen[b] = seen.get(b, 0) + 1
        return max(seen.values(), default=0)


def complete_packing_design(m: int, k: int) -> PackingDesign:
    """The all-blocks design whose complements form a code with r = 0.

    Blocks are every (m-k+2)-subset of 1..m; each (m-k+1)-subset lies in
    exactly k-1 of them.
    """
    if k < 3:
        raise ValueError(f"need k >= 3, got k={k}")
    if m < k:
        raise ValueError(f"need m >= k, got m={m}, k={k}")
    g = m - k
    return PackingDesign(
        points=m,
        block_size=g + 2,
        strength=g + 1,
        max_coverage=k - 1,
        blocks=tuple(combinations(range(1, m + 1), g + 2)),
    )


def construct_from_design(design: PackingDesign, p: CodeParams) -> BatchCode:
    """Columns are the block complements; block order is preserved.

    The design must match p: points = m, block size m - r - k + 2, strength
    one less, coverage at most k-1, and no block repeated more than k-2
    times.  The resulting columns have cardinality r+k-2.
    """
    g = p.m - (p.r + p.k)
    if g < 0:
        raise ValueError(f"need m >= r+k, got m={p.m}, r+k={p.r + p.k}")
    if design.points != p.m:
        raise ValueError(f"design has {design.points} points, expected {p.m}")
    if design.block_size != g + 2:
        raise ValueError(
            f"design blocks have size {design.block_size}, expected {g + 2}"
        )
    if design.strength != g + 1:
        raise ValueError(f"design strength {design.strength}, expected {g + 1}")
    if design.max_coverage != p.k - 1:
        raise ValueError(
            f"design coverage bound {design.max_coverage}, expected {p.k - 1}"
        )
    if len(design.blocks) != p.n:
        raise ValueError(f"design has {len(design.blocks)} blocks, expected n={p.n}")
    bad = design.coverage_violation()
    if bad is not None:
        raise ValueError(f"points {list(bad)} are covered by too many blocks")
    if design.max_block_multiplicity() > p.k - 2:
        raise ValueError(
            f"a block repeats more than k-2 = {p.k - 2} times"
        )
    everything = set(range(1, p.m + 1))
    cols = [tuple(sorted(everything - set(b))) for b in design.blocks]
    return BatchCode(p.m, cols)


# ---------------------------------------------------------------------------
# The gap regime and the dispatcher


def construct_gap(p: CodeParams, base: BatchCode) -> BatchCode:
    """Optimal code between the packing bound and the large-n regime.

    `base` must be a verifying code on m servers whose columns all have
    cardinality r+k-2 (a gap base packing).  The first
    x = ((k-1) C(m, r+k-1) - n) / (m-r-k+1), rounded down, columns of the
    canonicalized base are kept and the remaining n - x columns appended at
    cardinality r+k-1.  Weight is (r+k-1)n - x.
    """
    validate_params(p)
    if p.k < 3:
        raise ValueError(f"gap construction needs k >= 3, got k={p.k}")
    if p.m < p.r + p.k:
        raise ValueError(f"need m >= r+k, got m={p.m}")
    if base.m != p.m:
        raise ValueError(f"base is on {base.m} servers, expected {p.m}")
    want = p.r + p.k - 2
    for col in base.columns:
        if len(col) != want:
            raise ValueError(
                f"base column cardinality {len(col)}, expected {want}"
            )
    total = (p.k - 1) * _comb(p.m, p.r + p.k - 1)
    if p.n > total:
        raise ValueError(f"gap construction needs n <= {total}, got n={p.n}")
    x = (total - p.n) // (p.m - p.r - p.k + 1)
    if x > base.n:
        raise ValueError(
            f"n={p.n} needs a base of {x} columns, base has only {base.n}"
        )
    kept = canonicalize(base).columns[:x]
    partial = BatchCode(p.m, kept)
    return extend_with_columns(partial, p, p.n - x)


@dataclass(frozen=True)
class RegimePrediction:
    """A weight formula's verdict: value, regime tag, and its strength."""

    value: int | None
    regime: str | None
    exactness: Literal["proven-optimal", "upper-bound"] | None

    @property
    def known(self) -> bool:
        return self.value is not None


class NoKnownConstruction(ValueError):
    """Valid parameters, but no covered regime; carries budget_limited."""

    def __init__(self, p: CodeParams, budget_limited: bool = False) -> None:
        super().__init__(
            f"no construction regime covers {p.as_tuple()}"
            + (" within the search budget" if budget_limited else "")
        )
        self.budget_limited = budget_limited


_base_cache: dict[tuple[int, int, int], search.SearchResult] = {}


def _gap_base(k: int, m: int, r: int, budget) -> search.SearchResult:
    key = (k, m, r)
    hit = _base_cache.get(key)
    if hit is not None:
        return hit
    result = search.gap_base_max(k, m, r, budget=budget)
    if result.exact:
        _base_cache[key] = result
    return result


def predicted_weight(
    p: CodeParams, budget: search.SearchBudget | None = None
) -> RegimePrediction:
    """Evaluate every optimal-weight formula whose hypothesis covers p.

    All applicable formulas must agree (they are facts about the same
    minimum); the returned tag names the first applicable regime.  Returns
    an unknown prediction when no regime covers p.  The gap regime needs the
    base packing maximum, searched under `budget` and cached per (k, m, r).
    """
    validate_params(p)
    n, k, m, r = p.n, p.k, p.m, p.r
    found: list[tuple[str, int]] = []
    if k == 1:
        found.append(("k1", (r + 1) * n))
    if n <= m:
        found.append(("circulant", (r + 1) * n))
    if k == 2 and n <= _comb(m, r + 1):
        found.append(("k2-small", (r + 1) * n))
    if k == m - r and n >= m:
        found.append(("max-k", m * (n - m + r + 1)))
    total = (k - 1) * _comb(m, r + k - 1)
    if k >= 2 and n >= total:
        found.append(("large-n", (r + k) * n - total))
    budget_limited = False
    if k >= 3 and m >= r + k and n < total:
        # Cheap prefilter: even the largest conceivable base cannot reach n.
        cap = ((k - 1) * _comb(m, r + k - 2)) // (r + k - 1)
        span = m - r - k + 1
        if n >= total - span * cap:
            base = _gap_base(k, m, r, budget)
            budget_limited = not base.exact
            assert base.value is not None
            # A lower bound on the base maximum still certifies membership.
            if n >= total - span * base.value:
                found.append(("gap", (r + k - 1) * n - (total - n) // span))
    if not found:
        return RegimePrediction(None, None, None)
    values = {v for _, v in found}
    if len(values) != 1:
        detail = ", ".join(f"{tag}={v}" for tag, v in found)
        raise RuntimeError(f"optimal-weight formulas disagree: {detail}")
    tag, value = found[0]
    return RegimePrediction(value, tag, "proven-optimal")


def construct_optimal(
    p: CodeParams, budget: search.SearchBudget | None = None
) -> tuple[BatchCode, RegimePrediction]:
    """Build a minimum-weight code for p via the first applicable regime.

    Raises NoKnownConstruction when no formula covers p; the exception says
    whether a larger search budget might change that.
    """
    prediction = predicted_weight(p, budget=budget)
    if not prediction.known:
        limited = False
        if p.k >= 3 and p.m >= p.r + p.k:
            total = (p.k - 1) * _comb(p.m, p.r + p.k - 1)
            span = p.m - p.r - p.k + 1
            cap = ((p.k - 1) * _comb(p.m, p.r + p.k - 2)) // (p.r + p.k - 1)
            if total - span * cap <= p.n < total:
                # Inside the widest conceivable gap interval, so only an
                # inexact base search can be the blocker.
                cached = _base_cache.get((p.k, p.m, p.r))
                limited = cached is None or not cached.exact
        raise NoKnownConstruction(p, budget_limited=limited)
    builders = {
        "k1": lambda: BatchCode(
            p.m, [_window((j - 1) % p.m + 1, p.r + 1, p.m) for j in range(1, p.n + 1)]
        ),
        "circulant": lambda: construct_circulant(p),
        "k2-small": lambda: BatchCode(
            p.m, islice(combinations(range(1, p.m + 1), p.r + 1), p.n)
        ),
        "max-k": lambda: construct_max_k(p.n, p.m, p.r),
        "large-n": lambda: construct_large_n(p),
        "gap": lambda: construct_gap(p, _gap_base(p.k, p.m, p.r, budget).witness),
    }
    code = builders[prediction.regime]()
    actual = weight(code)
    if actual != prediction.value:
        raise RuntimeError(
            f"constructed weight {actual} differs from predicted {prediction.value}"
        )
    return code, prediction
