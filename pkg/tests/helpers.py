"""Shared fixtures and independent brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import math
import random

from rcbc import BatchCode, CodeParams, SimpleGraph, parse_matrix, verify

# Reference placements, transcribed as matrix text so the parser is on the
# critical path of every test that uses them.

TALL_TEXT = """\
6 4
1001
1100
1110
1111
0111
0011
"""
TALL_PARAMS = CodeParams(4, 3, 6, 3)

MAX_BATCH_TEXT = """\
6 7
1001111
1100111
1110011
1111001
0111101
0011111
"""
MAX_BATCH_PARAMS = CodeParams(7, 3, 6, 3)

MANY_FILES_TEXT = """\
4 8
11100010
10011011
01010111
00101101
"""
MANY_FILES_PARAMS = CodeParams(8, 2, 4, 1)


def tall_code() -> BatchCode:
    return parse_matrix(TALL_TEXT)


def max_batch_code() -> BatchCode:
    return parse_matrix(MAX_BATCH_TEXT)


def many_files_code() -> BatchCode:
    return parse_matrix(MANY_FILES_TEXT)


def all_matrices(m: int, n: int):
    """Every 0/1 matrix of the given shape, as BatchCodes."""
    cells = m * n
    for bits in range(1 << cells):
        cols = [
            tuple(i + 1 for i in range(m) if bits >> (j * m + i) & 1)
            for j in range(n)
        ]
        yield BatchCode(m, cols)


def valid_kr_pairs(m: int, n: int) -> list[tuple[int, int]]:
    """All (k, r) for which codes of this shape can exist."""
    return [
        (k, r)
        for r in range(m)
        for k in range(1, min(n, m - r) + 1)
    ]


def random_matrix(rng: random.Random, m: int, n: int) -> BatchCode:
    density = rng.uniform(0.15, 0.85)
    cols = [
        tuple(s for s in range(1, m + 1) if rng.random() < density)
        for _ in range(n)
    ]
    return BatchCode(m, cols)


def random_valid_params(
    rng: random.Random, max_m: int = 6, max_n: int = 6
) -> CodeParams:
    m = rng.randint(2, max_m)
    r = rng.randint(0, m - 1)
    k = rng.randint(1, m - r)
    n = rng.randint(k, max_n) if k <= max_n else k
    return CodeParams(n, k, m, r)


def random_accepted_code(
    rng: random.Random, max_m: int = 6, max_n: int = 6
) -> tuple[BatchCode, CodeParams]:
    """A random verifying code with in-band column cardinalities."""
    while True:
        p = random_valid_params(rng, max_m, max_n)
        top = min(p.r + p.k, p.m)
        cols = [
            tuple(rng.sample(range(1, p.m + 1), rng.randint(p.r + 1, top)))
            for _ in range(p.n)
        ]
        code = BatchCode(p.m, cols)
        if verify(code, p).ok:
            return code, p


def brute_force_feasible(code: BatchCode, demand, avail) -> bool:
    """Assignment existence by trying every server tuple."""
    demand = sorted(set(demand))
    avail = set(avail)
    options = [sorted(set(code.column(f)) & avail) for f in demand]
    if not all(options):
        return False
    for combo in itertools.product(*options):
        if len(set(combo)) == len(combo):
            return True
    return False


def brute_min_weight(p: CodeParams) -> int:
    """Minimum weight by unpruned enumeration of column multisets.

    Only usable for tiny parameters; exists to check the real search
    without sharing any of its machinery.
    """
    cards = range(p.r + 1, min(p.r + p.k, p.m) + 1)
    pool = [
        col for card in cards for col in itertools.combinations(range(1, p.m + 1), card)
    ]
    best = math.inf
    for combo in itertools.combinations_with_replacement(pool, p.n):
        w = sum(len(c) for c in combo)
        if w < best and verify(BatchCode(p.m, combo), p).ok:
            best = w
    return best


def brute_girth(graph: SimpleGraph) -> int | float:
    """Girth by checking every vertex subset for a spanning cycle."""
    edges = set(graph.edges)
    best = math.inf
    for size in range(3, graph.vertices + 1):
        if size >= best:
            break
        for verts in itertools.combinations(range(1, graph.vertices + 1), size):
            rest = list(verts[1:])
            for perm in itertools.permutations(rest):
                cycle = (verts[0],) + perm
                pairs = [
                    tuple(sorted((cycle[i], cycle[(i + 1) % size])))
                    for i in range(size)
                ]
                if all(pair in edges for pair in pairs):
                    best = min(best, size)
                    break
            else:
                continue
            break
    return best


def brute_max_extension(code: BatchCode, p: CodeParams) -> int:
    """Most cardinality-(r+k-1) columns appendable while still verifying.

    Depth-first over append multisets with verify() as the only filter;
    independent of the capacity formula.
    """
    top = p.r + p.k - 1
    pool = list(itertools.combinations(range(1, p.m + 1), top))

    def grow(cols: list, start: int) -> int:
        best = 0
        for idx in range(start, len(pool)):
            cols.append(pool[idx])
            probe = BatchCode(p.m, cols)
            p_now = CodeParams(len(cols), p.k, p.m, p.r)
            if verify(probe, p_now).ok:
                best = max(best, 1 + grow(cols, idx))
            cols.pop()
        return best

    return grow(list(code.columns), 0)
