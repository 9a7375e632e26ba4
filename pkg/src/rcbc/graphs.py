"""Weight-2n codes with r = 1 are exactly simple graphs of high girth.

View a code whose columns all have cardinality 2 as a graph on the servers:
columns are edges.  For 2 <= k < m <= n, the code serves batches of k under
one server outage exactly when the graph is simple with girth at least k+1.
That turns the search for the largest such code into an extremal graph
question, answered here by exhaustive edge search.

Graph text format: an "m e" header (vertices, edges), then e lines "u v".
Blank lines and '#' comments are ignored, as in the matrix format.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .core import BatchCode
from .search import DEFAULT_BUDGET, SearchBudget, SearchResult, _Meter, _BudgetExhausted

__all__ = [
    "GraphFormatError",
    "NotAGraph",
    "SimpleGraph",
    "code_from_graph",
    "girth",
    "graph_from_code",
    "max_edges_with_girth",
    "parse_graph",
    "render_graph",
]


@dataclass(frozen=True)
class SimpleGraph:
    """An undirected graph on vertices 1..vertices; no loops, no multi-edges."""

    vertices: int
    edges: tuple[tuple[int, int], ...]  # sorted pairs, sorted lexicographically

    def __init__(self, vertices: int, edges: Iterable[Iterable[int]]) -> None:
        if vertices < 1:
            raise ValueError(f"need at least one vertex, got {vertices}")
        norm = set()
        for edge in edges:
            u, v = edge
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= vertices and 1 <= v <= vertices):
                raise ValueError(f"edge ({u}, {v}) not within vertices 1..{vertices}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _adjacency(graph: SimpleGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(graph.vertices + 1)]
    for u, v in graph.edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def girth(graph: SimpleGraph) -> int | float:
    """Length of the shortest cycle, or math.inf for forests.

    Breadth-first search from every vertex; a non-tree edge between vertices
    at depths a and b closes a cycle of length at most a + b + 1, and the
    minimum over all roots is exact.
    """
    adj = _adjacency(graph)
    best: int | float = math.inf
    for root in range(1, graph.vertices + 1):
        dist = {root: 0}
        parent = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
        if best == 3:
            return 3
    return best


class NotAGraph(ValueError):
    """The code is not an incidence matrix of a simple graph."""

    def __init__(self, message: str, column: int) -> None:
        super().__init__(f"{message} (column {column})")
        self.column = column


def code_from_graph(graph: SimpleGraph) -> BatchCode:
    """Columns are the edges, in lexicographic order."""
    return BatchCode(graph.vertices, graph.edges)


def graph_from_code(code: BatchCode) -> SimpleGraph:
    """Inverse of code_from_graph; rejects non-graph codes."""
    seen: set[tuple[int, ...]] = set()
    for j, col in enumerate(code.columns, start=1):
        if len(col) != 2:
            raise NotAGraph(f"column cardinality {len(col)}, expected 2", j)
        if col in seen:
            raise NotAGraph(f"parallel edge {col}", j)
        seen.add(col)
    return SimpleGraph(code.m, code.columns)


def _distance_at_least(adj: list[list[int]], u: int, v: int, d: int) -> bool:
    # BFS from u, stopping once depth d would be reached anyway.
    if u == v:
        return d <= 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if dist[x] + 1 >= d:
            continue
        for y in adj[x]:
            if y not in dist:
                if y == v:
                    return False
                dist[y] = dist[x] + 1
                queue.append(y)
    return True


def max_edges_with_girth(
    m: int, girth_min: int, budget: SearchBudget | None = None
) -> SearchResult:
    """Most edges of a simple graph on m vertices with girth >= girth_min.

    Include/exclude search over edges in lexicographic order: an edge may be
    added only when its endpoints are at distance >= girth_min - 1, so every
    cycle ever closed has length >= girth_min.  The witness is returned as a
    code (columns are the edges of a maximum graph).
    """
    if m < 1:
        raise ValueError(f"need at least one vertex, got {m}")
    if girth_min < 3:
        raise ValueError(f"girth bound must be at least 3, got {girth_min}")
    budget = budget or DEFAULT_BUDGET
    all_edges = list(combinations(range(1, m + 1), 2))
    meter = _Meter(budget)
    adj: list[list[int]] = [[] for _ in range(m + 1)]
    chosen: list[tuple[int, int]] = []
    best = -1
    best_edges: list[tuple[int, int]] = []

    def descend(idx: int) -> None:
        nonlocal best, best_edges
        if len(chosen) > best:
            best = len(chosen)
            best_edges = chosen.copy()
        if len(chosen) + (len(all_edges) - idx) <= best:
            return
        if idx == len(all_edges):
            return
        u, v = all_edges[idx]
        meter.tick()
        if _distance_at_least(adj, u, v, girth_min - 1):
            adj[u].append(v)
            adj[v].append(u)
            chosen.append((u, v))
            descend(idx + 1)
            chosen.pop()
            adj[u].pop()
            adj[v].pop()
        descend(idx + 1)

    exhausted = False
    try:
        descend(0)
    except _BudgetExhausted:
        exhausted = True

    witness = code_from_graph(SimpleGraph(m, best_edges))
    if exhausted:
        return SearchResult(best, witness, False, "lower", meter.nodes)
    return SearchResult(best, witness, True, "exact", meter.nodes)


# ---------------------------------------------------------------------------
# Graph text format


class GraphFormatError(ValueError):
    """Malformed graph text; carries the offending 1-based line."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"{message} (line {line})")
        self.line = line


def parse_graph(text: str) -> SimpleGraph:
    """Read a SimpleGraph from graph text."""
    meaningful = [
        (num, line.strip())
        for num, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not meaningful:
        raise GraphFormatError("missing 'm e' header", line=1)
    head_num, head = meaningful[0]
    parts = head.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise GraphFormatError(f"header must be two integers, got {head!r}", head_num)
    m, e = int(parts[0]), int(parts[1])
    rows = meaningful[1:]
    if len(rows) != e:
        where = rows[e][0] if len(rows) > e else (rows[-1][0] if rows else head_num)
        raise GraphFormatError(f"expected {e} edge lines, found {len(rows)}", where)
    edges = []
    seen: set[tuple[int, int]] = set()
    for num, row in rows:
        fields = row.split()
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise GraphFormatError(f"edge line must be two integers, got {row!r}", num)
        u, v = int(fields[0]), int(fields[1])
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", num)
        if not (1 <= u <= m and 1 <= v <= m):
            raise GraphFormatError(f"edge ({u}, {v}) not within vertices 1..{m}", num)
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise GraphFormatError(f"duplicate edge {pair}", num)
        seen.add(pair)
        edges.append(pair)
    return SimpleGraph(m, edges)


def render_graph(graph: SimpleGraph) -> str:
    """Graph text for a SimpleGraph; parses back to an equal graph."""
    lines = [f"{graph.vertices} {graph.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"
