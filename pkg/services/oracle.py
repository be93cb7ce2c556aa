"""Brute-force ground truth on the reconfiguration graph R_k(G) of small instances.

Colourings are encoded as base-k integers (vertex i is digit i, colour c is digit
value c - 1). Proper colourings are enumerated by backtracking so the k**n guard is
the only place the full product space is mentioned.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

import config
from services.density import Params, mad
from services.errors import ArgumentError, SizeGuardError
from services.graph_core import Colouring, Graph, is_proper
from services.recolor import LengthBudget, length_bound

logger = logging.getLogger(__name__)

# float64 cells per shortest_path result block (128 MiB)
_BFS_CELLS = 1 << 24
_BFS_MAX_SOURCES = 256


@dataclass(frozen=True)
class ReconfSummary:
    colouring_count: int
    component_count: int
    component_diameters: Tuple[int, ...]
    frozen_count: int


@dataclass(frozen=True)
class DiameterReport:
    n: int
    k: int
    summary: ReconfSummary
    budget: LengthBudget
    hypothesis_met: bool

    @property
    def connected(self) -> bool:
        return self.summary.component_count == 1

    @property
    def diameter(self) -> int:
        return max(self.summary.component_diameters, default=0)

    @property
    def bound(self) -> int:
        return self.budget.total_bound

    @property
    def holds(self) -> bool:
        return self.connected and self.diameter <= self.bound


def _guard(graph: Graph, k: int, limit: Optional[int]) -> None:
    if k < 1:
        raise ArgumentError(f"k must be positive, got {k}")
    limit = config.ORACLE_STATE_LIMIT if limit is None else limit
    if k ** graph.n > limit:
        logger.warning("oracle refused k^n = %d^%d states (limit %d)", k, graph.n, limit)
        raise SizeGuardError(f"k^n = {k}^{graph.n} exceeds the oracle limit {limit}")


def encode(colours, k: int) -> int:
    code = 0
    for c in reversed(colours):
        code = code * k + (c - 1)
    return code


def proper_colourings(graph: Graph, k: int) -> Iterator[Tuple[int, ...]]:
    """All proper k-colourings by backtracking over vertices in index order."""
    n = graph.n
    if n == 0:
        yield ()
        return
    earlier = [tuple(w for w in row if w < v) for v, row in enumerate(graph.adjacency)]
    colours = [0] * n
    v = 0
    while v >= 0:
        colours[v] += 1
        if colours[v] > k:
            colours[v] = 0
            v -= 1
            continue
        if any(colours[w] == colours[v] for w in earlier[v]):
            continue
        if v == n - 1:
            yield tuple(colours)
        else:
            v += 1


def _moves(graph: Graph, k: int, colours) -> Iterator[Tuple[int, int]]:
    """Single-vertex changes (v, new colour) that keep the colouring proper."""
    for v, row in enumerate(graph.adjacency):
        blocked = {colours[w] for w in row}
        current = colours[v]
        for c in range(1, k + 1):
            if c != current and c not in blocked:
                yield v, c


def _check_endpoint(graph: Graph, colouring: Colouring, name: str) -> None:
    if len(colouring) != graph.n:
        raise ArgumentError(f"{name} has {len(colouring)} entries for {graph.n} vertices")
    if not is_proper(graph, colouring):
        raise ArgumentError(f"{name} is not a proper colouring")


def bfs_distance(
    graph: Graph, k: int, alpha: Colouring, beta: Colouring, limit: Optional[int] = None
) -> Optional[int]:
    """Shortest path length from alpha to beta in R_k(G); None when unreachable."""
    _guard(graph, k, limit)
    _check_endpoint(graph, alpha, "alpha")
    _check_endpoint(graph, beta, "beta")
    if max(alpha.colours + beta.colours, default=1) > k:
        raise ArgumentError(f"endpoint uses a colour above k={k}")
    if alpha.colours == beta.colours:
        return 0

    powers = [k ** i for i in range(graph.n)]
    target = encode(beta.colours, k)
    seen = {encode(alpha.colours, k)}
    frontier = [(alpha.colours, encode(alpha.colours, k))]
    distance = 0
    while frontier:
        distance += 1
        following = []
        for colours, code in frontier:
            for v, c in _moves(graph, k, colours):
                neighbour = code + (c - colours[v]) * powers[v]
                if neighbour == target:
                    return distance
                if neighbour not in seen:
                    seen.add(neighbour)
                    following.append((colours[:v] + (c,) + colours[v + 1:], neighbour))
        frontier = following
    return None


def reconfiguration_graph(graph: Graph, k: int, limit: Optional[int] = None):
    """Proper colourings and the symmetric sparse adjacency matrix of R_k(G)."""
    _guard(graph, k, limit)
    colourings = list(proper_colourings(graph, k))
    index = {encode(colours, k): i for i, colours in enumerate(colourings)}
    powers = [k ** i for i in range(graph.n)]
    rows: List[int] = []
    cols: List[int] = []
    for i, colours in enumerate(colourings):
        code = encode(colours, k)
        for v, c in _moves(graph, k, colours):
            rows.append(i)
            cols.append(index[code + (c - colours[v]) * powers[v]])
    size = len(colourings)
    matrix = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
    return colourings, matrix


def bfs_batch_size(component_size: int) -> int:
    """Sources per shortest_path call so one dense result block stays under _BFS_CELLS."""
    return max(1, min(_BFS_MAX_SOURCES, _BFS_CELLS // max(component_size, 1)))


def _eccentricity_max(matrix) -> int:
    size = matrix.shape[0]
    batch = bfs_batch_size(size)
    best = 0
    for start in range(0, size, batch):
        sources = np.arange(start, min(start + batch, size))
        distances = shortest_path(matrix, directed=False, unweighted=True, indices=sources)
        best = max(best, int(distances.max()))
    return best


def summarize(graph: Graph, k: int, limit: Optional[int] = None) -> ReconfSummary:
    colourings, matrix = reconfiguration_graph(graph, k, limit)
    size = len(colourings)
    if size == 0:
        return ReconfSummary(0, 0, (), 0)
    component_count, labels = connected_components(matrix, directed=False)
    diameters = []
    for component in range(component_count):
        nodes = np.flatnonzero(labels == component)
        if len(nodes) == 1:
            diameters.append(0)
            continue
        diameters.append(_eccentricity_max(matrix[nodes][:, nodes]))
    frozen = int(np.count_nonzero(np.diff(matrix.indptr) == 0))
    return ReconfSummary(size, int(component_count), tuple(diameters), frozen)


def diameter_check(graph: Graph, k: int, params: Params, limit: Optional[int] = None) -> DiameterReport:
    """Exhaustive diameter of R_k(G) against length_bound(n, d, epsilon).total_bound."""
    if k < params.d + 1:
        raise ArgumentError(f"k={k} is below d+1={params.d + 1}")
    summary = summarize(graph, k, limit)
    budget = length_bound(graph.n, params.d, params.epsilon)
    hypothesis_met = graph.n == 0 or params.admits(mad(graph))
    report = DiameterReport(graph.n, k, summary, budget, hypothesis_met)
    if not report.holds:
        logger.warning(
            "diameter check failed: connected=%s diameter=%d bound=%d",
            report.connected, report.diameter, report.bound,
        )
    return report
