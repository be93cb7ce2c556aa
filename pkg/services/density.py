"""Exact maximum average degree and the (d, epsilon, c) parameters derived from it.

All density arithmetic is done with fractions.Fraction; the densest subgraph is
found by bisection over candidate densities with a min-cut feasibility test.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional

import config
from services.errors import ArgumentError, SizeGuardError
from services.flow import FlowNetwork
from services.graph_core import Graph, VertexSubset, degeneracy_order

logger = logging.getLogger(__name__)


def format_rational(value: Fraction) -> str:
    """Text form "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ArgumentError(f"{text!r} is not a rational number (expected p/q)") from None


@dataclass(frozen=True)
class DensestResult:
    subset: VertexSubset
    density: Fraction

    @property
    def mad(self) -> Fraction:
        return 2 * self.density


@dataclass(frozen=True)
class Params:
    d: int
    epsilon: Fraction
    k: int
    c: float = field(init=False)

    def __post_init__(self):
        if self.d < 1:
            raise ArgumentError(f"d must be a positive integer, got {self.d}")
        if not 0 < self.epsilon <= self.d:
            raise ArgumentError(f"epsilon must lie in (0, d], got {self.epsilon}")
        if self.k < self.d + 1:
            raise ArgumentError(f"k={self.k} is below d+1={self.d + 1}")
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "c", diameter_exponent(self.d, self.epsilon))

    def admits(self, madval: Fraction) -> bool:
        """True when a graph with this mad satisfies mad <= d - epsilon."""
        return madval <= self.d - self.epsilon


def induced_edge_count(graph: Graph, subset: Iterable[int]) -> int:
    members = set(subset)
    return sum(1 for v in members for w in graph.adjacency[v] if w in members) // 2


def subset_density(graph: Graph, subset: Iterable[int]) -> Fraction:
    members = set(subset)
    if not members:
        raise ArgumentError("density of an empty vertex set is undefined")
    return Fraction(induced_edge_count(graph, members), len(members))


def _denser_subset(graph: Graph, guess: Fraction, degrees: List[int]) -> Optional[List[int]]:
    """A vertex set of density strictly above guess, or None if none exists.

    Source -> v has capacity m, v -> sink has m + 2g - deg(v), every edge is a pair of
    unit arcs; everything is scaled by the denominator of g. A cut below m*n (scaled)
    has a non-empty source side whose density exceeds g.
    """
    n, m = graph.n, graph.m
    a, b = guess.numerator, guess.denominator
    source, sink = n, n + 1
    network = FlowNetwork(n + 2)
    for v in range(n):
        network.add_arc(source, v, m * b)
        network.add_arc(v, sink, m * b + 2 * a - degrees[v] * b)
    for u, v in graph.edges():
        network.add_arc(u, v, b, b)
    if network.max_flow(source, sink) >= m * n * b:
        return None
    return sorted(v for v in network.source_side(source) if v < n)


def _greedy_peel(graph: Graph):
    """Best suffix of the smallest-last order (a 2-approximation) and the degeneracy."""
    order, removal_degrees = degeneracy_order(graph)
    edges_left = graph.m
    best_start, best = 0, Fraction(graph.m, graph.n)
    for i, removed_degree in enumerate(removal_degrees[:-1]):
        edges_left -= removed_degree
        value = Fraction(edges_left, graph.n - i - 1)
        if value > best:
            best_start, best = i + 1, value
    return sorted(order[best_start:]), best, max(removal_degrees)


def densest_subgraph(graph: Graph) -> DensestResult:
    """Exact densest induced subgraph (maximises |E(H)| / |V(H)|)."""
    n = graph.n
    if n == 0:
        raise ArgumentError("the empty graph has no densest subgraph")
    if graph.m == 0:
        return DensestResult(VertexSubset((0,)), Fraction(0))

    degrees = graph.degrees()
    best, low, degeneracy = _greedy_peel(graph)
    high = min(Fraction(n - 1, 2), Fraction(degeneracy), 2 * low)
    # distinct densities e/v with v <= n are at least this far apart
    gap = Fraction(1, n * (n - 1))

    candidate = _denser_subset(graph, low, degrees)
    if candidate is None:
        logger.debug("greedy peel is already optimal at density %s", low)
        return DensestResult(VertexSubset.of(best, n), low)
    best, low = candidate, subset_density(graph, candidate)

    rounds = 0
    while high - low > gap:
        mid = (low + high) / 2
        candidate = _denser_subset(graph, mid, degrees)
        if candidate is None:
            high = mid
        else:
            best, low = candidate, subset_density(graph, candidate)
        rounds += 1

    candidate = _denser_subset(graph, low, degrees)
    if candidate is not None:
        best, low = candidate, subset_density(graph, candidate)
    logger.debug("densest subgraph: density %s after %d bisection rounds", low, rounds)
    return DensestResult(VertexSubset.of(best, n), low)


def mad(graph: Graph) -> Fraction:
    return densest_subgraph(graph).mad


def mad_bruteforce(graph: Graph, max_n: Optional[int] = None) -> Fraction:
    """Maximum of 2|E(H)|/|V(H)| over all non-empty vertex subsets, by enumeration."""
    limit = config.BRUTEFORCE_MAX_N if max_n is None else max_n
    n = graph.n
    if n == 0:
        raise ArgumentError("the empty graph has no maximum average degree")
    if n > limit:
        raise SizeGuardError(f"brute-force mad refuses n={n} > {limit}")
    neighbour_mask = [sum(1 << w for w in row) for row in graph.adjacency]
    edges = [0] * (1 << n)
    best_edges, best_size = 0, 1
    for mask in range(1, 1 << n):
        low_bit = mask & -mask
        v = low_bit.bit_length() - 1
        rest = mask ^ low_bit
        edges[mask] = edges[rest] + (neighbour_mask[v] & rest).bit_count()
        size = mask.bit_count()
        if edges[mask] * best_size > best_edges * size:
            best_edges, best_size = edges[mask], size
    return Fraction(2 * best_edges, best_size)


def derive_params(madval: Fraction, k: int) -> Optional[Params]:
    """Smallest integer d with madval < d <= k-1 and epsilon = d - madval; None when infeasible."""
    if k < 2:
        raise ArgumentError(f"k must be at least 2, got {k}")
    if madval < 0:
        raise ArgumentError(f"mad cannot be negative, got {madval}")
    d = math.floor(madval) + 1
    if d > k - 1:
        return None
    return Params(d, Fraction(d) - madval, k)


def resolve_params(
    madval: Fraction, k: int, d: Optional[int] = None, epsilon: Optional[Fraction] = None
) -> Optional[Params]:
    """derive_params with optional user overrides of d and epsilon; None when infeasible."""
    if d is None:
        derived = derive_params(madval, k)
        if derived is None:
            return None
        d = derived.d
    elif not (madval < d <= k - 1):
        logger.warning("d=%d does not satisfy mad=%s < d <= k-1=%d", d, format_rational(madval), k - 1)
        return None
    slack = Fraction(d) - madval
    if epsilon is None:
        epsilon = slack
    elif epsilon <= 0:
        raise ArgumentError(f"epsilon must be positive, got {epsilon}")
    elif epsilon > slack:
        logger.warning("epsilon=%s exceeds d - mad = %s", format_rational(epsilon), format_rational(slack))
        return None
    return Params(d, Fraction(epsilon), k)


def diameter_exponent(d: int, epsilon: Fraction) -> float:
    """Exponent c of the O(n^c) per-vertex recolouring count; 0 when d <= 2 (logarithmic case)."""
    if epsilon <= 0:
        raise ArgumentError(f"epsilon must be positive, got {epsilon}")
    if d < 1 or epsilon > d:
        raise ArgumentError(f"need d >= 1 and epsilon <= d, got d={d}, epsilon={epsilon}")
    if d <= 2:
        return 0.0
    shrink = Fraction(d * d) / (d * d - Fraction(epsilon))
    return math.log(d - 1) / math.log(shrink)
