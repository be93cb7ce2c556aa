"""Special independent sets and the peeling decomposition built from them."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from services.errors import ArgumentError, DegeneracyError
from services.graph_core import Graph, VertexSubset, induced_subgraph

logger = logging.getLogger(__name__)


def _check_params(d: int, epsilon: Fraction) -> None:
    if d < 1:
        raise ArgumentError(f"d must be a positive integer, got {d}")
    if not 0 < epsilon <= d:
        raise ArgumentError(f"epsilon must lie in (0, d], got {epsilon}")


@dataclass(frozen=True)
class SpecialSetCertificate:
    """An independent set I drawn from the low-degree set S of a host on h vertices.

    Vertex indices are local to the host graph the certificate was computed on.
    """

    independent: VertexSubset
    low_degree: VertexSubset
    h: int
    d: int
    epsilon: Fraction

    @property
    def low_degree_bound(self) -> Fraction:
        return Fraction(self.epsilon) * self.h / self.d

    @property
    def size_bound(self) -> Fraction:
        return Fraction(self.epsilon) * self.h / (self.d * self.d)

    @property
    def low_degree_bound_met(self) -> bool:
        """False means the host cannot have mad <= d - epsilon."""
        return len(self.low_degree) >= self.low_degree_bound

    @property
    def size_bound_met(self) -> bool:
        return len(self.independent) >= self.size_bound

    def violations(self, host: Graph) -> List[str]:
        """Structural invariants that do not hold on host (empty when the certificate is sound)."""
        problems = []
        if host.n != self.h:
            problems.append(f"host has {host.n} vertices, certificate says h={self.h}")
            return problems
        chosen = set(self.independent)
        if not chosen <= set(self.low_degree):
            problems.append("I is not contained in S")
        for v in self.independent:
            if host.degree(v) > self.d - 1:
                problems.append(f"vertex {v} has degree {host.degree(v)} > d-1={self.d - 1}")
            if any(w in chosen for w in host.adjacency[v]):
                problems.append(f"vertex {v} has a neighbour inside I")
        for v in self.low_degree:
            if v not in chosen and not any(w in chosen for w in host.adjacency[v]):
                problems.append(f"vertex {v} of S - I has no neighbour in I")
        return problems


def low_degree_set(graph: Graph, d: int) -> VertexSubset:
    """Vertices of degree at most d - 1."""
    if d < 1:
        raise ArgumentError(f"d must be a positive integer, got {d}")
    return VertexSubset(tuple(v for v, row in enumerate(graph.adjacency) if len(row) <= d - 1))


def special_independent_set(graph: Graph, d: int, epsilon: Fraction) -> SpecialSetCertificate:
    """Greedy maximal independent subset of the low-degree set, scanned by (degree, index)."""
    _check_params(d, epsilon)
    if graph.n == 0:
        raise ArgumentError("the empty graph has no special independent set")
    candidates = low_degree_set(graph, d)
    if not candidates:
        raise DegeneracyError(f"no vertex of degree < {d}; the graph is not {d - 1}-degenerate")

    chosen: set = set()
    for v in sorted(candidates, key=lambda v: (graph.degree(v), v)):
        if not any(w in chosen for w in graph.adjacency[v]):
            chosen.add(v)

    certificate = SpecialSetCertificate(
        independent=VertexSubset(tuple(sorted(chosen))),
        low_degree=candidates,
        h=graph.n,
        d=d,
        epsilon=Fraction(epsilon),
    )
    if not certificate.low_degree_bound_met:
        logger.warning(
            "mad hypothesis violated on a host of %d vertices: |S|=%d < %s",
            graph.n, len(candidates), certificate.low_degree_bound,
        )
    elif not certificate.size_bound_met:
        logger.warning("special set below its size bound: |I|=%d < %s", len(chosen), certificate.size_bound)
    return certificate


@dataclass(frozen=True)
class Peeling:
    """Layers I_0, I_1, ... in host vertex labels; layer j is special in the graph on layers j.."""

    host: Graph
    layers: Tuple[VertexSubset, ...]
    certificates: Tuple[SpecialSetCertificate, ...]
    layer_index: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.layers)

    @property
    def all_bounds_met(self) -> bool:
        return all(c.size_bound_met for c in self.certificates)

    def remaining(self, j: int) -> VertexSubset:
        """Vertices of layers j, j+1, ... (the host of certificate j)."""
        return VertexSubset(tuple(v for v, layer in enumerate(self.layer_index) if layer >= j))


def peel(graph: Graph, d: int, epsilon: Fraction) -> Peeling:
    """Remove special independent sets until nothing is left."""
    _check_params(d, epsilon)
    layers: List[VertexSubset] = []
    certificates: List[SpecialSetCertificate] = []
    layer_index = [-1] * graph.n
    current = graph
    labels = list(range(graph.n))

    while current.n > 0:
        certificate = special_independent_set(current, d, epsilon)
        layer = VertexSubset(tuple(labels[v] for v in certificate.independent))
        for v in layer:
            layer_index[v] = len(layers)
        layers.append(layer)
        certificates.append(certificate)
        keep = VertexSubset(tuple(v for v in range(current.n) if v not in certificate.independent))
        current, _ = induced_subgraph(current, keep)
        labels = [labels[v] for v in keep]

    logger.debug("peeled %d vertices into %d layers (d=%d, epsilon=%s)", graph.n, len(layers), d, epsilon)
    return Peeling(graph, tuple(layers), tuple(certificates), tuple(layer_index))
