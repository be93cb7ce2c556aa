"""Graph representation, DIMACS/colouring file I/O, generators and colouring predicates.

Vertices are 0-indexed everywhere inside the services package. File formats and
anything printed for a user are 1-indexed; the conversion happens only in the
parse/write functions of this module and in the CLI.
"""
from __future__ import annotations

import heapq
import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from services.errors import ArgumentError, GraphParseError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with sorted adjacency tuples."""

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    m: int

    def __post_init__(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise ArgumentError(f"adjacency has {len(self.adjacency)} rows for n={self.n}")
        total = 0
        for v, row in enumerate(self.adjacency):
            previous = -1
            for w in row:
                if w <= previous:
                    raise ArgumentError(f"neighbours of {v} are not strictly ascending")
                if w == v:
                    raise ArgumentError(f"self-loop at vertex {v}")
                if not 0 <= w < self.n:
                    raise ArgumentError(f"neighbour {w} of {v} is out of range")
                previous = w
            total += len(row)
        for v, row in enumerate(self.adjacency):
            for w in row:
                other = self.adjacency[w]
                i = bisect_left(other, v)
                if i == len(other) or other[i] != v:
                    raise ArgumentError(f"edge {v}-{w} is not symmetric")
        if total != 2 * self.m:
            raise ArgumentError(f"m={self.m} does not match adjacency sizes (sum {total})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        if n < 0:
            raise ArgumentError(f"vertex count must be non-negative, got {n}")
        neighbours: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"edge ({u}, {v}) is out of range for n={n}")
            if u == v:
                raise ArgumentError(f"self-loop at vertex {u}")
            neighbours[u].add(v)
            neighbours[v].add(u)
        adjacency = tuple(tuple(sorted(row)) for row in neighbours)
        return cls(n, adjacency, sum(len(row) for row in adjacency) // 2)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> List[int]:
        return [len(row) for row in self.adjacency]

    def edges(self) -> Iterator[Edge]:
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield u, v


@dataclass(frozen=True)
class VertexSubset:
    """Ascending, duplicate-free tuple of vertex indices."""

    members: Tuple[int, ...]
    _lookup: FrozenSet[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.members, self.members[1:])):
            raise ArgumentError("vertex subset must be strictly ascending")
        if self.members and self.members[0] < 0:
            raise ArgumentError(f"negative vertex index {self.members[0]}")
        object.__setattr__(self, "_lookup", frozenset(self.members))

    @classmethod
    def of(cls, vertices: Iterable[int], n: int) -> "VertexSubset":
        members = tuple(sorted(set(vertices)))
        if members and (members[0] < 0 or members[-1] >= n):
            bad = members[0] if members[0] < 0 else members[-1]
            raise ArgumentError(f"vertex {bad} is out of range for n={n}")
        return cls(members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, v: object) -> bool:
        return v in self._lookup

    def one_indexed(self) -> List[int]:
        return [v + 1 for v in self.members]


@dataclass(frozen=True)
class Colouring:
    """Total assignment of colours 1..k. Properness is checked by is_proper."""

    colours: Tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ArgumentError(f"palette size must be positive, got k={self.k}")
        for v, c in enumerate(self.colours):
            if not 1 <= c <= self.k:
                raise ArgumentError(f"colour {c} of vertex {v + 1} is outside 1..{self.k}")

    @classmethod
    def of(cls, colours: Iterable[int], k: int) -> "Colouring":
        return cls(tuple(int(c) for c in colours), k)

    def __len__(self) -> int:
        return len(self.colours)

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def hamming(self, other: "Colouring") -> int:
        if len(other) != len(self):
            raise ArgumentError("colourings have different lengths")
        return sum(1 for a, b in zip(self.colours, other.colours) if a != b)


# --- file formats -------------------------------------------------------------

def decode_text(text: Union[bytes, str]) -> str:
    """Bytes as UTF-8; undecodable bytes become U+FFFD and fail only on numeric fields."""
    if isinstance(text, bytes):
        return text.decode("utf-8", errors="replace")
    return text


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(line_no, f"{what} {token!r} is not an integer") from None


def parse_dimacs(text: Union[bytes, str]) -> Graph:
    """Parse the DIMACS edge format ("p edge n m" header, "e u v" lines, "c" comments)."""
    text = decode_text(text)
    n = None
    declared_edges = 0
    edge_lines = 0
    seen: set = set()
    last_line = 0

    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        entries = raw.split()
        if not entries:
            continue
        tag = entries[0].lower()
        if tag == "c":
            continue
        if tag == "p":
            if n is not None:
                raise GraphParseError(line_no, "duplicate problem line")
            if len(entries) != 4 or entries[1].lower() not in ("edge", "col"):
                raise GraphParseError(line_no, "expected header 'p edge <n> <m>'")
            n = _parse_int(entries[2], line_no, "vertex count")
            declared_edges = _parse_int(entries[3], line_no, "edge count")
            if n < 0 or declared_edges < 0:
                raise GraphParseError(line_no, "negative count in header")
        elif tag == "e":
            if n is None:
                raise GraphParseError(line_no, "edge line before the 'p edge' header")
            if len(entries) != 3:
                raise GraphParseError(line_no, "expected 'e <u> <v>'")
            u = _parse_int(entries[1], line_no, "vertex")
            v = _parse_int(entries[2], line_no, "vertex")
            for w in (u, v):
                if not 1 <= w <= n:
                    raise GraphParseError(line_no, f"vertex {w} is outside 1..{n}")
            if u == v:
                raise GraphParseError(line_no, f"self-loop at vertex {u}")
            edge_lines += 1
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in seen:
                logger.warning("line %d: duplicate edge %d-%d ignored", line_no, u, v)
                continue
            seen.add(key)
        else:
            raise GraphParseError(line_no, f"unknown line type {entries[0]!r}")

    if n is None:
        raise GraphParseError(max(last_line, 1), "missing 'p edge <n> <m>' header")
    if edge_lines != declared_edges:
        logger.warning("header declares %d edges but %d edge lines were read", declared_edges, edge_lines)
    return Graph.from_edges(n, seen)


def write_dimacs(graph: Graph, comment: str = "") -> str:
    lines = [f"c {row}" for row in comment.splitlines()] if comment else []
    lines.append(f"p edge {graph.n} {graph.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def parse_colouring(text: Union[bytes, str], n: int, k: int) -> Colouring:
    """Parse n whitespace-separated colours in 1..k (entry i colours vertex i, 1-indexed)."""
    text = decode_text(text)
    colours: List[int] = []
    last_line = 1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        entries = raw.split()
        if not entries or entries[0].lower() == "c":
            continue
        last_line = line_no
        for token in entries:
            c = _parse_int(token, line_no, "colour")
            if not 1 <= c <= k:
                raise GraphParseError(line_no, f"colour {c} is outside 1..{k}")
            colours.append(c)
    if len(colours) != n:
        raise GraphParseError(last_line, f"expected {n} colours, found {len(colours)}")
    return Colouring.of(colours, k)


def write_colouring(colouring: Colouring) -> str:
    return " ".join(str(c) for c in colouring.colours) + "\n"


# --- generators ---------------------------------------------------------------

class UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by size."""

    def __init__(self, n: int):
        self.parents = list(range(n))
        self.sizes = [1] * n

    def find(self, item: int) -> int:
        root = item
        while self.parents[root] != root:
            root = self.parents[root]
        while self.parents[item] != root:
            self.parents[item], item = root, self.parents[item]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False when they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.sizes[ra] < self.sizes[rb]:
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.sizes[ra] += self.sizes[rb]
        return True


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ArgumentError(message)


def path(n: int) -> Graph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    _require(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def grid(r: int, c: int) -> Graph:
    _require(r >= 1 and c >= 1, f"grid needs r, c >= 1, got {r}x{c}")
    edges = []
    for i in range(r):
        for j in range(c):
            v = i * c + j
            if j + 1 < c:
                edges.append((v, v + 1))
            if i + 1 < r:
                edges.append((v, v + c))
    return Graph.from_edges(r * c, edges)


def star(n: int) -> Graph:
    _require(n >= 1, f"star needs n >= 1, got {n}")
    return Graph.from_edges(n, ((0, leaf) for leaf in range(1, n)))


def forest_union(n: int, t: int, seed: int) -> Graph:
    """Edge union of t seeded random spanning forests, so arboricity <= t."""
    _require(n >= 1, f"forest_union needs n >= 1, got {n}")
    _require(t >= 1, f"forest_union needs t >= 1, got {t}")
    _require(0 <= seed < 2 ** 64, f"seed must be a 64-bit unsigned value, got {seed}")
    edges: set = set()
    for index in range(t):
        rng = np.random.default_rng([seed, index])
        forest = UnionFind(n)
        joined = 0
        while joined < n - 1:
            for u, v in rng.integers(0, n, size=(2 * n, 2)).tolist():
                if u != v and forest.union(u, v):
                    edges.add((min(u, v), max(u, v)))
                    joined += 1
                    if joined == n - 1:
                        break
    return Graph.from_edges(n, edges)


GENERATORS: Dict[str, Callable[..., Graph]] = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "grid": grid,
    "star": star,
    "forest_union": forest_union,
}


def generate(kind: str, *sizes: int, seed: int = 0) -> Graph:
    """Build a named graph family, e.g. generate("grid", 3, 4) or generate("forest_union", 50, 2, seed=7)."""
    builder = GENERATORS.get(kind)
    if builder is None:
        raise ArgumentError(f"unknown graph kind {kind!r}; choose from {', '.join(GENERATORS)}")
    arity = 2
    if kind in ("path", "cycle", "complete", "star"):
        arity = 1
    if len(sizes) != arity:
        raise ArgumentError(f"{kind} takes {arity} size argument(s), got {len(sizes)}")
    if kind == "forest_union":
        return forest_union(sizes[0], sizes[1], seed)
    return builder(*sizes)


# --- predicates and derived graphs --------------------------------------------

def is_proper(graph: Graph, colouring: Union[Colouring, Sequence[int]]) -> bool:
    colours = colouring.colours if isinstance(colouring, Colouring) else colouring
    if len(colours) != graph.n:
        raise ArgumentError(f"colouring has {len(colours)} entries for a graph on {graph.n} vertices")
    return all(colours[u] != colours[v] for u, v in graph.edges())


def induced_subgraph(graph: Graph, keep: VertexSubset) -> Tuple[Graph, Dict[int, int]]:
    """Graph induced on keep, relabelled in ascending order; returns (graph, old -> new map)."""
    if keep.members and keep.members[-1] >= graph.n:
        raise ArgumentError(f"vertex {keep.members[-1]} is out of range for n={graph.n}")
    mapping = {old: new for new, old in enumerate(keep.members)}
    adjacency = tuple(
        tuple(mapping[w] for w in graph.adjacency[old] if w in mapping) for old in keep.members
    )
    return Graph(len(keep), adjacency, sum(len(row) for row in adjacency) // 2), mapping


def degeneracy_order(graph: Graph) -> Tuple[List[int], List[int]]:
    """Smallest-last order: repeatedly remove a minimum-degree vertex (ties by index).

    Returns the removal order and, aligned with it, each vertex's degree at removal
    time. The largest removal degree is the degeneracy of the graph.
    """
    degree = graph.degrees()
    removed = [False] * graph.n
    heap = [(d, v) for v, d in enumerate(degree)]
    heapq.heapify(heap)
    order: List[int] = []
    removal_degrees: List[int] = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != degree[v]:
            continue
        removed[v] = True
        order.append(v)
        removal_degrees.append(d)
        for w in graph.adjacency[v]:
            if not removed[w]:
                degree[w] -= 1
                heapq.heappush(heap, (degree[w], w))
    return order, removal_degrees


def random_colouring(graph: Graph, k: int, seed: int) -> Colouring:
    """Seeded random proper k-colouring, greedy over the reverse smallest-last order."""
    order, removal_degrees = degeneracy_order(graph)
    degeneracy = max(removal_degrees, default=0)
    if k <= degeneracy:
        raise ArgumentError(f"k={k} must exceed the degeneracy {degeneracy} to colour greedily")
    rng = np.random.default_rng(seed)
    colours = [0] * graph.n
    for v in reversed(order):
        used = {colours[w] for w in graph.adjacency[v]}
        free = [c for c in range(1, k + 1) if c not in used]
        colours[v] = free[int(rng.integers(len(free)))]
    return Colouring.of(colours, k)
