"""Recolouring sequences between two k-colourings, their validator and length budget."""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Container, List, Optional, Sequence, Tuple, Union

from services.decompose import Peeling, peel
from services.density import Params
from services.errors import ArgumentError, GraphParseError, InvariantViolation
from services.graph_core import Colouring, Graph, decode_text, is_proper

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecolourStep:
    vertex: int
    new_colour: int


@dataclass(frozen=True)
class RecolourSequence:
    steps: Tuple[RecolourStep, ...]
    start: Colouring
    end: Colouring

    def __len__(self) -> int:
        return len(self.steps)

    def recolour_counts(self) -> Counter:
        return Counter(step.vertex for step in self.steps)

    def max_recolourings(self) -> int:
        return max(self.recolour_counts().values(), default=0)


@dataclass(frozen=True)
class LengthBudget:
    levels: int
    per_vertex_max: int
    total_bound: int


class FailureReason(str, Enum):
    improper_start = "start colouring is not proper"
    vertex_out_of_range = "vertex out of range"
    colour_out_of_range = "colour out of range"
    no_op = "recolours a vertex to its current colour"
    monochromatic_edge = "creates a monochromatic edge"
    end_mismatch = "final colouring differs from the target"


@dataclass(frozen=True)
class SequenceCheck:
    ok: bool
    step: Optional[int] = None
    reason: Optional[FailureReason] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _smallest_free(forbidden: set, k: int, vertex: int) -> int:
    for colour in range(1, k + 1):
        if colour not in forbidden:
            return colour
    raise InvariantViolation(
        f"no free colour for vertex {vertex + 1}: all of 1..{k} are forbidden"
    )


def free_colour(
    graph: Graph,
    current: Union[Colouring, Sequence[int]],
    u: int,
    extra_forbidden: int,
    within: Optional[Container[int]] = None,
    k: Optional[int] = None,
) -> int:
    """Smallest colour not on a neighbour of u and different from extra_forbidden.

    When within is given only neighbours inside it count (the current recursion graph).
    A plain colour sequence needs k; a Colouring carries its own palette.
    """
    if isinstance(current, Colouring):
        colours, k = current.colours, (current.k if k is None else k)
    elif k is None:
        raise ArgumentError("k is required when current is a plain colour sequence")
    else:
        colours = current
    forbidden = {colours[w] for w in graph.adjacency[u] if within is None or w in within}
    forbidden.add(extra_forbidden)
    return _smallest_free(forbidden, k, u)


def recolor(
    graph: Graph,
    alpha: Colouring,
    beta: Colouring,
    params: Params,
    peeling: Optional[Peeling] = None,
) -> RecolourSequence:
    """Recolouring sequence from alpha to beta, built over the peeling from the innermost layer out.

    Each level replays the sequence of the graph on the deeper layers. Before an inner
    step (v, c), every vertex u of the current layer adjacent to v and coloured c moves to
    a free colour; after the replay each layer vertex takes its target colour.
    """
    n = graph.n
    if len(alpha) != n or len(beta) != n:
        raise ArgumentError(f"colourings must have {n} entries, got {len(alpha)} and {len(beta)}")
    if alpha.k != params.k or beta.k != params.k:
        raise ArgumentError(f"colourings use k={alpha.k}/{beta.k}, parameters say k={params.k}")
    if not is_proper(graph, alpha):
        raise ArgumentError("alpha is not a proper colouring")
    if not is_proper(graph, beta):
        raise ArgumentError("beta is not a proper colouring")
    if peeling is None:
        peeling = peel(graph, params.d, params.epsilon)
    elif peeling.host.n != n:
        raise ArgumentError("peeling was computed for a different graph")

    adjacency, layer_of, k = graph.adjacency, peeling.layer_index, params.k
    steps: List[Tuple[int, int]] = []
    for j in reversed(range(len(peeling))):
        recursion_graph = peeling.remaining(j)
        working = list(alpha.colours)
        extended: List[Tuple[int, int]] = []
        for v, c in steps:
            for u in adjacency[v]:
                if layer_of[u] == j and working[u] == c:
                    fresh = free_colour(graph, working, u, c, within=recursion_graph, k=k)
                    working[u] = fresh
                    extended.append((u, fresh))
            working[v] = c
            extended.append((v, c))
        for u in peeling.layers[j]:
            if working[u] != beta[u]:
                working[u] = beta[u]
                extended.append((u, beta[u]))
        steps = extended

    final = list(alpha.colours)
    for v, c in steps:
        final[v] = c
    if tuple(final) != beta.colours:
        raise InvariantViolation("replayed sequence does not end at beta")
    logger.debug("recoloured %d vertices in %d steps over %d layers", n, len(steps), len(peeling))
    return RecolourSequence(tuple(RecolourStep(v, c) for v, c in steps), alpha, beta)


StepLike = Union[RecolourStep, Tuple[int, int]]


def verify_sequence(
    graph: Graph, alpha: Colouring, beta: Colouring, steps: Sequence[StepLike]
) -> SequenceCheck:
    """Replay steps from alpha and report the first violation, if any."""
    n = graph.n
    if len(alpha) != n or len(beta) != n:
        raise ArgumentError(f"colourings must have {n} entries, got {len(alpha)} and {len(beta)}")
    if not is_proper(graph, alpha):
        return SequenceCheck(False, None, FailureReason.improper_start)
    k = alpha.k
    working = list(alpha.colours)
    for index, step in enumerate(steps):
        v, c = (step.vertex, step.new_colour) if isinstance(step, RecolourStep) else step
        if not 0 <= v < n:
            return SequenceCheck(False, index, FailureReason.vertex_out_of_range, f"vertex {v + 1}")
        if not 1 <= c <= k:
            return SequenceCheck(False, index, FailureReason.colour_out_of_range, f"colour {c}")
        if working[v] == c:
            return SequenceCheck(False, index, FailureReason.no_op, f"vertex {v + 1} already has colour {c}")
        for w in graph.adjacency[v]:
            if working[w] == c:
                return SequenceCheck(
                    False, index, FailureReason.monochromatic_edge, f"edge {v + 1}-{w + 1} gets colour {c}"
                )
        working[v] = c
    if tuple(working) != beta.colours:
        differing = sum(1 for a, b in zip(working, beta.colours) if a != b)
        return SequenceCheck(False, None, FailureReason.end_mismatch, f"{differing} vertices differ")
    return SequenceCheck(True)


def length_bound(n: int, d: int, epsilon: Fraction) -> LengthBudget:
    """Exact unrolled recurrence: levels from h <- h - ceil(eps*h/d^2), then T <- (d-1)T + 1."""
    if n < 0:
        raise ArgumentError(f"n must be non-negative, got {n}")
    if d < 1 or not 0 < epsilon <= d:
        raise ArgumentError(f"need d >= 1 and 0 < epsilon <= d, got d={d}, epsilon={epsilon}")
    shrink = Fraction(epsilon) / (d * d)
    h, levels = n, 0
    while h > 0:
        h -= math.ceil(shrink * h)
        levels += 1
    per_vertex = 0
    for _ in range(levels):
        per_vertex = (d - 1) * per_vertex + 1
    return LengthBudget(levels, per_vertex, n * per_vertex)


# --- sequence file format -----------------------------------------------------

def parse_sequence(text: Union[bytes, str]) -> Tuple[RecolourStep, ...]:
    """Parse "s <count>" followed by "<vertex> <colour>" lines (1-indexed vertices)."""
    text = decode_text(text)
    expected = None
    steps: List[RecolourStep] = []
    last_line = 1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        entries = raw.split()
        if not entries or entries[0].lower() == "c":
            continue
        last_line = line_no
        if expected is None:
            if entries[0].lower() != "s" or len(entries) != 2:
                raise GraphParseError(line_no, "expected header 's <count>'")
            try:
                expected = int(entries[1])
            except ValueError:
                raise GraphParseError(line_no, f"step count {entries[1]!r} is not an integer") from None
            continue
        if len(entries) != 2:
            raise GraphParseError(line_no, "expected '<vertex> <colour>'")
        try:
            vertex, colour = int(entries[0]), int(entries[1])
        except ValueError:
            raise GraphParseError(line_no, "vertex and colour must be integers") from None
        if vertex < 1:
            raise GraphParseError(line_no, f"vertex {vertex} must be at least 1")
        steps.append(RecolourStep(vertex - 1, colour))
    if expected is None:
        raise GraphParseError(last_line, "missing 's <count>' header")
    if expected != len(steps):
        raise GraphParseError(last_line, f"header announces {expected} steps, found {len(steps)}")
    return tuple(steps)


def write_sequence(steps: Sequence[RecolourStep], summary: str = "") -> str:
    lines = [f"s {len(steps)}"]
    lines.extend(f"{step.vertex + 1} {step.new_colour}" for step in steps)
    if summary:
        lines.append(f"c {summary}")
    return "\n".join(lines) + "\n"
