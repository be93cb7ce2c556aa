from __future__ import annotations

import csv
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, TextIO

import numpy as np

import config
from models.responses import FamilyEnum, RunRecord
from services.decompose import peel
from services.density import format_rational, mad, parse_rational, resolve_params
from services.errors import ArgumentError, InfeasibleParamsError, InvariantViolation
from services.graph_core import Graph, cycle, forest_union, grid, random_colouring
from services.oracle import bfs_distance
from services.recolor import length_bound, recolor, verify_sequence

logger = logging.getLogger(__name__)

CSV_COLUMNS = list(RunRecord.model_fields)


@dataclass(frozen=True)
class BenchTask:
    family: FamilyEnum
    n: int
    index: int
    k: int
    seed: int
    t: int = 1
    d: Optional[int] = None
    epsilon: Optional[str] = None
    with_oracle: bool = False


def _derived_seed(seed: int, *path: int) -> int:
    return int(np.random.SeedSequence([seed, *path]).generate_state(1, dtype=np.uint64)[0])


def family_graph(family: FamilyEnum, n: int, t: int, seed: int) -> Graph:
    """Instance of size about n (grids are floor(sqrt n) x floor(n / floor(sqrt n)))."""
    if family == FamilyEnum.forest_union:
        return forest_union(n, t, seed)
    if family == FamilyEnum.cycle:
        return cycle(n)
    if family == FamilyEnum.grid:
        rows = math.isqrt(n)
        return grid(rows, n // rows)
    raise ArgumentError(f"unknown bench family {family!r}")


def run_instance(task: BenchTask) -> RunRecord:
    started = time.perf_counter()
    graph = family_graph(task.family, task.n, task.t, _derived_seed(task.seed, task.index, 0))
    madval = mad(graph)
    epsilon = None if task.epsilon is None else parse_rational(task.epsilon)
    params = resolve_params(madval, task.k, task.d, epsilon)
    if params is None:
        raise InfeasibleParamsError(
            f"{task.family.value} n={graph.n}: mad={format_rational(madval)} admits no d <= k-1={task.k - 1}"
        )

    alpha = random_colouring(graph, task.k, _derived_seed(task.seed, task.index, 1))
    beta = random_colouring(graph, task.k, _derived_seed(task.seed, task.index, 2))
    peeling = peel(graph, params.d, params.epsilon)
    sequence = recolor(graph, alpha, beta, params, peeling)
    budget = length_bound(graph.n, params.d, params.epsilon)

    check = verify_sequence(graph, alpha, beta, sequence.steps)
    if not check:
        raise InvariantViolation(f"instance {task.index}: invalid sequence at step {check.step}: {check.reason}")
    if peeling.all_bounds_met and (
        len(sequence) > budget.total_bound or sequence.max_recolourings() > budget.per_vertex_max
    ):
        raise InvariantViolation(f"instance {task.index}: sequence exceeds its length budget")

    distance = None
    if task.with_oracle and task.k ** graph.n <= config.ORACLE_STATE_LIMIT:
        distance = bfs_distance(graph, task.k, alpha, beta)

    return RunRecord(
        instance_id=f"{task.family.value}-{task.n}-{task.index}",
        family=task.family,
        n=graph.n,
        m=graph.m,
        mad=format_rational(madval),
        d=params.d,
        epsilon=format_rational(params.epsilon),
        k=task.k,
        length=len(sequence),
        bound=budget.total_bound,
        levels=len(peeling),
        per_vertex_max=budget.per_vertex_max,
        max_recolourings=sequence.max_recolourings(),
        bounds_met=peeling.all_bounds_met,
        oracle_distance=distance,
        wall_time=round(time.perf_counter() - started, 6),
    )


def bench_tasks(
    family: FamilyEnum,
    sizes: Sequence[int],
    k: int,
    seed: int,
    seeds_per_size: int = 1,
    t: int = 1,
    d: Optional[int] = None,
    epsilon: Optional[str] = None,
    with_oracle: bool = False,
) -> List[BenchTask]:
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise ArgumentError("n-range must be ascending")
    if any(n < 1 for n in sizes):
        raise ArgumentError("instance sizes must be positive")
    if seeds_per_size < 1:
        raise ArgumentError(f"seeds per size must be positive, got {seeds_per_size}")
    tasks = []
    for n in sizes:
        if family == FamilyEnum.cycle and n < 3:
            logger.info("skipping cycle with n=%d", n)
            continue
        for _ in range(seeds_per_size):
            tasks.append(BenchTask(family, n, len(tasks), k, seed, t, d, epsilon, with_oracle))
    return tasks


def run_bench(tasks: Sequence[BenchTask], workers: Optional[int] = None) -> List[RunRecord]:
    """Run tasks, in parallel when workers > 1; records come back in task order."""
    workers = config.BENCH_WORKERS if workers is None else workers
    if workers <= 1 or len(tasks) <= 1:
        return [run_instance(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_instance, tasks))


def fit_slope(records: Sequence[RunRecord]) -> Optional[float]:
    """Least-squares slope of log(length) against log(n) over rows with a non-empty sequence."""
    points = [(r.n, r.length) for r in records if r.length > 0 and r.n > 0]
    if len({n for n, _ in points}) < 2:
        return None
    xs = np.log([n for n, _ in points])
    ys = np.log([length for _, length in points])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def write_csv(records: Sequence[RunRecord], handle: TextIO) -> None:
    writer = csv.writer(handle)
    writer.writerow(CSV_COLUMNS)
    for record in records:
        row = record.model_dump(mode="json")
        writer.writerow(["" if row[column] is None else row[column] for column in CSV_COLUMNS])
    if records:
        slope = fit_slope(records)
        writer.writerow(["#slope", "" if slope is None else f"{slope:.6f}"])
