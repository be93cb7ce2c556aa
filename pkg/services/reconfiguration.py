from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

import config
from services.decompose import peel
from services.density import Params, densest_subgraph, format_rational, mad, resolve_params
from services.errors import ArgumentError, InfeasibleParamsError
from services.graph_core import Colouring, Graph, generate, random_colouring, write_colouring, write_dimacs
from services.oracle import bfs_distance, diameter_check, summarize
from services.recolor import RecolourStep, length_bound, recolor, verify_sequence


class ReconfigurationService:
    """Facade over the services package; every method returns a dict for a response model."""

    def __init__(self, oracle_limit: Optional[int] = None):
        self.oracle_limit = config.ORACLE_STATE_LIMIT if oracle_limit is None else oracle_limit

    def resolve(
        self, graph: Graph, k: int, d: Optional[int] = None, epsilon: Optional[Fraction] = None
    ) -> Tuple[Fraction, Params]:
        """mad of the graph and the parameters derived from it (with overrides)."""
        madval = mad(graph) if graph.n else Fraction(0)
        params = resolve_params(madval, k, d, epsilon)
        if params is None:
            raise InfeasibleParamsError(
                f"mad = {format_rational(madval)} admits no valid d for k = {k}"
                + ("" if d is None else f" with d = {d}")
                + ("" if epsilon is None else f", epsilon = {format_rational(epsilon)}")
            )
        return madval, params

    def compute_mad(self, graph: Graph) -> Dict[str, Any]:
        result = densest_subgraph(graph)
        return {
            "mad": format_rational(result.mad),
            "density": format_rational(result.density),
            "subset": result.subset.one_indexed(),
            "n": graph.n,
            "m": graph.m,
        }

    def peel(
        self, graph: Graph, k: int, d: Optional[int] = None, epsilon: Optional[Fraction] = None
    ) -> Dict[str, Any]:
        _, params = self.resolve(graph, k, d, epsilon)
        peeling = peel(graph, params.d, params.epsilon)
        certificates = []
        for j, certificate in enumerate(peeling.certificates):
            certificates.append({
                "layer": j + 1,
                "size": len(certificate.independent),
                "low_degree_size": len(certificate.low_degree),
                "host_size": certificate.h,
                "size_bound": format_rational(certificate.size_bound),
                "low_degree_bound": format_rational(certificate.low_degree_bound),
                "size_bound_met": certificate.size_bound_met,
                "mad_hypothesis_met": certificate.low_degree_bound_met,
            })
        return {
            "d": params.d,
            "epsilon": format_rational(params.epsilon),
            "layers": [layer.one_indexed() for layer in peeling.layers],
            "certificates": certificates,
            "all_bounds_met": peeling.all_bounds_met,
            "level_bound": length_bound(graph.n, params.d, params.epsilon).levels,
        }

    def recolour(
        self,
        graph: Graph,
        alpha: Colouring,
        beta: Colouring,
        k: int,
        d: Optional[int] = None,
        epsilon: Optional[Fraction] = None,
    ) -> Dict[str, Any]:
        madval, params = self.resolve(graph, k, d, epsilon)
        peeling = peel(graph, params.d, params.epsilon)
        sequence = recolor(graph, alpha, beta, params, peeling)
        budget = length_bound(graph.n, params.d, params.epsilon)
        return {
            "steps": [{"vertex": s.vertex + 1, "colour": s.new_colour} for s in sequence.steps],
            "length": len(sequence),
            "bound": budget.total_bound,
            "levels": budget.levels,
            "per_vertex_max": budget.per_vertex_max,
            "max_recolourings": sequence.max_recolourings(),
            "bounds_met": peeling.all_bounds_met,
            "mad": format_rational(madval),
            "d": params.d,
            "epsilon": format_rational(params.epsilon),
            "k": params.k,
            "exponent": params.c,
        }

    def verify(
        self, graph: Graph, alpha: Colouring, beta: Colouring, steps: Sequence[RecolourStep]
    ) -> Dict[str, Any]:
        check = verify_sequence(graph, alpha, beta, steps)
        return {
            "ok": check.ok,
            "step": check.step,
            "reason": None if check.reason is None else check.reason.value,
            "detail": check.detail,
        }

    def oracle_distance(self, graph: Graph, k: int, alpha: Colouring, beta: Colouring) -> Dict[str, Any]:
        distance = bfs_distance(graph, k, alpha, beta, self.oracle_limit)
        return {"reachable": distance is not None, "distance": distance}

    def oracle_summary(self, graph: Graph, k: int) -> Dict[str, Any]:
        summary = summarize(graph, k, self.oracle_limit)
        return {
            "n": graph.n,
            "k": k,
            "colouring_count": summary.colouring_count,
            "component_count": summary.component_count,
            "component_diameters": list(summary.component_diameters),
            "frozen_count": summary.frozen_count,
        }

    def oracle_check(
        self, graph: Graph, k: int, d: Optional[int] = None, epsilon: Optional[Fraction] = None
    ) -> Dict[str, Any]:
        _, params = self.resolve(graph, k, d, epsilon)
        report = diameter_check(graph, k, params, self.oracle_limit)
        return {
            "n": graph.n,
            "k": k,
            "d": params.d,
            "epsilon": format_rational(params.epsilon),
            "colouring_count": report.summary.colouring_count,
            "component_count": report.summary.component_count,
            "connected": report.connected,
            "diameter": report.diameter,
            "bound": report.bound,
            "levels": report.budget.levels,
            "per_vertex_max": report.budget.per_vertex_max,
            "hypothesis_met": report.hypothesis_met,
            "holds": report.holds,
        }

    def generate(self, kind: str, sizes: Sequence[int], seed: int) -> Dict[str, Any]:
        graph = generate(kind, *sizes, seed=seed)
        comment = f"{kind} {' '.join(str(s) for s in sizes)}" + (f" seed={seed}" if kind == "forest_union" else "")
        return {"kind": kind, "n": graph.n, "m": graph.m, "graph": write_dimacs(graph, comment)}

    def colour(self, graph: Graph, k: int, seed: int) -> Dict[str, Any]:
        if seed < 0:
            raise ArgumentError(f"seed must be non-negative, got {seed}")
        colouring = random_colouring(graph, k, seed)
        return {
            "n": graph.n,
            "k": k,
            "seed": seed,
            "colours": list(colouring.colours),
            "colouring": write_colouring(colouring),
        }
