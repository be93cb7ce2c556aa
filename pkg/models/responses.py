from pydantic import BaseModel, Field
from typing import List, Optional
from enum import Enum


class FamilyEnum(str, Enum):
    forest_union = "forest_union"
    cycle = "cycle"
    grid = "grid"


class OutputFormatEnum(str, Enum):
    text = "text"
    json = "json"


# Response Models
class MadResponse(BaseModel):
    mad: str = Field(..., description="Maximum average degree as 'p/q' (or 'p')")
    density: str = Field(..., description="Density |E(H)|/|V(H)| of the extremal subgraph")
    subset: List[int] = Field(..., description="Extremal subgraph as 1-indexed vertices")
    n: int = Field(..., description="Vertex count", ge=0)
    m: int = Field(..., description="Edge count", ge=0)


class CertificateModel(BaseModel):
    layer: int = Field(..., description="1-based layer number", ge=1)
    size: int = Field(..., description="|I|, vertices in the special independent set", ge=1)
    low_degree_size: int = Field(..., description="|S|, vertices of degree at most d-1 in the host", ge=1)
    host_size: int = Field(..., description="h, vertex count of the host graph", ge=1)
    size_bound: str = Field(..., description="epsilon*h/d^2 as a rational")
    low_degree_bound: str = Field(..., description="epsilon*h/d as a rational")
    size_bound_met: bool = Field(..., description="Whether |I| >= epsilon*h/d^2")
    mad_hypothesis_met: bool = Field(..., description="Whether |S| >= epsilon*h/d (false means mad > d - epsilon)")


class PeelResponse(BaseModel):
    d: int = Field(..., description="Degree parameter", ge=1)
    epsilon: str = Field(..., description="Slack parameter as a rational")
    layers: List[List[int]] = Field(..., description="Layers I_0, I_1, ... as 1-indexed vertex lists")
    certificates: List[CertificateModel] = Field(..., description="Certificate flags per layer")
    all_bounds_met: bool = Field(..., description="Whether every layer met its size bound")
    level_bound: int = Field(..., description="Layer count L predicted by the length budget", ge=0)


class StepModel(BaseModel):
    vertex: int = Field(..., description="1-indexed vertex", ge=1)
    colour: int = Field(..., description="New colour", ge=1)


class RecolorResponse(BaseModel):
    steps: List[StepModel] = Field(..., description="Recolouring steps in order")
    length: int = Field(..., description="Number of steps", ge=0)
    bound: int = Field(..., description="Length budget n*T", ge=0)
    levels: int = Field(..., description="Layer count L of the budget", ge=0)
    per_vertex_max: int = Field(..., description="Per-vertex budget T", ge=0)
    max_recolourings: int = Field(..., description="Most steps spent on a single vertex", ge=0)
    bounds_met: bool = Field(..., description="Whether every peeling certificate met its size bound")
    mad: str = Field(..., description="Maximum average degree of the graph")
    d: int = Field(..., description="Degree parameter", ge=1)
    epsilon: str = Field(..., description="Slack parameter as a rational")
    k: int = Field(..., description="Palette size", ge=2)
    exponent: float = Field(..., description="Exponent c of the O(n^c) per-vertex bound", ge=0)


class VerifyResponse(BaseModel):
    ok: bool = Field(..., description="Whether the sequence is a valid path from alpha to beta")
    step: Optional[int] = Field(None, description="0-based index of the first bad step")
    reason: Optional[str] = Field(None, description="Reason of the first violation")
    detail: str = Field("", description="Human-readable context of the violation")


class DistanceResponse(BaseModel):
    reachable: bool = Field(..., description="Whether beta lies in the component of alpha")
    distance: Optional[int] = Field(None, description="Shortest path length in R_k(G)", ge=0)


class SummaryResponse(BaseModel):
    n: int = Field(..., description="Vertex count", ge=0)
    k: int = Field(..., description="Palette size", ge=1)
    colouring_count: int = Field(..., description="Number of proper k-colourings", ge=0)
    component_count: int = Field(..., description="Connected components of R_k(G)", ge=0)
    component_diameters: List[int] = Field(..., description="Diameter of each component")
    frozen_count: int = Field(..., description="Colourings with no valid single recolouring", ge=0)


class CheckResponse(BaseModel):
    n: int = Field(..., description="Vertex count", ge=0)
    k: int = Field(..., description="Palette size", ge=1)
    d: int = Field(..., description="Degree parameter", ge=1)
    epsilon: str = Field(..., description="Slack parameter as a rational")
    colouring_count: int = Field(..., description="Number of proper k-colourings", ge=0)
    component_count: int = Field(..., description="Connected components of R_k(G)", ge=0)
    connected: bool = Field(..., description="Whether R_k(G) is connected")
    diameter: int = Field(..., description="Largest component diameter", ge=0)
    bound: int = Field(..., description="Length budget n*T", ge=0)
    levels: int = Field(..., description="Layer count L of the budget", ge=0)
    per_vertex_max: int = Field(..., description="Per-vertex budget T", ge=0)
    hypothesis_met: bool = Field(..., description="Whether mad(G) <= d - epsilon")
    holds: bool = Field(..., description="connected and diameter <= bound")


class GenerateResponse(BaseModel):
    kind: str = Field(..., description="Generator family")
    n: int = Field(..., description="Vertex count", ge=0)
    m: int = Field(..., description="Edge count", ge=0)
    graph: str = Field(..., description="The graph in DIMACS edge format")


class ColourResponse(BaseModel):
    n: int = Field(..., description="Vertex count", ge=0)
    k: int = Field(..., description="Palette size", ge=1)
    seed: int = Field(..., description="Seed of the random colouring", ge=0)
    colours: List[int] = Field(..., description="Colour of each vertex in vertex order")
    colouring: str = Field(..., description="The colouring in colouring-file format")


class RunRecord(BaseModel):
    """One bench instance; field order is the CSV column order."""

    instance_id: str = Field(..., description="family-n-index")
    family: FamilyEnum = Field(..., description="Graph family")
    n: int = Field(..., description="Vertex count", ge=0)
    m: int = Field(..., description="Edge count", ge=0)
    mad: str = Field(..., description="Maximum average degree as 'p/q'")
    d: int = Field(..., description="Degree parameter", ge=1)
    epsilon: str = Field(..., description="Slack parameter as 'p/q'")
    k: int = Field(..., description="Palette size", ge=2)
    length: int = Field(..., description="Recolouring sequence length", ge=0)
    bound: int = Field(..., description="Length budget n*T", ge=0)
    levels: int = Field(..., description="Actual peeling layer count", ge=0)
    per_vertex_max: int = Field(..., description="Per-vertex budget T", ge=0)
    max_recolourings: int = Field(..., description="Most steps spent on a single vertex", ge=0)
    bounds_met: bool = Field(..., description="Whether every certificate met its size bound")
    oracle_distance: Optional[int] = Field(None, description="BFS distance in R_k(G), when computed", ge=0)
    wall_time: float = Field(..., description="Seconds spent on the instance", ge=0)
