"""The state graph: quantum states joined by continuous-evolution and shortcut edges.

Edges carry a (duration, energy) cost pair. Continuous edges are free in
energy; shortcuts buy time with energy. Routing returns the full Pareto
frontier between two nodes. Edges are identified by their position in the
graph, and equal-cost routes are resolved by shortlex order of edge ids.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels
from .errors import DanglingEdge, DuplicateId, UnknownNode
from .quantum_core import QuantumState
from .shortcut import QslReport, SynthesizedShortcut, minimal_duration, qsl_check


class EdgeKind(str, enum.Enum):
    CONTINUOUS = "continuous"
    SHORTCUT = "shortcut"


@dataclass(frozen=True, eq=False)
class StateNode:
    id: str
    label: str = ""
    state: QuantumState | None = None
    energy: float | None = None


@dataclass(frozen=True, eq=False)
class SupermazeEdge:
    source: str
    target: str
    kind: EdgeKind
    duration: float
    energy_cost: float = 0.0
    payload: object = None

    def __post_init__(self):
        object.__setattr__(self, "kind", EdgeKind(self.kind))
        if self.duration < 0 or self.energy_cost < 0:
            raise ValueError(f"edge {self.source}->{self.target}: weights must be non-negative")
        if self.kind is EdgeKind.CONTINUOUS and self.energy_cost != 0:
            raise ValueError(f"continuous edge {self.source}->{self.target} must have zero energy cost")


def continuous(source: str, target: str, duration: float, generator=None) -> SupermazeEdge:
    return SupermazeEdge(source, target, EdgeKind.CONTINUOUS, duration, 0.0, generator)


def shortcut_edge(source: str, target: str, duration: float, energy_cost: float, shortcut=None) -> SupermazeEdge:
    return SupermazeEdge(source, target, EdgeKind.SHORTCUT, duration, energy_cost, shortcut)


@dataclass(frozen=True, eq=False)
class SupermazeGraph:
    nodes: tuple[StateNode, ...]
    edges: tuple[SupermazeEdge, ...]
    index: dict = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    def node(self, node_id: str) -> StateNode:
        try:
            return self.nodes[self.index[node_id]]
        except KeyError:
            raise UnknownNode(node_id) from None

    def position(self, node_id: str) -> int:
        try:
            return self.index[node_id]
        except KeyError:
            raise UnknownNode(node_id) from None

    def with_edge(self, edge: SupermazeEdge) -> "SupermazeGraph":
        return build_graph(self.nodes, self.edges + (edge,))

    def _arrays(self):
        src = [self.index[e.source] for e in self.edges]
        dst = [self.index[e.target] for e in self.edges]
        # CSR adjacency, out-edges in ascending edge id
        counts = [0] * (self.n_nodes + 1)
        for s in src:
            counts[s + 1] += 1
        for i in range(self.n_nodes):
            counts[i + 1] += counts[i]
        ptr = list(counts)
        fill = list(counts[:-1])
        adj = [0] * len(self.edges)
        for k, s in enumerate(src):
            adj[fill[s]] = k
            fill[s] += 1
        return src, dst, ptr, adj


def build_graph(nodes: Iterable[StateNode], edges: Iterable[SupermazeEdge]) -> SupermazeGraph:
    nodes = tuple(nodes)
    edges = tuple(edges)
    index: dict[str, int] = {}
    for i, n in enumerate(nodes):
        if n.id in index:
            raise DuplicateId(f"duplicate node id {n.id!r}")
        index[n.id] = i
    for k, e in enumerate(edges):
        for end in (e.source, e.target):
            if end not in index:
                raise DanglingEdge(f"edge {k} ({e.source}->{e.target}) references missing node {end!r}")
    return SupermazeGraph(nodes, edges, index)


@dataclass(frozen=True)
class Route:
    edges: tuple[int, ...]
    total_time: float
    total_energy: float
    nodes: tuple[str, ...]


@dataclass(frozen=True)
class ParetoFrontier:
    routes: tuple[Route, ...]

    def points(self) -> list[tuple[float, float]]:
        return [(r.total_time, r.total_energy) for r in self.routes]

    def __len__(self) -> int:
        return len(self.routes)


def _route(graph: SupermazeGraph, src: str, t: float, e: float, path: Sequence[int]) -> Route:
    nodes = [src] + [graph.edges[k].target for k in path]
    return Route(tuple(path), t, e, tuple(nodes))


def route_pareto(graph: SupermazeGraph, src: str, dst: str) -> ParetoFrontier:
    """All Pareto-optimal (time, energy) routes from ``src`` to ``dst``, by ascending time."""
    s, d = graph.position(src), graph.position(dst)
    _, edge_dst, ptr, adj = graph._arrays()
    labels = kernels.pareto_labels(
        graph.n_nodes,
        ptr,
        adj,
        edge_dst,
        [e.duration for e in graph.edges],
        [e.energy_cost for e in graph.edges],
        s,
        d,
    )
    return ParetoFrontier(tuple(_route(graph, src, t, e, p) for t, e, p in labels))


def distance_matrix(graph: SupermazeGraph, weight: str = "time") -> list[list[float]]:
    if weight not in ("time", "energy"):
        raise ValueError(f"weight must be 'time' or 'energy', got {weight!r}")
    src, dst, _, _ = graph._arrays()
    w = [e.duration if weight == "time" else e.energy_cost for e in graph.edges]
    return kernels.floyd_warshall(graph.n_nodes, src, dst, w)


def diameter(graph: SupermazeGraph, weight: str = "time") -> float:
    """Largest shortest-route cost over ordered pairs; ``inf`` unless strongly connected."""
    d = distance_matrix(graph, weight)
    return max((x for row in d for x in row), default=0.0)


def is_strongly_connected(graph: SupermazeGraph) -> bool:
    return all(math.isfinite(x) for row in distance_matrix(graph) for x in row)


@dataclass(frozen=True)
class QslViolation:
    edge: int
    source: str
    target: str
    declared_duration: float
    required_duration: float
    report: QslReport


def qsl_admissibility(graph: SupermazeGraph) -> list[QslViolation]:
    """Shortcut edges whose declared duration beats the speed limit of their attached shortcut.

    Only edges carrying a ``SynthesizedShortcut`` whose source node has a state
    are checked. The energy budget is the shortcut's energy spread on that state.
    """
    out = []
    for k, e in enumerate(graph.edges):
        if e.kind is not EdgeKind.SHORTCUT or not isinstance(e.payload, SynthesizedShortcut):
            continue
        psi = graph.node(e.source).state
        if psi is None:
            continue
        report = qsl_check(e.payload, psi)
        if report.no_displacement:
            continue
        final = e.payload.target.apply(psi)
        required = math.inf if report.delta_e <= 0 else minimal_duration(psi, final, report.delta_e)
        if e.duration < required - 1e-9:
            out.append(QslViolation(k, e.source, e.target, e.duration, required, report))
    return out


def _num(x: float) -> str:
    return repr(float(x))


def to_dot(graph: SupermazeGraph, name: str = "supermaze") -> str:
    """Graphviz DOT text; shortcut edges dashed, weights in labels."""
    lines = [f"digraph {name} {{"]
    for n in graph.nodes:
        label = n.label or n.id
        lines.append(f'  "{n.id}" [label="{label}"];')
    for k, e in enumerate(graph.edges):
        style = "dashed" if e.kind is EdgeKind.SHORTCUT else "solid"
        lines.append(
            f'  "{e.source}" -> "{e.target}" [id="e{k}", style={style}, '
            f'label="t={_num(e.duration)}, E={_num(e.energy_cost)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
