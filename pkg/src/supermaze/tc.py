"""Topological complexity of a state graph viewed as a 1-complex.

A connected graph is homotopy equivalent to a wedge of ``b1`` circles, and
its topological complexity is 1 for a tree, 2 for a circle and 3 for any
wedge of two or more circles. Edge direction is ignored for this
classification; strong connectivity is reported next to it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .routing import SupermazeGraph, is_strongly_connected

METHOD = "graph-homotopy-classification"


def _components(graph: SupermazeGraph) -> list[int]:
    """Union-find root of every node over the symmetrised edge set."""
    parent = list(range(graph.n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in graph.edges:
        a, b = find(graph.index[e.source]), find(graph.index[e.target])
        if a != b:
            parent[max(a, b)] = min(a, b)
    return [find(i) for i in range(graph.n_nodes)]


def betti_numbers(graph: SupermazeGraph) -> tuple[int, int]:
    """``(b0, b1)``; every edge, including loops and parallels, counts once."""
    b0 = len(set(_components(graph)))
    b1 = len(graph.edges) - graph.n_nodes + b0
    return b0, b1


def tc_from_b1(b1: int) -> int:
    return 1 if b1 == 0 else 2 if b1 == 1 else 3


@dataclass(frozen=True)
class ComponentTC:
    nodes: tuple[str, ...]
    b1: int
    tc: int


@dataclass(frozen=True)
class TCReport:
    b0: int
    b1: int
    tc: tuple[int, ...]
    components: tuple[ComponentTC, ...]
    connected: bool
    strongly_connected: bool
    method: str = METHOD

    @property
    def tc_value(self) -> int | None:
        """The single TC value of a connected graph, else ``None``."""
        return self.tc[0] if self.connected else None

    def as_dict(self) -> dict:
        return {
            "b0": self.b0,
            "b1": self.b1,
            "tc": list(self.tc),
            "connected": self.connected,
            "strongly_connected": self.strongly_connected,
            "cross_component_navigation": self.connected,
            "components": [{"nodes": list(c.nodes), "b1": c.b1, "tc": c.tc} for c in self.components],
            "method": self.method,
        }


def tc_estimate(graph: SupermazeGraph) -> TCReport:
    roots = _components(graph)
    order: dict[int, int] = {}
    for r in roots:
        order.setdefault(r, len(order))
    n_nodes = [0] * len(order)
    n_edges = [0] * len(order)
    members: list[list[str]] = [[] for _ in order]
    for i, r in enumerate(roots):
        n_nodes[order[r]] += 1
        members[order[r]].append(graph.nodes[i].id)
    for e in graph.edges:
        n_edges[order[roots[graph.index[e.source]]]] += 1
    comps = tuple(
        ComponentTC(tuple(members[c]), n_edges[c] - n_nodes[c] + 1, tc_from_b1(n_edges[c] - n_nodes[c] + 1))
        for c in range(len(order))
    )
    b0, b1 = betti_numbers(graph)
    return TCReport(
        b0=b0,
        b1=b1,
        tc=tuple(c.tc for c in comps),
        components=comps,
        connected=b0 == 1,
        strongly_connected=graph.n_nodes > 0 and is_strongly_connected(graph),
        method=METHOD,
    )
