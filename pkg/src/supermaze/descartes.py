"""Curvatures of four mutually tangent circles and the Apollonian packings they seed.

Curvature relation: ``(k1+k2+k3+k4)^2 == 2 (k1^2+k2^2+k3^2+k4^2)``. Negative
curvature marks an enclosing circle and zero a straight line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ComplexRoots, InvalidRoot

_QUANTUM = 1e-9


def descartes_residual(k) -> float:
    k = tuple(getattr(k, "k", k))
    s = sum(k)
    return abs(s * s - 2 * sum(x * x for x in k))


def _tolerance(k) -> float:
    return 1e-9 * max(1.0, sum(x * x for x in k))


@dataclass(frozen=True)
class CircleQuadruple:
    k: tuple[float, float, float, float]

    def __post_init__(self):
        k = tuple(self.k)
        if len(k) != 4:
            raise ValueError(f"need four curvatures, got {len(k)}")
        if descartes_residual(k) >= _tolerance(k):
            raise InvalidRoot(f"curvatures {k} are not mutually tangent (residual {descartes_residual(k):.3g})")
        object.__setattr__(self, "k", k)

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(round(x / _QUANTUM) for x in self.k))


def fourth_curvature(k1: float, k2: float, k3: float) -> tuple[float, float]:
    """Both curvatures tangent to three given circles, larger first."""
    s = k1 + k2 + k3
    radicand = k1 * k2 + k2 * k3 + k3 * k1
    if radicand < 0:
        if radicand < -1e-12 * max(1.0, k1 * k1 + k2 * k2 + k3 * k3):
            raise ComplexRoots(f"no real fourth circle for ({k1}, {k2}, {k3}): radicand {radicand}")
        radicand = 0.0
    r = 2 * math.sqrt(radicand)
    return s + r, s - r


def reflect(k, i: int):
    """Replace entry ``i`` by the other solution of the quadratic it satisfies."""
    k = list(k)
    k[i] = 2 * (sum(k) - k[i]) - k[i]
    return tuple(k)


def apollonian_layers(root: CircleQuadruple, depth: int) -> list[list[CircleQuadruple]]:
    """Breadth-first layers of new quadruples reached by single-position reflections.

    Layer 0 is the root; layer ``d`` holds quadruples first reached after
    ``d`` reflections, de-duplicated on their sorted curvature multiset.
    """
    if not isinstance(root, CircleQuadruple):
        root = CircleQuadruple(tuple(root))
    if depth < 0:
        raise ValueError("depth must be non-negative")
    seen = {root.key()}
    layers = [[root]]
    for _ in range(depth):
        nxt = []
        for q in layers[-1]:
            for i in range(4):
                child = CircleQuadruple(reflect(q.k, i))
                key = child.key()
                if key not in seen:
                    seen.add(key)
                    nxt.append(child)
        layers.append(nxt)
    return layers


def apollonian_generate(root: CircleQuadruple, depth: int) -> list[CircleQuadruple]:
    return [q for layer in apollonian_layers(root, depth) for q in layer]
