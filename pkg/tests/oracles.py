"""Reference computations kept independent of the code paths they check."""
from __future__ import annotations

import heapq
import math

import numpy as np
from scipy.integrate import solve_ivp


def su2_exp(theta: float, axis: str) -> np.ndarray:
    """exp(-i theta sigma) in closed form: cos(theta) I - i sin(theta) sigma."""
    sigma = {
        "x": np.array([[0, 1], [1, 0]], dtype=complex),
        "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "z": np.array([[1, 0], [0, -1]], dtype=complex),
    }[axis]
    return math.cos(theta) * np.eye(2) - 1j * math.sin(theta) * sigma


def taylor_expm(a: np.ndarray, terms: int = 80) -> np.ndarray:
    """Scaling-and-squaring Taylor series, for small matrices only."""
    norm = np.abs(a).sum(axis=1).max()
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    b = a / (2 ** s)
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ b / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def simple_paths(n_nodes, edges, src, dst):
    """Every simple path as a list of edge indices; edges are (u, v, t, e) tuples."""
    out = []
    if src == dst:
        return [[]]
    adj = [[] for _ in range(n_nodes)]
    for k, (u, v, _, _) in enumerate(edges):
        adj[u].append(k)

    def dfs(u, visited, path):
        for k in adj[u]:
            v = edges[k][1]
            if v in visited:
                continue
            if v == dst:
                out.append(path + [k])
            else:
                visited.add(v)
                dfs(v, visited, path + [k])
                visited.remove(v)

    dfs(src, {src}, [])
    return out


def brute_force_frontier(n_nodes, edges, src, dst):
    """Pareto points over simple paths, each with its shortlex-least path."""
    cands = []
    for p in simple_paths(n_nodes, edges, src, dst):
        t = 0.0
        e = 0.0
        for k in p:
            t += edges[k][2]
            e += edges[k][3]
        cands.append((t, e, tuple(p)))
    best = {}
    for t, e, p in cands:
        key = (t, e)
        if key not in best or (len(p), p) < (len(best[key]), best[key]):
            best[key] = p
    pts = [(t, e, p) for (t, e), p in best.items()]
    front = [
        (t, e, p)
        for t, e, p in pts
        if not any(t2 <= t and e2 <= e and (t2 < t or e2 < e) for t2, e2, _ in pts)
    ]
    return sorted(front)


def dijkstra_all_pairs(n_nodes, edges):
    """Min total time between every ordered pair (heap Dijkstra from each source)."""
    adj = [[] for _ in range(n_nodes)]
    for u, v, t, _ in edges:
        adj[u].append((v, t))
    d = np.full((n_nodes, n_nodes), math.inf)
    for s in range(n_nodes):
        d[s, s] = 0.0
        heap = [(0.0, s)]
        while heap:
            du, u = heapq.heappop(heap)
            if du > d[s, u]:
                continue
            for v, w in adj[u]:
                if du + w < d[s, v]:
                    d[s, v] = du + w
                    heapq.heappush(heap, (du + w, v))
    return d


def ode_populations(m: np.ndarray, p0: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Adaptive Runge-Kutta integration of dp/dt = M p."""
    sol = solve_ivp(
        lambda t, p: m @ p,
        (0.0, float(grid[-1])),
        p0,
        method="DOP853",
        t_eval=grid,
        rtol=1e-12,
        atol=1e-14,
    )
    assert sol.success, sol.message
    return sol.y.T


def cascade_populations(t, g21, g10, g20):
    """Closed-form populations of the 2 -> 1 -> 0 cascade with a direct 2 -> 0 channel, from |2>."""
    g2 = g21 + g20
    p2 = math.exp(-g2 * t)
    if abs(g2 - g10) < 1e-15:
        p1 = g21 * t * math.exp(-g10 * t)
    else:
        p1 = g21 / (g2 - g10) * (math.exp(-g10 * t) - math.exp(-g2 * t))
    return 1 - p1 - p2, p1, p2


def components_bfs(n_nodes, pairs):
    adj = [[] for _ in range(n_nodes)]
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n_nodes
    count = 0
    for s in range(n_nodes):
        if seen[s]:
            continue
        count += 1
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
    return count
