"""Pure-Python routing kernels. ``_ckernels.pyx`` mirrors these line for line.

Labels live in flat parallel lists (a pool). A label is a partial route:
its cost pair, the node it ends at, and a parent pointer for path recovery.
Ties in cost are broken by shortlex order on edge indices (fewer edges
first, then lexicographic), which is a well-order and is preserved under
common suffix extension, so pruning by it is safe.
"""
from __future__ import annotations

from collections import deque

INF = float("inf")


def pareto_labels(n_nodes, adj_ptr, adj_edge, edge_dst, duration, energy, src, dst):
    """Non-dominated (time, energy, edge-path) labels reaching ``dst``, sorted by time."""
    lt = [0.0]
    le = [0.0]
    lnode = [src]
    lparent = [-1]
    ledge = [-1]
    llen = [0]
    alive = [True]
    at = [[] for _ in range(n_nodes)]
    at[src].append(0)
    queue = deque([0])

    def path_of(lab):
        seq = []
        while ledge[lab] >= 0:
            seq.append(ledge[lab])
            lab = lparent[lab]
        seq.reverse()
        return seq

    def shortlex_le(m, parent, k, length):
        # label m <= (path(parent) + [k]) in shortlex order
        if llen[m] != length:
            return llen[m] < length
        cand = path_of(parent)
        cand.append(k)
        return path_of(m) <= cand

    while queue:
        cur = queue.popleft()
        if not alive[cur]:
            continue
        u = lnode[cur]
        t0 = lt[cur]
        e0 = le[cur]
        n0 = llen[cur] + 1
        for p in range(adj_ptr[u], adj_ptr[u + 1]):
            k = adj_edge[p]
            v = edge_dst[k]
            nt = t0 + duration[k]
            ne = e0 + energy[k]
            rejected = False
            for m in at[v]:
                if lt[m] <= nt and le[m] <= ne:
                    if lt[m] < nt or le[m] < ne or shortlex_le(m, cur, k, n0):
                        rejected = True
                        break
            if rejected:
                continue
            keep = []
            for m in at[v]:
                if nt <= lt[m] and ne <= le[m]:
                    alive[m] = False
                else:
                    keep.append(m)
            new = len(lt)
            lt.append(nt)
            le.append(ne)
            lnode.append(v)
            lparent.append(cur)
            ledge.append(k)
            llen.append(n0)
            alive.append(True)
            keep.append(new)
            at[v] = keep
            queue.append(new)

    out = [(lt[m], le[m], tuple(path_of(m))) for m in at[dst]]
    out.sort()
    return out


def floyd_warshall(n_nodes, edge_src, edge_dst, weight):
    """All-pairs minimum total weight as a list of rows; ``inf`` when unreachable."""
    d = [[INF] * n_nodes for _ in range(n_nodes)]
    for i in range(n_nodes):
        d[i][i] = 0.0
    for a, b, w in zip(edge_src, edge_dst, weight):
        if w < d[a][b]:
            d[a][b] = w
    for k in range(n_nodes):
        dk = d[k]
        for i in range(n_nodes):
            di = d[i]
            dik = di[k]
            if dik == INF:
                continue
            for j in range(n_nodes):
                s = dik + dk[j]
                if s < di[j]:
                    di[j] = s
    return d
