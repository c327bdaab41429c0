# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled routing kernels; same algorithms and float operation order as ``_kernels_py``."""

from libcpp.vector cimport vector
from libcpp.deque cimport deque
from libc.math cimport INFINITY


cdef void _path_of(int lab, const vector[int]& lparent, const vector[int]& ledge, vector[int]& out) noexcept:
    out.clear()
    while ledge[lab] >= 0:
        out.push_back(ledge[lab])
        lab = lparent[lab]
    cdef size_t i = 0
    cdef size_t j = out.size()
    cdef int tmp
    while i + 1 < j:
        j -= 1
        tmp = out[i]
        out[i] = out[j]
        out[j] = tmp
        i += 1


cdef bint _shortlex_le(int m, int parent, int k, int length,
                       const vector[int]& llen, const vector[int]& lparent, const vector[int]& ledge,
                       vector[int]& buf_a, vector[int]& buf_b) noexcept:
    if llen[m] != length:
        return llen[m] < length
    _path_of(m, lparent, ledge, buf_a)
    _path_of(parent, lparent, ledge, buf_b)
    buf_b.push_back(k)
    cdef size_t i
    for i in range(buf_a.size()):
        if buf_a[i] != buf_b[i]:
            return buf_a[i] < buf_b[i]
    return True


def pareto_labels(int n_nodes, adj_ptr, adj_edge, edge_dst, duration, energy, int src, int dst):
    cdef vector[int] c_ptr = adj_ptr
    cdef vector[int] c_adj = adj_edge
    cdef vector[int] c_dst = edge_dst
    cdef vector[double] c_dur = duration
    cdef vector[double] c_en = energy

    cdef vector[double] lt
    cdef vector[double] le
    cdef vector[int] lnode
    cdef vector[int] lparent
    cdef vector[int] ledge
    cdef vector[int] llen
    cdef vector[char] alive
    cdef vector[vector[int]] at
    cdef vector[int] keep
    cdef vector[int] buf_a
    cdef vector[int] buf_b
    cdef deque[int] queue

    cdef int cur, u, p, k, v, m, n0, new
    cdef size_t q
    cdef double t0, e0, nt, ne
    cdef bint rejected

    at.resize(n_nodes)
    lt.push_back(0.0)
    le.push_back(0.0)
    lnode.push_back(src)
    lparent.push_back(-1)
    ledge.push_back(-1)
    llen.push_back(0)
    alive.push_back(1)
    at[src].push_back(0)
    queue.push_back(0)

    while not queue.empty():
        cur = queue.front()
        queue.pop_front()
        if not alive[cur]:
            continue
        u = lnode[cur]
        t0 = lt[cur]
        e0 = le[cur]
        n0 = llen[cur] + 1
        for p in range(c_ptr[u], c_ptr[u + 1]):
            k = c_adj[p]
            v = c_dst[k]
            nt = t0 + c_dur[k]
            ne = e0 + c_en[k]
            rejected = False
            for q in range(at[v].size()):
                m = at[v][q]
                if lt[m] <= nt and le[m] <= ne:
                    if lt[m] < nt or le[m] < ne or _shortlex_le(m, cur, k, n0, llen, lparent, ledge, buf_a, buf_b):
                        rejected = True
                        break
            if rejected:
                continue
            keep.clear()
            for q in range(at[v].size()):
                m = at[v][q]
                if nt <= lt[m] and ne <= le[m]:
                    alive[m] = 0
                else:
                    keep.push_back(m)
            new = <int>lt.size()
            lt.push_back(nt)
            le.push_back(ne)
            lnode.push_back(v)
            lparent.push_back(cur)
            ledge.push_back(k)
            llen.push_back(n0)
            alive.push_back(1)
            keep.push_back(new)
            at[v] = keep
            queue.push_back(new)

    out = []
    for q in range(at[dst].size()):
        m = at[dst][q]
        _path_of(m, lparent, ledge, buf_a)
        out.append((lt[m], le[m], tuple(buf_a)))
    out.sort()
    return out


def floyd_warshall(int n_nodes, edge_src, edge_dst, weight):
    cdef vector[int] c_src = edge_src
    cdef vector[int] c_dst = edge_dst
    cdef vector[double] c_w = weight
    cdef vector[double] d
    cdef int i, j, k, a, b
    cdef size_t e
    cdef double dik, s
    d.assign(<size_t>n_nodes * n_nodes, INFINITY)
    for i in range(n_nodes):
        d[i * n_nodes + i] = 0.0
    for e in range(c_src.size()):
        a = c_src[e]
        b = c_dst[e]
        if c_w[e] < d[a * n_nodes + b]:
            d[a * n_nodes + b] = c_w[e]
    for k in range(n_nodes):
        for i in range(n_nodes):
            dik = d[i * n_nodes + k]
            if dik == INFINITY:
                continue
            for j in range(n_nodes):
                s = dik + d[k * n_nodes + j]
                if s < d[i * n_nodes + j]:
                    d[i * n_nodes + j] = s
    return [[d[i * n_nodes + j] for j in range(n_nodes)] for i in range(n_nodes)]
