# Compiled flow kernels: operation-for-operation mirror of pure.py, so both
# backends produce bit-identical flows. See pure.py for the arc layout and
# the algorithm notes.

import numpy as np

cimport cython

BACKEND = "compiled"

cdef long long _INF = <long long>1 << 62

OK = 0
NEGATIVE_CYCLE = 1

ctypedef long long i64


cdef bint _bfs_levels(
    Py_ssize_t n, Py_ssize_t s, Py_ssize_t t,
    i64[::1] head, i64[::1] resid, i64[::1] adj_ptr, i64[::1] adj_arc,
    i64[::1] level, i64[::1] queue,
    bint restricted, i64[::1] cost, i64[::1] pot,
) noexcept nogil:
    cdef Py_ssize_t qh = 0, qt = 1, v, w, ai, a
    cdef i64 lv
    for v in range(n):
        level[v] = -1
    level[s] = 0
    queue[0] = s
    while qh < qt:
        v = <Py_ssize_t>queue[qh]
        qh += 1
        lv = level[v] + 1
        for ai in range(<Py_ssize_t>adj_ptr[v], <Py_ssize_t>adj_ptr[v + 1]):
            a = <Py_ssize_t>adj_arc[ai]
            if resid[a] <= 0:
                continue
            w = <Py_ssize_t>head[a]
            if restricted and cost[a] + pot[v] - pot[w] != 0:
                continue
            if level[w] < 0:
                level[w] = lv
                queue[qt] = w
                qt += 1
    return level[t] >= 0


cdef i64 _blocking_flow(
    Py_ssize_t n, Py_ssize_t s, Py_ssize_t t,
    i64[::1] head, i64[::1] resid, i64[::1] adj_ptr, i64[::1] adj_arc,
    i64[::1] level, i64[::1] cur, i64[::1] path,
    bint restricted, i64[::1] cost, i64[::1] pot,
) noexcept nogil:
    cdef i64 total = 0, f
    cdef Py_ssize_t depth = 0, v = s, i, a, w, tail, cut
    cdef bint advanced
    for i in range(n):
        cur[i] = adj_ptr[i]
    while True:
        if v == t:
            f = _INF
            for i in range(depth):
                a = <Py_ssize_t>path[i]
                if resid[a] < f:
                    f = resid[a]
            cut = 0
            for i in range(depth):
                a = <Py_ssize_t>path[i]
                resid[a] -= f
                resid[a ^ 1] += f
                if resid[a] == 0 and cut == 0:
                    cut = i + 1
            total += f
            depth = cut - 1
            a = <Py_ssize_t>path[depth]
            v = <Py_ssize_t>head[a ^ 1]
            continue
        advanced = False
        while cur[v] < adj_ptr[v + 1]:
            a = <Py_ssize_t>adj_arc[cur[v]]
            w = <Py_ssize_t>head[a]
            if (
                resid[a] > 0
                and level[w] == level[v] + 1
                and (not restricted or cost[a] + pot[v] - pot[w] == 0)
            ):
                path[depth] = a
                depth += 1
                v = w
                advanced = True
                break
            cur[v] += 1
        if not advanced:
            if v == s:
                break
            level[v] = -1
            depth -= 1
            a = <Py_ssize_t>path[depth]
            tail = <Py_ssize_t>head[a ^ 1]
            cur[tail] += 1
            v = tail
    return total


def solve_max_flow(Py_ssize_t n, Py_ssize_t s, Py_ssize_t t,
                   i64[::1] head, i64[::1] resid, i64[::1] adj_ptr, i64[::1] adj_arc):
    """Dinic's algorithm. Mutates ``resid``; returns the flow value."""
    level_a = np.empty(n, dtype=np.int64)
    queue_a = np.empty(n, dtype=np.int64)
    cur_a = np.empty(n, dtype=np.int64)
    path_a = np.empty(n + 1, dtype=np.int64)
    dummy_a = np.empty(1, dtype=np.int64)
    cdef i64[::1] level = level_a, queue = queue_a, cur = cur_a, path = path_a, dummy = dummy_a
    cdef i64 total = 0
    with nogil:
        while _bfs_levels(n, s, t, head, resid, adj_ptr, adj_arc, level, queue, False, dummy, dummy):
            total += _blocking_flow(
                n, s, t, head, resid, adj_ptr, adj_arc, level, cur, path, False, dummy, dummy
            )
    return int(total)


cdef Py_ssize_t _heap_push(i64[::1] hd, i64[::1] hv, Py_ssize_t size, i64 d, i64 v) noexcept nogil:
    cdef Py_ssize_t i = size, p
    cdef i64 tmp
    hd[i] = d
    hv[i] = v
    while i > 0:
        p = (i - 1) >> 1
        if hd[p] <= hd[i]:
            break
        tmp = hd[p]; hd[p] = hd[i]; hd[i] = tmp
        tmp = hv[p]; hv[p] = hv[i]; hv[i] = tmp
        i = p
    return size + 1


cdef void _dijkstra(
    Py_ssize_t n, Py_ssize_t s,
    i64[::1] head, i64[::1] resid, i64[::1] cost, i64[::1] adj_ptr, i64[::1] adj_arc,
    i64[::1] pot, i64[::1] dist, i64[::1] hd, i64[::1] hv,
) noexcept nogil:
    cdef Py_ssize_t size = 0, v, w, ai, a, i, lo, hi, small
    cdef i64 d, nd, tmp
    for v in range(n):
        dist[v] = _INF
    dist[s] = 0
    size = _heap_push(hd, hv, size, 0, s)
    while size > 0:
        # pop min
        d = hd[0]
        v = <Py_ssize_t>hv[0]
        size -= 1
        if size > 0:
            hd[0] = hd[size]
            hv[0] = hv[size]
            i = 0
            while True:
                lo = 2 * i + 1
                hi = lo + 1
                small = i
                if lo < size and hd[lo] < hd[small]:
                    small = lo
                if hi < size and hd[hi] < hd[small]:
                    small = hi
                if small == i:
                    break
                tmp = hd[small]; hd[small] = hd[i]; hd[i] = tmp
                tmp = hv[small]; hv[small] = hv[i]; hv[i] = tmp
                i = small
        if d > dist[v]:
            continue
        for ai in range(<Py_ssize_t>adj_ptr[v], <Py_ssize_t>adj_ptr[v + 1]):
            a = <Py_ssize_t>adj_arc[ai]
            if resid[a] <= 0:
                continue
            w = <Py_ssize_t>head[a]
            nd = d + cost[a] + pot[v] - pot[w]
            if nd < dist[w]:
                dist[w] = nd
                size = _heap_push(hd, hv, size, nd, w)


def solve_mcmf(Py_ssize_t n, Py_ssize_t s, Py_ssize_t t,
               i64[::1] head, i64[::1] resid, i64[::1] cost,
               i64[::1] adj_ptr, i64[::1] adj_arc):
    """Min-cost max-flow: Dijkstra potentials + blocking flow per phase.

    Mutates ``resid``. Returns (status, value).
    """
    cdef Py_ssize_t narc = head.shape[0]
    cdef Py_ssize_t a, u, v, rounds
    cdef i64 nd, dt, dv, value = 0
    cdef bint need_bf = False, changed

    pot_a = np.zeros(n, dtype=np.int64)
    cdef i64[::1] pot = pot_a

    for a in range(narc):
        if resid[a] > 0 and cost[a] < 0:
            need_bf = True
            break
    if need_bf:
        changed = True
        rounds = 0
        with nogil:
            while changed and rounds <= n:
                changed = False
                rounds += 1
                for a in range(narc):
                    if resid[a] > 0:
                        u = <Py_ssize_t>head[a ^ 1]
                        nd = pot[u] + cost[a]
                        if nd < pot[<Py_ssize_t>head[a]]:
                            pot[<Py_ssize_t>head[a]] = nd
                            changed = True
        if changed:
            return NEGATIVE_CYCLE, 0

    dist_a = np.empty(n, dtype=np.int64)
    level_a = np.empty(n, dtype=np.int64)
    queue_a = np.empty(n, dtype=np.int64)
    cur_a = np.empty(n, dtype=np.int64)
    path_a = np.empty(n + 1, dtype=np.int64)
    hd_a = np.empty(narc + 2, dtype=np.int64)
    hv_a = np.empty(narc + 2, dtype=np.int64)
    cdef i64[::1] dist = dist_a, level = level_a, queue = queue_a
    cdef i64[::1] cur = cur_a, path = path_a, hd = hd_a, hv = hv_a

    with nogil:
        while True:
            _dijkstra(n, s, head, resid, cost, adj_ptr, adj_arc, pot, dist, hd, hv)
            if dist[t] >= _INF:
                break
            dt = dist[t]
            for v in range(n):
                dv = dist[v]
                pot[v] += dv if dv < dt else dt
            while _bfs_levels(n, s, t, head, resid, adj_ptr, adj_arc, level, queue, True, cost, pot):
                value += _blocking_flow(
                    n, s, t, head, resid, adj_ptr, adj_arc, level, cur, path, True, cost, pot
                )
    return OK, int(value)
