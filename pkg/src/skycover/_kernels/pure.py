"""Pure-Python flow kernels.

Reference implementation of the max-flow / min-cost-max-flow kernels. The
compiled extension (``_flow.pyx``) mirrors this module operation for
operation, so both backends produce bit-identical flows; this one is the
fallback when the extension is unavailable (or when SKYCOVER_PURE=1).

Arc layout: edge e of the input becomes arcs 2e (forward) and 2e+1
(reverse, zero initial residual, negated cost), so ``a ^ 1`` is the partner
of arc ``a`` and ``head[a ^ 1]`` is the tail of ``a``. Adjacency is CSR:
node v owns arcs ``adj_arc[adj_ptr[v]:adj_ptr[v+1]]`` in ascending arc
order, which fixes all tie-breaking.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

_INF = 1 << 62

OK = 0
NEGATIVE_CYCLE = 1


def _bfs_levels(n, s, t, head, resid, adj_ptr, adj_arc, level, queue, restricted, cost, pot):
    level[:] = -1
    level[s] = 0
    queue[0] = s
    qh, qt = 0, 1
    while qh < qt:
        v = int(queue[qh])
        qh += 1
        lv = level[v] + 1
        for ai in range(adj_ptr[v], adj_ptr[v + 1]):
            a = int(adj_arc[ai])
            if resid[a] <= 0:
                continue
            w = int(head[a])
            if restricted and cost[a] + pot[v] - pot[w] != 0:
                continue
            if level[w] < 0:
                level[w] = lv
                queue[qt] = w
                qt += 1
    return level[t] >= 0


def _blocking_flow(n, s, t, head, resid, adj_ptr, adj_arc, level, cur, path, restricted, cost, pot):
    total = 0
    cur[:n] = adj_ptr[:n]
    depth = 0  # number of arcs on the current path
    v = s
    while True:
        if v == t:
            # augment along path by the bottleneck
            f = _INF
            for i in range(depth):
                a = int(path[i])
                if resid[a] < f:
                    f = int(resid[a])
            cut = 0
            for i in range(depth):
                a = int(path[i])
                resid[a] -= f
                resid[a ^ 1] += f
                if resid[a] == 0 and cut == 0:
                    cut = i + 1  # retreat to the tail of the first saturated arc
            total += f
            depth = cut - 1
            a = int(path[depth])
            v = int(head[a ^ 1])
            continue
        advanced = False
        while cur[v] < adj_ptr[v + 1]:
            a = int(adj_arc[cur[v]])
            w = int(head[a])
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
            level[v] = -1  # dead end: no path through v this phase
            depth -= 1
            a = int(path[depth])
            tail = int(head[a ^ 1])
            cur[tail] += 1
            v = tail
    return total


def solve_max_flow(n, s, t, head, resid, adj_ptr, adj_arc):
    """Dinic's algorithm. Mutates ``resid``; returns the flow value."""
    level = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    cur = np.empty(n, dtype=np.int64)
    path = np.empty(n + 1, dtype=np.int64)
    dummy = np.empty(0, dtype=np.int64)
    total = 0
    while _bfs_levels(n, s, t, head, resid, adj_ptr, adj_arc, level, queue, False, dummy, dummy):
        total += _blocking_flow(
            n, s, t, head, resid, adj_ptr, adj_arc, level, cur, path, False, dummy, dummy
        )
    return total


def _heap_push(hd, hv, size, d, v):
    i = size
    hd[i] = d
    hv[i] = v
    while i > 0:
        p = (i - 1) >> 1
        if hd[p] <= hd[i]:
            break
        hd[p], hd[i] = hd[i], hd[p]
        hv[p], hv[i] = hv[i], hv[p]
        i = p
    return size + 1


def _heap_pop(hd, hv, size):
    d, v = int(hd[0]), int(hv[0])
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
            hd[small], hd[i] = hd[i], hd[small]
            hv[small], hv[i] = hv[i], hv[small]
            i = small
    return d, v, size


def _dijkstra(n, s, head, resid, cost, adj_ptr, adj_arc, pot, dist, hd, hv):
    dist[:] = _INF
    dist[s] = 0
    size = _heap_push(hd, hv, 0, 0, s)
    while size > 0:
        d, v, size = _heap_pop(hd, hv, size)
        if d > dist[v]:
            continue
        for ai in range(adj_ptr[v], adj_ptr[v + 1]):
            a = int(adj_arc[ai])
            if resid[a] <= 0:
                continue
            w = int(head[a])
            nd = d + cost[a] + pot[v] - pot[w]
            if nd < dist[w]:
                dist[w] = nd
                size = _heap_push(hd, hv, size, nd, w)


def solve_mcmf(n, s, t, head, resid, cost, adj_ptr, adj_arc):
    """Min-cost max-flow: Dijkstra potentials + blocking flow per phase.

    Mutates ``resid``. Returns (status, value); status is NEGATIVE_CYCLE when
    the input has a negative-cost cycle with positive residual capacity
    (detected exactly, before any flow is pushed).
    """
    narc = head.shape[0]
    pot = np.zeros(n, dtype=np.int64)

    need_bf = False
    for a in range(narc):
        if resid[a] > 0 and cost[a] < 0:
            need_bf = True
            break
    if need_bf:
        # Bellman-Ford from a virtual source at distance 0 to every node:
        # yields potentials valid for every positive-residual arc and detects
        # negative cycles anywhere in the network.
        changed = True
        rounds = 0
        while changed and rounds <= n:
            changed = False
            rounds += 1
            for a in range(narc):
                if resid[a] > 0:
                    u = int(head[a ^ 1])
                    nd = pot[u] + cost[a]
                    if nd < pot[int(head[a])]:
                        pot[int(head[a])] = nd
                        changed = True
        if changed:
            return NEGATIVE_CYCLE, 0

    dist = np.empty(n, dtype=np.int64)
    level = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    cur = np.empty(n, dtype=np.int64)
    path = np.empty(n + 1, dtype=np.int64)
    cap = narc + 2
    hd = np.empty(cap, dtype=np.int64)
    hv = np.empty(cap, dtype=np.int64)

    value = 0
    while True:
        _dijkstra(n, s, head, resid, cost, adj_ptr, adj_arc, pot, dist, hd, hv)
        if dist[t] >= _INF:
            break
        dt = int(dist[t])
        for v in range(n):
            dv = int(dist[v])
            pot[v] += dv if dv < dt else dt
        # saturate every shortest path: max flow over zero-reduced-cost arcs
        while _bfs_levels(n, s, t, head, resid, adj_ptr, adj_arc, level, queue, True, cost, pot):
            value += _blocking_flow(
                n, s, t, head, resid, adj_ptr, adj_arc, level, cur, path, True, cost, pot
            )
    return OK, value
