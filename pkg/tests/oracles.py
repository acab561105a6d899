"""Independent oracles used to generate expected values in tests.

Everything here is deliberately written against different data structures
and algorithms than the package under test: brute force, exhaustive DP, and
textbook Bellman-Ford augmentation. Slow is fine; these run at toy sizes.
"""

from __future__ import annotations

import math

INF = float("inf")


def mcmf_bellman_ford(num_nodes, source, sink, edges):
    """Min-cost max-flow by successive shortest augmentation (Bellman-Ford).

    ``edges`` is a list of (tail, head, cap, cost). Returns (value, cost).
    """
    arcs = []  # [tail, head, resid, cost]
    for u, v, cap, w in edges:
        arcs.append([u, v, cap, w])
        arcs.append([v, u, 0, -w])
    value = 0
    total_cost = 0
    while True:
        dist = [INF] * num_nodes
        dist[source] = 0
        parent = [-1] * num_nodes
        for _ in range(num_nodes):
            improved = False
            for i, (u, v, r, w) in enumerate(arcs):
                if r > 0 and dist[u] + w < dist[v]:
                    dist[v] = dist[u] + w
                    parent[v] = i
                    improved = True
            if not improved:
                break
        if dist[sink] == INF:
            break
        bottleneck = INF
        v = sink
        while v != source:
            i = parent[v]
            bottleneck = min(bottleneck, arcs[i][2])
            v = arcs[i][0]
        v = sink
        while v != source:
            i = parent[v]
            arcs[i][2] -= bottleneck
            arcs[i ^ 1][2] += bottleneck
            v = arcs[i][0]
        value += bottleneck
        total_cost += bottleneck * dist[sink]
    return value, total_cost


def max_flow_bfs(num_nodes, source, sink, edges):
    """Plain Edmonds-Karp max-flow value."""
    arcs = []
    adj = [[] for _ in range(num_nodes)]
    for u, v, cap, _w in edges:
        adj[u].append(len(arcs))
        arcs.append([u, v, cap])
        adj[v].append(len(arcs))
        arcs.append([v, u, 0])
    value = 0
    while True:
        parent = [-1] * num_nodes
        parent[source] = -2
        queue = [source]
        while queue and parent[sink] == -1:
            u = queue.pop(0)
            for i in adj[u]:
                if arcs[i][2] > 0 and parent[arcs[i][1]] == -1:
                    parent[arcs[i][1]] = i
                    queue.append(arcs[i][1])
        if parent[sink] == -1:
            return value
        bottleneck = INF
        v = sink
        while v != source:
            i = parent[v]
            bottleneck = min(bottleneck, arcs[i][2])
            v = arcs[i][0]
        v = sink
        while v != source:
            i = parent[v]
            arcs[i][2] -= bottleneck
            arcs[i ^ 1][2] += bottleneck
            v = arcs[i][0]
        value += bottleneck


def legal_assignment_best(options, num_discs, capacity):
    """Exhaustive maximum legal assignment count.

    ``options[i]`` is the list of discs containing galaxy i. Explores every
    distinct (galaxy index, disc load vector) state.
    """
    memo: dict = {}

    def rec(i, loads):
        if i == len(options):
            return 0
        key = (i, loads)
        if key in memo:
            return memo[key]
        best = rec(i + 1, loads)
        for d in options[i]:
            if loads[d] < capacity:
                nxt = list(loads)
                nxt[d] += 1
                best = max(best, 1 + rec(i + 1, tuple(nxt)))
        memo[key] = best
        return best

    return rec(0, (0,) * num_discs)


def relaxed_assignment_best(candidates, num_discs, capacity):
    """Exhaustive optimum of the capacity-respecting candidate assignment.

    ``candidates[i]`` is a list of (disc, integer cost) pairs. Maximizes the
    number of assigned galaxies, then minimizes total cost; returns
    (count, cost).
    """
    memo: dict = {}

    def rec(i, loads):
        if i == len(candidates):
            return (0, 0)
        key = (i, loads)
        if key in memo:
            return memo[key]
        skip_count, skip_cost = rec(i + 1, loads)
        best = (skip_count, -skip_cost)
        for d, w in candidates[i]:
            if loads[d] < capacity:
                nxt = list(loads)
                nxt[d] += 1
                cnt, cst = rec(i + 1, tuple(nxt))
                cand = (cnt + 1, -(cst + w))
                if cand > best:
                    best = cand
        memo[key] = (best[0], -best[1])
        return memo[key]

    return rec(0, (0,) * num_discs)


def finite_difference_gradient(func, point, basis, step=1e-6):
    """Central-difference tangent gradient of a function on the sphere.

    ``basis`` is a pair of orthonormal tangent vectors at ``point``; the
    gradient is returned in ambient coordinates.
    """
    from skycover.geometry import move_on_sphere

    grad = [0.0, 0.0, 0.0]
    for b in basis:
        f_plus = func(move_on_sphere(point, b, step))
        f_minus = func(move_on_sphere(point, -b, step))
        comp = (f_plus - f_minus) / (2.0 * step)
        for k in range(3):
            grad[k] += comp * b[k]
    return grad


def random_dag_network(rng, max_nodes=12, max_edges=30, cost_lo=-8, cost_hi=8, cap_hi=6):
    """Random DAG-shaped flow network (node 0 = source, last = sink)."""
    n = int(rng.integers(3, max_nodes + 1))
    m = int(rng.integers(2, max_edges + 1))
    edges = []
    for _ in range(m):
        u = int(rng.integers(0, n - 1))
        v = int(rng.integers(u + 1, n))
        cap = int(rng.integers(0, cap_hi + 1))
        cost = int(rng.integers(cost_lo, cost_hi + 1))
        edges.append((u, v, cap, cost))
    return n, 0, n - 1, edges


def chi_square_stat(counts, expected):
    return sum((c - expected) ** 2 / expected for c in counts)


def spherical_centroid_direct(points):
    """Normalized mean direction (for small caps, the sum-of-squares
    minimizer of angular distance is this to high accuracy)."""
    s = [0.0, 0.0, 0.0]
    for p in points:
        for k in range(3):
            s[k] += p[k]
    norm = math.sqrt(sum(x * x for x in s))
    return [x / norm for x in s]
