"""Integer max-flow and min-cost max-flow on explicit networks.

The solvers are exact and deterministic: ties among equal-cost optimal flows
are broken by edge insertion order (the residual adjacency lists are scanned
in ascending edge index). Costs and capacities are integers throughout;
callers that price continuous quantities are responsible for integerizing
them first.

The hot loops live in ``skycover._kernels`` (compiled extension with a
pure-Python fallback); this module owns validation, the residual-graph
layout, optimality certification, and DIMACS import/export.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

from . import _kernels


class NegativeCycleError(ValueError):
    """The input network has a negative-cost cycle with residual capacity."""


class FlowNetwork:
    """A directed network with integer capacities and costs.

    Nodes are 0..num_nodes-1. Edges keep their insertion order; that order
    is part of the solver's determinism contract.
    """

    def __init__(self, num_nodes: int, source: int, sink: int):
        if num_nodes < 2:
            raise ValueError("need at least source and sink")
        if not (0 <= source < num_nodes and 0 <= sink < num_nodes) or source == sink:
            raise ValueError("invalid source/sink")
        self.num_nodes = num_nodes
        self.source = source
        self.sink = sink
        self._tails: list[int] = []
        self._heads: list[int] = []
        self._caps: list[int] = []
        self._costs: list[int] = []
        self._arrays = None  # built lazily, invalidated by add_edge

    @property
    def num_edges(self) -> int:
        return len(self._tails)

    def add_edge(self, tail: int, head: int, capacity: int, cost: int = 0) -> int:
        """Append an edge and return its index."""
        if tail == head:
            raise ValueError("self-loops are not allowed")
        if not (0 <= tail < self.num_nodes and 0 <= head < self.num_nodes):
            raise ValueError(f"edge ({tail}, {head}) out of node range")
        if capacity < 0:
            raise ValueError("capacity must be non-negative")
        self._tails.append(int(tail))
        self._heads.append(int(head))
        self._caps.append(int(capacity))
        self._costs.append(int(cost))
        self._arrays = None
        return len(self._tails) - 1

    @classmethod
    def from_arrays(cls, num_nodes, source, sink, tails, heads, caps, costs=None) -> "FlowNetwork":
        """Bulk construction from parallel arrays (vectorized validation)."""
        net = cls(num_nodes, source, sink)
        tails = np.asarray(tails, dtype=np.int64)
        heads = np.asarray(heads, dtype=np.int64)
        caps = np.asarray(caps, dtype=np.int64)
        costs = np.zeros_like(caps) if costs is None else np.asarray(costs, dtype=np.int64)
        if np.any(tails == heads):
            raise ValueError("self-loops are not allowed")
        for arr in (tails, heads):
            if np.any(arr < 0) or np.any(arr >= num_nodes):
                raise ValueError("edge endpoint out of node range")
        if np.any(caps < 0):
            raise ValueError("capacity must be non-negative")
        net._tails = tails.tolist()
        net._heads = heads.tolist()
        net._caps = caps.tolist()
        net._costs = costs.tolist()
        return net

    def edges(self):
        return list(zip(self._tails, self._heads, self._caps, self._costs))

    def _residual_arrays(self):
        """Build (and cache) the paired-arc residual representation.

        Edge e becomes arcs 2e (forward) and 2e+1 (reverse, residual 0,
        negated cost). Adjacency is CSR ordered by arc index.
        """
        if self._arrays is None:
            m = self.num_edges
            tails = np.asarray(self._tails, dtype=np.int64)
            heads = np.asarray(self._heads, dtype=np.int64)
            caps = np.asarray(self._caps, dtype=np.int64)
            costs = np.asarray(self._costs, dtype=np.int64)
            arc_head = np.empty(2 * m, dtype=np.int64)
            arc_cost = np.empty(2 * m, dtype=np.int64)
            arc_cap = np.empty(2 * m, dtype=np.int64)
            arc_head[0::2] = heads
            arc_head[1::2] = tails
            arc_cost[0::2] = costs
            arc_cost[1::2] = -costs
            arc_cap[0::2] = caps
            arc_cap[1::2] = 0
            arc_tail = np.empty(2 * m, dtype=np.int64)
            arc_tail[0::2] = tails
            arc_tail[1::2] = heads
            order = np.argsort(arc_tail, kind="stable")
            counts = np.bincount(arc_tail, minlength=self.num_nodes)
            adj_ptr = np.zeros(self.num_nodes + 1, dtype=np.int64)
            np.cumsum(counts, out=adj_ptr[1:])
            self._arrays = (arc_head, arc_cost, arc_cap, adj_ptr, order.astype(np.int64))
        return self._arrays

    def _fresh_resid(self):
        arc_head, arc_cost, arc_cap, adj_ptr, adj_arc = self._residual_arrays()
        return arc_head, arc_cost, arc_cap.copy(), adj_ptr, adj_arc


@dataclass(frozen=True)
class FlowResult:
    """Per-edge integral flow plus its value and total cost."""

    edge_flow: np.ndarray
    value: int
    cost: int

    def flow_on(self, edge_index: int) -> int:
        return int(self.edge_flow[edge_index])


def _result_from_resid(net: FlowNetwork, resid: np.ndarray, value: int) -> FlowResult:
    flow = resid[1::2].copy()  # reverse residual == pushed flow
    cost = int(np.sum(flow * np.asarray(net._costs, dtype=np.int64)))
    return FlowResult(edge_flow=flow, value=int(value), cost=cost)


def max_flow(net: FlowNetwork) -> FlowResult:
    """Maximum s-t flow (Dinic's algorithm in the kernel backend)."""
    arc_head, _arc_cost, resid, adj_ptr, adj_arc = net._fresh_resid()
    value = _kernels.solve_max_flow(
        net.num_nodes, net.source, net.sink, arc_head, resid, adj_ptr, adj_arc
    )
    return _result_from_resid(net, resid, value)


def min_cost_max_flow(net: FlowNetwork) -> FlowResult:
    """Minimum-cost maximum s-t flow.

    Negative edge costs are allowed; a negative-cost cycle with positive
    capacity violates the precondition and raises NegativeCycleError.
    """
    arc_head, arc_cost, resid, adj_ptr, adj_arc = net._fresh_resid()
    status, value = _kernels.solve_mcmf(
        net.num_nodes, net.source, net.sink, arc_head, resid, arc_cost, adj_ptr, adj_arc
    )
    if status == _kernels.NEGATIVE_CYCLE:
        raise NegativeCycleError("network has a negative-cost cycle with residual capacity")
    return _result_from_resid(net, resid, value)


def _check_structural(net: FlowNetwork, result: FlowResult) -> bool:
    flow = np.asarray(result.edge_flow, dtype=np.int64)
    caps = np.asarray(net._caps, dtype=np.int64)
    if flow.shape != caps.shape or np.any(flow < 0) or np.any(flow > caps):
        return False
    balance = np.zeros(net.num_nodes, dtype=np.int64)
    np.subtract.at(balance, np.asarray(net._tails), flow)
    np.add.at(balance, np.asarray(net._heads), flow)
    interior = np.ones(net.num_nodes, dtype=bool)
    interior[[net.source, net.sink]] = False
    if np.any(balance[interior] != 0):
        return False
    if balance[net.sink] != result.value or -balance[net.source] != result.value:
        return False
    if result.cost != int(np.sum(flow * np.asarray(net._costs, dtype=np.int64))):
        return False
    return True


def verify_optimality(net: FlowNetwork, result: FlowResult) -> bool:
    """True iff ``result`` is a maximum flow of minimum cost.

    Checks, independently of the solver: structural validity, maximality
    (no augmenting path in the residual graph), and min-cost (no
    negative-cost residual cycle, by Bellman-Ford from a virtual source).
    """
    if not _check_structural(net, result):
        return False
    arc_head, arc_cost, cap, adj_ptr, adj_arc = net._residual_arrays()
    resid = cap.copy()
    flow = np.asarray(result.edge_flow, dtype=np.int64)
    resid[0::2] -= flow
    resid[1::2] += flow

    # maximality: BFS for an augmenting path
    seen = np.zeros(net.num_nodes, dtype=bool)
    seen[net.source] = True
    stack = [net.source]
    while stack:
        v = stack.pop()
        for ai in range(adj_ptr[v], adj_ptr[v + 1]):
            a = adj_arc[ai]
            w = int(arc_head[a])
            if resid[a] > 0 and not seen[w]:
                seen[w] = True
                stack.append(w)
    if seen[net.sink]:
        return False

    # min-cost: Bellman-Ford with all-zero init detects any negative cycle
    dist = np.zeros(net.num_nodes, dtype=np.int64)
    live = resid > 0
    tails = arc_head[np.arange(2 * net.num_edges) ^ 1][live]
    heads = arc_head[live]
    costs = arc_cost[live]
    for _ in range(net.num_nodes):
        nd = dist[tails] + costs
        better = nd < dist[heads]
        if not np.any(better):
            return True
        np.minimum.at(dist, heads[better], nd[better])
    return False


def to_dimacs(net: FlowNetwork, supply: int | None = None) -> str:
    """Serialize as a DIMACS min-cost-flow problem.

    DIMACS ``p min`` instances carry node supplies; an s-t max-flow-with-
    costs network is expressed by giving the source a supply equal to the
    max-flow value (computed here when not provided) and the sink the
    matching demand. Node ids are 1-based per the format.
    """
    if supply is None:
        supply = max_flow(net).value
    lines = [
        "c skycover flow network",
        f"p min {net.num_nodes} {net.num_edges}",
        f"n {net.source + 1} {supply}",
        f"n {net.sink + 1} {-supply}",
    ]
    for tail, head, cap, cost in net.edges():
        lines.append(f"a {tail + 1} {head + 1} 0 {cap} {cost}")
    return "\n".join(lines) + "\n"


def from_dimacs(text: str | IO[str]) -> tuple[FlowNetwork, int]:
    """Parse a DIMACS min-cost-flow instance written by :func:`to_dimacs`.

    Requires exactly one supply and one demand node and zero lower bounds.
    Returns (network, supply).
    """
    if not isinstance(text, str):
        text = text.read()
    num_nodes = None
    source = sink = None
    supply = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "min":
                raise ValueError(f"line {lineno}: expected 'p min NODES ARCS'")
            num_nodes = int(parts[2])
        elif parts[0] == "n":
            node, flow = int(parts[1]) - 1, int(parts[2])
            if flow > 0:
                if source is not None:
                    raise ValueError(f"line {lineno}: multiple supply nodes")
                source, supply = node, flow
            elif flow < 0:
                if sink is not None:
                    raise ValueError(f"line {lineno}: multiple demand nodes")
                sink = node
        elif parts[0] == "a":
            tail, head, low, cap, cost = (int(x) for x in parts[1:6])
            if low != 0:
                raise ValueError(f"line {lineno}: nonzero lower bounds unsupported")
            edges.append((tail - 1, head - 1, cap, cost))
        else:
            raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    if num_nodes is None or source is None or sink is None:
        raise ValueError("incomplete DIMACS input (missing p/n lines)")
    net = FlowNetwork(num_nodes, source, sink)
    for tail, head, cap, cost in edges:
        net.add_edge(tail, head, cap, cost)
    return net, int(supply)
