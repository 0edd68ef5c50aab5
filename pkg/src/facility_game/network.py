"""Transportation network and all-pairs shortest paths.

Vertices are numbered from 1, matching the numbering used in scenario files
and reports.  Edge costs are nonnegative integers; the graph is undirected.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from . import _backend
from .errors import (
    BadVertexId,
    DisconnectedNetwork,
    DuplicateEdge,
    NegativeCost,
    SelfLoop,
)


class CapacityIgnoredWarning(UserWarning):
    """Edge capacities are stored but take no part in any computation."""


class Edge(NamedTuple):
    u: int
    v: int
    cost: int
    capacity: Optional[float] = None


@dataclass(frozen=True)
class Network:
    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def neighbours(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append((e.v, e.cost))
            adj[e.v].append((e.u, e.cost))
        return adj

    def edge_cost(self, u: int, v: int) -> Optional[int]:
        for e in self.edges:
            if {e.u, e.v} == {u, v}:
                return e.cost
        return None


def validate(net: Network) -> None:
    """Raise the error for the first violated invariant; return None if ok."""
    if not isinstance(net.vertex_count, int) or net.vertex_count < 1:
        raise BadVertexId(f"vertex_count must be a positive integer, got {net.vertex_count!r}")
    seen = set()
    for idx, e in enumerate(net.edges):
        for end in (e.u, e.v):
            if not isinstance(end, int) or not 1 <= end <= net.vertex_count:
                raise BadVertexId(f"edge {idx} endpoint {end!r} not in 1..{net.vertex_count}")
        if e.u == e.v:
            raise SelfLoop(f"edge {idx} is a self-loop at vertex {e.u}")
        if isinstance(e.cost, bool) or not isinstance(e.cost, int):
            raise TypeError(f"edge {idx} cost must be an integer, got {e.cost!r}")
        if e.cost < 0:
            raise NegativeCost(f"edge {idx} ({e.u},{e.v}) has cost {e.cost}")
        key = frozenset((e.u, e.v))
        if key in seen:
            raise DuplicateEdge(f"edge {idx} repeats the pair ({e.u},{e.v})")
        seen.add(key)

    adj = net.neighbours()
    reached = {1}
    queue = deque([1])
    while queue:
        x = queue.popleft()
        for y, _ in adj[x]:
            if y not in reached:
                reached.add(y)
                queue.append(y)
    for v in net.vertices:
        if v not in reached:
            raise DisconnectedNetwork(1, v)

    if any(e.capacity is not None for e in net.edges):
        warnings.warn(
            "edge capacities are stored but ignored by all computations",
            CapacityIgnoredWarning,
            stacklevel=2,
        )


class DistanceOracle:
    """Closed distance matrix plus next-hop table for path reconstruction.

    Immutable once built.  ``dist(u, v)`` and ``path(u, v)`` take 1-based
    vertex ids.
    """

    __slots__ = ("vertex_count", "_dist", "_next")

    def __init__(self, dist: Sequence[Sequence[int]], next_hop: Sequence[Sequence[int]]):
        self.vertex_count = len(dist)
        self._dist = tuple(tuple(int(x) for x in row) for row in dist)
        self._next = tuple(tuple(int(x) for x in row) for row in next_hop)

    def dist(self, u: int, v: int) -> int:
        return self._dist[u - 1][v - 1]

    def next_hop(self, u: int, v: int) -> int:
        return self._next[u - 1][v - 1] + 1

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self._dist]

    def path(self, u: int, v: int) -> list[int]:
        return path(self, u, v)

    def __eq__(self, other):
        if not isinstance(other, DistanceOracle):
            return NotImplemented
        return self._dist == other._dist and self._next == other._next

    def __repr__(self):
        return f"DistanceOracle(vertex_count={self.vertex_count})"


def all_pairs_shortest_paths(net: Network, backend: Optional[str] = None) -> DistanceOracle:
    """Floyd-Warshall closure of ``net``.

    ``backend`` may be ``"python"`` or ``"compiled"`` to force a kernel;
    by default the compiled one is used when the total edge cost fits int64.
    """
    validate(net)
    n = net.vertex_count
    us = [e.u - 1 for e in net.edges]
    vs = [e.v - 1 for e in net.edges]
    ws = [e.cost for e in net.edges]
    kernels = _backend.pick(sum(ws), backend)
    dist, nxt = kernels.floyd_warshall(n, us, vs, ws)
    if kernels is not _backend.python:
        dist, nxt = dist.tolist(), nxt.tolist()
    return DistanceOracle(dist, nxt)


def path(oracle: DistanceOracle, u: int, v: int) -> list[int]:
    """One shortest path from ``u`` to ``v`` as a list of vertex ids."""
    for x in (u, v):
        if not 1 <= x <= oracle.vertex_count:
            raise BadVertexId(f"vertex {x} not in 1..{oracle.vertex_count}")
    route = [u]
    while route[-1] != v:
        route.append(oracle.next_hop(route[-1], v))
    return route


def path_cost(net: Network, route: Sequence[int]) -> int:
    total = 0
    for a, b in zip(route, route[1:]):
        c = net.edge_cost(a, b)
        if c is None:
            raise ValueError(f"({a},{b}) is not an edge")
        total += c
    return total
