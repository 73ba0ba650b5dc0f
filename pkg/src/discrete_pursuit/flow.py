"""Exact min-cost transportation solver for small supports.

Successive shortest paths with Dijkstra over reduced costs (potentials).
Flow amounts are kept as exact fractions so the optimum is attained
exactly for rational masses; arc costs are floats.  Supports here are
tiny (tens of points), so exactness beats speed.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

__all__ = ["min_cost_transport"]

_MAX_ROUNDS_FACTOR = 64


def min_cost_transport(supply, demand, cost) -> float:
    """Minimal cost of moving ``supply`` onto ``demand`` under ``cost``.

    ``supply`` and ``demand`` are sequences of :class:`fractions.Fraction`
    with equal positive totals; ``cost[i][j]`` is the (nonnegative) unit
    cost from supply point i to demand point j.
    """
    supply = [Fraction(s) for s in supply]
    demand = [Fraction(d) for d in demand]
    if any(s < 0 for s in supply) or any(d < 0 for d in demand):
        raise ValueError("supplies and demands must be nonnegative")
    if sum(supply) != sum(demand):
        raise ValueError("total supply and demand differ")
    m, n = len(supply), len(demand)
    nodes = m + n  # sources 0..m-1, sinks m..m+n-1
    flow = [[Fraction(0)] * n for _ in range(m)]
    pot = [0.0] * nodes
    remaining_s = supply[:]
    remaining_d = demand[:]
    left = sum(supply)
    rounds = 0
    while left > 0:
        rounds += 1
        if rounds > _MAX_ROUNDS_FACTOR * (m + n) * (m + n):
            raise RuntimeError("min-cost flow failed to converge")
        # multi-source Dijkstra on the residual graph with reduced costs
        dist = [None] * nodes
        prev = [None] * nodes
        heap = []
        for i in range(m):
            if remaining_s[i] > 0:
                dist[i] = 0.0
                heapq.heappush(heap, (0.0, i))
        done = [False] * nodes
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            if u < m:
                for j in range(n):
                    v = m + j
                    rc = cost[u][j] + pot[u] - pot[v]
                    nd = d + (rc if rc > 0 else 0.0)
                    if dist[v] is None or nd < dist[v] - 1e-15:
                        dist[v] = nd
                        prev[v] = u
                        heapq.heappush(heap, (nd, v))
            else:
                j = u - m
                for i in range(m):
                    if flow[i][j] > 0:
                        rc = -cost[i][j] + pot[u] - pot[i]
                        nd = d + (rc if rc > 0 else 0.0)
                        if dist[i] is None or nd < dist[i] - 1e-15:
                            dist[i] = nd
                            prev[i] = u
                            heapq.heappush(heap, (nd, i))
        target = None
        best = None
        for j in range(n):
            v = m + j
            if remaining_d[j] > 0 and dist[v] is not None:
                if best is None or dist[v] < best:
                    best = dist[v]
                    target = v
        if target is None:
            raise RuntimeError("no augmenting path in transportation network")
        # walk the path back, find the bottleneck
        path = []
        v = target
        while prev[v] is not None:
            u = prev[v]
            path.append((u, v))
            v = u
        start = v
        bottleneck = min(remaining_s[start], remaining_d[target - m])
        for u, v in path:
            if u >= m:  # backward arc sink u -> source v carries flow[v][u-m]
                bottleneck = min(bottleneck, flow[v][u - m])
        for u, v in path:
            if u < m:
                flow[u][v - m] += bottleneck
            else:
                flow[v][u - m] -= bottleneck
        remaining_s[start] -= bottleneck
        remaining_d[target - m] -= bottleneck
        left -= bottleneck
        for v in range(nodes):
            if dist[v] is not None:
                pot[v] += min(dist[v], best)
            else:
                pot[v] += best
    return float(
        sum(
            float(flow[i][j]) * cost[i][j]
            for i in range(m)
            for j in range(n)
            if flow[i][j] != 0
        )
    )
