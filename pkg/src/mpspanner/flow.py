"""Min-cost flow by successive shortest paths with Johnson potentials."""

from __future__ import annotations

import heapq
import math

INF = math.inf


class FlowNetwork:
    """Residual network over nodes ``0..size-1``.

    Arc ``a`` and its residual twin ``a ^ 1`` are stored side by side.
    Costs must be non-negative when the first augmentation runs, which
    keeps the zero initial potential feasible.
    """

    def __init__(self, size: int) -> None:
        self.size = size
        self.out: list[list[int]] = [[] for _ in range(size)]
        self.head: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add_arc(self, a: int, b: int, cap: int, cost: int) -> int:
        idx = len(self.head)
        self.head += (b, a)
        self.cap += (cap, 0)
        self.cost += (cost, -cost)
        self.out[a].append(idx)
        self.out[b].append(idx + 1)
        return idx

    def tail(self, arc: int) -> int:
        return self.head[arc ^ 1]

    def flow_on(self, arc: int) -> int:
        return self.cap[arc ^ 1]

    def min_cost_flow(
        self, source: int, sink: int, units: int, *, cost_limit: float = INF
    ) -> tuple[int, int | float]:
        """Ship up to ``units`` from source to sink.

        Returns ``(shipped, cost)``.  Augmentation stops early once the
        accumulated cost is certain to exceed ``cost_limit``; the returned
        cost is then ``inf`` to signal the cut-off.
        """
        pot = [0] * self.size
        shipped = 0
        total = 0
        head, cap, cost, out = self.head, self.cap, self.cost, self.out
        while shipped < units:
            dist = [INF] * self.size
            via = [-1] * self.size
            dist[source] = 0
            heap = [(0, source)]
            while heap:
                d, x = heapq.heappop(heap)
                if d > dist[x]:
                    continue
                if x == sink:
                    break
                px = pot[x]
                for a in out[x]:
                    if cap[a] <= 0:
                        continue
                    y = head[a]
                    nd = d + cost[a] + px - pot[y]
                    if nd < dist[y]:
                        dist[y] = nd
                        via[y] = a
                        heapq.heappush(heap, (nd, y))
            if dist[sink] == INF:
                break
            dsink = dist[sink]
            for x in range(self.size):
                # nodes finalised after the sink keep a bound that is still feasible
                if dist[x] < dsink:
                    pot[x] += dist[x]
                else:
                    pot[x] += dsink
            push = units - shipped
            x = sink
            while x != source:
                a = via[x]
                push = min(push, cap[a])
                x = head[a ^ 1]
            path_cost = pot[sink] - pot[source]
            x = sink
            while x != source:
                a = via[x]
                cap[a] -= push
                cap[a ^ 1] += push
                x = head[a ^ 1]
            shipped += push
            total += push * path_cost
            if total + (units - shipped) * path_cost > cost_limit:
                # successive path costs never decrease
                return shipped, INF
        return shipped, total
