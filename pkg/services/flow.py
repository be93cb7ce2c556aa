from collections import deque
from typing import List, Set


class FlowNetwork:
    """Residual network over nodes 0..size-1; arcs are stored in pairs (e, e ^ 1)."""

    def __init__(self, size: int):
        self.size = size
        self.head: List[List[int]] = [[] for _ in range(size)]
        self.to: List[int] = []
        self.cap: List[int] = []

    def add_arc(self, u: int, v: int, capacity: int, reverse_capacity: int = 0) -> int:
        """Add u -> v with the given capacity; reverse_capacity > 0 makes it undirected."""
        index = len(self.to)
        self.to.extend((v, u))
        self.cap.extend((capacity, reverse_capacity))
        self.head[u].append(index)
        self.head[v].append(index + 1)
        return index

    def _levels(self, source: int, sink: int) -> List[int]:
        level = [-1] * self.size
        level[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level

    def _blocking_flow(self, source: int, sink: int, level: List[int]) -> int:
        cap, to, head = self.cap, self.to, self.head
        pointer = [0] * self.size
        total = 0
        stack = [source]
        path: List[int] = []
        while stack:
            u = stack[-1]
            if u == sink:
                pushed = min(cap[e] for e in path)
                for e in path:
                    cap[e] -= pushed
                    cap[e ^ 1] += pushed
                total += pushed
                # retreat to the tail of the first saturated arc
                cut = next(i for i, e in enumerate(path) if cap[e] == 0)
                del path[cut:]
                del stack[cut + 1:]
                continue
            arcs = head[u]
            advanced = False
            while pointer[u] < len(arcs):
                e = arcs[pointer[u]]
                v = to[e]
                if cap[e] > 0 and level[v] == level[u] + 1:
                    stack.append(v)
                    path.append(e)
                    advanced = True
                    break
                pointer[u] += 1
            if not advanced:
                # dead end
                level[u] = -1
                stack.pop()
                if path:
                    path.pop()
                    pointer[stack[-1]] += 1
        return total

    def max_flow(self, source: int, sink: int) -> int:
        flow = 0
        while True:
            level = self._levels(source, sink)
            if level[sink] < 0:
                return flow
            flow += self._blocking_flow(source, sink, level)

    def source_side(self, source: int) -> Set[int]:
        """Nodes reachable from source in the residual network (source side of a min cut)."""
        seen = {source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for e in self.head[u]:
                v = self.to[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen
