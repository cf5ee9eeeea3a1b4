"""Maximum bipartite matching (Hopcroft-Karp) on small row/column graphs."""

from __future__ import annotations

from collections import deque
from typing import Sequence

_INF = float("inf")


def max_matching(adj: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Maximum matching of rows into columns.

    ``adj[i]`` lists the columns adjacent to row ``i``; iteration order is
    respected so the result is deterministic. Returns ``match_row`` with the
    matched column of each row, or -1.
    """
    n = len(adj)
    match_row = [-1] * n
    match_col = [-1] * ncols
    dist = [0.0] * n

    def bfs() -> bool:
        queue = deque()
        for i in range(n):
            if match_row[i] == -1:
                dist[i] = 0
                queue.append(i)
            else:
                dist[i] = _INF
        found = False
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                r = match_col[j]
                if r == -1:
                    found = True
                elif dist[r] == _INF:
                    dist[r] = dist[i] + 1
                    queue.append(r)
        return found

    def dfs(i: int) -> bool:
        for j in adj[i]:
            r = match_col[j]
            if r == -1 or (dist[r] == dist[i] + 1 and dfs(r)):
                match_row[i] = j
                match_col[j] = i
                return True
        dist[i] = _INF
        return False

    while bfs():
        for i in range(n):
            if match_row[i] == -1:
                dfs(i)
    return match_row


def matching_size(adj: Sequence[Sequence[int]], ncols: int) -> int:
    return sum(1 for j in max_matching(adj, ncols) if j != -1)
