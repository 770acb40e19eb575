from __future__ import annotations

import sys
from collections import deque

import pytest

from cayleydiam.tree import TranspositionTree


def brute_force_distances(t: TranspositionTree) -> dict[tuple[int, ...], int]:
    """Plain BFS over one-line tuples; shares no code with the rank-indexed kernels."""
    start = tuple(range(1, t.n + 1))
    dist = {start: 0}
    q = deque([start])
    while q:
        s = q.popleft()
        for a, b in t.edges:
            nxt = list(s)
            nxt[a - 1], nxt[b - 1] = nxt[b - 1], nxt[a - 1]
            nxt = tuple(nxt)
            if nxt not in dist:
                dist[nxt] = dist[s] + 1
                q.append(nxt)
    return dist


@pytest.fixture(scope="session")
def oracle_distances():
    cache: dict = {}

    def get(t: TranspositionTree) -> dict[tuple[int, ...], int]:
        key = t.edges
        if key not in cache:
            cache[key] = brute_force_distances(t)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(':'))):
            terminalreporter.write_line(line)
