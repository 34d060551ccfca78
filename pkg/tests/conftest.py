from __future__ import annotations

from itertools import combinations

import pytest

from ekrtrees.graph import Graph

_ACCEPTANCE_LINES: list[str] = []


def brute_independent_sets(G: Graph, r: int) -> list[int]:
    """Oracle: filter every r-subset of the vertex set."""
    out = []
    for combo in combinations(range(G.num_vertices), r):
        if all(not G.adjacency[u] >> v & 1 for u, v in combinations(combo, 2)):
            out.append(sum(1 << v for v in combo))
    return sorted(out)


def brute_max_intersecting(sets: list[int], nonstar: bool = False) -> int:
    """Oracle: try every subfamily (only for tiny families)."""
    best = 0
    n = len(sets)
    for mask in range(1, 1 << n):
        fam = [sets[i] for i in range(n) if mask >> i & 1]
        if len(fam) <= best:
            continue
        if all(a & b for a, b in combinations(fam, 2)):
            common = -1
            for f in fam:
                common &= f
            if nonstar and common:
                continue
            best = len(fam)
    return best


@pytest.fixture
def acceptance_line():
    def record(criterion: int, ok: bool, detail: str) -> None:
        line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
