"""Maximum pairwise-intersecting subfamilies of I^(r)(G).

The search is an exact maximum-clique branch-and-bound on the graph whose
vertices are the independent r-sets and whose edges join intersecting
pairs.  Bitsets are Python ints indexed by family position.  Three things
keep it tractable:

* a greedy sequential colouring bound (colour classes are sets of pairwise
  disjoint members, so a clique uses at most one member per class);
* orbital branching over the symmetric groups on twin classes of ``G``:
  instead of "include v / exclude v" the children are "include v / exclude
  the whole orbit of v" under the subgroup fixing every chosen member;
* for non-star families, branching on the members that avoid some vertex
  still common to the whole partial family.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .enumeration import SetFamily, enumerate_r_sets
from .errors import PreconditionError, SearchBudgetError
from .graph import Graph, VertexSet, claw_limbs, twin_classes, vset
from .graph import members as vertex_list

DEFAULT_NODE_BUDGET = 5_000_000
PRACTICAL_FAMILY_LIMIT = 50_000


def is_pairwise_intersecting(family: Iterable[VertexSet]) -> bool:
    sets = list(family)
    return all(a & b for a, b in combinations(sets, 2))


def common_vertices(family: Iterable[VertexSet]) -> VertexSet:
    sets = list(family)
    if not sets:
        return 0
    out = sets[0]
    for s in sets[1:]:
        out &= s
    return out


def _degeneracy_order(sets: list[VertexSet], contains: list[int]) -> list[int]:
    """Smallest-last order of the intersection graph, highest core first.

    Works on the disjointness graph, which is the sparse side for the
    families met here: removing a vertex of minimum intersection degree is
    removing one of maximum remaining disjointness degree.
    """
    m = len(sets)
    full = (1 << m) - 1
    disjoint = []
    for i, s in enumerate(sets):
        meet = 0
        for v in vertex_list(s):
            meet |= contains[v]
        disjoint.append(full & ~meet)
    deg = [d.bit_count() for d in disjoint]
    heap = [(-deg[i], i) for i in range(m)]
    heapq.heapify(heap)
    removed = [False] * m
    order = []
    while heap:
        d, i = heapq.heappop(heap)
        if removed[i] or -d != deg[i]:
            continue
        removed[i] = True
        order.append(i)
        for j in vertex_list(disjoint[i]):
            if not removed[j]:
                deg[j] -= 1
                heapq.heappush(heap, (-deg[j], j))
    order.reverse()
    return order


class _CliqueSearch:
    def __init__(self, sets: list[VertexSet], cells: list[VertexSet], num_vertices: int,
                 nonstar: bool, budget: int | None):
        base_contains = [0] * num_vertices
        for i, s in enumerate(sets):
            for v in vertex_list(s):
                base_contains[v] |= 1 << i
        order = _degeneracy_order(sets, base_contains) if sets else []
        self.sets = [sets[i] for i in order]
        self.contains = [0] * num_vertices
        for i, s in enumerate(self.sets):
            for v in vertex_list(s):
                self.contains[v] |= 1 << i
        self.adj = []
        for i, s in enumerate(self.sets):
            meet = 0
            for v in vertex_list(s):
                meet |= self.contains[v]
            self.adj.append(meet & ~(1 << i))
        self.cells = cells
        self.ground = (1 << num_vertices) - 1
        self.nonstar = nonstar
        self.budget = budget
        self.nodes = 0
        self.best_size = 0
        self.best: list[int] | None = None

    def _colour_classes(self, P: int) -> list[int]:
        classes = []
        adj = self.adj
        while P:
            Q = P
            cls = 0
            while Q:
                low = Q & -Q
                cls |= low
                Q &= ~(adj[low.bit_length() - 1] | low)
            P &= ~cls
            classes.append(cls)
        return classes

    def _orbits(self, P: int, cells: list[VertexSet]) -> dict | None:
        big = [c for c in cells if c.bit_count() > 1]
        if not big:
            return None
        singles = self.ground
        for c in big:
            singles &= ~c
        groups: dict = {}
        rest = P
        while rest:
            low = rest & -rest
            rest ^= low
            s = self.sets[low.bit_length() - 1]
            key = (s & singles,) + tuple((s & c).bit_count() for c in big)
            groups[key] = groups.get(key, 0) | low
        return {idx: g for g in groups.values() for idx in vertex_list(g)}

    def _pick(self, live: list[int], t: int, common: VertexSet, P: int) -> int | None:
        """Index to branch on, or None when the node cannot improve."""
        branch = 0
        for cls in live[t:]:
            branch |= cls
        if self.nonstar and common:
            for w in vertex_list(common):
                avoid = P & ~self.contains[w]
                if not avoid:
                    return None
                if avoid.bit_count() < branch.bit_count():
                    branch = avoid
        for cls in reversed(live):
            hit = cls & branch
            if hit:
                return hit.bit_length() - 1
        return None

    def expand(self, clique: list[int], common: VertexSet, P: int, cells: list[VertexSet]) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetError(f"node budget {self.budget} exhausted")
        classes = self._colour_classes(P)
        orbit_of = self._orbits(P, cells)
        size = len(clique)
        while P:
            live = [x for x in (cls & P for cls in classes) if x]
            t = max(0, self.best_size - size)
            if len(live) <= t:
                return
            v = self._pick(live, t, common, P)
            if v is None:
                return
            orbit = (1 << v) if orbit_of is None else orbit_of[v]
            self._include(clique, common, P, cells, v)
            P &= ~orbit

    def _include(self, clique, common, P, cells, v):
        s = self.sets[v]
        clique.append(v)
        newP = P & self.adj[v]
        if newP:
            refined = [x for c in cells for x in (c & s, c & ~s) if x]
            self.expand(clique, common & s, newP, refined)
        elif len(clique) > self.best_size and not (self.nonstar and common & s):
            self.best_size = len(clique)
            self.best = list(clique)
        clique.pop()

    def root_tasks(self) -> list[tuple[list[int], VertexSet, int, list[VertexSet]]]:
        """Top-level subproblems in serial order, bounded by the initial incumbent."""
        P = (1 << len(self.sets)) - 1
        classes = self._colour_classes(P)
        orbit_of = self._orbits(P, self.cells)
        tasks = []
        while P:
            live = [x for x in (cls & P for cls in classes) if x]
            t = self.best_size
            if len(live) <= t:
                break
            v = self._pick(live, t, self.ground, P)
            if v is None:
                break
            s = self.sets[v]
            refined = [x for c in self.cells for x in (c & s, c & ~s) if x]
            tasks.append(([v], s, P & self.adj[v], refined))
            P &= ~((1 << v) if orbit_of is None else orbit_of[v])
        return tasks

    def run(self) -> None:
        self.expand([], self.ground, (1 << len(self.sets)) - 1, self.cells)


_WORKER_SEARCH: _CliqueSearch | None = None


def _init_worker(search: _CliqueSearch) -> None:
    global _WORKER_SEARCH
    _WORKER_SEARCH = search


def _run_task(task) -> tuple[int, list[int] | None, int]:
    search = _WORKER_SEARCH
    clique, common, P, cells = task
    search.nodes = 0
    start = search.best_size
    if P:
        search.expand(list(clique), common, P, cells)
    elif len(clique) > search.best_size and not (search.nonstar and common):
        search.best_size, search.best = len(clique), list(clique)
    if search.best_size > start:
        found = search.best_size, search.best, search.nodes
    else:
        found = start, None, search.nodes
    return found


def _solve(search: _CliqueSearch, workers: int) -> None:
    if workers <= 1 or not search.sets:
        search.run()
        return
    tasks = search.root_tasks()
    initial = search.best_size
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                             initargs=(search,)) as pool:
        results = list(pool.map(_run_task, tasks))
    for size, clique, nodes in results:
        search.nodes += nodes
        if clique is not None and size > search.best_size:
            search.best_size, search.best = size, clique
    if search.nodes > (search.budget or float("inf")):
        raise SearchBudgetError(f"node budget {search.budget} exhausted")
    assert search.best_size >= initial


def _prepare(G: Graph, r: int, cap: int | None, max_family: int | None) -> SetFamily:
    if r < 1:
        raise PreconditionError("r must be positive")
    if r > G.num_vertices:
        return SetFamily(G, r, [])
    family = enumerate_r_sets(G, r, cap)
    limit = PRACTICAL_FAMILY_LIMIT if max_family is None else max_family
    if len(family) > limit:
        raise SearchBudgetError(f"{len(family)} r-sets exceed the search limit of {limit}")
    return family


def star_sizes(family: SetFamily) -> list[int]:
    sizes = [0] * family.graph.num_vertices
    for s in family:
        for v in vertex_list(s):
            sizes[v] += 1
    return sizes


def _search_family(family: SetFamily, *, nonstar: bool, lower: int, incumbent: list[VertexSet] | None,
                   budget: int | None, workers: int) -> tuple[int, list[VertexSet] | None]:
    G = family.graph
    search = _CliqueSearch(family.members, twin_classes(G), G.num_vertices, nonstar,
                           DEFAULT_NODE_BUDGET if budget is None else budget)
    search.best_size = lower
    _solve(search, workers)
    if search.best is None:
        return lower, incumbent
    return search.best_size, sorted(search.sets[i] for i in search.best)


def max_intersecting(G: Graph, r: int, *, cap: int | None = None, budget: int | None = None,
                     max_family: int | None = None, workers: int = 1) -> tuple[int, SetFamily]:
    """Size of a largest pairwise-intersecting subfamily of I^(r)(G), with one such family."""
    family = _prepare(G, r, cap, max_family)
    if not family.members:
        return 0, SetFamily(G, r, [])
    sizes = star_sizes(family)
    centre = sizes.index(max(sizes))
    star = [s for s in family if s >> centre & 1]
    if r == 1:
        return 1, SetFamily(G, r, star)
    size, best = _search_family(family, nonstar=False, lower=len(star), incumbent=star,
                                budget=budget, workers=workers)
    return size, SetFamily(G, r, best)


def max_nonstar_intersecting(G: Graph, r: int, *, at_least: int | None = None, cap: int | None = None,
                             budget: int | None = None, max_family: int | None = None,
                             workers: int = 1) -> tuple[int, SetFamily] | None:
    """Largest intersecting subfamily whose members share no common vertex.

    With ``at_least`` only families of at least that size are sought; the
    answer is still the exact maximum when one exists.
    """
    family = _prepare(G, r, cap, max_family)
    if r == 1 or len(family) < 3:
        return None
    # two intersecting sets always share a vertex, so three is the floor
    lower = max(2, (at_least or 0) - 1)
    size, best = _search_family(family, nonstar=True, lower=lower, incumbent=None,
                                budget=budget, workers=workers)
    if best is None:
        return None
    return size, SetFamily(G, r, best)


@dataclass
class EkrVerdict:
    r: int
    max_star_size: int
    star_center: int
    max_intersecting_size: int
    is_r_ekr: bool
    is_strictly_r_ekr: str  # "yes", "no" or "vacuous"
    witness: SetFamily
    nonstar_witness: SetFamily | None

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "max_star_size": self.max_star_size,
            "star_center": self.star_center,
            "max_intersecting_size": self.max_intersecting_size,
            "is_r_ekr": self.is_r_ekr,
            "is_strictly_r_ekr": self.is_strictly_r_ekr,
            "witness": self.witness.to_dict(),
            "nonstar_witness": None if self.nonstar_witness is None else self.nonstar_witness.to_dict(),
        }


def ekr_verdict(G: Graph, r: int, *, cap: int | None = None, budget: int | None = None,
                max_family: int | None = None, workers: int = 1) -> EkrVerdict:
    """Decide whether ``G`` is r-EKR and strictly r-EKR.

    Every intersecting family either lies inside a star or has no common
    vertex, so the maximum is max(largest star, largest non-star family).
    A single non-star search bounded below by the largest star settles
    both flags; a maximum family with a common vertex ``v`` sits inside the
    star at ``v`` and has its size, hence equals it.
    """
    family = _prepare(G, r, cap, max_family)
    if not family.members:
        return EkrVerdict(r, 0, 0, 0, True, "vacuous", SetFamily(G, r, []), None)
    sizes = star_sizes(family)
    top = max(sizes)
    centre = sizes.index(top)
    star = SetFamily(G, r, [s for s in family if s >> centre & 1])
    if r == 1:
        return EkrVerdict(r, top, centre, 1, True, "yes", star, None)
    if len(family) < 3:
        return EkrVerdict(r, top, centre, top, True, "yes", star, None)
    size, best = _search_family(family, nonstar=True, lower=top - 1, incumbent=None,
                                budget=budget, workers=workers)
    if best is None:
        return EkrVerdict(r, top, centre, top, True, "yes", star, None)
    nonstar = SetFamily(G, r, best)
    return EkrVerdict(r, top, centre, size, size == top, "no", nonstar, nonstar)


# -- shadows and the representative map ---------------------------------------

def shadow(family: Iterable[VertexSet], s: int) -> list[VertexSet]:
    """All s-subsets of members, deduplicated, in increasing bitmask order."""
    if s < 0:
        raise PreconditionError("s must be non-negative")
    out = set()
    for m in family:
        verts = vertex_list(m)
        if s > len(verts):
            raise PreconditionError("s exceeds member size")
        out.update(vset(c) for c in combinations(verts, s))
    return sorted(out)


def representative_map(G: Graph, B: Iterable[VertexSet]) -> list[tuple[VertexSet, VertexSet, int]]:
    """Group root-free sets of a depth-two claw by the leaves they touch.

    Returns ``(M, N, s_M)`` triples: ``M`` the leaves in or adjacent to a
    member, ``N`` the other leaves, ``s_M`` how many members give ``M``.
    """
    root, limbs = claw_limbs(G)
    if any(len(limb) != 2 for limb in limbs):
        raise PreconditionError("representative_map needs a depth-two claw")
    all_leaves = vset(limb[1] for limb in limbs)
    counts: dict[VertexSet, int] = {}
    for b in B:
        if b >> root & 1:
            raise PreconditionError(f"member {vertex_list(b)} contains the root")
        if not G.is_independent(b):
            raise PreconditionError(f"member {vertex_list(b)} is not independent")
        M = 0
        for near, leaf in limbs:
            if b & ((1 << near) | (1 << leaf)):
                M |= 1 << leaf
        counts[M] = counts.get(M, 0) + 1
    return [(M, all_leaves & ~M, counts[M]) for M in sorted(counts)]
