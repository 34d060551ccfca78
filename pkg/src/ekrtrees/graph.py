"""Small simple graphs stored as per-vertex neighbour bitmasks.

A vertex set is a plain ``int`` whose bit ``i`` marks vertex ``i``.  Every
constructor follows a fixed numbering rule (root is vertex 0, limbs and
blocks are laid out consecutively in input order, root-outward) so that
vertex indices are stable across runs and usable in test vectors.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapacityError, PreconditionError

CAPACITY = 128

VertexSet = int


def vset(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _check_capacity(n: int) -> None:
    if n > CAPACITY:
        raise CapacityError(f"{n} vertices exceeds capacity {CAPACITY}")


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    adjacency: tuple[VertexSet, ...]
    root: int | None = None

    def __post_init__(self):
        n = self.num_vertices
        _check_capacity(n)
        if n < 0 or len(self.adjacency) != n:
            raise PreconditionError("adjacency length must equal num_vertices")
        full = (1 << n) - 1
        for v, nb in enumerate(self.adjacency):
            if nb & ~full:
                raise PreconditionError(f"vertex {v} has a neighbour out of range")
            if nb >> v & 1:
                raise PreconditionError(f"self-loop at vertex {v}")
            for u in members(nb):
                if not self.adjacency[u] >> v & 1:
                    raise PreconditionError(f"edge {v}-{u} is not symmetric")
        if self.root is not None and not 0 <= self.root < n:
            raise PreconditionError(f"root {self.root} out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], root: int | None = None) -> Graph:
        _check_capacity(n)
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), root)

    @property
    def vertices(self) -> VertexSet:
        return (1 << self.num_vertices) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.num_vertices) for v in members(self.adjacency[u]) if u < v]

    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adjacency) // 2

    def neighbours(self, v: int) -> list[int]:
        return members(self.adjacency[v])

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adjacency[v].bit_count()

    def closed_neighbourhood(self, v: int) -> VertexSet:
        return self.adjacency[v] | (1 << v)

    def is_independent(self, mask: VertexSet) -> bool:
        rest = mask
        while rest:
            low = rest & -rest
            if self.adjacency[low.bit_length() - 1] & mask:
                return False
            rest ^= low
        return True

    def component(self, v: int) -> VertexSet:
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            for u in members(frontier):
                nxt |= self.adjacency[u]
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    def components(self) -> list[VertexSet]:
        """Connected components, each listed from its lowest-index vertex."""
        out = []
        left = self.vertices
        while left:
            comp = self.component((left & -left).bit_length() - 1)
            out.append(comp)
            left &= ~comp
        return out

    def is_connected(self) -> bool:
        return self.num_vertices == 0 or self.component(0) == self.vertices

    def is_forest(self) -> bool:
        return self.num_edges() == self.num_vertices - len(self.components())

    def is_tree(self) -> bool:
        return self.is_connected() and self.num_edges() == self.num_vertices - 1

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        edges = [(perm[u], perm[v]) for u, v in self.edges()]
        root = None if self.root is None else perm[self.root]
        return Graph.from_edges(self.num_vertices, edges, root)

    def to_dict(self) -> dict:
        data = {"num_vertices": self.num_vertices, "edges": [list(e) for e in self.edges()]}
        if self.root is not None:
            data["root"] = self.root
        return data

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        try:
            n = int(data["num_vertices"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed graph JSON: {exc}") from exc
        root = data.get("root")
        return cls.from_edges(n, edges, None if root is None else int(root))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Graph:
        return cls.from_dict(json.loads(text))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.num_vertices:
            raise PreconditionError(f"vertex {v} not in graph on {self.num_vertices} vertices")


# -- constructors -----------------------------------------------------------

def build_path(a: int) -> Graph:
    if a < 1:
        raise PreconditionError("path needs at least one vertex")
    _check_capacity(a)
    return Graph.from_edges(a, [(i, i + 1) for i in range(a - 1)])


def build_claw(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("claw needs at least one leaf")
    _check_capacity(n + 1)
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)], root=0)


def build_elongated_claw(limb_lengths: Sequence[int]) -> Graph:
    if not limb_lengths:
        raise PreconditionError("an elongated claw needs at least one limb")
    if any(L < 1 for L in limb_lengths):
        raise PreconditionError("limb lengths must be positive")
    n = 1 + sum(limb_lengths)
    _check_capacity(n)
    edges = []
    nxt = 1
    for L in limb_lengths:
        prev = 0
        for _ in range(L):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(n, edges, root=0)


def build_depth_two_claw(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("depth-two claw needs at least one limb")
    return build_elongated_claw([2] * n)


def build_ka_claw(k: int, a: int) -> Graph:
    if k < 1 or a < 1:
        raise PreconditionError("k and a must be positive")
    return build_elongated_claw([a] * k)


def join_with_new_root(graphs: Sequence[Graph]) -> Graph:
    """New root 0 joined to the root of each input, blocks in input order."""
    if not graphs:
        raise PreconditionError("need at least one graph to join")
    total = 1 + sum(g.num_vertices for g in graphs)
    _check_capacity(total)
    edges = []
    offset = 1
    for g in graphs:
        if g.root is None:
            raise PreconditionError("every joined graph must have a root")
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        edges.append((0, g.root + offset))
        offset += g.num_vertices
    return Graph.from_edges(total, edges, root=0)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Blocks in input order; the result has no root."""
    total = sum(g.num_vertices for g in graphs)
    _check_capacity(total)
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.num_vertices
    return Graph.from_edges(total, edges)


def build_superclaw(n: int, k: int, a: int) -> Graph:
    """T^{n,k,a}: a root joined to the roots of n disjoint (k,a)-claws."""
    if n < 1:
        raise PreconditionError("n must be positive")
    _check_capacity(n * (k * a + 1) + 1)
    return join_with_new_root([build_ka_claw(k, a)] * n)


def build_disjoint_complete(n: int, t: int) -> Graph:
    if n < 1 or t < 1:
        raise PreconditionError("n and t must be positive")
    _check_capacity(n * t)
    edges = []
    for b in range(n):
        base = b * t
        edges.extend((base + i, base + j) for i in range(t) for j in range(i + 1, t))
    return Graph.from_edges(n * t, edges)


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform labelled tree on ``n`` vertices (Prüfer decoding)."""
    if n <= 2:
        return build_path(n) if n else Graph(0, ())
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = degree.index(1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (i for i in range(n) if degree[i] == 1)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


# -- deletion ---------------------------------------------------------------

def induced_subgraph(G: Graph, keep: VertexSet) -> tuple[Graph, dict[int, int]]:
    """Subgraph on ``keep``, renumbered compactly in increasing order."""
    kept = members(keep & G.vertices)
    mapping = {old: new for new, old in enumerate(kept)}
    adj = []
    for old in kept:
        nb = 0
        for u in members(G.adjacency[old] & keep):
            nb |= 1 << mapping[u]
        adj.append(nb)
    root = mapping.get(G.root) if G.root is not None else None
    return Graph(len(kept), tuple(adj), root), mapping


def delete_vertex(G: Graph, v: int) -> tuple[Graph, dict[int, int]]:
    """G - v, with the old-to-new index map."""
    G._check_vertex(v)
    return induced_subgraph(G, G.vertices & ~(1 << v))


def closed_delete(G: Graph, v: int) -> tuple[Graph, dict[int, int]]:
    """G ↓ v: remove ``v`` and all its neighbours."""
    G._check_vertex(v)
    return induced_subgraph(G, G.vertices & ~G.closed_neighbourhood(v))


# -- structural queries -----------------------------------------------------

def degree(G: Graph, v: int) -> int:
    return G.degree(v)


def leaves(G: Graph) -> VertexSet:
    return vset(v for v in range(G.num_vertices) if G.adjacency[v].bit_count() == 1)


def distance(G: Graph, u: int, v: int) -> int:
    G._check_vertex(u)
    G._check_vertex(v)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            return dist[x]
        for y in G.neighbours(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    raise PreconditionError(f"vertices {u} and {v} are in different components")


def mu(G: Graph) -> int:
    """Minimum size of a maximal independent set.

    Branches on which vertex dominates the lowest undominated vertex; a set
    that dominates everything is independent and maximal.
    """
    n = G.num_vertices
    if n == 0:
        return 0
    closed = [G.closed_neighbourhood(v) for v in range(n)]
    full = G.vertices
    best = n

    def search(size: int, dominated: VertexSet) -> None:
        nonlocal best
        if dominated == full:
            best = min(best, size)
            return
        if size + 1 >= best:
            return
        open_ = full & ~dominated
        u = (open_ & -open_).bit_length() - 1
        # some vertex of N[u] must join; dominated ones would break independence
        for w in members(closed[u] & open_):
            search(size + 1, dominated | closed[w])

    search(0, 0)
    return best


def twin_classes(G: Graph) -> list[VertexSet]:
    """Partition of the vertices into twin classes.

    Two vertices are twins when they have equal open neighbourhoods or equal
    closed neighbourhoods; swapping them is an automorphism of ``G``.
    """
    groups: dict[tuple[str, int], VertexSet] = {}
    for v in range(G.num_vertices):
        groups.setdefault(("open", G.adjacency[v]), 0)
        groups[("open", G.adjacency[v])] |= 1 << v
        groups.setdefault(("closed", G.closed_neighbourhood(v)), 0)
        groups[("closed", G.closed_neighbourhood(v))] |= 1 << v
    assigned = 0
    classes = []
    for mask in sorted(groups.values(), key=lambda m: (-m.bit_count(), m)):
        mask &= ~assigned
        if mask.bit_count() > 1:
            classes.append(mask)
            assigned |= mask
    classes.extend(1 << v for v in range(G.num_vertices) if not assigned >> v & 1)
    return sorted(classes, key=lambda m: (m & -m))


def claw_limbs(G: Graph) -> tuple[int, list[list[int]]]:
    """Root and limbs of an elongated claw.

    Each limb is listed root-outward (first entry adjacent to the root);
    limbs are ordered by their first vertex.  Raises ``PreconditionError``
    if ``G`` is not an elongated claw with respect to its root.
    """
    if G.num_vertices < 2 or not G.is_tree():
        raise PreconditionError("an elongated claw is a tree with at least one edge")
    root = G.root
    if root is None:
        high = [v for v in range(G.num_vertices) if G.degree(v) > 2]
        if len(high) > 1:
            raise PreconditionError("more than one vertex of degree > 2")
        root = high[0] if high else 0
    for v in range(G.num_vertices):
        if v != root and G.degree(v) > 2:
            raise PreconditionError(f"non-root vertex {v} has degree > 2")
    limbs = []
    for first in G.neighbours(root):
        limb = [first]
        prev, cur = root, first
        while True:
            nxt = G.adjacency[cur] & ~(1 << prev)
            if not nxt:
                break
            prev, cur = cur, nxt.bit_length() - 1
            limb.append(cur)
        limbs.append(limb)
    return root, limbs
