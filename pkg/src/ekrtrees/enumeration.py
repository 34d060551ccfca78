"""Independent r-sets, stars, and exact counts by cardinality.

Counts are Python ints throughout.  Forests are counted by the usual
in/out dynamic program over rooted components; any graph can also be
counted by explicit enumeration, which is capped.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import EnumCapError, PreconditionError
from .graph import Graph, VertexSet, build_superclaw, induced_subgraph, leaves
from .graph import members as vertex_list

DEFAULT_ENUM_CAP = 2_000_000
ENUM_CAP_ENV = "EKRTREES_ENUM_CAP"

CountVector = list  # list[int], index = cardinality


def default_enum_cap() -> int:
    return int(os.environ.get(ENUM_CAP_ENV, DEFAULT_ENUM_CAP))


@dataclass
class SetFamily:
    """Distinct independent sets of one graph, all of cardinality ``r``."""

    graph: Graph
    r: int
    members: list[VertexSet] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.members)

    def validate(self) -> None:
        if len(set(self.members)) != len(self.members):
            raise PreconditionError("family has repeated members")
        for m in self.members:
            if m.bit_count() != self.r:
                raise PreconditionError(f"member {vertex_list(m)} does not have size {self.r}")
            if m >> self.graph.num_vertices:
                raise PreconditionError(f"member {vertex_list(m)} has out-of-range vertices")
            if not self.graph.is_independent(m):
                raise PreconditionError(f"member {vertex_list(m)} is not independent")

    def to_dict(self) -> dict:
        return {"r": self.r, "members": [vertex_list(m) for m in self.members]}

    @classmethod
    def from_dict(cls, graph: Graph, data: dict) -> SetFamily:
        fam = cls(graph, int(data["r"]), [sum(1 << v for v in m) for m in data["members"]])
        fam.validate()
        return fam


def _choose(G: Graph, r: int, allowed: VertexSet, current: VertexSet, out: list, cap: int) -> None:
    if r == 0:
        out.append(current)
        if len(out) > cap:
            raise EnumCapError(f"more than {cap} independent sets")
        return
    while allowed and allowed.bit_count() >= r:
        low = allowed & -allowed
        v = low.bit_length() - 1
        allowed ^= low
        _choose(G, r - 1, allowed & ~G.adjacency[v], current | low, out, cap)


def iter_independent_sets(G: Graph, required: VertexSet = 0) -> Iterator[VertexSet]:
    """Every independent set containing ``required``, of every size."""
    if not G.is_independent(required):
        return
    blocked = 0
    for v in vertex_list(required):
        blocked |= G.closed_neighbourhood(v)
    stack = [(G.vertices & ~blocked, required)]
    while stack:
        allowed, current = stack.pop()
        yield current
        while allowed:
            low = allowed & -allowed
            allowed ^= low
            stack.append((allowed & ~G.adjacency[low.bit_length() - 1], current | low))


def enumerate_r_sets(G: Graph, r: int, cap: int | None = None) -> SetFamily:
    """All independent r-sets of ``G`` in increasing bitmask order."""
    if r < 0 or r > G.num_vertices:
        raise PreconditionError(f"r={r} outside 0..{G.num_vertices}")
    out: list[VertexSet] = []
    _choose(G, r, G.vertices, 0, out, default_enum_cap() if cap is None else cap)
    out.sort()
    return SetFamily(G, r, out)


def star_family(G: Graph, v: int, r: int, cap: int | None = None) -> SetFamily:
    """The r-star of ``G`` centred at ``v``."""
    G._check_vertex(v)
    if r < 1:
        raise PreconditionError("stars need r >= 1")
    out: list[VertexSet] = []
    allowed = G.vertices & ~G.closed_neighbourhood(v)
    _choose(G, r - 1, allowed, 1 << v, out, default_enum_cap() if cap is None else cap)
    out.sort()
    return SetFamily(G, r, out)


# -- counting ---------------------------------------------------------------

def _convolve(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _add(p: list[int], q: list[int]) -> list[int]:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, b in enumerate(q):
        out[i] += b
    return out


def _tree_polynomial(G: Graph, root: int, forced: VertexSet) -> list[int]:
    """Independence polynomial of the component of ``root``.

    Vertices in ``forced`` must belong to every counted set.
    """
    parent = {root: -1}
    order = [root]
    for v in order:
        for u in vertex_list(G.adjacency[v]):
            if u != parent[v]:
                parent[u] = v
                order.append(u)
    inc: dict[int, list[int]] = {}
    exc: dict[int, list[int]] = {}
    for v in reversed(order):
        i, e = [0, 1], [0] if forced >> v & 1 else [1]
        for u in vertex_list(G.adjacency[v]):
            if u != parent[v]:
                i = _convolve(i, exc[u])
                e = _convolve(e, _add(inc[u], exc[u]))
        inc[v], exc[v] = i, e
    return _add(inc[root], exc[root])


def _pad(poly: list[int], n: int) -> list[int]:
    poly = poly[: n + 1]
    return poly + [0] * (n + 1 - len(poly))


def _forest_counts(G: Graph, forced: VertexSet = 0) -> list[int]:
    total = [1]
    for comp in G.components():
        total = _convolve(total, _tree_polynomial(G, (comp & -comp).bit_length() - 1, forced))
    return _pad(total, G.num_vertices)


def _enumeration_counts(G: Graph, required: VertexSet = 0, cap: int | None = None) -> list[int]:
    cap = default_enum_cap() if cap is None else cap
    counts = [0] * (G.num_vertices + 1)
    for seen, s in enumerate(iter_independent_sets(G, required), 1):
        if seen > cap:
            raise EnumCapError(f"more than {cap} independent sets")
        counts[s.bit_count()] += 1
    return counts


def count_by_size(G: Graph, method: str = "auto", cap: int | None = None) -> CountVector:
    """Number of independent sets of each cardinality 0..n.

    ``method`` is ``"dp"`` (forests only), ``"enum"``, or ``"auto"``.
    """
    if method == "auto":
        method = "dp" if G.is_forest() else "enum"
    if method == "dp":
        if not G.is_forest():
            raise PreconditionError("the tree DP needs a forest")
        return _forest_counts(G)
    if method == "enum":
        return _enumeration_counts(G, cap=cap)
    raise ValueError(f"unknown method {method!r}")


def count_star_by_size(G: Graph, v: int, method: str = "auto", cap: int | None = None) -> CountVector:
    """``counts[r]`` is the size of the r-star centred at ``v``."""
    G._check_vertex(v)
    if method == "auto":
        method = "dp" if G.is_forest() else "enum"
    if method == "dp":
        if not G.is_forest():
            raise PreconditionError("the tree DP needs a forest")
        return _forest_counts(G, forced=1 << v)
    if method == "enum":
        return _enumeration_counts(G, required=1 << v, cap=cap)
    raise ValueError(f"unknown method {method!r}")


def total_count(G: Graph, keep: VertexSet | None = None) -> int:
    """Number of independent sets (all sizes) of ``G`` restricted to ``keep``."""
    if keep is not None:
        G = induced_subgraph(G, keep)[0]
    return sum(count_by_size(G))


def counts_to_json(counts: CountVector) -> list[str]:
    return [str(c) for c in counts]


def fib_count(a: int) -> int:
    """Number of independent sets of the path on ``a`` vertices."""
    if a < 0:
        raise PreconditionError("a must be non-negative")
    prev, cur = 1, 2  # F(0), F(1)
    if a == 0:
        return prev
    for _ in range(a - 1):
        prev, cur = cur, prev + cur
    return cur


# -- decomposition of root/leaf counts on T^{n,k,a} -------------------------

@dataclass(frozen=True)
class Lemma12Decomposition:
    n: int
    k: int
    a: int
    I_x: int
    I_y: int
    I_xy: int
    Ipx: int
    Ipy: int
    S1: int
    S2: int
    S3: int

    def identities(self) -> dict[str, bool]:
        F = fib_count
        tail = F(self.a) ** (self.n * self.k - 1)
        return {
            "I_x = Ipx + I_xy": self.I_x == self.Ipx + self.I_xy,
            "I_y = Ipy + I_xy": self.I_y == self.Ipy + self.I_xy,
            "Ipy = S1 + S2 + S3": self.Ipy == self.S1 + self.S2 + self.S3,
            "Ipx = F(a-1) F(a)^(nk-1)": self.Ipx == F(self.a - 1) * tail,
            "I_xy = F(a-2) F(a)^(nk-1)": self.I_xy == F(self.a - 2) * tail,
            "S1 = I_xy": self.S1 == self.I_xy,
        }

    def to_dict(self) -> dict:
        data: dict = {"n": self.n, "k": self.k, "a": self.a}
        for name in ("I_x", "I_y", "I_xy", "Ipx", "Ipy", "S1", "S2", "S3"):
            data[name] = str(getattr(self, name))
        return data


def lemma12_decomposition(n: int, k: int, a: int) -> Lemma12Decomposition:
    """Exact counts around the root ``x`` and lowest leaf ``y`` of T^{n,k,a}.

    Each quantity is counted on its own subgraph, so the identities between
    them are genuine checks rather than consequences of the code.
    """
    if n < 2 or a < 2 or k < 1:
        raise PreconditionError("need n >= 2, a >= 2, k >= 1")
    T = build_superclaw(n, k, a)
    full = T.vertices
    x = 0
    y = vertex_list(leaves(T))[0]
    Nx, Ny = T.adjacency[x], T.adjacency[y]
    claw_roots = Nx
    c_mask = claw_roots & induced_component(T, y, avoid=1 << x)
    R = claw_roots & ~c_mask
    xy = (1 << x) | (1 << y)

    Ty = full & ~(Ny | xy)
    Ty_graph, ty_map = induced_subgraph(T, Ty)
    c = vertex_list(c_mask)[0]
    s2_counts = count_star_by_size(Ty_graph, ty_map[c])
    return Lemma12Decomposition(
        n=n, k=k, a=a,
        I_x=sum(count_star_by_size(T, x)),
        I_y=sum(count_star_by_size(T, y)),
        I_xy=total_count(T, full & ~(T.closed_neighbourhood(x) | T.closed_neighbourhood(y))),
        Ipx=total_count(T, full & ~(Nx | xy)),
        Ipy=total_count(T, Ty),
        S1=total_count(T, Ty & ~(R | c_mask)),
        S2=sum(s2_counts),
        S3=total_count(T, Ty & ~c_mask) - total_count(T, Ty & ~(c_mask | R)),
    )


def induced_component(G: Graph, v: int, avoid: VertexSet = 0) -> VertexSet:
    """Vertices reachable from ``v`` without passing through ``avoid``."""
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for u in vertex_list(frontier):
            nxt |= G.adjacency[u]
        frontier = nxt & ~seen & ~avoid
        seen |= frontier
    return seen


def ratio_root_leaf(n: int, k: int, a: int) -> Fraction:
    d = lemma12_decomposition(n, k, a)
    return Fraction(d.I_x, d.I_y)
