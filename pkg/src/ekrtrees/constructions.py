"""Executable forms of the leaf-shifting injections, the leaf compression,
the oversized intersecting family on depth-two claws, and the sweep for
trees whose largest star is centred at the root."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .enumeration import SetFamily, count_star_by_size
from .errors import PreconditionError
from .graph import Graph, VertexSet, build_depth_two_claw, build_superclaw, claw_limbs, vset
from .graph import members as vertex_list
from .search import is_pairwise_intersecting


@dataclass(frozen=True)
class InjectionTrace:
    source: VertexSet
    image: VertexSet
    case_id: int
    X: tuple[int, ...] = ()
    Y: VertexSet = 0
    Z: VertexSet = 0

    def to_dict(self) -> dict:
        return {
            "source": vertex_list(self.source),
            "image": vertex_list(self.image),
            "case_id": self.case_id,
            "X": list(self.X),
            "Y": vertex_list(self.Y),
            "Z": vertex_list(self.Z),
        }


def _check_member(G: Graph, v: int, A: VertexSet) -> None:
    if not A >> v & 1:
        raise PreconditionError(f"{vertex_list(A)} does not contain {v}")
    if A >> G.num_vertices or not G.is_independent(A):
        raise PreconditionError(f"{vertex_list(A)} is not an independent set")


def _limb_of(limbs: list[list[int]], v: int) -> list[int]:
    for limb in limbs:
        if v in limb:
            return limb
    raise PreconditionError(f"vertex {v} lies on no limb")


def _shift(A: VertexSet, X: list[int], step: int) -> tuple[VertexSet, VertexSet]:
    """Members of ``A`` along ``X`` and their images one position along."""
    Y = Z = 0
    for i, u in enumerate(X):
        if A >> u & 1:
            Y |= 1 << u
            Z |= 1 << X[i + step]
    return Y, Z


def starlm_injection(G: Graph, v: int, A: VertexSet) -> InjectionTrace:
    """Map a member of the star at non-leaf ``v`` into the star at the leaf of v's limb."""
    root, limbs = claw_limbs(G)
    if G.degree(v) == 1:
        raise PreconditionError(f"vertex {v} is a leaf")
    _check_member(G, v, A)
    L = limbs[0] if v == root else _limb_of(limbs, v)
    x = L[-1]
    w = L[-2] if len(L) > 1 else root
    if A >> x & 1:
        return InjectionTrace(A, A, 1)
    if not A >> w & 1:
        return InjectionTrace(A, A & ~(1 << v) | (1 << x), 2)
    # X runs from the leaf x back to v
    X = L[::-1] + [root] if v == root else L[L.index(v):][::-1]
    Y, Z = _shift(A, X, -1)
    return InjectionTrace(A, (A | Z) & ~Y, 3, tuple(X), Y, Z)


def lstar_injection(G: Graph, v: int, A: VertexSet) -> InjectionTrace:
    """Map a member of the star at ``v`` into the star at a root-adjacent leaf."""
    c, limbs = claw_limbs(G)
    short = [limb for limb in limbs if len(limb) == 1]
    if not short:
        raise PreconditionError("graph has no short limb")
    x = short[0][0]
    if v != c and G.degree(v) == 1 and G.adjacency[c] >> v & 1:
        raise PreconditionError(f"vertex {v} is a leaf adjacent to the root")
    _check_member(G, v, A)
    if v == c:
        return InjectionTrace(A, A & ~(1 << c) | (1 << x), 2)
    if A >> x & 1:
        return InjectionTrace(A, A, 1)
    if not A >> c & 1:
        return InjectionTrace(A, A & ~(1 << v) | (1 << x), 2)
    L = _limb_of(limbs, v)
    X = L[L.index(v)::-1]  # from v towards the root-adjacent vertex
    Y, Z = _shift(A, X, 1)
    image = (A | Z | (1 << x)) & ~(Y | (1 << c))
    return InjectionTrace(A, image, 3, tuple(X), Y, Z)


def theorem4_compression(G: Graph, family: Iterable[VertexSet] | SetFamily, v: int
                         ) -> tuple[SetFamily, SetFamily, SetFamily]:
    """Shift ``v`` to its neighbour ``w`` where allowed, then split the image.

    Returns ``(shifted, B, C)``: ``B`` holds shifted members avoiding ``v``,
    ``C`` holds the members containing ``v`` with ``v`` removed.
    """
    members = list(family.members if isinstance(family, SetFamily) else family)
    if not members:
        raise PreconditionError("family is empty")
    r = members[0].bit_count()
    SetFamily(G, r, members).validate()
    if not is_pairwise_intersecting(members):
        raise PreconditionError("family is not pairwise intersecting")
    if G.degree(v) != 1:
        raise PreconditionError(f"vertex {v} is not a leaf")
    w = G.neighbours(v)[0]
    if G.root is not None and w == G.root:
        raise PreconditionError(f"leaf {v} is adjacent to the root")
    if G.degree(w) != 2:
        raise PreconditionError(f"neighbour {w} of {v} does not have degree 2")
    z = next(u for u in G.neighbours(w) if u != v)
    present = set(members)
    shifted = []
    for A in members:
        moved = A & ~(1 << v) | (1 << w)
        if A >> v & 1 and not A >> z & 1 and moved not in present:
            shifted.append(moved)
        else:
            shifted.append(A)
    B = [A for A in shifted if not A >> v & 1]
    C = [A & ~(1 << v) for A in shifted if A >> v & 1]
    return SetFamily(G, r, shifted), SetFamily(G, r, B), SetFamily(G, r - 1, C)


def remark_family(n: int) -> SetFamily:
    """An intersecting family of n-sets on the depth-two claw with n leaves.

    One set from each complementary pair of transversals of G - root (the
    one with more leaves; ties go to the set holding the lowest leaf), plus
    every n-set containing the root.
    """
    if n < 2:
        raise PreconditionError("need n >= 2")
    G = build_depth_two_claw(n)
    near = [2 * j + 1 for j in range(n)]
    leaf = [2 * j + 2 for j in range(n)]

    def transversal(choice: int) -> VertexSet:
        return vset(leaf[j] if choice >> j & 1 else near[j] for j in range(n))

    full = (1 << n) - 1
    B = []
    for choice in range(1 << n):
        other = full & ~choice
        if choice > other:
            continue
        if choice.bit_count() != other.bit_count():
            pick = choice if choice.bit_count() > other.bit_count() else other
        else:
            pick = choice if choice & 1 else other
        B.append(transversal(pick))
    all_leaves = vset(leaf)
    C = [1 | (all_leaves & ~(1 << l)) for l in leaf]
    return SetFamily(G, n, sorted(B + C))


@dataclass
class RootCentreResult:
    n: int
    a: int
    found: tuple[int, int] | None
    table: list[tuple[int, int, int, int]] = field(default_factory=list)


def _star_table(args: tuple[int, int, int, int]) -> list[tuple[int, int, int, int]]:
    n, k, a, r_max = args
    T = build_superclaw(n, k, a)
    rows = []
    per_vertex = [count_star_by_size(T, v) for v in range(T.num_vertices)]
    for r in range(1, r_max + 1):
        for v, counts in enumerate(per_vertex):
            rows.append((k, r, v, counts[r] if r < len(counts) else 0))
    return rows


def root_center_search(n: int, a: int, k_max: int, r_max: int, workers: int = 1) -> RootCentreResult:
    """Sweep T^{n,k,a} for the first (k, r) whose root star beats every other star."""
    if min(n, a, k_max, r_max) < 1:
        raise PreconditionError("parameters must be positive")
    build_superclaw(n, k_max, a)  # capacity check up front
    jobs = [(n, k, a, r_max) for k in range(1, k_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_star_table, jobs))
    else:
        blocks = [_star_table(job) for job in jobs]
    table = [row for block in blocks for row in block]
    found = None
    by_cell: dict[tuple[int, int], list[int]] = {}
    for k, r, v, size in table:
        by_cell.setdefault((k, r), []).append(size)
    for (k, r), sizes in by_cell.items():
        if all(sizes[0] > s for s in sizes[1:]):
            found = (k, r)
            break
    return RootCentreResult(n, a, found, table)
