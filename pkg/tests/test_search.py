from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_independent_sets, brute_max_intersecting
from ekrtrees.enumeration import enumerate_r_sets, star_family
from ekrtrees.errors import PreconditionError, SearchBudgetError
from ekrtrees.graph import (Graph, build_claw, build_depth_two_claw, build_disjoint_complete,
                            build_elongated_claw, members, random_tree, vset)
from ekrtrees.search import (common_vertices, ekr_verdict, is_pairwise_intersecting, max_intersecting,
                             max_nonstar_intersecting, representative_map, shadow)
from ekrtrees.suites import katona_exhaustive


def clique_oracle(G: Graph, r: int) -> tuple[int, int]:
    """(max intersecting, max non-star intersecting) from networkx maximal cliques."""
    sets = brute_independent_sets(G, r)
    H = nx.Graph()
    H.add_nodes_from(range(len(sets)))
    H.add_edges_from((i, j) for i, j in combinations(range(len(sets)), 2) if sets[i] & sets[j])
    best = nonstar = 0
    for clique in nx.find_cliques(H):
        best = max(best, len(clique))
        if len(clique) > 1 and not common_vertices(sets[i] for i in clique):
            nonstar = max(nonstar, len(clique))
    return best, nonstar


small_graphs = st.builds(
    lambda n, p, seed: Graph.from_edges(n, [e for e in combinations(range(n), 2)
                                            if random.Random(seed * 1009 + e[0] * 37 + e[1]).random() < p]),
    st.integers(3, 9), st.floats(0.0, 0.5), st.integers(0, 10**6))


def test_pairwise_helpers():
    assert is_pairwise_intersecting([vset([1, 2]), vset([2, 3])])
    assert not is_pairwise_intersecting([vset([1]), vset([2])])
    assert common_vertices([vset([1, 2]), vset([2, 3])]) == vset([2])


def test_max_intersecting_examples():
    size, fam = max_intersecting(build_claw(4), 2)
    assert size == 3 == len(fam) and is_pairwise_intersecting(fam)
    assert max_intersecting(build_depth_two_claw(3), 2)[0] == 5
    size, fam = max_intersecting(build_depth_two_claw(3), 3)
    assert size >= 7 and is_pairwise_intersecting(fam)
    assert max_intersecting(build_claw(3), 1)[0] == 1
    assert max_intersecting(build_claw(3), 4)[0] == 0


def test_max_intersecting_matches_subfamily_brute_force():
    for G, r in [(build_claw(4), 2), (build_depth_two_claw(2), 2), (build_elongated_claw([1, 2]), 2),
                 (build_disjoint_complete(2, 2), 2), (build_claw(5), 2)]:
        sets = brute_independent_sets(G, r)
        assert max_intersecting(G, r)[0] == brute_max_intersecting(sets)
        got = max_nonstar_intersecting(G, r)
        assert (0 if got is None else got[0]) == brute_max_intersecting(sets, nonstar=True)


def test_nonstar_examples():
    size, fam = max_nonstar_intersecting(build_claw(4), 2)
    assert size == 3 and not common_vertices(fam) and is_pairwise_intersecting(fam)
    got = max_nonstar_intersecting(build_claw(5), 2)
    assert got is None or got[0] < 4
    assert max_nonstar_intersecting(build_depth_two_claw(3), 1) is None


@settings(max_examples=60, deadline=None)
@given(small_graphs, st.integers(2, 3))
def test_search_matches_clique_oracle(G, r):
    if r > G.num_vertices:
        return
    best, nonstar = clique_oracle(G, r)
    size, fam = max_intersecting(G, r)
    assert size == best == len(fam)
    assert is_pairwise_intersecting(fam)
    fam.validate()
    got = max_nonstar_intersecting(G, r)
    assert (0 if got is None else got[0]) == nonstar
    if got is not None:
        assert not common_vertices(got[1]) and is_pairwise_intersecting(got[1])


@settings(max_examples=60, deadline=None)
@given(small_graphs, st.integers(1, 3))
def test_verdict_consistent_with_oracle(G, r):
    if r > G.num_vertices:
        return
    v = ekr_verdict(G, r)
    sets = brute_independent_sets(G, r)
    if not sets:
        assert v.is_strictly_r_ekr == "vacuous" and v.is_r_ekr
        return
    top = max(sum(1 for s in sets if s >> u & 1) for u in range(G.num_vertices))
    best, nonstar = clique_oracle(G, r) if r > 1 else (1, 0)
    assert v.max_star_size == top
    assert v.max_intersecting_size == best
    assert v.is_r_ekr == (best == top)
    assert v.is_strictly_r_ekr == ("yes" if nonstar < top else "no")
    assert len(star_family(G, v.star_center, r)) == top
    assert is_pairwise_intersecting(v.witness) and len(v.witness) == best


def test_verdict_examples():
    v = ekr_verdict(build_depth_two_claw(3), 2)
    assert v.is_r_ekr and v.is_strictly_r_ekr == "yes"
    assert not ekr_verdict(build_depth_two_claw(3), 3).is_r_ekr
    v = ekr_verdict(build_claw(4), 2)
    assert v.is_r_ekr and v.is_strictly_r_ekr == "no"
    assert len(v.nonstar_witness) == 3 and not common_vertices(v.nonstar_witness)
    assert ekr_verdict(build_claw(5), 2).is_strictly_r_ekr == "yes"
    v = ekr_verdict(build_claw(2), 3)
    assert v.is_strictly_r_ekr == "vacuous"


def test_two_disjoint_edges_at_r_two_is_strict():
    G = build_disjoint_complete(2, 2)
    sets = brute_independent_sets(G, 2)
    assert len(sets) == 4
    assert brute_max_intersecting(sets, nonstar=True) == 0
    v = ekr_verdict(G, 2)
    assert v.is_r_ekr and v.is_strictly_r_ekr == "yes"


def test_star_center_tie_break_is_lowest_index():
    assert ekr_verdict(build_claw(6), 2).star_center == 1
    assert ekr_verdict(build_disjoint_complete(3, 2), 2).star_center == 0


@settings(max_examples=25, deadline=None)
@given(st.integers(4, 11), st.integers(2, 3), st.integers(0, 10**6))
def test_max_size_invariant_under_relabelling(n, r, seed):
    rng = random.Random(seed)
    G = random_tree(n, rng)
    perm = list(range(n))
    rng.shuffle(perm)
    assert max_intersecting(G, r)[0] == max_intersecting(G.relabel(perm), r)[0]


@pytest.mark.parametrize("G,r", [(build_claw(8), 4), (build_depth_two_claw(4), 2),
                                 (build_elongated_claw([1, 2, 3, 3]), 3)])
def test_worker_count_does_not_change_answers(G, r):
    a = ekr_verdict(G, r, workers=1)
    b = ekr_verdict(G, r, workers=3)
    assert (a.max_intersecting_size, a.is_r_ekr, a.is_strictly_r_ekr) == \
           (b.max_intersecting_size, b.is_r_ekr, b.is_strictly_r_ekr)
    for fam in (b.witness, b.nonstar_witness):
        if fam is not None:
            fam.validate()
            assert is_pairwise_intersecting(fam)
    assert max_intersecting(G, r, workers=3)[0] == a.max_intersecting_size


def test_budget_is_typed_and_never_partial():
    with pytest.raises(SearchBudgetError) as exc:
        ekr_verdict(build_depth_two_claw(3), 3, budget=1)
    assert exc.value.code == "SEARCH_BUDGET"
    with pytest.raises(SearchBudgetError):
        max_intersecting(build_claw(10), 3, max_family=10)


def test_shadow_examples():
    tri = [vset([1, 2]), vset([1, 3]), vset([2, 3])]
    assert shadow(tri, 1) == [vset([1]), vset([2]), vset([3])]
    assert shadow(tri, 2) == sorted(tri)
    assert shadow([vset([1, 2, 3])], 2) == sorted(tri)


@pytest.mark.parametrize("m,a,b", [(8, 2, 1), (8, 3, 2), (8, 4, 3), (6, 4, 1), (6, 3, 1), (5, 2, 1)])
def test_katona_exhaustive_small(m, a, b):
    families, violations = katona_exhaustive(m, a, min_b=b)
    assert families > 0 and violations == 0


def test_katona_counter_on_known_total():
    # intersecting families of 2-sets of [4]: stars and triangles
    families, _ = katona_exhaustive(4, 2)
    brute = 0
    pairs = [vset(c) for c in combinations(range(4), 2)]
    for mask in range(1, 1 << len(pairs)):
        if is_pairwise_intersecting(p for i, p in enumerate(pairs) if mask >> i & 1):
            brute += 1
    assert families == brute


def test_representative_map_examples():
    G = build_depth_two_claw(3)
    assert representative_map(G, [vset([2, 4])]) == [(vset([2, 4]), vset([6]), 1)]
    star = [s for s in star_family(G, 1, 2) if not s & 1]
    triples = representative_map(G, star)
    assert all(s_M <= 2 for _, _, s_M in triples)
    all_leaves = vset([2, 4, 6])
    assert all(M | N == all_leaves and not M & N for M, N, _ in triples)
    with pytest.raises(PreconditionError):
        representative_map(G, [vset([0, 2])])


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6), st.integers(0, 10**6))
def test_representatives_of_intersecting_families(n, seed):
    """Intersecting root-free families give intersecting M's, and their N's satisfy the shadow bound."""
    rng = random.Random(seed)
    G = build_depth_two_claw(n)
    r = rng.randint(2, (n + 1) // 2)
    pool = [s for s in enumerate_r_sets(G, r) if not s & 1]
    rng.shuffle(pool)
    B: list[int] = []
    for s in pool:
        if all(s & t for t in B):
            B.append(s)
    triples = representative_map(G, B)
    Ms = [M for M, _, _ in triples]
    assert is_pairwise_intersecting(Ms)
    assert all(s_M <= 2 ** (r - 1) for _, _, s_M in triples)
    Ns = [N for _, N, _ in triples]
    if len(Ns) > 1 and all(N for N in Ns):
        a = Ns[0].bit_count()
        b = min((x & y).bit_count() for x, y in combinations(Ns, 2))
        assert b >= n - 2 * r + 1
        for bb in range(1, b + 1):
            assert len(Ns) <= len(shadow(Ns, a - bb))


def test_members_helper_round_trip():
    assert members(vset([0, 5, 9])) == [0, 5, 9]
