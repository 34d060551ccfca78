"""Exit criteria, one test per criterion.

Each test prints a single PASS/FAIL line (collected in the terminal
summary) listing any failing instances.  Wall time is reported, not
asserted.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from ekrtrees.constructions import remark_family, root_center_search
from ekrtrees.enumeration import (count_by_size, count_star_by_size, fib_count, iter_independent_sets,
                                  lemma12_decomposition, ratio_root_leaf, star_family)
from ekrtrees.formulas import kaclaw_root_count, mainstar_size
from ekrtrees.graph import (Graph, build_claw, build_depth_two_claw, build_disjoint_complete,
                            build_elongated_claw, build_ka_claw, build_path, build_superclaw, closed_delete,
                            delete_vertex, disjoint_union, leaves, members, mu, random_tree)
from ekrtrees.search import common_vertices, ekr_verdict, is_pairwise_intersecting, max_intersecting, shadow
from ekrtrees.suites import (_lstar_violations, _random_uniform_family, _starlm_violations,
                             elongated_claw_catalogue, katona_exhaustive)

pytestmark = pytest.mark.acceptance

SEED = 20240611


def _finish(acceptance_line, k, failures, start, extra=""):
    elapsed = time.perf_counter() - start
    shown = "; ".join(failures[:4]) + (" ..." if len(failures) > 4 else "")
    detail = f"{elapsed:6.1f}s  {extra}" + (f"  failing: {shown}" if failures else "")
    acceptance_line(k, not failures, detail)
    assert not failures, shown


def test_criterion_01_claws(acceptance_line):
    start = time.perf_counter()
    failures, count = [], 0
    for n in range(1, 9):
        for r in range(1, 5):
            if n < 2 * r:
                continue
            count += 1
            v = ekr_verdict(build_claw(n), r)
            if not v.is_r_ekr:
                failures.append(f"K1,{n} r={r} not EKR")
            if (v.is_strictly_r_ekr == "yes") != (n > 2 * r):
                failures.append(f"K1,{n} r={r} strict={v.is_strictly_r_ekr}")
            if n == 2 * r and v.nonstar_witness is None:
                failures.append(f"K1,{n} r={r} no nonstar witness")
    _finish(acceptance_line, 1, failures, start, f"{count} (n, r) pairs")


def test_criterion_02_depth_two_claws(acceptance_line):
    start = time.perf_counter()
    failures = []
    for n in (2, 3, 4):
        G = build_depth_two_claw(n)
        if mu(G) != n:
            failures.append(f"mu(depth2claw({n}))={mu(G)}")
        for r in range(1, n + 1):
            if n >= 2 * r - 1 and ekr_verdict(G, r).is_strictly_r_ekr != "yes":
                failures.append(f"n={n} r={r} not strict")
    _finish(acceptance_line, 2, failures, start)


def test_criterion_03_remark_family(acceptance_line):
    start = time.perf_counter()
    failures = []
    for n in (2, 3, 4):
        fam = remark_family(n)
        fam.validate()
        if len(fam) != 2 ** (n - 1) + n:
            failures.append(f"n={n} size {len(fam)}")
        if not is_pairwise_intersecting(fam):
            failures.append(f"n={n} family not intersecting")
        if common_vertices(fam):
            failures.append(f"n={n} family has a common vertex")
        target = mainstar_size(n, n) + 1
        size, witness = max_intersecting(build_depth_two_claw(n), n)
        if size < target or not is_pairwise_intersecting(witness):
            failures.append(f"n={n} max_intersecting={size} < {target}")
    _finish(acceptance_line, 3, failures, start)


def test_criterion_04_short_limb_claws(acceptance_line):
    start = time.perf_counter()
    failures, count = [], 0
    for limbs in elongated_claw_catalogue(11, need_short=True):
        G = build_elongated_claw(limbs)
        n = leaves(G).bit_count()
        for r in range(1, n // 2 + 1):
            count += 1
            if not ekr_verdict(G, r).is_r_ekr:
                failures.append(f"limbs {list(limbs)} r={r}")
    _finish(acceptance_line, 4, failures, start, f"{count} instances")


def test_criterion_05_disjoint_cliques(acceptance_line):
    start = time.perf_counter()
    failures = []
    for n in range(1, 5):
        for t in (2, 3):
            G = build_disjoint_complete(n, t)
            for r in range(1, n + 1):
                v = ekr_verdict(G, r)
                want = "no" if (r == n and t == 2) else "yes"
                if not v.is_r_ekr:
                    failures.append(f"n={n} t={t} r={r} not EKR")
                if v.is_strictly_r_ekr != want:
                    failures.append(f"n={n} t={t} r={r} strict={v.is_strictly_r_ekr}, expected {want}")
    _finish(acceptance_line, 5, failures, start)


def test_criterion_06_mainstar(acceptance_line):
    start = time.perf_counter()
    failures = []
    for n in range(1, 8):
        G = build_depth_two_claw(n)
        for r in range(1, n + 1):
            got = len(star_family(G, 2, r))
            if got != mainstar_size(n, r):
                failures.append(f"n={n} r={r}: {got} vs {mainstar_size(n, r)}")
    _finish(acceptance_line, 6, failures, start)


def test_criterion_07_counting_identities(acceptance_line):
    start = time.perf_counter()
    failures = []
    for a in range(1, 21):
        if fib_count(a) != sum(count_by_size(build_path(a), method="enum")):
            failures.append(f"F({a})")
    for n in (1, 2, 3):
        for k in (1, 2, 3):
            for a in (1, 2, 3):
                blocks = [build_ka_claw(k, a) for _ in range(n - 1)]
                G = disjoint_union(blocks) if blocks else Graph(0, ())
                roots = sum(1 << (i * (k * a + 1)) for i in range(n - 1))
                hist = [0] * n
                for s in iter_independent_sets(G):
                    hist[(s & roots).bit_count()] += 1
                for b in range(n):
                    if kaclaw_root_count(n, k, a, b) != sum(hist[b:]):
                        failures.append(f"kaclaw n={n} k={k} a={a} b={b}")
    rng = random.Random(SEED)
    identities = 0
    for t in range(200):
        G = random_tree(rng.randint(1, 16), rng)
        for v in range(G.num_vertices):
            Gm, mm = delete_vertex(G, v)
            Gd, md = closed_delete(G, v)
            for u in md:
                lhs, a, b = count_star_by_size(G, u), count_star_by_size(Gm, mm[u]), count_star_by_size(Gd, md[u])
                for r in range(1, G.num_vertices + 1):
                    identities += 1
                    right = (a[r] if r < len(a) else 0) + (b[r - 1] if r - 1 < len(b) else 0)
                    if lhs[r] != right:
                        failures.append(f"tree {t} v={v} u={u} r={r}")
    _finish(acceptance_line, 7, failures, start, f"{identities} deletion identities")


def test_criterion_08_injections(acceptance_line):
    start = time.perf_counter()
    failures = []
    catalogue = elongated_claw_catalogue(14)
    for limbs in catalogue:
        G = build_elongated_claw(limbs)
        if _starlm_violations(G):
            failures.append(f"starlm {list(limbs)}")
        if 1 in limbs and _lstar_violations(G):
            failures.append(f"lstar {list(limbs)}")
    _finish(acceptance_line, 8, failures, start, f"{len(catalogue)} claws")


def test_criterion_09_shadows(acceptance_line):
    start = time.perf_counter()
    failures = []
    total = 0
    for a in (1, 2, 3):
        families, bad = katona_exhaustive(7, a)
        total += families
        if bad:
            failures.append(f"exhaustive a={a}: {bad}")
    rng = random.Random(SEED)
    for i in range(1000):
        m, a, b, fam = _random_uniform_family(rng)
        if len(fam) > len(shadow(fam, a - b)):
            failures.append(f"random #{i} m={m} a={a} b={b}")
    _finish(acceptance_line, 9, failures, start, f"{total} exhaustive families + 1000 random")


def test_criterion_10_root_leaf_decomposition(acceptance_line):
    start = time.perf_counter()
    failures = []
    for n in (2, 3):
        for a in (2, 3):
            for k in range(1, 5):
                for name, ok in lemma12_decomposition(n, k, a).identities().items():
                    if not ok:
                        failures.append(f"n={n} k={k} a={a} {name}")
    lo = abs(ratio_root_leaf(2, 2, 2) - Fraction(3, 2))
    hi = abs(ratio_root_leaf(2, 8, 2) - Fraction(3, 2))
    if not hi < lo:
        failures.append(f"no convergence: {hi} vs {lo}")
    _finish(acceptance_line, 10, failures, start, f"gap k=2 {float(lo):.4f}, k=8 {float(hi):.4f}")


def test_criterion_11_root_centred_stars(acceptance_line):
    start = time.perf_counter()
    failures = []
    res = root_center_search(2, 2, 12, 8)
    if res.found is None or res.found[1] < 5:
        failures.append(f"found {res.found}")
    if root_center_search(2, 2, 12, 4).found is not None:
        failures.append("root wins at r <= 4")
    cells: dict = {}
    for k, r, v, size in res.table:
        cells.setdefault((k, r), []).append(size)
    for (k, r), sizes in cells.items():
        if r <= 4:
            leaf_ids = members(leaves(build_superclaw(2, k, 2)))
            if max(sizes[v] for v in leaf_ids) < max(sizes):
                failures.append(f"non-leaf beats leaves at k={k} r={r}")
    _finish(acceptance_line, 11, failures, start, f"first root-winning (k, r) = {res.found}")
