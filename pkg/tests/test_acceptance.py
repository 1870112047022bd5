"""Acceptance criteria, one test each.

Every test prints a ``criterion N: PASS|FAIL`` line (also collected in the
terminal summary).  All tolerances are exact: the quantities are integers
or canonical codes.  The searches run at crossing bounds 10, 11 and 12,
independently of the library's default bound.
"""

from collections import Counter
from itertools import combinations
from math import gcd

import pytest

from arcforge.classify import classify
from arcforge.cutting import complement_is_connected, cut_along
from arcforge.formulas import max_cardinality, slope_intersection
from arcforge.intersections import geometric_intersection
from arcforge.search import catalog, search
from arcforge.slopes import slope_arc
from arcforge.surface import SurfaceInvariants, standard_fixture
from arcforge.systems import (
    ArcSystem,
    construct_hexagon_system,
    is_k_system,
    is_saturated,
    largest_clique,
    maximum_cliques,
    non_intersecting_subset,
)
from arcforge.verify import run_verification

BOUNDS = (10, 11, 12)
EXPECTED_CLASSES = 23
EXPECTED_J = {3: 3, 2: 12, 1: 5, 0: 3}
VERIFY_BOUND = 6


@pytest.fixture
def record(request):
    def _record(n, name, ok, detail):
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {name}: {detail}"
        print(line)
        request.config._acceptance_lines[n] = line
        assert ok, line

    return _record


@pytest.fixture(scope="module")
def t2():
    return standard_fixture("torus-2-marked")


@pytest.fixture(scope="module")
def searches(t2):
    return {b: search(t2, b, 1) for b in BOUNDS}


@pytest.fixture(scope="module")
def catalogs(searches):
    codes: dict = {}
    return {b: catalog(searches[b], cache=codes) for b in BOUNDS}


def test_1_cardinality(searches, record):
    expected = max_cardinality(-2, 0)
    parts, ok = [], True
    for b, r in searches.items():
        none13 = maximum_cliques(r.graph, expected + 1) == []
        ok &= r.clique_number == expected and none13 and len(r.cliques) > 0
        parts.append(f"bound {b}: omega={r.clique_number}, {len(r.cliques)} twelve-cliques, no 13-clique={none13}")
    record(1, "cardinality", ok, "; ".join(parts))


def test_2_classification(catalogs, record):
    counts = {b: len(c) for b, c in catalogs.items()}
    codes = {b: [c.code for c in cs] for b, cs in catalogs.items()}
    same = all(codes[b] == codes[BOUNDS[0]] for b in BOUNDS)
    ok = same and all(n == EXPECTED_CLASSES for n in counts.values())
    record(2, "classification", ok, f"classes per bound {counts}, identical code sets {same}")


def test_3_j_distribution(catalogs, record):
    parts, ok = [], True
    for b, cs in catalogs.items():
        dist = dict(Counter(c.J for c in cs))
        ok &= dist == EXPECTED_J
        parts.append(f"bound {b}: {dict(sorted(dist.items(), reverse=True))}")
    record(3, "J distribution", ok, "; ".join(parts))


def test_4_once_marked(record):
    t1 = standard_fixture("torus-1-marked")
    r = search(t1, 6, 1)
    edges = [a for a in r.pool if a.is_edge]
    # the edges are the slopes 1/0, 0/1 and 1/1; -1/1 is the only other arc
    # meeting the diagonal edge once and the other two not at all
    def chart_side(e):
        t, side = t1.sides_of_edge(e.edge)[0]
        return {t1.coords[t][(side + 1) % 3], t1.coords[t][(side + 2) % 3]}

    diagonal = next(e for e in edges if chart_side(e) == {(0, 0), (1, 1)})
    wanted = tuple(int(e == diagonal) for e in edges)
    extra = [a for a in r.pool if tuple(geometric_intersection(a, e) for e in edges) == wanted]
    B = tuple(sorted(edges + extra))
    maximal = len(B) == 4 and is_k_system(B, 1)[0] and is_saturated(ArcSystem(B, 1), r.pool)
    oracle = {slope_arc(p, q, t1) for p, q in ((1, 1), (-1, 1), (1, 0), (0, 1))}
    ok = r.clique_number == max_cardinality(-1, 0) and maximal and set(B) == oracle
    record(4, "once-marked torus", ok, f"omega={r.clique_number} at bound 6; slope system of {len(B)} arcs maximal={maximal}, matches slopes={set(B) == oracle}")


def test_5_slope_formula(record):
    slopes = sorted({(p, q) for p in range(-4, 5) for q in range(0, 5) if gcd(p, q) == 1 and (q > 0 or p == 1)})
    arcs = {s: slope_arc(*s) for s in slopes}
    pairs = list(combinations(slopes, 2))
    bad = [(s, t) for s, t in pairs if geometric_intersection(arcs[s], arcs[t]) != slope_intersection(*s, *t)]
    record(5, "slope formula", not bad, f"{len(pairs)} slope pairs, {len(bad)} mismatches")


def test_6_non_loop_zero_system(t2, record):
    parts, ok = [], True
    for b in BOUNDS:
        r = search(t2, b, 0)
        non_loops = [i for i, a in enumerate(r.pool) if not a.is_loop]
        size = largest_clique(r.graph, non_loops)
        ok &= size == 4
        parts.append(f"bound {b}: {size}")
    record(6, "disjoint x-y arcs", ok, "largest 0-system of non-loops " + ", ".join(parts))


def test_7_triangulations(t2, record):
    triangle = SurfaceInvariants(0, 1, 0, 3)
    r = search(t2, BOUNDS[0], 0, floor=1)
    sizes = Counter(len(c) for c in r.cliques)
    bad = sum(1 for c in r.cliques if set(cut_along(t2, [r.pool[i] for i in c]).components) != {triangle})
    ok = set(sizes) == {6} and bad == 0
    record(7, "triangulations", ok, f"bound {BOUNDS[0]}: maximal 0-system sizes {dict(sizes)}, {bad} not cut into triangles")


def test_8_cut_along_j(searches, record):
    parts, ok = [], True
    for b, r in searches.items():
        seen: dict = {}
        bad = 0
        for s in r.systems():
            J = non_intersecting_subset(s)
            if J not in seen:
                res = cut_along(r.tri, J)
                seen[J] = res.chi == -2 and complement_is_connected(r.tri, J) and len(J) <= 3
            bad += not seen[J]
        ok &= bad == 0
        parts.append(f"bound {b}: {len(r.cliques)} systems, {len(seen)} distinct J, {bad} violations")
    record(8, "cut along J", ok, "; ".join(parts))


def test_9_saturation(searches, catalogs, record):
    parts, ok = [], True
    for b in BOUNDS:
        pool = searches[b].pool
        sat = sum(is_saturated(ArcSystem(c.representative, 1), pool) for c in catalogs[b])
        ok &= sat == len(catalogs[b]) == EXPECTED_CLASSES
        parts.append(f"bound {b}: {sat}/{len(catalogs[b])} against {len(pool)} arcs")
    record(9, "saturation", ok, "; ".join(parts))


def test_10_hexagon(t2, catalogs, record):
    h = construct_hexagon_system(t2)
    valid = is_k_system(h.members, 1)[0]
    cls = classify([h.members], symmetries=False)[0]
    j3 = {c.code for c in catalogs[BOUNDS[-1]] if c.J == 3}
    ok = valid and len(h) == 12 and cls.code in j3 and len(j3) == 3
    record(10, "hexagon construction", ok, f"{len(h)} arcs, valid={valid}, |J|={cls.J}, in |J|=3 classes={cls.code in j3}")


def test_11_determinism(record):
    first = run_verification(VERIFY_BOUND, threads=1).text()
    second = run_verification(VERIFY_BOUND, threads=1).text()
    parallel = run_verification(VERIFY_BOUND, threads=2).text()
    ok = first == second == parallel and first.rstrip().endswith("PASS (11/11)")
    record(11, "determinism", ok, f"verify --bound {VERIFY_BOUND}: repeat identical {first == second}, 1 vs 2 workers identical {first == parallel}")
