import random
from collections import defaultdict

import pytest

from arcforge.classify import (
    ClassificationError,
    canonical_code,
    classify,
    summary,
    symmetry_flags,
    system_code,
    system_to_ribbon_graph,
    verify_filling,
)
from arcforge.search import system_codes
from arcforge.slopes import slope_arc
from arcforge.systems import construct_hexagon_system


def test_crossing_pair_graph():
    rg = system_to_ribbon_graph([slope_arc(1, 1), slope_arc(-1, 1)])
    # one marked point, one crossing, each arc cut into two segments
    assert (rg.V, rg.E) == (2, 4)


def test_slope_system_fills_once_marked():
    rg = system_to_ribbon_graph([slope_arc(*s) for s in ((1, 1), (-1, 1), (1, 0), (0, 1))])
    assert verify_filling(rg)
    assert rg.euler() == 0


def test_single_arc_does_not_fill(pool6):
    rg = system_to_ribbon_graph([pool6[0]])
    assert not verify_filling(rg)
    with pytest.raises(ClassificationError, match="inconclusive"):
        classify([[pool6[0]]])


def test_two_disjoint_loops():
    rg = system_to_ribbon_graph([slope_arc(1, 0), slope_arc(0, 1)])
    assert (rg.V, rg.E, rg.F) == (1, 2, 1)
    assert verify_filling(rg)


def test_code_ignores_labels_and_orientation(search6):
    rnd = random.Random(5)
    for s in rnd.sample(search6.systems(), 10):
        rg = system_to_ribbon_graph(s)
        code = canonical_code(rg)
        perm = list(range(rg.E))
        rnd.shuffle(perm)
        assert canonical_code(rg.relabel(perm)) == code
        assert canonical_code(rg.mirror()) == code
        assert canonical_code(rg.relabel(perm), oriented=True) == canonical_code(rg, oriented=True)


def test_code_ignores_arc_order(search6):
    s = list(search6.systems()[17])
    code = system_code(s)
    random.Random(2).shuffle(s)
    assert system_code(s) == code


def test_point_labels_refine():
    rg = system_to_ribbon_graph([slope_arc(1, 0), slope_arc(0, 1)])
    assert canonical_code(rg, point_labels={0: 0}) != canonical_code(rg)


def test_summary_is_a_class_invariant(search6):
    # the summary is computed from intersection numbers alone, independently
    # of the ribbon graph, so every member of a class must share it; loop
    # counts are compared as a multiset since the marked points may be swapped
    codes = system_codes(search6)
    seen = defaultdict(set)
    for s, c in zip(search6.systems(), codes):
        j, loops, crossings = summary(s)
        seen[c].add((j, tuple(sorted(loops.values())), crossings))
    assert all(len(v) == 1 for v in seen.values())
    assert len(seen) == 23


def test_catalog_shape(catalog6):
    assert len(catalog6) == 23
    assert [c.code for c in catalog6] == sorted(c.code for c in catalog6)
    dist = defaultdict(int)
    for c in catalog6:
        dist[c.J] += 1
        assert c.size == 12
    assert dict(dist) == {0: 3, 1: 5, 2: 12, 3: 3}


def test_classify_is_idempotent(catalog6):
    again = classify([c.representative for c in catalog6])
    assert [c.code for c in again] == [c.code for c in catalog6]
    assert all(c.members == 1 for c in again)


def test_hexagon_class(t2, catalog6):
    h = construct_hexagon_system(t2)
    cls = classify([h.members])[0]
    assert cls.J == 3 and cls.loops == {"x": 3, "y": 3}
    assert cls.code in {c.code for c in catalog6 if c.J == 3}
    assert symmetry_flags(h.members) == (cls.amphichiral, cls.swap_symmetric)


def test_to_json(catalog6):
    rec = catalog6[0].to_json()
    assert set(rec) == {"code", "size", "J", "loops", "crossings", "found", "amphichiral", "swap_symmetric", "members"}
    assert len(rec["code"]) == 16 and len(rec["members"]) == 12
