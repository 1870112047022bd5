import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arcforge.intersections import geometric_intersection, intersection_matrix, self_intersection
from arcforge.slopes import slope_arc

SLOPES = sorted({(p, q) for p in range(-4, 5) for q in range(0, 5) if gcd(p, q) == 1 and (q > 0 or p == 1)})
slope = st.sampled_from(SLOPES)


@pytest.mark.parametrize("s,t,expected", [((1, 0), (0, 1), 0), ((1, 1), (-1, 1), 1), ((2, 1), (-1, 1), 2)])
def test_examples(s, t, expected):
    assert geometric_intersection(slope_arc(*s), slope_arc(*t)) == expected


@settings(max_examples=150, deadline=None)
@given(slope, slope)
def test_slope_oracle(s, t):
    # independent oracle: |ad - bc| - 1 from the plane lattice picture
    a, b = s
    c, d = t
    expected = 0 if s == t else abs(a * d - b * c) - 1
    assert geometric_intersection(slope_arc(*s), slope_arc(*t)) == expected


def test_self_pair_is_zero(pool6):
    for a in pool6[::5]:
        assert geometric_intersection(a, a) == 0


def test_symmetry(pool6):
    rnd = random.Random(7)
    for _ in range(400):
        a, b = rnd.sample(pool6, 2)
        assert geometric_intersection(a, b) == geometric_intersection(b, a)


def test_limit_caps_count():
    a, b = slope_arc(3, 1), slope_arc(-2, 1)
    full = geometric_intersection(a, b)
    assert full == 4
    assert geometric_intersection(a, b, 2) >= 2


def test_different_surfaces(t2, pool6):
    with pytest.raises(ValueError):
        geometric_intersection(slope_arc(1, 0), pool6[0])


def test_edges_are_simple(pool6):
    assert all(self_intersection(a) == 0 for a in pool6 if a.is_edge)


def test_matrix():
    arcs = [slope_arc(*s) for s in ((1, 0), (0, 1), (1, 1), (-1, 1))]
    m = intersection_matrix(arcs)
    assert m == [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
