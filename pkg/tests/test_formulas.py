from fractions import Fraction as F
from itertools import product

import pytest

from arcforge.formulas import (
    FamilyPair,
    FormulaDomainError,
    family_intersection,
    max_cardinality,
    polygon_construction_counts,
    slope_intersection,
    vv_intersection,
)


@pytest.mark.parametrize("chi,v,expected", [(-2, 0, 12), (-1, 0, 4), (-2, 2, 11)])
def test_max_cardinality(chi, v, expected):
    assert max_cardinality(chi, v) == expected


@pytest.mark.parametrize("chi", [0, 1, F(1, 2)])
def test_max_cardinality_needs_negative_chi(chi):
    with pytest.raises(FormulaDomainError):
        max_cardinality(chi, 0)


@pytest.mark.parametrize("a,b,c,d,expected", [(1, 0, 0, 1, 0), (1, 1, -1, 1, 1), (2, 1, -1, 1, 2)])
def test_slope_intersection(a, b, c, d, expected):
    assert slope_intersection(a, b, c, d) == expected
    assert slope_intersection(c, d, a, b) == expected


def test_slope_equal_is_zero_and_non_coprime_raises():
    assert slope_intersection(1, 2, -1, -2) == 0
    with pytest.raises(FormulaDomainError):
        slope_intersection(2, 4, 1, 1)


@pytest.mark.parametrize(
    "family,first,second,expected",
    [
        ("VV", (1, 0), (0, 1), 0),
        ("WW", F(1, 2), F(3, 2), 0),
        ("YY", 0, F(4, 3), 1),
        ("CD", 0, F(1, 2), 0),
        ("WhW", F(1, 2), F(7, 2), 0),
        ("XW", 0, F(5, 2), 4),
        ("VW", (3, 0), F(1, 2), 2),
        ("CC", 0, F(3, 2), 1),
    ],
)
def test_family_examples(family, first, second, expected):
    assert family_intersection(FamilyPair(family, first, second)) == expected


def test_vv_difference_form():
    # |j|+|k|-2 when j*k < 0, else |j|+|k|-1
    assert vv_intersection(1, -1) == 0
    assert vv_intersection(2, 3) == 4
    assert vv_intersection(-2, 3) == 3
    for dj, dk in product(range(-4, 5), repeat=2):
        if (dj, dk) != (0, 0):
            assert vv_intersection(dj, dk) == vv_intersection(-dj, -dk) >= 0


def test_symmetric_families():
    halves = [F(n, 2) for n in range(-6, 7)]
    thirds = [F(n, 3) for n in range(-6, 7)]
    for fam, pts in (("WW", [h for h in halves if h.denominator == 2]), ("YY", thirds), ("CC", halves)):
        for a, b in product(pts, repeat=2):
            if a != b:
                x = family_intersection(FamilyPair(fam, a, b))
                assert x == family_intersection(FamilyPair(fam, b, a)) >= 0


@pytest.mark.parametrize(
    "family,first,second",
    [("WW", 0, F(1, 2)), ("YY", F(1, 2), 0), ("CD", F(1, 3), 0), ("VV", (F(1, 2), 0), (0, 1)), ("VW", 1, F(1, 2)), ("ZZ", 0, 1)],
)
def test_out_of_lattice(family, first, second):
    with pytest.raises(FormulaDomainError):
        FamilyPair(family, first, second)


def test_same_member_rejected():
    with pytest.raises(FormulaDomainError):
        family_intersection(FamilyPair("YY", F(1, 3), F(1, 3)))


@pytest.mark.parametrize(
    "chi,v,expected", [(-2, 0, (3, 6, 9, 12)), (-1, 0, (2, 4, 2, 4)), (-2, 2, (2, 6, 9, 11))]
)
def test_polygon_counts(chi, v, expected):
    assert polygon_construction_counts(chi, v) == expected


def test_polygon_total_is_max_cardinality():
    feasible = 0
    for twice in range(1, 13):
        chi = F(-twice, 2)
        for v in range(0, 30):
            try:
                counts = polygon_construction_counts(chi, v)
            except FormulaDomainError:
                continue
            feasible += 1
            assert counts[3] == max_cardinality(chi, v)
    assert feasible > 20


@pytest.mark.parametrize("chi,v", [(-1, 4), (0, 0), (-2, 1)])
def test_polygon_infeasible(chi, v):
    with pytest.raises(FormulaDomainError):
        polygon_construction_counts(chi, v)
