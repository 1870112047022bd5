import json
from fractions import Fraction

import pytest

from arcforge.surface import (
    IdealTriangulation,
    SurfaceInvariants,
    TriangulationError,
    euler_characteristic,
    standard_fixture,
    validate_triangulation,
)


@pytest.mark.parametrize(
    "g,b,p,v,chi",
    [(1, 0, 2, 0, -2), (1, 0, 1, 0, -1), (0, 1, 0, 3, Fraction(-1, 2)), (0, 1, 1, 2, -1), (2, 0, 0, 0, -2)],
)
def test_euler_characteristic(g, b, p, v, chi):
    chi_ = euler_characteristic(SurfaceInvariants(g, b, p, v))
    assert chi_ == chi
    assert isinstance(chi_, Fraction)


def test_invariants_reject_boundary_points_without_boundary():
    with pytest.raises(ValueError):
        SurfaceInvariants(1, 0, 0, 2)
    with pytest.raises(ValueError):
        SurfaceInvariants(-1, 0, 0, 0)


# Hand counts of the shipped tables: torus-1 has one corner class of size 6,
# torus-2 has the x class (9 corners) and the y class (3 ear apices).
@pytest.mark.parametrize(
    "name,V,E,F,chi,points",
    [("torus-1-marked", 1, 3, 2, -1, 1), ("torus-2-marked", 2, 6, 4, -2, 2)],
)
def test_fixture_counts(name, V, E, F, chi, points):
    tri = standard_fixture(name)
    r = validate_triangulation(tri)
    assert (r.V, r.E, r.F) == (V, E, F)
    assert r.invariants == SurfaceInvariants(1, 0, points, 0)
    assert r.chi == chi


def test_unknown_fixture():
    with pytest.raises(KeyError, match="klein-bottle"):
        standard_fixture("klein-bottle")


def test_dangling_side_rejected():
    bad = IdealTriangulation("bad", 2, ((0, 0, 1, 1), (0, 1, 1, 2)), ((0, 0, 0), (0, 0, 0)))
    with pytest.raises(TriangulationError, match="dangling"):
        validate_triangulation(bad)


def test_inconsistent_vertex_rejected():
    t = standard_fixture("torus-2-marked")
    verts = list(t.vertices)
    verts[0] = (0, 0, 1)
    bad = IdealTriangulation("bad", 4, t.gluings, tuple(verts))
    with pytest.raises(TriangulationError, match="inconsistent vertex"):
        validate_triangulation(bad)


def test_side_glued_twice_rejected():
    with pytest.raises(TriangulationError, match="glued twice"):
        IdealTriangulation("bad", 2, ((0, 0, 1, 1), (0, 0, 1, 2), (0, 2, 1, 0)), ((0, 0, 0), (0, 0, 0)))


def test_single_triangle_disk():
    # an ideal triangle: three boundary sides, three boundary marked points
    tri = IdealTriangulation("triangle", 1, (), ((0, 1, 2),), boundary=((0, 0), (0, 1), (0, 2)))
    r = validate_triangulation(tri)
    assert r.invariants == SurfaceInvariants(0, 1, 0, 3)
    assert r.chi == Fraction(-1, 2)


@pytest.mark.parametrize("name", ["torus-1-marked", "torus-2-marked"])
def test_json_roundtrip(name):
    tri = standard_fixture(name)
    text = json.dumps(tri.to_json())
    back = IdealTriangulation.from_json(text)
    assert back == tri
    assert set(json.loads(text)) >= {"triangles", "gluings", "vertices"}


def test_corner_walk_closes(t2):
    # the corners around x: 9 corners, around y: 3
    sizes = sorted(len(t2.corners_around(t, c)) for t, c in [(0, 0), (1, 1)])
    assert sizes == [3, 9]
