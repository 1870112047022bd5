"""Marked surfaces: invariants, ideal triangulations and the shipped fixtures.

Conventions used throughout the package:

* Triangle corners are numbered 0, 1, 2 counter-clockwise; side ``s`` is the
  side opposite corner ``s``, so it runs from corner ``s+1`` to ``s+2``.
* A gluing ``(t, s, u, r)`` identifies side ``s`` of triangle ``t`` with
  side ``r`` of triangle ``u`` reversing direction: corner ``s+1`` of ``t``
  meets corner ``r+2`` of ``u`` and ``s+2`` meets ``r+1``.  This is the only
  orientation-compatible way to glue two counter-clockwise triangles.
* Edge ``e`` is the ``e``-th gluing (or boundary side) of the table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "SurfaceInvariants",
    "IdealTriangulation",
    "TriangulationError",
    "euler_characteristic",
    "validate_triangulation",
    "standard_fixture",
    "FIXTURE_NAMES",
]


class TriangulationError(ValueError):
    """Raised for malformed or inconsistent gluing tables."""


@dataclass(frozen=True)
class SurfaceInvariants:
    genus: int
    boundary_components: int
    interior_marked: int
    boundary_marked: int

    def __post_init__(self) -> None:
        for name in ("genus", "boundary_components", "interior_marked", "boundary_marked"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.boundary_components == 0 and self.boundary_marked:
            raise ValueError("boundary marked points need a boundary component")

    @property
    def chi(self) -> Fraction:
        return euler_characteristic(self)

    def as_dict(self) -> dict:
        return {
            "g": self.genus,
            "b": self.boundary_components,
            "p": self.interior_marked,
            "v": self.boundary_marked,
            "chi": str(self.chi),
        }


def euler_characteristic(inv: SurfaceInvariants) -> Fraction:
    """Return ``2 - 2g - b - p - v/2`` as an exact rational."""
    return (
        Fraction(2)
        - 2 * inv.genus
        - inv.boundary_components
        - inv.interior_marked
        - Fraction(inv.boundary_marked, 2)
    )


@dataclass(frozen=True)
class IdealTriangulation:
    """Gluing table of an ideal triangulation.

    ``vertices[t][c]`` is the marked point id at corner ``c`` of triangle ``t``.
    ``boundary`` lists unglued ``(t, s)`` sides.  ``coords`` optionally gives
    planar corner positions used only for drawing and for placing chords.
    """

    name: str
    triangles: int
    gluings: tuple[tuple[int, int, int, int], ...]
    vertices: tuple[tuple[int, int, int], ...]
    boundary: tuple[tuple[int, int], ...] = ()
    point_names: tuple[str, ...] = ()
    coords: tuple[tuple[tuple[int, int], ...], ...] = field(default=(), compare=False)

    # Lookup tables derived once; the dataclass stays immutable.
    def __post_init__(self) -> None:
        side_edge: dict[tuple[int, int], int] = {}
        partner: dict[tuple[int, int], tuple[int, int]] = {}
        for e, (t, s, u, r) in enumerate(self.gluings):
            for key in ((t, s), (u, r)):
                if key in side_edge:
                    raise TriangulationError(f"side {key} glued twice")
                side_edge[key] = e
            partner[(t, s)] = (u, r)
            partner[(u, r)] = (t, s)
        for j, key in enumerate(self.boundary):
            if key in side_edge:
                raise TriangulationError(f"side {key} both glued and boundary")
            side_edge[key] = len(self.gluings) + j
        object.__setattr__(self, "_side_edge", side_edge)
        object.__setattr__(self, "_partner", partner)

    @property
    def edge_count(self) -> int:
        return len(self.gluings) + len(self.boundary)

    @property
    def marked_points(self) -> tuple[int, ...]:
        return tuple(sorted({m for row in self.vertices for m in row}))

    def point_name(self, m: int) -> str:
        if m < len(self.point_names):
            return self.point_names[m]
        return str(m)

    def edge_of(self, t: int, s: int) -> int:
        try:
            return self._side_edge[(t, s)]  # type: ignore[attr-defined]
        except KeyError:
            raise TriangulationError(f"side {(t, s)} is dangling") from None

    def across(self, t: int, s: int) -> tuple[int, int]:
        """The ``(triangle, side)`` glued to side ``s`` of ``t``."""
        try:
            return self._partner[(t, s)]  # type: ignore[attr-defined]
        except KeyError:
            raise TriangulationError(f"side {(t, s)} is not glued") from None

    def sides_of_edge(self, e: int) -> tuple[tuple[int, int], ...]:
        if e < len(self.gluings):
            t, s, u, r = self.gluings[e]
            return ((t, s), (u, r))
        if e < self.edge_count:
            return (self.boundary[e - len(self.gluings)],)
        raise TriangulationError(f"no edge {e}")

    def side_with_edge(self, t: int, e: int) -> int:
        """Side index of triangle ``t`` carrying edge ``e``; errors if absent or repeated."""
        hits = [s for s in range(3) if self._side_edge.get((t, s)) == e]  # type: ignore[attr-defined]
        if len(hits) != 1:
            kind = "not a side" if not hits else "ambiguous side"
            raise TriangulationError(f"edge {e} is {kind} of triangle {t}")
        return hits[0]

    def corner_across(self, t: int, c: int, s: int) -> tuple[int, int]:
        """Where corner ``c`` of ``t`` lands after crossing side ``s`` (c must lie on s)."""
        u, r = self.across(t, s)
        if c == (s + 1) % 3:
            return u, (r + 2) % 3
        if c == (s + 2) % 3:
            return u, (r + 1) % 3
        raise TriangulationError(f"corner {c} is not on side {s}")

    def corners_around(self, t: int, c: int) -> list[tuple[int, int]]:
        """Counter-clockwise cycle of corners at the marked point of ``(t, c)``.

        Each step crosses side ``c+1`` into the neighbouring triangle.
        """
        cycle = [(t, c)]
        cur = (t, c)
        while True:
            tt, cc = cur
            nxt = self.corner_across(tt, cc, (cc + 1) % 3)
            if nxt == (t, c):
                return cycle
            cycle.append(nxt)
            cur = nxt
            if len(cycle) > 3 * self.triangles:
                raise TriangulationError("corner cycle does not close")

    def to_json(self) -> dict:
        out: dict = {
            "name": self.name,
            "triangles": self.triangles,
            "gluings": [list(g) for g in self.gluings],
            "vertices": [list(v) for v in self.vertices],
        }
        if self.boundary:
            out["boundary"] = [list(b) for b in self.boundary]
        if self.point_names:
            out["point_names"] = list(self.point_names)
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "IdealTriangulation":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(
                name=data.get("name", "custom"),
                triangles=int(data["triangles"]),
                gluings=tuple(tuple(int(x) for x in g) for g in data["gluings"]),  # type: ignore[misc]
                vertices=tuple(tuple(int(x) for x in v) for v in data["vertices"]),  # type: ignore[misc]
                boundary=tuple(tuple(int(x) for x in b) for b in data.get("boundary", ())),  # type: ignore[misc]
                point_names=tuple(data.get("point_names", ())),
            )
        except (KeyError, TypeError) as exc:
            raise TriangulationError(f"malformed triangulation JSON: {exc}") from None


@dataclass(frozen=True)
class TriangulationReport:
    V: int
    E: int
    F: int
    invariants: SurfaceInvariants

    @property
    def chi(self) -> Fraction:
        return self.invariants.chi


def _corner_classes(t: IdealTriangulation) -> dict[tuple[int, int], tuple[int, int]]:
    parent: dict[tuple[int, int], tuple[int, int]] = {
        (i, c): (i, c) for i in range(t.triangles) for c in range(3)
    }

    def find(x: tuple[int, int]) -> tuple[int, int]:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, s, b, r in t.gluings:
        for x, y in (((a, (s + 1) % 3), (b, (r + 2) % 3)), ((a, (s + 2) % 3), (b, (r + 1) % 3))):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    return {k: find(k) for k in parent}


def validate_triangulation(t: IdealTriangulation) -> TriangulationReport:
    """Check a gluing table and derive V, E, F and the surface invariants."""
    if t.triangles <= 0:
        raise TriangulationError("need at least one triangle")
    if len(t.vertices) != t.triangles or any(len(v) != 3 for v in t.vertices):
        raise TriangulationError("vertex map must give three corners per triangle")
    for g in t.gluings:
        a, s, b, r = g
        if not (0 <= a < t.triangles and 0 <= b < t.triangles and 0 <= s < 3 and 0 <= r < 3):
            raise TriangulationError(f"gluing {g} out of range")
    seen = {(a, s) for a, s, _, _ in t.gluings} | {(b, r) for _, _, b, r in t.gluings}
    seen |= set(t.boundary)
    for i in range(t.triangles):
        for s in range(3):
            if (i, s) not in seen:
                raise TriangulationError(f"side {(i, s)} is dangling")

    classes = _corner_classes(t)
    point_of_class: dict[tuple[int, int], int] = {}
    for (i, c), root in classes.items():
        m = t.vertices[i][c]
        if point_of_class.setdefault(root, m) != m:
            raise TriangulationError(f"inconsistent vertex identification at corner {(i, c)}")
    if len(set(point_of_class.values())) != len(point_of_class):
        raise TriangulationError("two distinct vertices carry the same marked point")

    V = len(point_of_class)
    E = t.edge_count
    F = t.triangles
    euler = V - E + F

    boundary_points: set[int] = set()
    b = 0
    if t.boundary:
        # Boundary edges form disjoint cycles through boundary vertices.
        adj: dict[int, list[int]] = {}
        for i, s in t.boundary:
            u, w = t.vertices[i][(s + 1) % 3], t.vertices[i][(s + 2) % 3]
            adj.setdefault(u, []).append(w)
            adj.setdefault(w, []).append(u)
        if any(len(n) != 2 for n in adj.values()):
            raise TriangulationError("boundary sides do not form circles")
        boundary_points = set(adj)
        todo = set(adj)
        while todo:
            b += 1
            stack = [todo.pop()]
            while stack:
                for n in adj[stack.pop()]:
                    if n in todo:
                        todo.remove(n)
                        stack.append(n)
    two_g = 2 - b - euler
    if two_g < 0 or two_g % 2:
        raise TriangulationError(f"Euler mismatch: V-E+F = {euler} with {b} boundary circles")
    inv = SurfaceInvariants(
        genus=two_g // 2,
        boundary_components=b,
        interior_marked=V - len(boundary_points),
        boundary_marked=len(boundary_points),
    )
    return TriangulationReport(V, E, F, inv)


# Square [0,1]^2 cut by the diagonal from (0,0) to (1,1).
# edge 0: vertical sides, edge 1: diagonal, edge 2: horizontal sides.
_TORUS_1 = dict(
    name="torus-1-marked",
    triangles=2,
    gluings=((0, 0, 1, 1), (0, 1, 1, 2), (0, 2, 1, 0)),
    vertices=((0, 0, 0), (0, 0, 0)),
    point_names=("x",),
    coords=(((0, 0), (1, 0), (1, 1)), ((0, 0), (1, 1), (0, 1))),
)

# Hexagon h0..h5 (h_even = x, h_odd = y) with opposite sides paired by
# translation.  Triangle 0 is the central triangle h0 h2 h4, triangles 1-3
# are the ears at h1, h3, h5.  Edges 0-2 are x-loops (hexagon diagonals),
# edges 3-5 are x-y arcs (the hexagon sides); cutting along 3-5 leaves the
# hexagon itself.
_HEX = ((2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2))
_TORUS_2 = dict(
    name="torus-2-marked",
    triangles=4,
    gluings=((0, 0, 2, 1), (0, 1, 3, 1), (0, 2, 1, 1), (1, 0, 3, 2), (1, 2, 2, 0), (2, 2, 3, 0)),
    vertices=((0, 0, 0), (0, 1, 0), (0, 1, 0), (0, 1, 0)),
    point_names=("x", "y"),
    coords=(
        (_HEX[0], _HEX[2], _HEX[4]),
        (_HEX[0], _HEX[1], _HEX[2]),
        (_HEX[2], _HEX[3], _HEX[4]),
        (_HEX[4], _HEX[5], _HEX[0]),
    ),
)

_FIXTURES = {"torus-1-marked": _TORUS_1, "torus-2-marked": _TORUS_2}
FIXTURE_NAMES: tuple[str, ...] = tuple(_FIXTURES)


def standard_fixture(name: str) -> IdealTriangulation:
    """Return one of the shipped triangulations by name."""
    try:
        spec = _FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown surface {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None
    return IdealTriangulation(**spec)  # type: ignore[arg-type]


def fixture_names() -> Iterable[str]:
    return iter(FIXTURE_NAMES)


def same_surface(names: Sequence[str]) -> str:
    distinct = set(names)
    if len(distinct) != 1:
        raise ValueError(f"arcs live on different surfaces: {sorted(distinct)}")
    return names[0]
