"""Homotopy classes of arcs as tight itineraries over an ideal triangulation.

An arc is recorded by the corner it leaves from, the edges it crosses in
order, and the corner it arrives at.  Lifted to the universal cover every
tight itinerary is the unique geodesic between two ideal vertices, so two
itineraries describe the same class exactly when their canonical forms agree.

Inside a triangle we address boundary features by their counter-clockwise
position ``0..5``: corner ``c`` sits at ``2c`` and side ``s`` at ``2s+3 mod 6``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .surface import IdealTriangulation, TriangulationError, standard_fixture

__all__ = [
    "ArcClass",
    "ItineraryError",
    "tighten",
    "enumerate_arc_classes",
    "endpoints",
    "corner_pos",
    "side_pos",
    "arc_from_json",
]

Corner = tuple[int, int]
Visit = tuple[int, int, int]  # (triangle, entry position, exit position)


class ItineraryError(ValueError):
    """Raised when an edge sequence is not a path through the triangulation."""


def corner_pos(c: int) -> int:
    return 2 * c


def side_pos(s: int) -> int:
    return (2 * s + 3) % 6


def pos_side(p: int) -> int:
    return ((p - 3) // 2) % 3


@dataclass(frozen=True, eq=False)
class ArcClass:
    """A simple-or-not essential arc class in canonical tight form.

    Instances are only produced by :func:`tighten`, which guarantees the
    itinerary is tight and is the lexicographic minimum over its reversal.
    Equality and hashing go through :attr:`key`.
    """

    tri: IdealTriangulation = field(repr=False)
    start: Corner
    crossings: tuple[int, ...]
    end: Corner

    @property
    def surface(self) -> str:
        return self.tri.name

    @property
    def key(self) -> tuple:
        return (self.start, self.crossings, self.end)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ArcClass):
            return NotImplemented
        return self.surface == other.surface and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.surface, self.key))

    def __lt__(self, other: "ArcClass") -> bool:
        return self.sort_key < other.sort_key

    @property
    def sort_key(self) -> tuple:
        return (len(self.crossings), self.key)

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def is_edge(self) -> bool:
        return not self.crossings

    @cached_property
    def edge(self) -> int:
        """Edge id of an arc that runs along a triangulation edge."""
        if self.crossings:
            raise ValueError("arc is not a triangulation edge")
        t, c = self.start
        return self.tri.edge_of(t, 3 - c - self.end[1])

    @cached_property
    def visits(self) -> tuple[Visit, ...]:
        """Triangles passed through, with entry and exit positions (empty for edges)."""
        if not self.crossings:
            return ()
        return _walk(self.tri, self.start, self.crossings, self.end)

    @property
    def endpoint_ids(self) -> tuple[int, int]:
        v = self.tri.vertices
        return v[self.start[0]][self.start[1]], v[self.end[0]][self.end[1]]

    @property
    def is_loop(self) -> bool:
        a, b = self.endpoint_ids
        return a == b

    def reversed_key(self) -> tuple:
        return (self.end, self.crossings[::-1], self.start)

    def label(self) -> str:
        names = [self.tri.point_name(m) for m in self.endpoint_ids]
        body = ",".join(map(str, self.crossings)) if self.crossings else f"e{self.edge}"
        return f"{names[0]}[{body}]{names[1]}"

    def to_json(self) -> dict:
        return {
            "surface": self.surface,
            "start": list(self.start),
            "crossings": list(self.crossings),
            "end": list(self.end),
        }

    def __repr__(self) -> str:
        return f"ArcClass({self.surface}: {self.start} {list(self.crossings)} {self.end})"


def _walk(tri: IdealTriangulation, start: Corner, crossings: Sequence[int], end: Corner) -> tuple[Visit, ...]:
    t, c = start
    entry = corner_pos(c)
    out: list[Visit] = []
    for e in crossings:
        s = tri.side_with_edge(t, e)
        out.append((t, entry, side_pos(s)))
        u, r = tri.across(t, s)
        t, entry = u, side_pos(r)
    if t != end[0]:
        raise ItineraryError(f"itinerary ends in triangle {t}, not {end[0]}")
    out.append((t, entry, corner_pos(end[1])))
    return tuple(out)


def _edge_encodings(tri: IdealTriangulation, e: int) -> list[tuple]:
    keys = []
    for t, s in tri.sides_of_edge(e):
        a, b = (t, (s + 1) % 3), (t, (s + 2) % 3)
        keys.append((a, (), b))
        keys.append((b, (), a))
    return keys


def _canonical(tri: IdealTriangulation, start: Corner, crossings: tuple[int, ...], end: Corner) -> ArcClass:
    if not crossings:
        t, c = start
        key = min(_edge_encodings(tri, tri.edge_of(t, 3 - c - end[1])))
    else:
        key = min((start, crossings, end), (end, crossings[::-1], start))
    return ArcClass(tri, key[0], key[1], key[2])


def tighten(
    tri: IdealTriangulation,
    start: Corner,
    crossings: Iterable[int],
    end: Corner,
) -> ArcClass | None:
    """Reduce a raw itinerary to its tight canonical form.

    Crossing back through the edge just entered cancels both crossings; a
    crossing of an edge incident to the current end corner is absorbed by
    sliding that end around its marked point.  Returns ``None`` when the path
    collapses to a constant (the inessential case).
    """
    t, c0 = start
    if not (0 <= t < tri.triangles and 0 <= c0 < 3):
        raise ItineraryError(f"no corner {start}")
    stack: list[tuple[int, int, int, int]] = []
    for e in crossings:
        try:
            s = tri.side_with_edge(t, e)
        except TriangulationError as exc:
            raise ItineraryError(str(exc)) from None
        if stack and stack[-1][3] == s:
            t = stack.pop()[0]
        elif not stack and s != c0:
            t, c0 = tri.corner_across(t, c0, s)
        else:
            u, r = tri.across(t, s)
            stack.append((t, s, u, r))
            t = u
    te, ce = end
    if te != t:
        raise ItineraryError(f"end corner {end} is not in the final triangle {t}")
    while stack and stack[-1][3] != ce:
        t_prev, _, u, r = stack.pop()
        t, ce = tri.corner_across(u, ce, r)
    if not stack:
        if ce == c0:
            return None
        return _canonical(tri, (t, c0), (), (t, ce))
    edges = tuple(tri.edge_of(a, s) for a, s, _, _ in stack)
    return _canonical(tri, (stack[0][0], c0), edges, (t, ce))


def endpoints(a: ArcClass) -> dict:
    """Describe the endpoints: a loop at one marked point or an arc between two."""
    m0, m1 = a.endpoint_ids
    tri = a.tri
    if m0 == m1:
        return {"kind": "loop", "at": tri.point_name(m0)}
    first, second = sorted((m0, m1))
    return {"kind": "non-loop", "between": (tri.point_name(first), tri.point_name(second))}


def _raw_itineraries(tri: IdealTriangulation, max_crossings: int) -> Iterator[tuple[Corner, tuple[int, ...], Corner]]:
    """All tight itineraries with 1..max_crossings crossings, in both directions."""
    if max_crossings < 1:
        return
    for t0 in range(tri.triangles):
        for c0 in range(3):
            # frontier: (current triangle, entry side, crossings so far)
            u, r = tri.across(t0, c0)
            frontier = [(u, r, (tri.edge_of(t0, c0),))]
            while frontier:
                nxt = []
                for t, r, path in frontier:
                    yield (t0, c0), path, (t, r)
                    if len(path) >= max_crossings:
                        continue
                    for s in ((r + 1) % 3, (r + 2) % 3):
                        if (t, s) in tri._partner:  # type: ignore[attr-defined]
                            u, r2 = tri.across(t, s)
                            nxt.append((u, r2, path + (tri.edge_of(t, s),)))
                frontier = nxt


def enumerate_arc_classes(
    tri: IdealTriangulation,
    max_crossings: int,
    simple_only: bool = True,
) -> list[ArcClass]:
    """All essential arc classes crossing at most ``max_crossings`` edges.

    Breadth-first over left/right choices; every tight path from a corner is
    generated, duplicates (the two orientations) collapse on canonical form,
    and non-simple classes are dropped unless ``simple_only`` is false.
    """
    from .intersections import self_intersection

    if max_crossings < 0:
        raise ValueError("max_crossings must be non-negative")
    found: dict[tuple, ArcClass] = {}
    rejected: set[tuple] = set()
    for e in range(len(tri.gluings)):
        a = _canonical(tri, *_edge_encodings(tri, e)[0])
        found[a.key] = a
    for start, path, end in _raw_itineraries(tri, max_crossings):
        key = min((start, path, end), (end, path[::-1], start))
        if key in found or key in rejected:
            continue
        a = ArcClass(tri, *key)
        if simple_only and self_intersection(a) > 0:
            rejected.add(key)
        else:
            found[key] = a
    return sorted(found.values())


def arc_from_json(data: dict | str, tri: IdealTriangulation | None = None) -> ArcClass:
    if isinstance(data, str):
        data = json.loads(data)
    if tri is None:
        tri = standard_fixture(data["surface"])
    elif "surface" in data and data["surface"] != tri.name:
        raise ValueError(f"arc belongs to {data['surface']!r}, not {tri.name!r}")
    a = tighten(tri, tuple(data["start"]), data["crossings"], tuple(data["end"]))  # type: ignore[arg-type]
    if a is None:
        raise ValueError("arc JSON describes an inessential arc")
    return a
