"""Simultaneous minimal-position realisation of an arc system.

Strands crossing an edge are ordered by where their geodesic lifts meet it.
We develop each itinerary into the Farey-type tessellation of the upper half
plane obtained by gluing ideal triangles with zero shear: the reference lift
of the edge is the geodesic from 0 to infinity and a strand with ideal
endpoints ``a < 0 < b`` meets it at height ``sqrt(-ab)``.  All arithmetic is
on integers and fractions.

Within a triangle, strands are straight chords between their positions on
the sides (or a corner), so crossings inside a triangle happen exactly where
chord endpoints interleave.  Geodesics already sit in minimal position, so
the chord picture has the minimal number of crossings for every pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .arcs import ArcClass, pos_side
from .surface import IdealTriangulation

__all__ = ["CrossingLayout", "LayoutError", "crossing_layout", "strand_orders"]

Point = tuple[int, int]
Vec = tuple[Fraction, Fraction]

_STANDARD = ((0, 0), (1, 0), (0, 1))


class LayoutError(ValueError):
    pass


def _det(u: Point, v: Point) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _norm(p: Point) -> Point:
    g = gcd(p[0], p[1]) or 1
    if p[1] < 0 or (p[1] == 0 and p[0] < 0):
        g = -g
    return p[0] // g, p[1] // g


def _harmonic(r: Point, p: Point, q: Point) -> Point:
    """Fourth point of the zero-shear quadrilateral: reflection of ``r`` across the geodesic pq."""
    a, b = _det(r, q), _det(p, r)
    return _norm((a * p[0] - b * q[0], a * p[1] - b * q[1]))


def _step(pts: Sequence[Point], s: int, r: int) -> list[Point]:
    """Placement of the triangle glued along side ``s`` (entered through its side ``r``)."""
    new: list[Point] = [(0, 0)] * 3
    new[(r + 2) % 3] = pts[(s + 1) % 3]
    new[(r + 1) % 3] = pts[(s + 2) % 3]
    new[r] = _harmonic(pts[s], pts[(s + 1) % 3], pts[(s + 2) % 3])
    return new


def _endpoint_values(visits: Sequence[tuple[int, int, int]], j: int, placed: int, pts: list[Point]) -> tuple[Point, Point]:
    """Ideal endpoints of the lift in which visit ``placed`` has corners ``pts``."""
    cur = pts
    for m in range(placed, 0, -1):
        cur = _step(cur, pos_side(visits[m][1]), pos_side(visits[m - 1][2]))
    start = cur[visits[0][1] // 2]
    cur = pts
    for m in range(placed, len(visits) - 1):
        cur = _step(cur, pos_side(visits[m][2]), pos_side(visits[m + 1][1]))
    end = cur[visits[-1][2] // 2]
    return start, end


def _strand_key(tri: IdealTriangulation, a: ArcClass, j: int) -> tuple[Fraction, Fraction]:
    """Sort key of the strand of ``a`` through its ``j``-th crossing, along the edge.

    Increasing keys run from corner ``s+1`` to corner ``s+2`` of the edge's
    first listed side ``(t, s)``.  Keys depend on the arc alone and are
    memoised on it.
    """
    memo = a.__dict__.setdefault("_strand_keys", {})
    if j not in memo:
        memo[j] = _compute_strand_key(tri, a, j)
    return memo[j]


def _compute_strand_key(tri: IdealTriangulation, a: ArcClass, j: int) -> tuple[Fraction, Fraction]:
    visits = a.visits
    e = a.crossings[j]
    t1, s1 = tri.sides_of_edge(e)[0]
    ref = [(0, 0)] * 3
    ref[s1], ref[(s1 + 1) % 3], ref[(s1 + 2) % 3] = (-1, 1), (0, 1), (1, 0)
    if (visits[j][0], pos_side(visits[j][2])) == (t1, s1):
        start, end = _endpoint_values(visits, j, j, ref)
        neg, pos = start, end
    else:
        start, end = _endpoint_values(visits, j, j + 1, ref)
        neg, pos = end, start
    x, y = Fraction(neg[0], neg[1]), Fraction(pos[0], pos[1])
    if not (x < 0 < y):
        raise LayoutError("developed lift does not cross the reference edge")
    return (-x * y, x)


def strand_orders(tri: IdealTriangulation, arcs: Sequence[ArcClass]) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """For each side ``(t, s)``: strands ``(arc index, crossing index)`` from corner s+1 to s+2."""
    by_edge: dict[int, list[tuple[tuple[Fraction, Fraction], int, int]]] = {}
    for ai, a in enumerate(arcs):
        for j, e in enumerate(a.crossings):
            by_edge.setdefault(e, []).append((_strand_key(tri, a, j), ai, j))
    orders: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e in range(tri.edge_count):
        entries = sorted(by_edge.get(e, []))
        seq = [(ai, j) for _, ai, j in entries]
        sides = tri.sides_of_edge(e)
        orders[sides[0]] = seq
        if len(sides) > 1:
            orders[sides[1]] = seq[::-1]
    return orders


@dataclass(frozen=True)
class CrossingLayout:
    """Combinatorial picture of a system drawn in simultaneous minimal position.

    ``sequences[a]`` lists the crossing ids met along arc ``a`` from its
    start; ``rotation[x]`` gives the four strands ``(arc, +1 | -1)`` around
    crossing ``x`` counter-clockwise (+1 leaves along the arc's direction);
    ``marked[m]`` is the counter-clockwise order of arc ends ``(arc, 0 | 1)``
    at marked point ``m``.  ``points`` and ``segments`` place crossings and
    the per-triangle chords ``(arc, triangle, from, to)`` in the fixture's
    coordinates.
    """

    arcs: tuple[ArcClass, ...]
    sequences: tuple[tuple[int, ...], ...]
    pairs: tuple[tuple[int, int], ...]
    rotation: tuple[tuple[tuple[int, int], ...], ...]
    marked: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    points: tuple[tuple[int, tuple[Fraction, Fraction]], ...] = ()
    segments: tuple[tuple[int, int, tuple[Fraction, Fraction], tuple[Fraction, Fraction]], ...] = ()

    @property
    def crossing_count(self) -> int:
        return len(self.pairs)

    def count(self, a: int, b: int) -> int:
        return sum(1 for p in self.pairs if p == (min(a, b), max(a, b)))

    def pair_counts(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for p in self.pairs:
            out[p] = out.get(p, 0) + 1
        return out

    def along(self, a: int) -> list[tuple[int, int]]:
        """``(partner arc, crossing id)`` in order along arc ``a``."""
        out = []
        for x in self.sequences[a]:
            p, q = self.pairs[x]
            out.append((q if p == a else p, x))
        return out


def _cross(u: Vec, v: Vec) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _sub(p: Vec, q: Vec) -> Vec:
    return (p[0] - q[0], p[1] - q[1])


def crossing_layout(arcs: Sequence[ArcClass], perturb: int = 0, check: bool = True) -> CrossingLayout:
    """Realise ``arcs`` simultaneously and record crossings and rotations.

    ``check=False`` skips the simplicity test for arcs already known simple.
    """
    arcs = tuple(arcs)
    if not arcs:
        return CrossingLayout((), (), (), (), ())
    tri = arcs[0].tri
    if any(a.tri.name != tri.name for a in arcs):
        raise LayoutError("arcs from different surfaces")
    if len(set(arcs)) != len(arcs):
        raise LayoutError("repeated arc class")
    from .intersections import self_intersection

    if check:
        for a in arcs:
            if self_intersection(a):
                raise LayoutError(f"non-simple arc {a!r}")

    orders = strand_orders(tri, arcs)
    coords = tri.coords or tuple(_STANDARD for _ in range(tri.triangles))
    edge_arc = {a.edge: i for i, a in enumerate(arcs) if a.is_edge}
    # unperturbed points are kept integral by scaling the plane by ``scale``
    scale = 1
    if not perturb:
        for seq in orders.values():
            scale = lcm(scale, len(seq) + 1)

    def corner_xy(t: int, c: int) -> Vec:
        x, y = coords[t][c]
        if perturb:
            return Fraction(x), Fraction(y)
        return x * scale, y * scale

    def side_xy(t: int, s: int, k: int, n: int) -> Vec:
        p, q = corner_xy(t, (s + 1) % 3), corner_xy(t, (s + 2) % 3)
        if not perturb:
            step = (k + 1) * (scale // (n + 1))
            return (p[0] + step * (q[0] - p[0]) // scale, p[1] + step * (q[1] - p[1]) // scale)
        u = Fraction(k + 1, n + 1)
        u += Fraction((k + 1) * (n - k), (n + 1) ** 2 * (7 + perturb * 31 + 3 * s + 5 * t))
        return (p[0] + u * (q[0] - p[0]), p[1] + u * (q[1] - p[1]))

    index: dict[tuple[int, int, int], int] = {}
    for (t, s), seq in orders.items():
        for k, (ai, j) in enumerate(seq):
            index[(t, s, ai * 0x10000 + j)] = k

    def feature_xy(t: int, pos: int, ai: int, j: int) -> Vec:
        if pos % 2 == 0:
            return corner_xy(t, pos // 2)
        s = pos_side(pos)
        return side_xy(t, s, index[(t, s, ai * 0x10000 + j)], len(orders[(t, s)]))

    # chords per triangle: (arc, visit, p, q, in_pos, out_pos)
    chords: dict[int, list[tuple[int, int, Vec, Vec, int, int]]] = {t: [] for t in range(tri.triangles)}
    for ai, a in enumerate(arcs):
        for m, (t, pin, pout) in enumerate(a.visits):
            p = feature_xy(t, pin, ai, m - 1)
            q = feature_xy(t, pout, ai, m)
            chords[t].append((ai, m, p, q, pin, pout))

    # crossing events keyed by (arc, visit) -> [(param, crossing id)]
    events: dict[tuple[int, int], list[tuple[Fraction, int]]] = {}
    pairs: list[tuple[int, int]] = []
    rotation: list[tuple[tuple[int, int], ...]] = []
    points: list[tuple[int, tuple[Fraction, Fraction]]] = []

    def orient(a1: int, d1: Vec, a2: int, d2: Vec) -> tuple[tuple[int, int], ...]:
        if _cross(d1, d2) > 0:
            return ((a1, 1), (a2, 1), (a1, -1), (a2, -1))
        return ((a1, 1), (a2, -1), (a1, -1), (a2, 1))

    for t in range(tri.triangles):
        cs = chords[t]
        for x in range(len(cs)):
            a1, m1, p1, q1, i1, o1 = cs[x]
            d1 = _sub(q1, p1)
            for y in range(x + 1, len(cs)):
                a2, m2, p2, q2, i2, o2 = cs[y]
                if {i1, o1} & {i2, o2} & {0, 2, 4}:
                    continue  # chords from a common corner
                d2 = _sub(q2, p2)
                den = _cross(d1, d2)
                if den == 0:
                    continue
                w = _sub(p2, p1)
                n1, n2 = _cross(w, d2), _cross(w, d1)
                if den < 0:
                    den, n1, n2 = -den, -n1, -n2
                if not (0 < n1 < den and 0 < n2 < den):
                    continue
                s1, s2 = Fraction(n1) / den, Fraction(n2) / den
                cid = len(pairs)
                pairs.append((min(a1, a2), max(a1, a2)))
                rotation.append(orient(a1, d1, a2, d2))
                points.append((t, ((p1[0] + s1 * d1[0]) / scale, (p1[1] + s1 * d1[1]) / scale)))
                events.setdefault((a1, m1), []).append((s1, cid))
                events.setdefault((a2, m2), []).append((s2, cid))

    # strands crossing a side that is itself one of the arcs
    side_events: dict[tuple[int, int], int] = {}
    for e, ei in edge_arc.items():
        t, s = tri.sides_of_edge(e)[0]
        ea = arcs[ei]
        # direction of the edge arc in triangle t's chart
        if ea.start[0] == t and 3 - ea.start[1] - ea.end[1] == s:
            c_from = ea.start[1]
        else:
            c_from = tri.corner_across(ea.start[0], ea.start[1], 3 - ea.start[1] - ea.end[1])[1]
        c_to = 3 - s - c_from
        de = _sub(corner_xy(t, c_to), corner_xy(t, c_from))
        for k, (ai, j) in enumerate(orders[(t, s)]):
            a = arcs[ai]
            # the chord of this strand inside triangle t, next to side s
            m = j if (a.visits[j][0], pos_side(a.visits[j][2])) == (t, s) else j + 1
            vt, vin, vout = a.visits[m]
            p = feature_xy(vt, vin, ai, m - 1)
            q = feature_xy(vt, vout, ai, m)
            rot = orient(ai, _sub(q, p), ei, de)
            pt_xy = q if m == j else p
            cid = len(pairs)
            pairs.append((min(ai, ei), max(ai, ei)))
            rotation.append(rot)
            points.append((t, (Fraction(pt_xy[0]) / scale, Fraction(pt_xy[1]) / scale)))
            side_events[(ai, j)] = cid
            pos_on_edge = Fraction(k + 1, len(orders[(t, s)]) + 1)
            events.setdefault((ei, -1), []).append((pos_on_edge if c_from == (s + 1) % 3 else 1 - pos_on_edge, cid))

    sequences: list[tuple[int, ...]] = []
    for ai, a in enumerate(arcs):
        seq: list[int] = []
        if a.is_edge:
            seq = [cid for _, cid in sorted(events.get((ai, -1), []))]
        else:
            for m in range(len(a.visits)):
                evs = sorted(events.get((ai, m), []))
                if len({p for p, _ in evs}) != len(evs):
                    if perturb > 5:
                        raise LayoutError("could not separate concurrent crossings")
                    return crossing_layout(arcs, perturb + 1, check=False)
                seq.extend(cid for _, cid in evs)
                if (ai, m) in side_events:
                    seq.append(side_events[(ai, m)])
        sequences.append(tuple(seq))

    marked: list[tuple[int, tuple[tuple[int, int], ...]]] = []
    ends_at: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for ai, a in enumerate(arcs):
        if a.is_edge:
            continue
        t0, pin, pout = a.visits[0]
        ends_at.setdefault((t0, pin // 2), []).append((index[(t0, pos_side(pout), ai * 0x10000)], ai, 0))
        tn, pin, pout = a.visits[-1]
        n = len(a.visits) - 1
        ends_at.setdefault((tn, pout // 2), []).append((index[(tn, pos_side(pin), ai * 0x10000 + n - 1)], ai, 1))
    edge_end: dict[tuple[int, int], tuple[int, int]] = {}
    for e, ei in edge_arc.items():
        ea = arcs[ei]
        for t, s in tri.sides_of_edge(e):
            # the side (t, s) is listed first in the sector of corner s+1 of t
            c = (s + 1) % 3
            if (t, c) == ea.start:
                edge_end[(t, c)] = (ei, 0)
            elif (t, c) == ea.end:
                edge_end[(t, c)] = (ei, 1)
            else:
                other = tri.corner_across(t, c, s)
                edge_end[(t, c)] = (ei, 0) if other == ea.start else (ei, 1)
    for m in tri.marked_points:
        first = next((t, c) for t in range(tri.triangles) for c in range(3) if tri.vertices[t][c] == m)
        rot: list[tuple[int, int]] = []
        for t, c in tri.corners_around(*first):
            if (t, c) in edge_end:
                rot.append(edge_end[(t, c)])
            rot.extend((ai, end) for _, ai, end in sorted(ends_at.get((t, c), [])))
        marked.append((m, tuple(rot)))

    ordered = sorted((ai, m, t, p, q) for t in range(tri.triangles) for ai, m, p, q, _, _ in chords[t])
    segments = [
        (ai, t, (Fraction(p[0]) / scale, Fraction(p[1]) / scale), (Fraction(q[0]) / scale, Fraction(q[1]) / scale))
        for ai, _, t, p, q in ordered
    ]
    return CrossingLayout(
        arcs, tuple(sequences), tuple(pairs), tuple(rotation), tuple(marked), tuple(points), tuple(segments)
    )
