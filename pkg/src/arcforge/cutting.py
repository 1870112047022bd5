"""Cutting a marked surface along pairwise disjoint arcs.

Each triangle is sliced by the chords of the arcs passing through it.  A
slice touches the triangle's sides in intervals ("gaps") between
consecutive strand points; slices are glued across every side that is not
itself one of the cutting arcs, gap ``k`` of a side meeting gap ``n - k`` of
its partner.  Components of the glued complex are the pieces of the cut
surface.  With marked points deleted each slice is contractible and each
glued gap is an open interval, which gives the topological Euler
characteristic; boundary circles come from face tracing of the arcs' ribbon
graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .arcs import ArcClass, pos_side
from .intersections import geometric_intersection
from .layout import strand_orders
from .surface import IdealTriangulation, SurfaceInvariants

__all__ = ["CutError", "CutResult", "cut_along", "complement_is_connected"]


class CutError(ValueError):
    pass


@dataclass(frozen=True)
class CutResult:
    components: tuple[SurfaceInvariants, ...]
    created_marked: int
    system: tuple[ArcClass, ...]

    @property
    def chi(self) -> Fraction:
        return sum((c.chi for c in self.components), Fraction(0))

    def to_json(self) -> dict:
        return {
            "components": [c.as_dict() for c in self.components],
            "boundary_marked_created": self.created_marked,
            "chi_total": str(self.chi),
            "cut": [a.to_json() for a in self.system],
        }


class _DSU:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> None:
        self.parent[self.find(a)] = self.find(b)


def cut_along(tri: IdealTriangulation, arcs: Sequence[ArcClass]) -> CutResult:
    """Components of ``tri`` cut along the disjoint arcs ``arcs``."""
    arcs = tuple(arcs)
    for a in arcs:
        if a.tri.name != tri.name:
            raise CutError(f"arc from {a.surface!r} used on {tri.name!r}")
    if len(set(arcs)) != len(arcs):
        raise CutError("repeated arc class")
    for a, b in combinations(arcs, 2):
        if geometric_intersection(a, b, 1):
            raise CutError(f"{a.label()} and {b.label()} intersect; only disjoint arcs can be cut along")
    if not tri.gluings:
        raise CutError("triangulation has no edges")

    orders = strand_orders(tri, arcs)
    cut_edges = {a.edge for a in arcs if a.is_edge}
    n_on = {side: len(seq) for side, seq in orders.items()}
    index = {}
    for (t, s), seq in orders.items():
        for k, strand in enumerate(seq):
            index[(t, s, strand)] = k

    dsu = _DSU()
    slice_reps: list = []
    # circle of boundary locations of a triangle: corner 0, side 2, corner 1, side 0, corner 2, side 1
    for t in range(tri.triangles):
        ring: list[tuple] = []
        where: dict[tuple, int] = {}
        for c in range(3):
            where[("c", c)] = len(ring)
            ring.append(("c", c))
            s = (c + 2) % 3
            n = n_on.get((t, s), 0)
            for k in range(n + 1):
                ring.append(("g", s, k))
                if k < n:
                    where[("p", s, k)] = len(ring)
                    ring.append(("p", s, k))
        chords = []
        for ai, a in enumerate(arcs):
            for m, (vt, pin, pout) in enumerate(a.visits):
                if vt != t:
                    continue
                ends = []
                for pos, j in ((pin, m - 1), (pout, m)):
                    if pos % 2 == 0:
                        ends.append(where[("c", pos // 2)])
                    else:
                        s = pos_side(pos)
                        ends.append(where[("p", s, index[(t, s, (ai, j))])])
                chords.append((min(ends), max(ends)))
        gaps = [i for i, item in enumerate(ring) if item[0] == "g"]
        sig = {g: tuple(lo < g < hi for lo, hi in chords) for g in gaps}
        for g in gaps:
            dsu.find((t, ring[g][1], ring[g][2]))
        for g, h in combinations(gaps, 2):
            if sig[g] == sig[h]:
                dsu.union((t, ring[g][1], ring[g][2]), (t, ring[h][1], ring[h][2]))
        slice_reps.extend({dsu.find((t, ring[g][1], ring[g][2])) for g in gaps})

    for t, s, u, r in tri.gluings:
        if tri.edge_of(t, s) in cut_edges:
            continue
        n = n_on.get((t, s), 0)
        for k in range(n + 1):
            dsu.union((t, s, k), (u, r, n - k))

    roots = sorted({dsu.find(r) for r in slice_reps})
    comp = {r: i for i, r in enumerate(roots)}

    # darts: arc ends at marked points, in counter-clockwise order, with the slice just after each
    sigma: dict[int, int] = {}
    dart_of: dict[tuple[int, int], int] = {}
    for ai in range(len(arcs)):
        dart_of[(ai, 0)], dart_of[(ai, 1)] = 2 * ai, 2 * ai + 1
    after_map: dict[int, int] = {}
    isolated: dict[int, int] = {}
    edge_arc = {a.edge: i for i, a in enumerate(arcs) if a.is_edge}
    for m in tri.marked_points:
        first = next((t, c) for t in range(tri.triangles) for c in range(3) if tri.vertices[t][c] == m)
        ring_m: list[int] = []
        for t, c in tri.corners_around(*first):
            s2 = (c + 2) % 3
            e = tri.edge_of(t, s2)
            if e in edge_arc:
                a = arcs[edge_arc[e]]
                d = dart_of[(edge_arc[e], _edge_end(tri, a, t, c, s2))]
                ring_m.append(d)
                after_map[d] = comp[dsu.find((t, s2, 0))]
            local = []
            for ai, a in enumerate(arcs):
                if a.is_edge:
                    continue
                vt, pin, pout = a.visits[0]
                if (vt, pin // 2) == (t, c) and pin % 2 == 0:
                    local.append((index[(t, c, (ai, 0))], dart_of[(ai, 0)]))
                n = len(a.visits) - 1
                vt, pin, pout = a.visits[-1]
                if (vt, pout // 2) == (t, c) and pout % 2 == 0:
                    local.append((index[(t, c, (ai, n - 1))], dart_of[(ai, 1)]))
            for k, d in sorted(local):
                ring_m.append(d)
                after_map[d] = comp[dsu.find((t, c, k + 1))]
        if not ring_m:
            t, c = first
            isolated[m] = comp[dsu.find((t, (c + 2) % 3, 0))]
        for i, d in enumerate(ring_m):
            sigma[d] = ring_m[(i + 1) % len(ring_m)]

    ncomp = len(roots)
    slices_per = [0] * ncomp
    for r in slice_reps:
        slices_per[comp[dsu.find(r)]] += 1
    glued_per = [0] * ncomp
    for t, s, u, r in tri.gluings:
        if tri.edge_of(t, s) in cut_edges:
            continue
        for k in range(n_on.get((t, s), 0) + 1):
            glued_per[comp[dsu.find((t, s, k))]] += 1
    interior = [0] * ncomp
    for m, ci in isolated.items():
        interior[ci] += 1
    boundary_marked = [0] * ncomp
    for d, ci in after_map.items():
        boundary_marked[ci] += 1
    circles = [0] * ncomp
    seen: set[int] = set()
    for d0 in sorted(sigma):
        if d0 in seen:
            continue
        d = d0
        while d not in seen:
            seen.add(d)
            d = sigma[d ^ 1]
        # the circle runs along arc end d0, then through the sector after d0 ^ 1
        circles[after_map[d0 ^ 1]] += 1
    out = []
    for i in range(ncomp):
        chi_top = slices_per[i] - glued_per[i] + interior[i]
        b = circles[i]
        g2 = 2 - b - chi_top
        if g2 % 2 or g2 < 0:
            raise CutError(f"inconsistent component: chi={chi_top}, boundary circles={b}")
        out.append(SurfaceInvariants(g2 // 2, b, interior[i], boundary_marked[i]))
    out.sort(key=lambda c: (c.chi, c.genus, c.boundary_components, c.interior_marked, c.boundary_marked))
    return CutResult(tuple(out), 2 * len(arcs), arcs)


def _edge_end(tri: IdealTriangulation, a: ArcClass, t: int, c: int, s: int) -> int:
    """Which end (0 or 1) of edge arc ``a`` sits at corner ``c`` of ``t`` along side ``s``."""
    if (t, c) == a.start:
        return 0
    if (t, c) == a.end:
        return 1
    return 0 if tri.corner_across(t, c, s) == a.start else 1


def complement_is_connected(tri: IdealTriangulation, arcs: Sequence[ArcClass]) -> bool:
    return len(cut_along(tri, arcs).components) == 1
