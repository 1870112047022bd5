"""k-systems: validated sets of arcs, compatibility graphs and maximum systems."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .arcs import ArcClass, arc_from_json, enumerate_arc_classes, tighten
from .cliques import bits, max_clique_size, maximal_cliques
from .intersections import geometric_intersection, intersection_matrix
from .surface import IdealTriangulation, standard_fixture

log = logging.getLogger(__name__)

__all__ = [
    "SystemError_",
    "ArcSystem",
    "CompatibilityGraph",
    "is_k_system",
    "compatibility_graph",
    "maximum_cliques",
    "non_intersecting_subset",
    "is_saturated",
    "construct_hexagon_system",
    "straight_arc",
    "resolve_threads",
]


class SystemError_(ValueError):
    """Invalid arc system (repeated class, bound violated, mixed surfaces)."""


def resolve_threads(threads: int | None = None) -> int:
    """Explicit value, else ``ARCFORGE_THREADS``, else 1."""
    if threads is None:
        env = os.environ.get("ARCFORGE_THREADS", "").strip()
        threads = int(env) if env else 1
    if threads < 1:
        raise ValueError(f"thread count must be positive, got {threads}")
    return threads


def is_k_system(arcs: Sequence[ArcClass], k: int) -> tuple[bool, tuple[ArcClass, ArcClass] | None]:
    """Whether ``arcs`` are pairwise distinct and pairwise meet at most ``k`` times.

    On failure the first offending pair in input order is returned.
    """
    for a, b in combinations(arcs, 2):
        if a == b or geometric_intersection(a, b, k + 1) > k:
            return False, (a, b)
    return True, None


@dataclass(frozen=True)
class ArcSystem:
    members: tuple[ArcClass, ...]
    k: int = 1

    def __post_init__(self) -> None:
        members = tuple(sorted(self.members))
        object.__setattr__(self, "members", members)
        if len({a.surface for a in members}) > 1:
            raise SystemError_("arcs from different surfaces")
        ok, pair = is_k_system(members, self.k)
        if not ok:
            assert pair is not None
            a, b = pair
            if a == b:
                raise SystemError_(f"repeated arc class {a.label()}")
            raise SystemError_(f"{a.label()} and {b.label()} meet more than {self.k} times")

    @property
    def surface(self) -> str | None:
        return self.members[0].surface if self.members else None

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, a: object) -> bool:
        return a in self.members

    @cached_property
    def matrix(self) -> list[list[int]]:
        return intersection_matrix(self.members)

    def to_json(self) -> dict:
        return {"surface": self.surface, "k": self.k, "members": [a.to_json() for a in self.members]}

    @classmethod
    def from_json(cls, data: dict | str, tri: IdealTriangulation | None = None) -> "ArcSystem":
        if isinstance(data, str):
            data = json.loads(data)
        surface = data.get("surface")
        if tri is None and surface is not None:
            tri = standard_fixture(surface)
        elif tri is not None and surface not in (None, tri.name):
            raise SystemError_(f"system belongs to {surface!r}, not {tri.name!r}")
        return cls(tuple(arc_from_json(m, tri) for m in data["members"]), int(data.get("k", 1)))


def non_intersecting_subset(s: ArcSystem | Sequence[ArcClass]) -> tuple[ArcClass, ...]:
    """Members disjoint from every other member."""
    arcs = tuple(s)
    return tuple(
        a for i, a in enumerate(arcs)
        if all(geometric_intersection(a, b, 1) == 0 for j, b in enumerate(arcs) if j != i)
    )


def _row(args: tuple[Sequence[ArcClass], int, int]) -> int:
    pool, i, k = args
    mask = 0
    a = pool[i]
    for j in range(i + 1, len(pool)):
        if geometric_intersection(a, pool[j], k + 1) <= k:
            mask |= 1 << j
    return mask


@dataclass
class CompatibilityGraph:
    """Arcs of a pool joined when they meet at most ``k`` times."""

    pool: tuple[ArcClass, ...]
    k: int
    adj: list[int] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.pool)

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def restricted(self, keep: Iterable[int]) -> int:
        mask = 0
        for i in keep:
            mask |= 1 << i
        return mask


def compatibility_graph(pool: Sequence[ArcClass], k: int = 1, threads: int | None = None) -> CompatibilityGraph:
    pool = tuple(pool)
    n = len(pool)
    threads = resolve_threads(threads)
    jobs = [(pool, i, k) for i in range(n)]
    if threads > 1 and n > 64:
        with ProcessPoolExecutor(threads) as ex:
            upper = list(ex.map(_row, jobs, chunksize=max(1, n // (4 * threads))))
    else:
        upper = [_row(j) for j in jobs]
    adj = list(upper)
    for i in range(n):
        for j in bits(upper[i]):
            adj[j] |= 1 << i
    return CompatibilityGraph(pool, k, adj)


def maximum_cliques(g: CompatibilityGraph, floor: int, candidates: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Maximal cliques with at least ``floor`` vertices, as sorted index tuples in sorted order."""
    mask = None if candidates is None else g.restricted(candidates)
    return maximal_cliques(g.adj, floor, mask)


def largest_clique(g: CompatibilityGraph, candidates: Iterable[int] | None = None) -> int:
    mask = None if candidates is None else g.restricted(candidates)
    return max_clique_size(g.adj, mask)


def is_saturated(s: ArcSystem, pool: Sequence[ArcClass]) -> bool:
    """No pool arc outside ``s`` can be added while keeping a ``k``-system."""
    return extension_witness(s, pool) is None


def extension_witness(s: ArcSystem, pool: Sequence[ArcClass]) -> ArcClass | None:
    members = set(s.members)
    for a in pool:
        if a in members:
            continue
        if all(geometric_intersection(a, b, s.k + 1) <= s.k for b in s.members):
            return a
    return None


def straight_arc(tri: IdealTriangulation, p: tuple[int, int], q: tuple[int, int]) -> ArcClass:
    """Arc class of the straight segment between two corners in the fixture's plane chart.

    The segment must stay inside the union of triangles that share the
    chart, i.e. it may only cross sides whose two copies carry equal
    coordinates.
    """
    P = (Fraction(p[0]), Fraction(p[1]))
    Q = (Fraction(q[0]), Fraction(q[1]))

    def xy(t: int, c: int) -> tuple[Fraction, Fraction]:
        x, y = tri.coords[t][c]
        return Fraction(x), Fraction(y)

    def crosses(t: int, s: int) -> bool:
        a, b = xy(t, (s + 1) % 3), xy(t, (s + 2) % 3)
        d = (Q[0] - P[0], Q[1] - P[1])
        e = (b[0] - a[0], b[1] - a[1])
        den = d[0] * e[1] - d[1] * e[0]
        if den == 0:
            return False
        w = (a[0] - P[0], a[1] - P[1])
        u = (w[0] * e[1] - w[1] * e[0]) / den
        v = (w[0] * d[1] - w[1] * d[0]) / den
        return 0 < u < 1 and 0 < v < 1

    for t in range(tri.triangles):
        for c in range(3):
            if xy(t, c) != P:
                continue
            if Q in (xy(t, (c + 1) % 3), xy(t, (c + 2) % 3)):
                end = next(i for i in range(3) if xy(t, i) == Q)
                a = tighten(tri, (t, c), [], (t, end))
                assert a is not None
                return a
            if not crosses(t, c):
                continue
            path = [tri.edge_of(t, c)]
            cur, entry = tri.across(t, c)
            while True:
                if any(xy(cur, i) == Q for i in range(3)):
                    end = next(i for i in range(3) if xy(cur, i) == Q)
                    a = tighten(tri, (t, c), path, (cur, end))
                    if a is None:
                        raise ValueError("segment is inessential")
                    return a
                s = next((s for s in range(3) if s != entry and crosses(cur, s)), None)
                if s is None:
                    raise ValueError(f"segment {p}->{q} leaves the chart")
                nxt, r = tri.across(cur, s)
                a_, b_ = xy(cur, (s + 1) % 3), xy(cur, (s + 2) % 3)
                if {a_, b_} != {xy(nxt, (r + 1) % 3), xy(nxt, (r + 2) % 3)}:
                    raise ValueError(f"segment {p}->{q} leaves the chart")
                path.append(tri.edge_of(cur, s))
                cur, entry = nxt, r
    raise ValueError(f"no corner at {p} points towards {q}")


def construct_hexagon_system(tri: IdealTriangulation | None = None) -> ArcSystem:
    """Three disjoint x-y arcs cutting the surface into a hexagon, plus its nine diagonals."""
    tri = tri or standard_fixture("torus-2-marked")
    if tri.name != "torus-2-marked":
        raise ValueError("the hexagon construction is defined on torus-2-marked")
    # hexagon vertices in boundary order, as fixture coordinates
    hexagon = [tri.coords[1][0], tri.coords[1][1], tri.coords[1][2], tri.coords[2][1], tri.coords[3][0], tri.coords[3][1]]
    arcs = {straight_arc(tri, hexagon[i], hexagon[(i + 1) % 6]) for i in range(6)}
    for i, j in combinations(range(6), 2):
        if (j - i) % 6 not in (1, 5):
            arcs.add(straight_arc(tri, hexagon[i], hexagon[j]))
    return ArcSystem(tuple(arcs), 1)


def bounded_pool(tri: IdealTriangulation, bound: int) -> list[ArcClass]:
    return enumerate_arc_classes(tri, bound)
