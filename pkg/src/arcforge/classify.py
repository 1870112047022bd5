"""Equivalence of arc systems through canonical codes of their ribbon graphs.

Drawing a system in minimal position and subdividing every arc at its
crossings gives an embedded graph: marked points plus 4-valent crossing
vertices, with the cyclic order of half-edges at each vertex.  When every
complementary region is a disk this ribbon graph determines the pair
(surface, system) up to homeomorphism, so an isomorphism-invariant code of
it decides equivalence.

Minimal position is only unique up to sliding an arc across a crossing of
two others (a triangle move), so the code is the minimum over every drawing
reachable by triangle moves from the one :mod:`layout` produces.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .arcs import ArcClass
from .intersections import geometric_intersection
from .layout import CrossingLayout, crossing_layout
from .surface import validate_triangulation

log = logging.getLogger(__name__)

__all__ = [
    "RibbonGraph",
    "Arrangement",
    "ClassificationError",
    "arrangement_from_layout",
    "system_to_ribbon_graph",
    "verify_filling",
    "canonical_code",
    "system_code",
    "classify",
]

MARKED, CROSSING = 0, 1


class ClassificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Arrangement:
    """Combinatorial drawing: what :class:`RibbonGraph` is built from.

    Kept separate so triangle moves can edit crossing orders along arcs
    without touching the rotations, which such moves preserve.
    """

    sequences: tuple[tuple[int, ...], ...]
    rotation: tuple[tuple[tuple[int, int], ...], ...]
    marked: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    point_count: int
    genus: int

    def swapped(self, swaps: Iterable[tuple[int, int, int]]) -> "Arrangement":
        seqs = [list(s) for s in self.sequences]
        for arc, x, y in swaps:
            s = seqs[arc]
            i, j = s.index(x), s.index(y)
            s[i], s[j] = y, x
        return Arrangement(tuple(tuple(s) for s in seqs), self.rotation, self.marked, self.point_count, self.genus)


def arrangement_from_layout(layout: CrossingLayout) -> Arrangement:
    if not layout.arcs:
        raise ClassificationError("empty system")
    tri = layout.arcs[0].tri
    genus = validate_triangulation(tri).invariants.genus
    return Arrangement(layout.sequences, layout.rotation, layout.marked, len(tri.marked_points), genus)


@dataclass
class RibbonGraph:
    """Darts ``2g`` and ``2g + 1`` are the two ends of segment ``g``.

    ``sigma[d]`` is the next dart counter-clockwise around the vertex of
    ``d``; ``vertex[d]`` names that vertex as ``("m", point)`` or
    ``("x", crossing)``; ``arc_of[g]`` is the arc the segment belongs to.
    """

    sigma: list[int]
    vertex: list[tuple[str, int]]
    arc_of: list[int]
    point_count: int = 0
    genus: int = 1
    _faces: list[list[int]] | None = field(default=None, repr=False)

    @property
    def dart_count(self) -> int:
        return len(self.sigma)

    @property
    def E(self) -> int:
        return len(self.sigma) // 2

    @property
    def V(self) -> int:
        return len(set(self.vertex))

    def faces(self) -> list[list[int]]:
        if self._faces is None:
            seen = [False] * len(self.sigma)
            out = []
            for d in range(len(self.sigma)):
                if seen[d]:
                    continue
                cyc = []
                while not seen[d]:
                    seen[d] = True
                    cyc.append(d)
                    d = self.sigma[d ^ 1]
                out.append(cyc)
            self._faces = out
        return self._faces

    @property
    def F(self) -> int:
        return len(self.faces())

    def euler(self) -> int:
        return self.V - self.E + self.F

    def marked_vertices(self) -> set[int]:
        return {i for kind, i in self.vertex if kind == "m"}

    def crossing_vertices(self) -> set[int]:
        return {i for kind, i in self.vertex if kind == "x"}

    def is_connected(self) -> bool:
        if not self.sigma:
            return False
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for n in (self.sigma[d], d ^ 1):
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == len(self.sigma)

    def mirror(self) -> "RibbonGraph":
        inv = [0] * len(self.sigma)
        for d, n in enumerate(self.sigma):
            inv[n] = d
        return RibbonGraph(inv, list(self.vertex), list(self.arc_of), self.point_count, self.genus)

    def relabel(self, perm: Sequence[int]) -> "RibbonGraph":
        """Renumber segments by ``perm`` (segment g becomes perm[g]), flipping none."""
        n = len(self.sigma)
        dmap = [0] * n
        for g, h in enumerate(perm):
            dmap[2 * g], dmap[2 * g + 1] = 2 * h, 2 * h + 1
        sigma = [0] * n
        vertex: list[tuple[str, int]] = [("m", 0)] * n
        for d in range(n):
            sigma[dmap[d]] = dmap[self.sigma[d]]
            vertex[dmap[d]] = self.vertex[d]
        arc_of = [0] * len(perm)
        for g, h in enumerate(perm):
            arc_of[h] = self.arc_of[g]
        return RibbonGraph(sigma, vertex, arc_of, self.point_count, self.genus)


def _build(arr: Arrangement) -> RibbonGraph:
    sigma_pairs: list[tuple[tuple, list[int]]] = []
    seg_arc: list[int] = []
    vertex_of: dict[int, tuple[str, int]] = {}
    # dart lookup: at crossing x for (arc, +1/-1); at marked end (arc, end)
    at_cross: dict[tuple[int, int, int], int] = {}
    at_end: dict[tuple[int, int], int] = {}
    ends: dict[int, tuple[int, int]] = {}
    for m, rot in arr.marked:
        for arc, end in rot:
            ends[(arc, end)] = m  # type: ignore[index]
    for arc, seq in enumerate(arr.sequences):
        nodes = [("m", ends[(arc, 0)])] + [("x", x) for x in seq] + [("m", ends[(arc, 1)])]  # type: ignore[index]
        for k in range(len(nodes) - 1):
            g = len(seg_arc)
            seg_arc.append(arc)
            d0, d1 = 2 * g, 2 * g + 1
            vertex_of[d0], vertex_of[d1] = nodes[k], nodes[k + 1]
            if k == 0:
                at_end[(arc, 0)] = d0
            else:
                at_cross[(seq[k - 1], arc, 1)] = d0
            if k == len(nodes) - 2:
                at_end[(arc, 1)] = d1
            else:
                at_cross[(seq[k], arc, -1)] = d1
    n = 2 * len(seg_arc)
    sigma = [-1] * n
    for x, rot in enumerate(arr.rotation):
        ds = [at_cross[(x, arc, sgn)] for arc, sgn in rot]
        for i, d in enumerate(ds):
            sigma[d] = ds[(i + 1) % len(ds)]
    for m, rot in arr.marked:
        ds = [at_end[(arc, end)] for arc, end in rot]
        for i, d in enumerate(ds):
            sigma[d] = ds[(i + 1) % len(ds)]
    if -1 in sigma:
        raise ClassificationError("inconsistent layout: dart without rotation")
    vertex = [vertex_of[d] for d in range(n)]
    return RibbonGraph(sigma, vertex, seg_arc, arr.point_count, arr.genus)


def system_to_ribbon_graph(arcs: Sequence[ArcClass], layout: CrossingLayout | None = None) -> RibbonGraph:
    layout = layout or crossing_layout(arcs)
    return _build(arrangement_from_layout(layout))


def verify_filling(rg: RibbonGraph) -> bool:
    """All marked points are vertices, the graph is connected, and every face is a disk."""
    if not rg.sigma or len(rg.marked_vertices()) != rg.point_count:
        return False
    if not rg.is_connected():
        return False
    return rg.euler() == 2 - 2 * rg.genus


def _code_from(types: Sequence[int], root: int, sigma: Sequence[int], best: list[int] | None) -> list[int] | None:
    """Traversal code from ``root``; ``None`` as soon as it exceeds ``best``."""
    n = len(sigma)
    label = [-1] * n
    label[root] = 0
    order = [root]
    code: list[int] = []
    i = 0
    pos = 0
    deciding = best is not None
    while i < len(order):
        d = order[i]
        i += 1
        for nd in (sigma[d], d ^ 1):
            if label[nd] < 0:
                label[nd] = len(order)
                order.append(nd)
        for v in (label[sigma[d]], label[d ^ 1], types[d]):
            if deciding:
                b = best[pos]  # type: ignore[index]
                if v > b:
                    return None
                if v < b:
                    deciding = False
            code.append(v)
            pos += 1
    if len(order) != n:
        raise ClassificationError("ribbon graph is not connected")
    return code


def canonical_code(rg: RibbonGraph, oriented: bool = False, point_labels: dict[int, int] | None = None) -> bytes:
    """Minimum traversal code over roots at marked points.

    By default both orientations are tried and marked points are
    interchangeable.  ``oriented`` keeps the orientation fixed and
    ``point_labels`` distinguishes marked points by the given labels; these
    variants only serve to detect symmetries.
    """
    if not verify_filling(rg):
        raise ClassificationError("canonical codes need a filling system")
    types = []
    for kind, i in rg.vertex:
        if kind == "x":
            types.append(CROSSING)
        else:
            types.append(MARKED if point_labels is None else 2 + point_labels[i])
    inv = [0] * len(rg.sigma)
    for d, nd in enumerate(rg.sigma):
        inv[nd] = d
    # Only roots with the least local invariant are tried.  Isomorphisms
    # preserve the invariant, so the minimum stays canonical.
    degree: dict[tuple[str, int], int] = {}
    for v in rg.vertex:
        degree[v] = degree.get(v, 0) + 1
    candidates = []
    for sigma in (rg.sigma,) if oriented else (rg.sigma, inv):
        flen = _face_lengths(sigma)
        for d in range(len(sigma)):
            if rg.vertex[d][0] == "m":
                candidates.append(((types[d], degree[rg.vertex[d]], flen[d], flen[sigma[d]]), sigma, d))
    least = min(c[0] for c in candidates)
    best: list[int] | None = None
    for key, sigma, r in candidates:
        if key != least:
            continue
        c = _code_from(types, r, sigma, best)
        if c is not None and (best is None or c < best):
            best = c
    assert best is not None
    return _pack(best)


def _face_lengths(sigma: Sequence[int]) -> list[int]:
    out = [0] * len(sigma)
    for d in range(len(sigma)):
        if out[d]:
            continue
        cyc = [d]
        e = sigma[d ^ 1]
        while e != d:
            cyc.append(e)
            e = sigma[e ^ 1]
        for e in cyc:
            out[e] = len(cyc)
    return out


def _pack(code: Sequence[int]) -> bytes:
    return b"".join(v.to_bytes(2, "big") for v in code)


def _triangle_moves(rg: RibbonGraph) -> list[list[tuple[int, int, int]]]:
    """Swaps ``(arc, x, y)`` for every empty triangle bounded by three arcs."""
    moves = []
    for face in rg.faces():
        if len(face) != 3:
            continue
        if any(rg.vertex[d][0] != "x" for d in face):
            continue
        arcs = [rg.arc_of[d >> 1] for d in face]
        if len(set(arcs)) != 3:
            continue
        swaps = []
        for d in face:
            swaps.append((rg.arc_of[d >> 1], rg.vertex[d][1], rg.vertex[d ^ 1][1]))
        moves.append(swaps)
    return moves


def code_closure(arr: Arrangement, max_states: int = 20000, **variant) -> tuple[bytes, int]:
    """Minimum canonical code over all drawings reachable by triangle moves.

    ``variant`` is passed on to :func:`canonical_code`.
    """
    seen = {arr.sequences: arr}
    queue = [arr]
    best: bytes | None = None
    while queue:
        cur = queue.pop()
        rg = _build(cur)
        code = canonical_code(rg, **variant)
        if best is None or code < best:
            best = code
        for swaps in _triangle_moves(rg):
            nxt = cur.swapped(swaps)
            if nxt.sequences not in seen:
                if len(seen) >= max_states:
                    raise ClassificationError("triangle-move closure too large")
                seen[nxt.sequences] = nxt
                queue.append(nxt)
    assert best is not None
    return best, len(seen)


def mirror_arrangement(arr: Arrangement) -> Arrangement:
    """The same drawing seen from the other side: every rotation reversed."""
    rotation = tuple((r[0],) + tuple(reversed(r[1:])) for r in arr.rotation)
    marked = tuple((m, (rot[:1] + tuple(reversed(rot[1:]))) if rot else rot) for m, rot in arr.marked)
    return Arrangement(arr.sequences, rotation, marked, arr.point_count, arr.genus)


def symmetry_flags(arcs: Sequence[ArcClass]) -> tuple[bool, bool]:
    """``(amphichiral, swap_symmetric)`` of a filling system on a twice-marked surface.

    Amphichiral: some orientation-reversing homeomorphism preserves the
    system.  Swap-symmetric: some homeomorphism preserving the system
    exchanges the two marked points.
    """
    arr = arrangement_from_layout(crossing_layout(arcs, check=False))
    oriented = code_closure(arr, oriented=True)[0]
    amphichiral = oriented == code_closure(mirror_arrangement(arr), oriented=True)[0]
    points = sorted({m for m, _ in arr.marked})
    if len(points) != 2:
        return amphichiral, False
    a, b = points
    fixed = code_closure(arr, point_labels={a: 0, b: 1})[0]
    swapped = code_closure(arr, point_labels={a: 1, b: 0})[0]
    return amphichiral, fixed == swapped


def system_code(arcs: Sequence[ArcClass]) -> bytes:
    """Equivalence-class code of a filling system."""
    arr = arrangement_from_layout(crossing_layout(arcs, check=False))
    return code_closure(arr)[0]


@dataclass
class SystemClass:
    code: bytes
    representative: tuple[ArcClass, ...]
    members: int
    size: int
    J: int
    loops: dict[str, int]
    crossings: int
    amphichiral: bool | None = None
    swap_symmetric: bool | None = None

    @property
    def code_hex(self) -> str:
        return hashlib.sha256(self.code).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "code": self.code_hex,
            "size": self.size,
            "J": self.J,
            "loops": self.loops,
            "crossings": self.crossings,
            "found": self.members,
            "amphichiral": self.amphichiral,
            "swap_symmetric": self.swap_symmetric,
            "members": [a.to_json() for a in self.representative],
        }


def summary(arcs: Sequence[ArcClass]) -> tuple[int, dict[str, int], int]:
    """``(|J|, loops per marked point, total crossings)`` of a system."""
    n = len(arcs)
    total = 0
    touched = [False] * n
    for i in range(n):
        for j in range(i + 1, n):
            k = geometric_intersection(arcs[i], arcs[j])
            if k:
                total += k
                touched[i] = touched[j] = True
    loops: dict[str, int] = {}
    if arcs:
        tri = arcs[0].tri
        for m in tri.marked_points:
            loops[tri.point_name(m)] = sum(1 for a in arcs if a.is_loop and a.endpoint_ids[0] == m)
    return touched.count(False), loops, total


def classify(
    systems: Iterable[Sequence[ArcClass]], codes: dict | None = None, symmetries: bool = True
) -> list[SystemClass]:
    """Group filling systems by canonical code; classes sorted by code.

    ``codes`` may carry precomputed codes keyed by the sorted arc keys, and
    is filled in as a cache.
    """
    groups: dict[bytes, list[tuple[ArcClass, ...]]] = {}
    for sys_ in systems:
        arcs = tuple(sorted(sys_))
        key = tuple(a.key for a in arcs)
        code = codes.get(key) if codes is not None else None
        if code is None:
            rg = system_to_ribbon_graph(arcs)
            if not verify_filling(rg):
                raise ClassificationError(
                    "system does not fill the surface; classification inconclusive: "
                    + ", ".join(a.label() for a in arcs)
                )
            code = system_code(arcs)
            if codes is not None:
                codes[key] = code
        groups.setdefault(code, []).append(arcs)
    out = []
    for code in sorted(groups):
        rep = min(groups[code], key=lambda s: (sum(len(a) for a in s), [a.sort_key for a in s]))
        J, loops, total = summary(rep)
        amphichiral, swap = symmetry_flags(rep) if symmetries else (None, None)
        out.append(SystemClass(code, rep, len(groups[code]), len(rep), J, loops, total, amphichiral, swap))
    return out
