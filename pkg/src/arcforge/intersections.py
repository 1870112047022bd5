"""Minimal-position intersection numbers of arc classes.

Fix one lift of ``a`` in the universal cover.  Every interior crossing of
the geodesic representatives of ``a`` and ``b`` is a lift of ``b`` crossing
that fixed lift, and such a lift shares a run of consecutive triangles with
it.  For each run we only need to know on which side of ``a`` the lift of
``b`` enters and leaves; the lifts cross exactly when those sides differ.
Lifts that share an ideal endpoint with ``a`` never cross it in the interior.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .arcs import ArcClass

__all__ = [
    "geometric_intersection",
    "self_intersection",
    "intersection_matrix",
    "crossing_runs",
]


def _between(lo: int, hi: int, x: int) -> bool:
    """Whether ``x`` lies strictly inside the counter-clockwise interval (lo, hi) of Z/6."""
    return 0 < (x - lo) % 6 < (hi - lo) % 6


def _visit_index(visits: Sequence[tuple[int, int, int]]) -> dict[int, list[int]]:
    idx: dict[int, list[int]] = defaultdict(list)
    for k, (t, _, _) in enumerate(visits):
        idx[t].append(k)
    return idx


def crossing_runs(A: Sequence[tuple[int, int, int]], B: Sequence[tuple[int, int, int]], limit: int | None = None, skip_identity: bool = False):
    """Yield ``(i, j, k, l, crosses)`` for each lift of ``B`` meeting the fixed lift of ``A``.

    ``A[i..j]`` and ``B[k..l]`` (``l`` may be below ``k`` when the lift runs
    backwards) are the shared triangles.  Stops after ``limit`` crossing runs.
    """
    bidx = _visit_index(B)
    found = 0
    for i, (t, ain, aout) in enumerate(A):
        for k in bidx.get(t, ()):
            if skip_identity and i == 0 and k == 0:
                continue
            _, bin_, bout = B[k]
            if ain & 1 and (ain == bin_ or ain == bout):
                continue  # this lift already met A in the previous triangle
            if aout & 1 and (aout == bout or aout == bin_):
                d = 1 if aout == bout else -1
                # B's element on the far side of the run's start
                b_first = bin_ if d == 1 else bout
                j, l = i, k
                while True:
                    j += 1
                    l += d
                    _, _, aout_j = A[j]
                    _, bi, bo = B[l]
                    b_fwd = bo if d == 1 else bi
                    if not (aout_j & 1 and aout_j == b_fwd):
                        break
                x = aout
                y = A[j][1]
                pa, pb = (ain - x) % 6, (b_first - x) % 6
                qa, qb = (aout_j - y) % 6, (b_fwd - y) % 6
                crosses = pa != pb and qa != qb and (pb > pa) == (qb > qa)
            else:
                j, l = i, k
                if ain in (bin_, bout) or aout in (bin_, bout):
                    crosses = False  # shared ideal vertex
                else:
                    crosses = _between(ain, aout, bin_) != _between(ain, aout, bout)
            yield i, j, k, l, crosses
            if crosses:
                found += 1
                if limit is not None and found >= limit:
                    return


def _count(a: ArcClass, b: ArcClass, limit: int | None = None) -> int:
    if a.is_edge and b.is_edge:
        return 0
    if a.is_edge:
        a, b = b, a
    if b.is_edge:
        e = b.edge
        hits = sum(1 for x in a.crossings if x == e)
        return hits if limit is None else min(hits, limit)
    return sum(1 for *_, c in crossing_runs(a.visits, b.visits, limit) if c)


def geometric_intersection(a: ArcClass, b: ArcClass, limit: int | None = None) -> int:
    """Number of interior crossings of minimal-position representatives.

    Meetings at shared marked endpoints are not counted and ``i(a, a) = 0``.
    With ``limit`` the count is truncated once it reaches that value, which is
    all a compatibility test needs.
    """
    if a.surface != b.surface:
        raise ValueError(f"arcs from different surfaces: {a.surface!r} and {b.surface!r}")
    if a == b:
        return 0
    return _count(a, b, limit)


def self_intersection(a: ArcClass) -> int:
    """Minimal number of transverse self-crossings of the class."""
    if a.is_edge:
        return 0
    total = sum(1 for *_, c in crossing_runs(a.visits, a.visits, skip_identity=True) if c)
    # each self-crossing is seen once from each of its two branches
    assert total % 2 == 0, "unpaired self-crossing"
    return total // 2


def intersection_matrix(arcs: Sequence[ArcClass], limit: int | None = None) -> list[list[int]]:
    """Symmetric matrix of pairwise intersection numbers in the given order."""
    n = len(arcs)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = geometric_intersection(arcs[i], arcs[j], limit)
    return m


def matrix_to_json(arcs: Iterable[ArcClass], limit: int | None = None) -> dict:
    arcs = list(arcs)
    return {
        "arcs": [a.to_json() for a in arcs],
        "matrix": intersection_matrix(arcs, limit),
    }
