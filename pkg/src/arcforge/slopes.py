"""Straight-line arcs on the once-marked square torus, indexed by slope.

The fixture ``torus-1-marked`` is the unit square cut by its main diagonal,
so the plane tiled by translates of it is its universal cover with the
marked point at every lattice point.  The arc of slope ``p/q`` is the image
of the segment from ``(0, 0)`` to ``(q, p)``; its itinerary is read off from
the lines ``x = n``, ``y = n`` and ``x - y = n`` it crosses.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd

from .arcs import ArcClass, tighten
from .surface import IdealTriangulation, standard_fixture

__all__ = ["slope_arc", "normalize_slope"]

_VERTICAL, _DIAGONAL, _HORIZONTAL = 0, 1, 2


def normalize_slope(p: int, q: int) -> tuple[int, int]:
    """Representative of the slope ``p/q`` with ``q > 0``, or ``1/0``."""
    if gcd(p, q) != 1:
        raise ValueError(f"slope {p}/{q} is not in lowest terms")
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def _corner_at(tri: IdealTriangulation, x: Fraction, y: Fraction, origin: tuple[int, int]) -> tuple[int, int]:
    cx, cy = floor(x), floor(y)
    t = 0 if x - cx > y - cy else 1
    for c, (vx, vy) in enumerate(tri.coords[t]):
        if (vx + cx, vy + cy) == origin:
            return t, c
    raise AssertionError("point is not next to the expected lattice vertex")


def slope_arc(p: int, q: int, tri: IdealTriangulation | None = None) -> ArcClass:
    """Arc class of slope ``p/q`` (rise over run) on ``torus-1-marked``."""
    tri = tri or standard_fixture("torus-1-marked")
    if tri.name != "torus-1-marked":
        raise ValueError("slopes are only defined on torus-1-marked")
    p, q = normalize_slope(p, q)
    events: list[tuple[Fraction, int]] = []
    # segment (t*q, t*p) for 0 < t < 1
    for n in range(min(0, q) + 1, max(0, q)):
        events.append((Fraction(n, q), _VERTICAL))
    for n in range(min(0, p) + 1, max(0, p)):
        events.append((Fraction(n, p), _HORIZONTAL))
    if q != p:
        d = q - p
        for n in range(min(0, d) + 1, max(0, d)):
            events.append((Fraction(n, d), _DIAGONAL))
    events.sort()
    eps = Fraction(1, 4 * (abs(p) + abs(q) + 1) ** 2)
    start = _corner_at(tri, eps * q, eps * p, (0, 0))
    end = _corner_at(tri, (1 - eps) * q, (1 - eps) * p, (q, p))
    arc = tighten(tri, start, [e for _, e in events], end)
    assert arc is not None
    return arc
