"""Deterministic SVG pictures of arc systems on a fixture's plane chart."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .arcs import ArcClass
from .layout import crossing_layout
from .surface import IdealTriangulation

__all__ = ["RenderError", "render_svg"]

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#393b79", "#637939",
)


class RenderError(ValueError):
    pass


def _fmt(v: Fraction | float) -> str:
    s = f"{float(v):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(arcs: Sequence[ArcClass], tri: IdealTriangulation, size: int = 480, margin: int = 24) -> str:
    """Draw the triangles of ``tri`` and every arc as its chords.

    One ``path.arc`` per arc, one ``g.marked-point`` per marked point and a
    ``circle.crossing`` per crossing.
    """
    for a in arcs:
        if a.surface != tri.name:
            raise RenderError(f"arc {a.label()} lives on {a.surface!r}, not on {tri.name!r}")
    if not tri.coords:
        raise RenderError(f"fixture {tri.name!r} has no plane chart")
    xs = [x for tc in tri.coords for x, _ in tc]
    ys = [y for tc in tri.coords for _, y in tc]
    x0, y1 = min(xs), max(ys)
    span = max(max(xs) - x0, y1 - min(ys)) or 1
    k = Fraction(size - 2 * margin, span)
    height = int(margin * 2 + (y1 - min(ys)) * k)

    def pt(p) -> str:
        return f"{_fmt(margin + (p[0] - x0) * k)},{_fmt(margin + (y1 - p[1]) * k)}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" '
        f'viewBox="0 0 {size} {height}" data-surface="{escape(tri.name)}">',
        "<style>.triangle{fill:none;stroke:#bbb;stroke-width:1}"
        ".arc{fill:none;stroke-width:2}.crossing{fill:#000}"
        ".marked-point circle{fill:#fff;stroke:#000;stroke-width:1.5}"
        ".edge-label{font:10px sans-serif;fill:#999}</style>",
        '<g class="skeleton">',
    ]
    for t, tc in enumerate(tri.coords):
        out.append(f'<polygon class="triangle" data-triangle="{t}" points="{" ".join(pt(p) for p in tc)}"/>')
    for t, tc in enumerate(tri.coords):
        for s in range(3):
            p, q = tc[(s + 1) % 3], tc[(s + 2) % 3]
            mid = (Fraction(p[0] + q[0], 2), Fraction(p[1] + q[1], 2))
            x, y = pt(mid).split(",")
            out.append(f'<text class="edge-label" x="{x}" y="{y}">{tri.edge_of(t, s)}</text>')
    out.append("</g>")

    layout = crossing_layout(sorted(arcs))
    pieces: dict[int, list[tuple]] = {i: [] for i in range(len(layout.arcs))}
    for ai, _, p, q in layout.segments:
        pieces[ai].append((p, q))
    for ai, a in enumerate(layout.arcs):
        if a.is_edge:
            t, s = tri.sides_of_edge(a.edge)[0]
            pieces[ai].append((tri.coords[t][(s + 1) % 3], tri.coords[t][(s + 2) % 3]))
        d = []
        last = None
        for p, q in pieces[ai]:
            if last != p:
                d.append(f"M{pt(p)}")
            d.append(f"L{pt(q)}")
            last = q
        colour = _PALETTE[ai % len(_PALETTE)]
        out.append(
            f'<path class="arc" data-arc="{escape(a.label())}" stroke="{colour}" d="{" ".join(d)}"/>'
        )
    for _, p in layout.points:
        x, y = pt(p).split(",")
        out.append(f'<circle class="crossing" cx="{x}" cy="{y}" r="2.5"/>')
    for m in tri.marked_points:
        name = escape(tri.point_name(m))
        spots = sorted({tc[c] for t, tc in enumerate(tri.coords) for c in range(3) if tri.vertices[t][c] == m})
        out.append(f'<g class="marked-point" data-point="{name}">')
        for p in spots:
            x, y = pt(p).split(",")
            out.append(f'<circle cx="{x}" cy="{y}" r="5"/>')
        x, y = pt(spots[0]).split(",")
        out.append(f'<text x="{x}" y="{y}" dx="7" dy="-7">{name}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
