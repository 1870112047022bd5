import xml.etree.ElementTree as ET

import pytest

from arcforge.render import RenderError, render_svg
from arcforge.slopes import slope_arc
from arcforge.systems import construct_hexagon_system

NS = "{http://www.w3.org/2000/svg}"


def _parse(svg):
    return ET.fromstring(svg)


def _classes(root, cls):
    return [e for e in root.iter() if e.get("class") == cls]


def test_hexagon_picture(t2):
    h = construct_hexagon_system(t2)
    root = _parse(render_svg(h.members, t2))
    assert len(_classes(root, "arc")) == 12
    assert [g.get("data-point") for g in _classes(root, "marked-point")] == ["x", "y"]
    assert len(_classes(root, "triangle")) == 4
    total = sum(sum(r) for r in h.matrix) // 2
    assert len(_classes(root, "crossing")) == total


def test_empty_system(t2):
    root = _parse(render_svg([], t2))
    assert _classes(root, "arc") == []
    assert len(_classes(root, "marked-point")) == 2


def test_surface_mismatch(t2):
    with pytest.raises(RenderError):
        render_svg([slope_arc(1, 0)], t2)


def test_bytes_are_stable(t2):
    h = construct_hexagon_system(t2)
    assert render_svg(h.members, t2) == render_svg(tuple(reversed(h.members)), t2)


def test_once_marked(t1):
    root = _parse(render_svg([slope_arc(1, 1), slope_arc(-1, 1)], t1))
    assert len(_classes(root, "crossing")) == 1
