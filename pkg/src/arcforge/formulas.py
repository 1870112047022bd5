"""Closed-form counts used as independent oracles for the geometric engine.

All functions are exact (integers and :class:`fractions.Fraction`) and
reject inputs outside their stated domain instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "FormulaDomainError",
    "FamilyPair",
    "FAMILIES",
    "max_cardinality",
    "slope_intersection",
    "vv_intersection",
    "family_intersection",
    "polygon_construction_counts",
]

Number = Union[int, Fraction, str]


class FormulaDomainError(ValueError):
    pass


def _q(x: Number) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormulaDomainError(f"not a rational number: {x!r}") from exc


def _in_lattice(x: Fraction, denom: int, offset: Fraction = Fraction(0)) -> bool:
    y = (x - offset) * denom
    return y.denominator == 1


def _integral(x: Fraction) -> int:
    if x.denominator != 1:
        raise FormulaDomainError(f"expected an integer, got {x}")
    return x.numerator


def max_cardinality(chi: Number, v: int) -> int:
    """Largest size of a 1-system: ``2|chi|(|chi| + 1) - v/2``."""
    c = _q(chi)
    if c >= 0:
        raise FormulaDomainError(f"Euler characteristic must be negative, got {c}")
    if v < 0:
        raise FormulaDomainError(f"boundary marked-point count must be non-negative, got {v}")
    value = 2 * abs(c) * (abs(c) + 1) - Fraction(v, 2)
    if value.denominator != 1 or value < 0:
        raise FormulaDomainError(f"(chi={c}, v={v}) gives a non-integral size {value}")
    return value.numerator


def slope_intersection(a: int, b: int, c: int, d: int) -> int:
    """Intersection number ``|ad - bc| - 1`` of slopes a/b and c/d on the once-marked torus.

    Equal slopes give 0, the convention that a class does not cross itself.
    """
    if (a, b) == (0, 0) or (c, d) == (0, 0):
        raise FormulaDomainError("slope (0, 0) is undefined")
    if math.gcd(a, b) != 1 or math.gcd(c, d) != 1:
        raise FormulaDomainError(f"slopes must be in lowest terms: {a}/{b}, {c}/{d}")
    det = abs(a * d - b * c)
    return 0 if det == 0 else det - 1


def vv_intersection(dj: int, dk: int) -> int:
    """``i(v_{j1 k1}, v_{j2 k2})`` as a function of the index difference.

    Both indices count powers of fixed twists, so only the difference matters.
    """
    if not isinstance(dj, int) or not isinstance(dk, int):
        raise FormulaDomainError("v indices are integers")
    if dj == 0 and dk == 0:
        raise FormulaDomainError("v_{jk} against itself")
    return abs(dj) + abs(dk) - (2 if dj * dk < 0 else 1)


# index lattices: (denominator, offset) meaning offset + (1/denominator) Z
_HALF_ODD = (1, Fraction(1, 2))  # Z + 1/2
_INT = (1, Fraction(0))
_THIRDS = (3, Fraction(0))
_HALVES = (2, Fraction(0))

FAMILIES = {
    "VV": ("pair", "pair"),
    "WW": (_HALF_ODD, _HALF_ODD),
    "WhW": (_HALF_ODD, _HALF_ODD),
    "XW": (_INT, _HALF_ODD),
    "VW": ("pair", _HALF_ODD),
    "YY": (_THIRDS, _THIRDS),
    "CC": (_HALVES, _HALVES),
    "CD": (_HALVES, _HALVES),
}


@dataclass(frozen=True)
class FamilyPair:
    """Two members of one of the twist families.

    ``first`` and ``second`` are rationals, except that ``v`` members are
    integer pairs ``(j, k)``.  For ``VW`` the first member is ``v_{jk}``
    and the second is ``w_l``.  ``XW`` is ``(x_j, w_k)``; ``CD`` is
    ``(c_k, d_l)``; ``WhW`` is ``(w_j, h(w_k))``.
    """

    family: str
    first: object
    second: object

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise FormulaDomainError(f"unknown family {self.family!r}; expected one of {sorted(FAMILIES)}")
        for value, lattice in zip((self.first, self.second), FAMILIES[self.family]):
            if lattice == "pair":
                if not (isinstance(value, tuple) and len(value) == 2):
                    raise FormulaDomainError(f"{self.family}: v members are (j, k) pairs, got {value!r}")
                for x in value:
                    if _q(x).denominator != 1:
                        raise FormulaDomainError(f"{self.family}: v indices are integers, got {value!r}")
            else:
                denom, offset = lattice  # type: ignore[misc]
                if not _in_lattice(_q(value), denom, offset):  # type: ignore[arg-type]
                    raise FormulaDomainError(f"{self.family}: index {value} outside {offset} + (1/{denom})Z")


def family_intersection(p: FamilyPair) -> int:
    """Intersection number of two family members given by closed formula."""
    f = p.family
    if f == "VV":
        (j1, k1), (j2, k2) = p.first, p.second  # type: ignore[misc]
        return vv_intersection(int(_q(j1) - _q(j2)), int(_q(k1) - _q(k2)))
    if f == "VW":
        j, _k = p.first  # type: ignore[misc]
        return math.floor(abs(_q(j) - _q(p.second)))  # type: ignore[arg-type]
    a, b = _q(p.first), _q(p.second)  # type: ignore[arg-type]
    diff = abs(a - b)
    if f in ("WW", "YY", "CC"):
        if diff == 0:
            raise FormulaDomainError(f"{f}: a member against itself")
        # on Z + 1/2 the difference is an integer, so ceil is exact for WW too
        return math.ceil(diff) - 1
    if f == "WhW":
        return 0
    if f == "XW":
        return 2 * math.floor(diff)
    if f == "CD":
        return math.floor(diff)
    raise AssertionError(f)


def polygon_construction_counts(chi: Number, v: int) -> tuple[int, int, int, int]:
    """``(cut arcs, polygon vertices, diagonals, total)`` of the polygon construction.

    Cutting along ``|chi| + 1 - v/2`` disjoint arcs leaves a polygon with
    ``2|chi| + 2`` vertices; its diagonals plus the cut arcs form a maximal
    1-system.
    """
    c = _q(chi)
    if c >= 0:
        raise FormulaDomainError(f"Euler characteristic must be negative, got {c}")
    if v < 0:
        raise FormulaDomainError(f"boundary marked-point count must be non-negative, got {v}")
    n = abs(c)
    cut = n + 1 - Fraction(v, 2)
    if cut.denominator != 1 or cut <= 0:
        raise FormulaDomainError(f"(chi={c}, v={v}) admits no polygon construction: {cut} cut arcs")
    verts = 2 * n + 2
    if verts.denominator != 1:
        raise FormulaDomainError(f"(chi={c}) gives a polygon with {verts} vertices")
    diagonals = verts * (2 * n - 1) / 2
    total = cut + diagonals
    return _integral(cut), _integral(verts), _integral(diagonals), _integral(total)
