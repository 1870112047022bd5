"""The verification suite behind ``arcforge verify``.

Each check produces one line of a plain-text table.  The report contains no
timings or other run-dependent data, so two runs with the same arguments
must produce identical bytes whatever the thread count.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from fractions import Fraction
from math import gcd
from typing import Callable

from .arcs import ArcClass
from .classify import SystemClass, classify
from .cutting import cut_along
from .formulas import FamilyPair, family_intersection, max_cardinality, polygon_construction_counts, slope_intersection
from .intersections import geometric_intersection
from .search import SearchResult, catalog, search
from .slopes import slope_arc
from .surface import SurfaceInvariants, standard_fixture, validate_triangulation
from .systems import ArcSystem, construct_hexagon_system, is_k_system, is_saturated, largest_clique

log = logging.getLogger(__name__)

__all__ = ["Check", "Report", "run_verification", "run_formula_checks", "DEFAULT_BOUND", "EXPECTED_J"]

DEFAULT_BOUND = 6
EXPECTED_CLASSES = 23
EXPECTED_J = {3: 3, 2: 12, 1: 5, 0: 3}


@dataclass
class Check:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{self.number:>2}  {'PASS' if self.passed else 'FAIL'}  {self.name:<24}  {self.detail}"


@dataclass
class Report:
    bound: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    title: str = ""

    def text(self) -> str:
        lines = [self.title or f"arcforge verification, crossing bounds {self.bound} and {self.bound + 2}"]
        lines += [c.line() for c in self.checks]
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'} ({sum(c.passed for c in self.checks)}/{len(self.checks)})")
        return "\n".join(lines) + "\n"


@dataclass
class Context:
    """Searches shared between checks."""

    bound: int
    threads: int | None
    tri = standard_fixture("torus-2-marked")
    codes: dict = field(default_factory=dict)
    _searches: dict = field(default_factory=dict)
    _catalogs: dict = field(default_factory=dict)

    def search(self, bound: int, k: int = 1) -> SearchResult:
        if (bound, k) not in self._searches:
            self._searches[(bound, k)] = search(self.tri, bound, k, threads=self.threads)
        return self._searches[(bound, k)]

    def catalog(self, bound: int) -> list[SystemClass]:
        if bound not in self._catalogs:
            res = self.search(bound)
            self._catalogs[bound] = catalog(res, self.threads, self.codes) if res.clique_number == 12 else []
        return self._catalogs[bound]


def _cardinality(ctx: Context) -> tuple[bool, str]:
    expected = max_cardinality(-2, 0)
    parts, ok = [], True
    for b in (ctx.bound, ctx.bound + 2):
        res = ctx.search(b)
        parts.append(f"bound {b}: {len(res.pool)} arcs, max clique {res.clique_number}, {len(res.cliques)} maximum")
        ok &= res.clique_number == expected
    if not ok:
        parts.append("bound not stabilized" if ctx.search(ctx.bound).clique_number != ctx.search(ctx.bound + 2).clique_number else f"expected {expected}")
    return ok, "; ".join(parts)


def _classification(ctx: Context) -> tuple[bool, str]:
    lo, hi = ctx.catalog(ctx.bound), ctx.catalog(ctx.bound + 2)
    same = [c.code for c in lo] == [c.code for c in hi]
    ok = same and len(hi) == EXPECTED_CLASSES
    detail = f"classes {len(lo)} at bound {ctx.bound}, {len(hi)} at bound {ctx.bound + 2}"
    if not same:
        detail += "; bound not stabilized"
    return ok, detail


def _j_distribution(ctx: Context) -> tuple[bool, str]:
    dist = Counter(c.J for c in ctx.catalog(ctx.bound + 2))
    found = {j: dist.get(j, 0) for j in sorted(set(dist) | set(EXPECTED_J), reverse=True)}
    return found == {j: EXPECTED_J.get(j, 0) for j in found}, "classes by |J|: " + ", ".join(f"{j}:{n}" for j, n in found.items())


def _once_marked(ctx: Context) -> tuple[bool, str]:
    tri = standard_fixture("torus-1-marked")
    res = search(tri, 4, 1, threads=ctx.threads)
    slopes = [slope_arc(p, q, tri) for p, q in ((1, 1), (-1, 1), (1, 0), (0, 1))]
    system = ArcSystem(tuple(slopes), 1)
    edges = sorted(a for a in res.pool if a.is_edge)
    # identify the slopes by their intersections with the three edges
    profile = sorted(tuple(geometric_intersection(a, e) for e in edges) for a in system)
    saturated = is_saturated(system, res.pool)
    ok = res.clique_number == max_cardinality(-1, 0) and saturated and len(res.cliques) > 0
    return ok, f"max clique {res.clique_number}; slope system edge profile {profile}; saturated {saturated}"


def _slope_oracle(ctx: Context) -> tuple[bool, str]:
    slopes = sorted({(p, q) for p in range(-4, 5) for q in range(0, 5) if gcd(p, q) == 1 and (q > 0 or p == 1)})
    arcs = {s: slope_arc(*s) for s in slopes}
    bad, pairs = [], 0
    for s, t in combinations(slopes, 2):
        pairs += 1
        if geometric_intersection(arcs[s], arcs[t]) != slope_intersection(s[0], s[1], t[0], t[1]):
            bad.append(f"{s[0]}/{s[1]} vs {t[0]}/{t[1]}")
    return not bad, f"{pairs} slope pairs, {len(bad)} mismatches" + (f": {', '.join(bad[:5])}" if bad else "")


def _non_loop_zero_system(ctx: Context) -> tuple[bool, str]:
    res = ctx.search(ctx.bound, 0)
    non_loops = [i for i, a in enumerate(res.pool) if not a.is_loop]
    size = largest_clique(res.graph, non_loops)
    return size == 2 * 2, f"largest disjoint family of x-y arcs: {size} among {len(non_loops)}"


def _triangulations(ctx: Context) -> tuple[bool, str]:
    res = ctx.search(ctx.bound, 0)
    triangle = SurfaceInvariants(0, 1, 0, 3)
    bad = 0
    for c in res.cliques:
        comps = cut_along(ctx.tri, [res.pool[i] for i in c]).components
        if any(comp != triangle for comp in comps):
            bad += 1
    ok = res.clique_number == 6 and bad == 0
    return ok, f"max 0-system {res.clique_number}; {len(res.cliques)} found, {bad} not cut into triangles"


def _cutting(ctx: Context) -> tuple[bool, str]:
    res = ctx.search(ctx.bound + 2)
    zero = [0] * len(res.pool)
    for i in range(len(res.pool)):
        for j in range(i + 1, len(res.pool)):
            if res.graph.adj[i] >> j & 1 and geometric_intersection(res.pool[i], res.pool[j], 1) == 0:
                zero[i] |= 1 << j
                zero[j] |= 1 << i
    seen: dict[tuple[int, ...], tuple] = {}
    bad = []
    for c in res.cliques:
        members = 0
        for i in c:
            members |= 1 << i
        J = tuple(i for i in c if members & ~(1 << i) & ~zero[i] == 0)
        if J not in seen:
            r = cut_along(ctx.tri, [res.pool[i] for i in J])
            seen[J] = (r.chi, len(r.components))
        chi, ncomp = seen[J]
        if chi != -2 or ncomp != 1 or len(J) > 3:
            bad.append(c)
    return not bad, f"{len(res.cliques)} maximal systems, {len(seen)} distinct J, {len(bad)} violations"


def _saturation(ctx: Context) -> tuple[bool, str]:
    pool = ctx.search(ctx.bound + 2).pool
    classes = ctx.catalog(ctx.bound + 2)
    unsat = [c.code_hex for c in classes if not is_saturated(ArcSystem(c.representative, 1), pool)]
    ok = not unsat and len(classes) == EXPECTED_CLASSES
    return ok, f"{len(classes) - len(unsat)}/{len(classes)} representatives saturated in a pool of {len(pool)}"


def _hexagon(ctx: Context) -> tuple[bool, str]:
    hexagon = construct_hexagon_system(ctx.tri)
    valid, _ = is_k_system(hexagon.members, 1)
    cls = classify([hexagon.members], symmetries=False)[0]
    j3 = [c.code for c in ctx.catalog(ctx.bound + 2) if c.J == 3]
    ok = valid and len(hexagon) == 12 and cls.code in j3
    return ok, f"{len(hexagon)} arcs, |J|={cls.J}, class {cls.code_hex}" + (" among the |J|=3 classes" if cls.code in j3 else " not in catalog")


def _fixtures(ctx: Context) -> tuple[bool, str]:
    parts, ok = [], True
    for name, expect in (("torus-1-marked", (1, 3, 2, -1)), ("torus-2-marked", (2, 6, 4, -2))):
        r = validate_triangulation(standard_fixture(name))
        got = (r.V, r.E, r.F, r.invariants.chi)
        ok &= got == expect
        parts.append(f"{name} V,E,F,chi={got[0]},{got[1]},{got[2]},{got[3]}")
    return ok, "; ".join(parts)


CHECKS: list[tuple[str, Callable[[Context], tuple[bool, str]]]] = [
    ("fixtures", _fixtures),
    ("cardinality", _cardinality),
    ("classification", _classification),
    ("J distribution", _j_distribution),
    ("once-marked torus", _once_marked),
    ("slope formula", _slope_oracle),
    ("disjoint x-y arcs", _non_loop_zero_system),
    ("triangulations", _triangulations),
    ("cut along J", _cutting),
    ("saturation", _saturation),
    ("hexagon construction", _hexagon),
]


def run_verification(bound: int = DEFAULT_BOUND, threads: int | None = None) -> Report:
    """Run every check at crossing bounds ``bound`` and ``bound + 2``."""
    ctx = Context(bound, threads)
    report = Report(bound)
    for n, (name, fn) in enumerate(CHECKS):
        try:
            ok, detail = fn(ctx)
        except Exception as exc:  # a crashing check is a failed check, with its reason
            log.exception("check %s crashed", name)
            ok, detail = False, f"error: {type(exc).__name__}: {exc}"
        report.checks.append(Check(n, name, ok, detail))
        log.info("%s", report.checks[-1].line())
    return report


_FORMULA_EXAMPLES: list[tuple[str, Callable[[], object], object]] = [
    ("max_cardinality(-2, 0)", lambda: max_cardinality(-2, 0), 12),
    ("max_cardinality(-1, 0)", lambda: max_cardinality(-1, 0), 4),
    ("max_cardinality(-2, 2)", lambda: max_cardinality(-2, 2), 11),
    ("slope 1/0 vs 0/1", lambda: slope_intersection(1, 0, 0, 1), 0),
    ("slope 1/1 vs -1/1", lambda: slope_intersection(1, 1, -1, 1), 1),
    ("slope 2/1 vs -1/1", lambda: slope_intersection(2, 1, -1, 1), 2),
    ("VV delta (1,-1)", lambda: family_intersection(FamilyPair("VV", (1, 0), (0, 1))), 0),
    ("WW 1/2, 3/2", lambda: family_intersection(FamilyPair("WW", Fraction(1, 2), Fraction(3, 2))), 0),
    ("YY 0, 4/3", lambda: family_intersection(FamilyPair("YY", 0, Fraction(4, 3))), 1),
    ("CD 0, 1/2", lambda: family_intersection(FamilyPair("CD", 0, Fraction(1, 2))), 0),
    ("polygon counts (-2, 0)", lambda: polygon_construction_counts(-2, 0), (3, 6, 9, 12)),
    ("polygon counts (-1, 0)", lambda: polygon_construction_counts(-1, 0), (2, 4, 2, 4)),
    ("polygon counts (-2, 2)", lambda: polygon_construction_counts(-2, 2), (2, 6, 9, 11)),
]


def _polygon_consistency() -> tuple[bool, str]:
    cases = bad = 0
    for twice in range(1, 13):
        chi = Fraction(-twice, 2)
        for v in range(0, 2 * twice + 3):
            try:
                counts = polygon_construction_counts(chi, v)
            except ValueError:
                continue
            cases += 1
            bad += counts[3] != max_cardinality(chi, v)
    return bad == 0, f"{cases} feasible (chi, v) with |chi| <= 6, {bad} totals differ from max_cardinality"


def run_formula_checks() -> Report:
    """Pass/fail table of the closed formulas against their worked values."""
    report = Report(0, title="arcforge verification, closed formulas")
    for n, (name, fn, expected) in enumerate(_FORMULA_EXAMPLES):
        try:
            got = fn()
        except Exception as exc:
            got = f"error: {exc}"
        report.checks.append(Check(n, name, got == expected, f"got {got}, expected {expected}"))
    ok, detail = _polygon_consistency()
    report.checks.append(Check(len(report.checks), "polygon totals", ok, detail))
    ok, detail = _slope_oracle(None)  # type: ignore[arg-type]
    report.checks.append(Check(len(report.checks), "slope formula", ok, detail))
    return report
