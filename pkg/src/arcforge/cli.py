"""``arcforge`` command line.

Exit codes: 0 success, 1 a verification or input check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path
from typing import Any

from .arcs import ArcClass, arc_from_json, enumerate_arc_classes, endpoints
from .classify import ClassificationError, classify
from .cutting import CutError, cut_along
from .intersections import intersection_matrix
from .render import RenderError, render_svg
from .search import catalog, search
from .surface import FIXTURE_NAMES, standard_fixture
from .systems import ArcSystem, SystemError_, non_intersecting_subset, resolve_threads
from .verify import DEFAULT_BOUND, run_formula_checks, run_verification

log = logging.getLogger("arcforge")

GOLDEN = "catalog-torus-2-marked.json"


class UsageError(Exception):
    pass


def _dump(data: Any, out: str | None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON: {exc}") from None


def _system_records(data: Any) -> list[dict]:
    """Accept one system, a list of systems, or a catalog."""
    if isinstance(data, dict):
        return [data]
    if isinstance(data, list) and all(isinstance(x, dict) and "members" in x for x in data):
        return data
    raise UsageError("expected a system object or a list of systems")


def _system(record: dict, surface: str | None = None) -> ArcSystem:
    name = record.get("surface") or surface
    if name is None and record.get("members"):
        name = record["members"][0].get("surface")
    if name not in FIXTURE_NAMES:
        raise UsageError(f"unknown or missing surface {name!r}")
    tri = standard_fixture(name)
    try:
        arcs = tuple(arc_from_json(m, tri) for m in record["members"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad arc record: {exc}") from None
    return ArcSystem(arcs, int(record.get("k", 1)))


def _arc_record(a: ArcClass) -> dict:
    rec = a.to_json()
    rec["label"] = a.label()
    rec["endpoints"] = endpoints(a)
    return rec


def cmd_enumerate(args: argparse.Namespace) -> int:
    tri = standard_fixture(args.surface)
    arcs = enumerate_arc_classes(tri, args.bound)
    _dump([_arc_record(a) for a in arcs], args.out)
    return 0


def cmd_intersect(args: argparse.Namespace) -> int:
    data = _load(args.arcs)
    if isinstance(data, dict):
        data = data.get("members", [])
    if not isinstance(data, list):
        raise UsageError("expected a list of arcs or a system")
    arcs = []
    for rec in data:
        name = rec.get("surface", args.surface)
        if name not in FIXTURE_NAMES:
            raise UsageError(f"unknown or missing surface {name!r}")
        arcs.append(arc_from_json(rec, standard_fixture(name)))
    if len({a.surface for a in arcs}) > 1:
        raise UsageError("arcs from different surfaces")
    _dump({"arcs": [a.label() for a in arcs], "matrix": intersection_matrix(arcs)}, args.out)
    return 0


def cmd_max_systems(args: argparse.Namespace) -> int:
    tri = standard_fixture(args.surface)
    res = search(tri, args.bound, args.k, args.floor, threads=args.threads)
    log.info("clique number %d", res.clique_number)
    _dump([ArcSystem(s, args.k).to_json() for s in res.systems()], args.out)
    return 0


def cmd_cut(args: argparse.Namespace) -> int:
    out = []
    for rec in _system_records(_load(args.system)):
        s = _system(rec)
        arcs = non_intersecting_subset(s) if args.subset == "J" else s.members
        tri = arcs[0].tri if arcs else standard_fixture(s.surface or rec.get("surface"))
        out.append(cut_along(tri, arcs).to_json())
    _dump(out if len(out) != 1 else out[0], args.out)
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    systems = [_system(r).members for r in _system_records(_load(args.systems))]
    classes = classify(systems)
    _dump([c.to_json() for c in classes], args.out)
    return 0


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.golden:
        sys.stdout.write(resources.files("arcforge").joinpath("data", GOLDEN).read_text())
        return 0
    tri = standard_fixture(args.surface)
    res = search(tri, args.bound, 1, threads=args.threads)
    classes = catalog(res, args.threads)
    _dump([c.to_json() for c in classes], args.out)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    records = _system_records(_load(args.system))
    if not 0 <= args.index < len(records):
        raise UsageError(f"--index {args.index} out of range (file holds {len(records)} systems)")
    rec = records[args.index]
    s = _system(rec, args.surface)
    tri = standard_fixture(args.surface or s.surface or rec.get("surface"))
    svg = render_svg(s.members, tri)
    if args.out and args.out != "-":
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "formulas":
        report = run_formula_checks()
    else:
        report = run_verification(args.bound, threads=args.threads)
    text = report.text()
    if args.out and args.out != "-":
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arcforge", description="Arcs, 1-systems and their classification on marked tori.")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default: $ARCFORGE_THREADS or 1)")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def surface(sp: argparse.ArgumentParser, default: str | None = "torus-2-marked") -> None:
        sp.add_argument("--surface", choices=FIXTURE_NAMES, default=default)

    def bound(sp: argparse.ArgumentParser, default: int = DEFAULT_BOUND) -> None:
        sp.add_argument("--bound", type=int, default=default, help=f"crossing bound of the arc pool (default {default})")

    sp = sub.add_parser("enumerate-arcs", help="list arc classes crossing at most --bound edges")
    surface(sp)
    bound(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("intersect", help="intersection matrix of arcs in a JSON file")
    sp.add_argument("--arcs", required=True)
    surface(sp, None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_intersect)

    sp = sub.add_parser("max-systems", help="maximal k-systems from the bounded pool")
    surface(sp)
    bound(sp)
    sp.add_argument("--k", type=int, default=1, choices=(0, 1))
    sp.add_argument("--floor", type=int, default=None, help="list every maximal clique of at least this size")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_max_systems)

    sp = sub.add_parser("cut", help="cut along a 0-system and report the pieces")
    sp.add_argument("--system", required=True)
    sp.add_argument("--subset", choices=("J", "all"), default="J", help="cut along J or along every member")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_cut)

    sp = sub.add_parser("classify", help="group systems into equivalence classes")
    sp.add_argument("--systems", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("catalog", help="search and classify all maximal 1-systems")
    surface(sp)
    bound(sp)
    sp.add_argument("--golden", action="store_true", help="print the shipped catalog instead of searching")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("render", help="draw a system as SVG")
    sp.add_argument("--system", required=True)
    sp.add_argument("--index", type=int, default=0, help="which system of a list or catalog")
    surface(sp, None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("verify", help="run the verification suite")
    sp.add_argument("suite", nargs="?", choices=("all", "formulas"), default="all", help="'formulas' checks only the closed formulas")
    bound(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        args.threads = resolve_threads(args.threads)
        if getattr(args, "bound", 0) < 0:
            raise UsageError("--bound must be non-negative")
        if getattr(args, "floor", None) is not None and args.floor < 1:
            raise UsageError("--floor must be at least 1")
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"arcforge: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        if isinstance(exc, (SystemError_, CutError, RenderError)):
            print(f"arcforge: {exc}", file=sys.stderr)
            return 1
        parser.print_usage(sys.stderr)
        print(f"arcforge: error: {exc}", file=sys.stderr)
        return 2
    except ClassificationError as exc:
        print(f"arcforge: inconclusive: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
