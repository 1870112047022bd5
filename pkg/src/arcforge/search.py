"""Bounded search for maximal systems and their classification.

Everything here is deterministic: pools are sorted, cliques are sorted index
tuples and classes are sorted by code, so the thread count only changes
speed.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .arcs import ArcClass, enumerate_arc_classes
from .classify import SystemClass, classify, system_code
from .systems import CompatibilityGraph, compatibility_graph, largest_clique, maximum_cliques, resolve_threads
from .surface import IdealTriangulation, standard_fixture

log = logging.getLogger(__name__)

__all__ = ["SearchResult", "search", "system_codes", "catalog"]


@dataclass
class SearchResult:
    tri: IdealTriangulation
    bound: int
    k: int
    pool: tuple[ArcClass, ...]
    graph: CompatibilityGraph = field(repr=False)
    clique_number: int
    cliques: list[tuple[int, ...]] = field(repr=False)

    def systems(self) -> list[tuple[ArcClass, ...]]:
        return [tuple(self.pool[i] for i in c) for c in self.cliques]


def search(
    tri: IdealTriangulation,
    bound: int,
    k: int = 1,
    floor: int | None = None,
    threads: int | None = None,
    candidates: Sequence[int] | None = None,
) -> SearchResult:
    """Pool of arcs crossing at most ``bound`` edges, its ``k``-compatibility graph and big cliques.

    Without ``floor`` only the maximum cliques are listed.
    """
    if bound < 0:
        raise ValueError("crossing bound must be non-negative")
    if k < 0:
        raise ValueError("k must be non-negative")
    pool = tuple(enumerate_arc_classes(tri, bound))
    g = compatibility_graph(pool, k, threads)
    omega = largest_clique(g, candidates)
    cliques = maximum_cliques(g, floor if floor is not None else max(omega, 1), candidates)
    log.info("bound %d: %d arcs, clique number %d, %d cliques", bound, len(pool), omega, len(cliques))
    return SearchResult(tri, bound, k, pool, g, omega, cliques)


_worker_pools: dict[tuple[str, int], tuple[ArcClass, ...]] = {}


def _worker_codes(job: tuple[str, int, list[tuple[int, ...]]]) -> list[bytes]:
    name, bound, cliques = job
    key = (name, bound)
    if key not in _worker_pools:
        _worker_pools[key] = tuple(enumerate_arc_classes(standard_fixture(name), bound))
    pool = _worker_pools[key]
    return [system_code([pool[i] for i in c]) for c in cliques]


def system_codes(result: SearchResult, threads: int | None = None, cache: dict | None = None) -> list[bytes]:
    """Canonical code of every listed clique, in clique order.

    ``cache`` maps sorted arc-key tuples to codes and may be shared between
    searches at different bounds.
    """
    threads = resolve_threads(threads)
    cache = {} if cache is None else cache
    keys = [tuple(result.pool[i].key for i in c) for c in result.cliques]
    todo = [i for i, key in enumerate(keys) if key not in cache]
    if threads > 1 and len(todo) > 64 and result.tri.name in ("torus-1-marked", "torus-2-marked"):
        chunk = max(16, len(todo) // (8 * threads))
        jobs = [
            (result.tri.name, result.bound, [result.cliques[i] for i in todo[s:s + chunk]])
            for s in range(0, len(todo), chunk)
        ]
        with ProcessPoolExecutor(threads) as ex:
            computed = [c for part in ex.map(_worker_codes, jobs) for c in part]
    else:
        computed = [system_code([result.pool[j] for j in result.cliques[i]]) for i in todo]
    for i, code in zip(todo, computed):
        cache[keys[i]] = code
    return [cache[key] for key in keys]


def catalog(result: SearchResult, threads: int | None = None, cache: dict | None = None) -> list[SystemClass]:
    """Classes of the listed cliques."""
    cache = {} if cache is None else cache
    system_codes(result, threads, cache)
    return classify(result.systems(), cache)
