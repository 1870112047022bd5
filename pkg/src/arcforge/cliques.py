"""Maximal clique enumeration over integer bitsets.

Bron-Kerbosch with Tomita pivoting, plus a size floor: a branch is cut as
soon as the current clique together with every remaining candidate cannot
reach ``floor`` vertices.  Vertex sets are Python ints used as bitsets.
"""

from __future__ import annotations

from typing import Iterator, Sequence

__all__ = ["maximal_cliques", "max_clique_size", "bits"]


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def maximal_cliques(adj: Sequence[int], floor: int = 1, candidates: int | None = None) -> list[tuple[int, ...]]:
    """All maximal cliques with at least ``floor`` vertices, sorted.

    ``adj[v]`` is the neighbour bitset of ``v`` (no self loops).  With
    ``candidates`` the search runs on the induced subgraph.
    """
    n = len(adj)
    if candidates is None:
        candidates = (1 << n) - 1
    out: list[tuple[int, ...]] = []
    popcount = int.bit_count

    def expand(r: list[int], p: int, x: int) -> None:
        if popcount(p) + len(r) < floor:
            return
        if not p:
            if not x:
                out.append(tuple(sorted(r)))
            return
        # pivot maximising |P & N(u)| over P | X
        best, pivot = -1, 0
        for u in bits(p | x):
            c = popcount(p & adj[u])
            if c > best:
                best, pivot = c, u
        for v in bits(p & ~adj[pivot]):
            r.append(v)
            expand(r, p & adj[v], x & adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v
            if popcount(p) + len(r) < floor:
                return

    expand([], candidates, 0)
    out.sort()
    return out


def max_clique_size(adj: Sequence[int], candidates: int | None = None) -> int:
    """Size of a largest clique, by branch and bound."""
    n = len(adj)
    if candidates is None:
        candidates = (1 << n) - 1
    best = 0
    popcount = int.bit_count

    def grow(size: int, p: int) -> None:
        nonlocal best
        if not p:
            best = max(best, size)
            return
        while p:
            if size + popcount(p) <= best:
                return
            v = p.bit_length() - 1
            p &= ~(1 << v)
            grow(size + 1, p & adj[v])

    grow(0, candidates)
    return best
