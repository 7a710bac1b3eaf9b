"""Maximal spanning forests of small multigraphs."""

from __future__ import annotations

from gemcomplexity.errors import BudgetExceeded
from gemcomplexity.unionfind import UnionFind

DEFAULT_FOREST_CAP = 1_000_000


def component_count(num_nodes, edges):
    uf = UnionFind(num_nodes)
    for u, v in edges:
        uf.union(u, v)
    return uf.count


def spanning_forests(num_nodes, edges, cap=DEFAULT_FOREST_CAP):
    """Yield every maximal spanning forest as a sorted tuple of edge indices.

    ``edges`` is a list of ``(u, v)`` node pairs; loops and parallel edges are
    allowed.  The recursion branches on each edge in index order: contract it
    (when it joins two current trees) or delete it (only when its endpoints
    stay connected through the chosen edges plus the undecided ones), so
    every leaf is a maximal forest and no leaf is wasted.  Raises
    :class:`BudgetExceeded` once more than ``cap`` forests have been produced.
    """
    m = len(edges)
    produced = 0
    chosen = []

    def still_connected(parent, i, u, v):
        # endpoints of edge i connected via the forest (parent) and edges after i
        uf = UnionFind(num_nodes)
        uf.parent = list(parent)
        for j in range(i + 1, m):
            a, b = edges[j]
            uf.union(a, b)
        return uf.find(u) == uf.find(v)

    def rec(i, uf):
        nonlocal produced
        if i == m:
            produced += 1
            if cap is not None and produced > cap:
                raise BudgetExceeded(f"more than {cap} spanning forests")
            yield tuple(chosen)
            return
        u, v = edges[i]
        ru, rv = uf.find(u), uf.find(v)
        if ru == rv:
            yield from rec(i + 1, uf)
            return
        snapshot = list(uf.parent)
        if still_connected(snapshot, i, ru, rv):
            yield from rec(i + 1, uf)
            uf.parent = list(snapshot)
        uf.parent[ru] = rv
        chosen.append(i)
        yield from rec(i + 1, uf)
        chosen.pop()
        uf.parent = snapshot

    base = UnionFind(num_nodes)
    yield from rec(0, base)
