"""Exhaustive small-order census of crystallizations.

Generation works in two stages.  A crystallization's graph without colour 3
is a connected 3-coloured graph of a 2-sphere, so those are enumerated first
(colour 0 fixed, colour 1 running over the cycle types of the {0,1}-residues,
colour 2 over all perfect matchings).  Each sphere is then closed up by every
perfect matching in colour 3 whose bicoloured cycle counts are compatible
with the three remaining residues being spheres.  Candidates are deduplicated
by a canonical breadth-first code under colour-preserving isomorphism.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations

from gemcomplexity.errors import BudgetExceeded
from gemcomplexity.gem import (
    COLOURS,
    Gem,
    euler_char_K,
    g_hat_table,
    g_table,
    is_bipartite,
    is_contracted,
    is_manifold_gem,
    validate_gem,
)

MAX_CENSUS_ORDER = 12
DEFAULT_CENSUS_BUDGET = 20_000_000


@dataclass
class CatalogueEntry:
    gem: Gem
    invariants: dict
    h1: object = None  # H1Fingerprint when computed

    def to_record(self):
        g = self.gem
        rec = {
            "name": g.name,
            "vertices": g.num_vertices,
            "matchings": {str(c): [list(p) for p in g.pairs(c)] for c in COLOURS},
            "g_ij": self.invariants["g_ij"],
            "g_hat": self.invariants["g_hat"],
            "bipartite": self.invariants["bipartite"],
            "contracted": self.invariants["contracted"],
        }
        if self.h1 is not None:
            rec["h1"] = str(self.h1)
        return rec


@dataclass
class GemCatalogue:
    entries: list[CatalogueEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def gems(self):
        return [e.gem for e in self.entries]

    def select(self, fingerprint=None):
        if fingerprint is None:
            return list(self.entries)
        return [e for e in self.entries if e.h1 is not None and e.h1 == fingerprint]

    def to_jsonl(self):
        return "".join(json.dumps(e.to_record(), sort_keys=True) + "\n" for e in self.entries)


def gem_invariants(g):
    return {
        "g_ij": g_table(g),
        "g_hat": g_hat_table(g),
        "bipartite": is_bipartite(g),
        "contracted": is_contracted(g),
        "manifold": is_manifold_gem(g),
        "euler_char_K": euler_char_K(g),
    }


def make_entry(g, with_h1=True):
    report = validate_gem(g)
    if not report.valid:
        raise ValueError(f"{g.name}: " + "; ".join(report.problems))
    h1 = None
    if with_h1:
        from gemcomplexity.bridge import first_homology

        h1 = first_homology(g)
    return CatalogueEntry(g, gem_invariants(g), h1)


# ---------------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------------


def _bfs_code(ms, n, root, colours, best):
    """Breadth-first code from ``root``; ``None`` as soon as it exceeds ``best``."""
    label = [0] * (n + 1)
    order = [root]
    label[root] = 1
    code = []
    pos = 0
    smaller = best is None
    while pos < len(order):
        v = order[pos]
        pos += 1
        for c in colours:
            w = ms[c][v]
            if not label[w]:
                order.append(w)
                label[w] = len(order)
            x = label[w]
            if not smaller:
                b = best[len(code)]
                if x > b:
                    return None
                if x < b:
                    smaller = True
            code.append(x)
    if len(order) != n:
        raise ValueError("canonical code requires a connected graph")
    return tuple(code), label


def canonical_form(ms, n, colours=COLOURS):
    """Smallest breadth-first code over all roots, with its relabelling."""
    best, best_label = None, None
    for root in range(1, n + 1):
        res = _bfs_code(ms, n, root, colours, best)
        if res is not None:
            code, label = res
            if best is None or code < best:
                best, best_label = code, label
    return best, best_label


def canonical_gem(g, name=None, colour_quotient=False):
    """Relabel ``g`` into its canonical vertex numbering.

    With ``colour_quotient`` the colours are permuted as well, picking the
    smallest code over all 24 colour permutations.
    """
    ms = g.matchings
    n = g.num_vertices
    if not colour_quotient:
        code, label = canonical_form(ms, n)
        return g.relabelled(label, name), code
    best = None
    for perm in permutations(COLOURS):
        permuted = tuple(ms[perm[c]] for c in COLOURS)
        code, label = canonical_form(permuted, n)
        if best is None or code < best[0]:
            best = (code, label, permuted)
    code, label, permuted = best
    return Gem(g.name if name is None else name, permuted).relabelled(label), code


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self, k=1):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"census budget of {self.limit} steps exceeded")


def _partitions(p, largest=None):
    if largest is None:
        largest = p
    if p == 0:
        yield []
        return
    for k in range(min(p, largest), 0, -1):
        for rest in _partitions(p - k, k):
            yield [k] + rest


def _perfect_matchings(n, budget):
    """All perfect matchings of ``1..n`` as involution lists (index 0 unused)."""
    m = [0] * (n + 1)

    def rec():
        v = 1
        while v <= n and m[v]:
            v += 1
        if v > n:
            budget.tick()
            yield tuple(m)
            return
        for w in range(v + 1, n + 1):
            if not m[w]:
                m[v], m[w] = w, v
                yield from rec()
                m[v] = m[w] = 0

    yield from rec()


def _cycle_count(ms, i, j, n):
    seen = [False] * (n + 1)
    count = 0
    mi, mj = ms[i], ms[j]
    for s in range(1, n + 1):
        if seen[s]:
            continue
        count += 1
        v = s
        while True:
            seen[v] = True
            v = mi[v]
            seen[v] = True
            v = mj[v]
            if v == s:
                break
    return count


def _connected(ms, colours, n):
    seen = [False] * (n + 1)
    seen[1] = True
    stack = [1]
    k = 1
    while stack:
        v = stack.pop()
        for c in colours:
            w = ms[c][v]
            if not seen[w]:
                seen[w] = True
                k += 1
                stack.append(w)
    return k == n


def sphere_three_gems(n, budget):
    """Canonical matchings (colours 0,1,2) of connected 3-coloured 2-sphere graphs."""
    p = n // 2
    m0 = [0] * (n + 1)
    for a in range(1, n, 2):
        m0[a], m0[a + 1] = a + 1, a
    m0 = tuple(m0)
    found = {}
    for parts in _partitions(p):
        m1 = [0] * (n + 1)
        a = 1
        for k in parts:
            block = list(range(a, a + 2 * k))
            for t in range(k):
                x, y = block[2 * t + 1], block[(2 * t + 2) % (2 * k)]
                m1[x], m1[y] = y, x
            a += 2 * k
        m1 = tuple(m1)
        target = p + 2 - len(parts)
        for m2 in _perfect_matchings(n, budget):
            ms = (m0, m1, m2)
            if _cycle_count(ms, 0, 2, n) + _cycle_count(ms, 1, 2, n) != target:
                continue
            if not _connected(ms, (0, 1, 2), n):
                continue
            code, label = canonical_form(ms, n, (0, 1, 2))
            if code not in found:
                found[code] = tuple(_relabel(m, label, n) for m in ms)
    return [found[k] for k in sorted(found)]


def _relabel(m, label, n):
    out = [0] * (n + 1)
    for v in range(1, n + 1):
        out[label[v]] = label[m[v]]
    return tuple(out)


def _close_sphere(sphere, n, budget):
    """Colour-3 matchings turning ``sphere`` into a crystallization."""
    p = n // 2
    g01 = _cycle_count(sphere, 0, 1, n)
    g02 = _cycle_count(sphere, 0, 2, n)
    g12 = _cycle_count(sphere, 1, 2, n)
    a, b, c = p + 2 - g01, p + 2 - g02, p + 2 - g12
    twice = (a + b - c, a + c - b, b + c - a)
    if any(t <= 0 or t % 2 for t in twice):
        return
    targets = [t // 2 for t in twice]  # g03, g13, g23
    # other end of the {i,3}-path through each vertex while colour 3 is partial
    ends = [list(sphere[i]) for i in range(3)]
    closed = [0, 0, 0]
    m3 = [0] * (n + 1)
    free = [n]

    def rec():
        budget.tick()
        v = 1
        while v <= n and m3[v]:
            v += 1
        if v > n:
            yield tuple(m3)
            return
        for w in range(v + 1, n + 1):
            if m3[w]:
                continue
            saved = []
            ok = True
            for i in range(3):
                e = ends[i]
                if e[v] == w:
                    closed[i] += 1
                    saved.append(None)
                else:
                    x, y = e[v], e[w]
                    saved.append((x, y, e[x], e[y]))
                    e[x], e[y] = y, x
            free[0] -= 2
            paths = free[0] // 2
            for i in range(3):
                # each open {i,3}-path closes into at most one cycle
                if closed[i] > targets[i] or closed[i] + paths < targets[i]:
                    ok = False
            if ok:
                m3[v], m3[w] = w, v
                yield from rec()
                m3[v] = m3[w] = 0
            free[0] += 2
            for i in reversed(range(3)):
                s = saved[i]
                e = ends[i]
                if s is None:
                    closed[i] -= 1
                else:
                    x, y, ex, ey = s
                    e[x], e[y] = ex, ey

    yield from rec()


def census(max_vertices, budget=DEFAULT_CENSUS_BUDGET, with_h1=True, colour_quotient=False):
    """Crystallizations of 3-manifolds with at most ``max_vertices`` vertices.

    Entries are unique up to colour-preserving isomorphism (up to colour
    permutation as well when ``colour_quotient`` is set) and are ordered by
    vertex count, then canonical code.  Raises :class:`BudgetExceeded` when
    more than ``budget`` search steps are needed.
    """
    if max_vertices > MAX_CENSUS_ORDER:
        raise BudgetExceeded(f"census order is capped at {MAX_CENSUS_ORDER}, got {max_vertices}")
    ticker = _Budget(budget)
    cat = GemCatalogue()
    for n in range(2, max_vertices + 1, 2):
        found = {}
        for sphere in sphere_three_gems(n, ticker):
            for m3 in _close_sphere(sphere, n, ticker):
                ms = sphere + (m3,)
                if not all(_connected(ms, [d for d in COLOURS if d != c], n) for c in (0, 1, 2)):
                    continue
                g = Gem("candidate", ms)
                g, code = canonical_gem(g, colour_quotient=colour_quotient)
                found.setdefault(code, g)
        for k, code in enumerate(sorted(found)):
            g = found[code].renamed(f"cr{n}_{k:04d}")
            cat.entries.append(make_entry(g, with_h1=with_h1))
    return cat
