"""4-coloured graphs (gems) and their elementary invariants.

A gem on ``2p`` vertices is stored as four fixed-point-free involutions of
``{1, ..., 2p}``, one per colour in ``{0, 1, 2, 3}``.  Vertices are 1-indexed
everywhere; ``matchings[c][0]`` is an unused placeholder so that
``matchings[c][v]`` is the ``c``-neighbour of ``v``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from gemcomplexity.errors import GemFormatError

COLOURS = (0, 1, 2, 3)
PAIRS = tuple(combinations(COLOURS, 2))


def complement(colours):
    """Colours of ``{0,1,2,3}`` not in ``colours``, ascending."""
    return tuple(c for c in COLOURS if c not in colours)


@dataclass(frozen=True)
class Gem:
    name: str
    matchings: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.matchings) != 4:
            raise ValueError("a gem needs exactly four colour matchings")
        n = len(self.matchings[0]) - 1
        if n <= 0 or n % 2:
            raise ValueError(f"vertex count must be even and positive, got {n}")
        for c, m in enumerate(self.matchings):
            if len(m) != n + 1:
                raise ValueError(f"colour {c} matching has wrong length")
            for v in range(1, n + 1):
                w = m[v]
                if not 1 <= w <= n:
                    raise ValueError(f"colour {c}: vertex {v} paired out of range")
                if w == v:
                    raise ValueError(f"colour {c}: fixed point at vertex {v}")
                if m[w] != v:
                    raise ValueError(f"colour {c}: pairing is not an involution at {v}")

    @classmethod
    def from_pairs(cls, name, num_vertices, pairs):
        """Build from ``pairs[c]`` = iterable of ``(a, b)`` for each colour ``c``."""
        matchings = []
        for c in COLOURS:
            m = [0] * (num_vertices + 1)
            for a, b in pairs[c]:
                m[a], m[b] = b, a
            matchings.append(tuple(m))
        return cls(name, tuple(matchings))

    @property
    def num_vertices(self):
        return len(self.matchings[0]) - 1

    @property
    def order(self):
        return self.num_vertices

    def vertices(self):
        return range(1, self.num_vertices + 1)

    def neighbour(self, v, c):
        return self.matchings[c][v]

    def pairs(self, c):
        m = self.matchings[c]
        return [(v, m[v]) for v in self.vertices() if v < m[v]]

    def edges(self):
        """All edges as ``(u, w, c)`` with ``u < w``, sorted by colour then ``u``."""
        return [(u, w, c) for c in COLOURS for u, w in self.pairs(c)]

    def renamed(self, name):
        return Gem(name, self.matchings)

    def relabelled(self, perm, name=None):
        """Gem with vertex ``v`` renamed ``perm[v]`` (``perm[0]`` ignored)."""
        n = self.num_vertices
        new = []
        for m in self.matchings:
            out = [0] * (n + 1)
            for v in range(1, n + 1):
                out[perm[v]] = perm[m[v]]
            new.append(tuple(out))
        return Gem(self.name if name is None else name, tuple(new))


@dataclass(frozen=True)
class ResiduePartition:
    colour_set: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    # for two colours, classes[k] is already the cyclic order starting at its
    # smallest vertex and leaving it along the smaller colour
    membership: dict = field(compare=False, repr=False, hash=False)

    @property
    def count(self):
        return len(self.classes)

    def index_of(self, v):
        return self.membership[v]


@dataclass
class ValidationReport:
    valid: bool
    connected: bool
    involutions_ok: bool
    problems: list[str]

    def to_dict(self):
        return {
            "valid": self.valid,
            "connected": self.connected,
            "involutions_ok": self.involutions_ok,
            "problems": list(self.problems),
        }


def standard_gem(name="S3_order2"):
    """The 2-vertex gem, a crystallization of the 3-sphere."""
    return Gem.from_pairs(name, 2, {c: [(1, 2)] for c in COLOURS})


# ---------------------------------------------------------------------------
# GEM v1 text format
# ---------------------------------------------------------------------------

_COLOUR_LINE = re.compile(r"^([0-9]+)\s*:\s*((?:\(\s*-?[0-9]+\s+-?[0-9]+\s*\)\s*)*)$")
_PAIR = re.compile(r"\(\s*(-?[0-9]+)\s+(-?[0-9]+)\s*\)")


def parse_gem(text):
    """Parse a GEM v1 document.

    Raises :class:`GemFormatError` carrying the offending line number.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise GemFormatError("empty document")

    lineno, line = lines[0]
    head, _, name = line.partition(" ")
    if head != "gem" or not name.strip():
        raise GemFormatError("expected 'gem <name>'", lineno)
    name = name.strip()

    if len(lines) < 2:
        raise GemFormatError("missing 'vertices <2p>' line", lineno)
    lineno, line = lines[1]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "vertices" or not parts[1].isdigit():
        raise GemFormatError("expected 'vertices <2p>'", lineno)
    n = int(parts[1])
    if n <= 0 or n % 2:
        raise GemFormatError(f"vertex count must be even and positive, got {n}", lineno)

    pairs = {}
    last_lineno = lineno
    for lineno, line in lines[2:]:
        last_lineno = lineno
        match = _COLOUR_LINE.match(line)
        if not match:
            raise GemFormatError(f"malformed line {line!r}", lineno)
        c = int(match.group(1))
        if c not in COLOURS:
            raise GemFormatError(f"colour {c} outside 0..3", lineno)
        if c in pairs:
            raise GemFormatError(f"colour {c} repeated", lineno)
        seen = set()
        colour_pairs = []
        for a_text, b_text in _PAIR.findall(match.group(2)):
            a, b = int(a_text), int(b_text)
            for x in (a, b):
                if not 1 <= x <= n:
                    raise GemFormatError(f"vertex {x} out of range 1..{n}", lineno)
            if a == b:
                raise GemFormatError(f"fixed point: pair ({a} {b}) in colour {c}", lineno)
            for x in (a, b):
                if x in seen:
                    raise GemFormatError(
                        f"non-involution pairing: vertex {x} paired twice in colour {c}", lineno
                    )
                seen.add(x)
            colour_pairs.append((a, b))
        if len(seen) != n:
            missing = min(set(range(1, n + 1)) - seen)
            raise GemFormatError(
                f"non-involution pairing: vertex {missing} unpaired in colour {c}", lineno
            )
        pairs[c] = colour_pairs
    for c in COLOURS:
        if c not in pairs:
            raise GemFormatError(f"missing colour {c}", last_lineno)
    return Gem.from_pairs(name, n, pairs)


def serialize_gem(g):
    """Canonical GEM v1 text for ``g`` (pairs ``(a b)`` with ``a < b``, sorted by ``a``)."""
    out = [f"gem {g.name}", f"vertices {g.num_vertices}"]
    for c in COLOURS:
        body = " ".join(f"({a} {b})" for a, b in g.pairs(c))
        out.append(f"{c}: {body}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def _components(g, colours):
    n = g.num_vertices
    label = [-1] * (n + 1)
    classes = []
    for start in g.vertices():
        if label[start] >= 0:
            continue
        k = len(classes)
        label[start] = k
        members = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for c in colours:
                w = g.matchings[c][v]
                if label[w] < 0:
                    label[w] = k
                    members.append(w)
                    stack.append(w)
        classes.append(tuple(sorted(members)))
    return classes, label


def _cycles(g, i, j):
    mi, mj = g.matchings[i], g.matchings[j]
    n = g.num_vertices
    label = [-1] * (n + 1)
    cycles = []
    for start in g.vertices():
        if label[start] >= 0:
            continue
        k = len(cycles)
        cyc = []
        v, use_i = start, True
        while True:
            label[v] = k
            cyc.append(v)
            v = mi[v] if use_i else mj[v]
            use_i = not use_i
            if v == start:
                break
        cycles.append(tuple(cyc))
    return cycles, label


@lru_cache(maxsize=8192)
def residues(g, colours):
    """Residues of ``g`` on a 2- or 3-element colour set.

    For two colours ``{i, j}`` (``i < j``) each class is the bicoloured cycle in
    cyclic order: it starts at its smallest vertex and leaves it along colour
    ``i``.  Classes are ordered by smallest vertex.
    """
    colours = tuple(sorted(set(colours)))
    if len(colours) not in (2, 3) or any(c not in COLOURS for c in colours):
        raise ValueError(f"residues need a 2- or 3-element subset of 0..3, got {colours}")
    if len(colours) == 2:
        classes, label = _cycles(g, *colours)
    else:
        classes, label = _components(g, colours)
    membership = {v: label[v] for v in g.vertices()}
    return ResiduePartition(colours, tuple(classes), membership)


def g_pair(g, i, j):
    """Number of ``{i, j}``-residues."""
    return residues(g, (i, j)).count


def g_hat(g, c):
    """Number of connected components of the graph with colour ``c`` deleted."""
    return residues(g, complement((c,))).count


def g_table(g):
    return {f"{i}{j}": g_pair(g, i, j) for i, j in PAIRS}


def g_hat_table(g):
    return {str(c): g_hat(g, c) for c in COLOURS}


def is_connected(g):
    return len(_components(g, COLOURS)[0]) == 1


def bipartition(g):
    """Class ``0``/``1`` per vertex, or ``None`` when an odd cycle exists."""
    side = [-1] * (g.num_vertices + 1)
    for start in g.vertices():
        if side[start] >= 0:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for c in COLOURS:
                w = g.matchings[c][v]
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return side


def is_bipartite(g):
    """True iff ``g`` is bipartite, i.e. the represented manifold is orientable."""
    return bipartition(g) is not None


def is_contracted(g):
    return all(g_hat(g, c) == 1 for c in COLOURS)


def residue_euler_chars(g, c):
    """Euler characteristic of the surface of each component of the graph without colour ``c``."""
    others = complement((c,))
    part = residues(g, others)
    faces = [0] * part.count
    for i, j in combinations(others, 2):
        for cyc in residues(g, (i, j)).classes:
            faces[part.index_of(cyc[0])] += 1
    return [len(cls) - 3 * len(cls) // 2 + f for cls, f in zip(part.classes, faces)]


def is_manifold_gem(g):
    """Every 3-coloured residue is a 2-sphere."""
    return all(chi == 2 for c in COLOURS for chi in residue_euler_chars(g, c))


def euler_char_K(g):
    """Euler characteristic of the coloured pseudo-complex dual to ``g``."""
    n = g.num_vertices
    return (
        sum(g_hat(g, c) for c in COLOURS)
        - sum(g_pair(g, i, j) for i, j in PAIRS)
        + 2 * n
        - n
    )


def validate_gem(g):
    problems = []
    involutions_ok = True
    n = g.num_vertices
    for c, m in enumerate(g.matchings):
        for v in range(1, n + 1):
            if m[v] == v or not 1 <= m[v] <= n or m[m[v]] != v:
                involutions_ok = False
                problems.append(f"colour {c} is not a fixed-point-free involution at {v}")
                break
    connected = involutions_ok and is_connected(g)
    if involutions_ok and not connected:
        problems.append("disconnected")
    return ValidationReport(involutions_ok and connected, connected, involutions_ok, problems)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def connected_sum(g1, v1, g2, v2, name=None):
    """Graph connected sum: delete ``v1`` and ``v2`` and join the hanging ends colourwise.

    Vertices of ``g1`` other than ``v1`` keep their relative order and come
    first, followed by those of ``g2``.  For bipartite summands the result is
    bipartite for every choice of ``v1, v2``.
    """
    n1, n2 = g1.num_vertices, g2.num_vertices
    relabel1 = {}
    for v in g1.vertices():
        if v != v1:
            relabel1[v] = len(relabel1) + 1
    relabel2 = {}
    for v in g2.vertices():
        if v != v2:
            relabel2[v] = n1 - 1 + len(relabel2) + 1
    pairs = {}
    for c in COLOURS:
        cp = []
        for a, b in g1.pairs(c):
            if v1 not in (a, b):
                cp.append((relabel1[a], relabel1[b]))
        for a, b in g2.pairs(c):
            if v2 not in (a, b):
                cp.append((relabel2[a], relabel2[b]))
        cp.append((relabel1[g1.neighbour(v1, c)], relabel2[g2.neighbour(v2, c)]))
        pairs[c] = cp
    if name is None:
        name = f"{g1.name}#{g2.name}"
    return Gem.from_pairs(name, n1 + n2 - 2, pairs)


def insert_dipole(g, v, c, name=None):
    """Subdivide the ``c``-edge at ``v`` by a 1-dipole of colour ``c``.

    Two new vertices ``x, y`` are joined by every colour except ``c``; the
    result represents the same manifold and has one more ``c``-hat residue,
    so it is never contracted.
    """
    n = g.num_vertices
    x, y = n + 1, n + 2
    w = g.neighbour(v, c)
    pairs = {}
    for d in COLOURS:
        cp = [p for p in g.pairs(d) if not (d == c and v in p)]
        if d == c:
            cp += [(v, x), (w, y)]
        else:
            cp.append((x, y))
        pairs[d] = cp
    return Gem.from_pairs(name or f"{g.name}+dip{c}", n + 2, pairs)
