"""Combinatorial maps on closed surfaces carrying two systems of curves.

A :class:`SurfaceDiagram` is a signed rotation system: every vertex lists its
half-edges in cyclic order, and every edge carries a sign telling whether the
local orientations at its two ends agree (+1) or not (-1).  Each edge either
belongs to a named curve or is a *scaffold* edge (curve ``None``) whose only
job is to keep every face a disk, so that the surface can be recovered from
the map by face tracing.

Faces are traced on flags.  A flag is a half-edge together with a side: side
``+`` is the corner towards the next half-edge in the rotation, side ``-``
the corner towards the previous one.  Three involutions act on flags:

* ``t0`` moves to the other end of the edge (keeping the side of the edge);
* ``t1`` moves to the neighbouring half-edge across the shared corner;
* ``t2`` switches to the other side of the same half-edge.

Faces are the orbits of ``<t0, t1>``; the surface is orientable iff the flag
graph of all three involutions is bipartite.
"""

from __future__ import annotations

import re
from math import gcd
from dataclasses import dataclass, field
from functools import cached_property

from gemcomplexity.errors import DiagramFormatError

PRIME = "prime"
DOUBLE_PRIME = "double_prime"
SYSTEMS = (PRIME, DOUBLE_PRIME)


@dataclass(frozen=True)
class DiagramEdge:
    ends: tuple[tuple[int, int], tuple[int, int]]  # ((vertex, slot), (vertex, slot))
    sign: int
    curve: str | None


@dataclass
class DiagramReport:
    valid: bool
    problems: list[str]
    euler_char: int | None = None
    orientable: bool | None = None
    num_faces: int | None = None
    singular_vertices: int | None = None

    def to_dict(self):
        return {
            "valid": self.valid,
            "problems": list(self.problems),
            "euler_char": self.euler_char,
            "orientable": self.orientable,
            "num_faces": self.num_faces,
            "singular_vertices": self.singular_vertices,
        }


@dataclass(frozen=True, eq=False)
class SurfaceDiagram:
    """Vertices are ``1..num_vertices``; ``rotations[v - 1]`` lists half-edge ids.

    Half-edge ``h`` is end ``h % 2`` of edge ``h // 2``.
    """

    name: str
    rotations: tuple[tuple[int, ...], ...]
    edges: tuple[DiagramEdge, ...]
    curves: tuple[tuple[str, str], ...]  # (curve name, system), in declaration order
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic structure -------------------------------------------------

    @property
    def num_vertices(self):
        return len(self.rotations)

    @property
    def num_edges(self):
        return len(self.edges)

    @cached_property
    def system_of(self):
        return dict(self.curves)

    def curve_names(self, system=None):
        return [name for name, sys in self.curves if system is None or sys == system]

    @cached_property
    def location(self):
        """``location[h] = (vertex, slot)`` for every half-edge ``h``."""
        loc = [None] * (2 * len(self.edges))
        for v, rot in enumerate(self.rotations, start=1):
            for slot, h in enumerate(rot):
                loc[h] = (v, slot)
        return loc

    def curve_of_half_edge(self, h):
        return self.edges[h // 2].curve

    @cached_property
    def curve_edges(self):
        out = {name: [] for name, _ in self.curves}
        for e, edge in enumerate(self.edges):
            if edge.curve is not None:
                out.setdefault(edge.curve, []).append(e)
        return out

    def curve_darts(self, v):
        """``(slot, curve)`` for the curve half-edges at ``v``, in rotation order."""
        return [
            (slot, self.edges[h // 2].curve)
            for slot, h in enumerate(self.rotations[v - 1])
            if self.edges[h // 2].curve is not None
        ]

    def is_singular(self, v):
        """A vertex where a curve of one system crosses a curve of the other."""
        darts = self.curve_darts(v)
        if len(darts) != 4:
            return False
        names = [c for _, c in darts]
        return names[0] == names[2] and names[1] == names[3] and names[0] != names[1]

    @cached_property
    def singular_vertices(self):
        return tuple(v for v in range(1, self.num_vertices + 1) if self.is_singular(v))

    # -- flags -----------------------------------------------------------

    @cached_property
    def _flags(self):
        """Involutions on flags ``2*h + s`` (``s = 0`` for side +, ``1`` for side -)."""
        nh = 2 * len(self.edges)
        t0 = [0] * (2 * nh)
        t1 = [0] * (2 * nh)
        t2 = [0] * (2 * nh)
        for h in range(nh):
            t2[2 * h] = 2 * h + 1
            t2[2 * h + 1] = 2 * h
            twin = h ^ 1
            if self.edges[h // 2].sign > 0:
                t0[2 * h] = 2 * twin + 1
                t0[2 * h + 1] = 2 * twin
            else:
                t0[2 * h] = 2 * twin
                t0[2 * h + 1] = 2 * twin + 1
        for rot in self.rotations:
            d = len(rot)
            for slot, h in enumerate(rot):
                nxt = rot[(slot + 1) % d]
                t1[2 * h] = 2 * nxt + 1
                t1[2 * nxt + 1] = 2 * h
        return t0, t1, t2

    @cached_property
    def face_of_flag(self):
        """Face index of each flag; faces are numbered by their smallest flag."""
        t0, t1, _ = self._flags
        nf = len(t0)
        face = [-1] * nf
        k = 0
        for start in range(nf):
            if face[start] >= 0:
                continue
            stack = [start]
            face[start] = k
            while stack:
                f = stack.pop()
                for nb in (t0[f], t1[f]):
                    if face[nb] < 0:
                        face[nb] = k
                        stack.append(nb)
            k += 1
        return face

    @cached_property
    def num_faces(self):
        if not self.edges:
            return self.num_vertices  # each isolated vertex is a sphere
        return max(self.face_of_flag) + 1

    @cached_property
    def face_vertices(self):
        """Set of vertices on the boundary of each face."""
        out = [set() for _ in range(self.num_faces)]
        if not self.edges:
            for v in range(1, self.num_vertices + 1):
                out[v - 1].add(v)
            return out
        loc = self.location
        for flag, f in enumerate(self.face_of_flag):
            out[f].add(loc[flag // 2][0])
        return out

    def faces_of_edge(self, e):
        """Faces on the two sides of edge ``e`` (equal when both sides lie in one face)."""
        ff = self.face_of_flag
        h = 2 * e
        return ff[2 * h], ff[2 * h + 1]

    @cached_property
    def euler_char(self):
        return self.num_vertices - self.num_edges + self.num_faces

    @cached_property
    def orientable(self):
        if not self.edges:
            return True
        t0, t1, t2 = self._flags
        colour = [-1] * len(t0)
        for start in range(len(t0)):
            if colour[start] >= 0:
                continue
            colour[start] = 0
            stack = [start]
            while stack:
                f = stack.pop()
                for nb in (t0[f], t1[f], t2[f]):
                    if colour[nb] < 0:
                        colour[nb] = 1 - colour[f]
                        stack.append(nb)
                    elif colour[nb] == colour[f]:
                        return False
        return True

    @cached_property
    def connected(self):
        if not self.edges:
            return self.num_vertices == 1
        if any(len(rot) == 0 for rot in self.rotations):
            return False
        adj = {v: set() for v in range(1, self.num_vertices + 1)}
        for edge in self.edges:
            (a, _), (b, _) = edge.ends
            adj[a].add(b)
            adj[b].add(a)
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    # -- curves ----------------------------------------------------------

    def trace_curve(self, name):
        """Walk ``name`` once around.

        Returns ``(steps, closed)`` where ``steps`` lists ``(h_out, h_in, side)``:
        the curve leaves through half-edge ``h_out``, arrives through ``h_in``,
        and ``side`` is the flag side at ``h_out`` that lies on the curve's
        left, transported from the starting half-edge.  ``closed`` is False
        when the walk does not come back through every edge exactly once.
        """
        key = ("trace", name)
        if key in self._cache:
            return self._cache[key]
        edges = self.curve_edges.get(name, [])
        if not edges:
            result = ([], False)
            self._cache[key] = result
            return result
        loc = self.location
        start = 2 * edges[0]
        h_out = start
        side = 0
        steps = []
        visited = set()
        closed = False
        while True:
            e = h_out // 2
            if e in visited:
                break
            visited.add(e)
            h_in = h_out ^ 1
            steps.append((h_out, h_in, side))
            # crossing the edge: side s goes to -s*sign, written in flag parity
            sign = self.edges[e].sign
            side_in = 1 - side if sign > 0 else side
            v, _ = loc[h_in]
            others = [
                h for h in self.rotations[v - 1]
                if h != h_in and self.edges[h // 2].curve == name
            ]
            if len(others) != 1:
                break
            h_out = others[0]
            # passing straight through a vertex swaps the corner parity
            side = 1 - side_in
            if h_out == start:
                closed = side == 0 and len(visited) == len(edges)
                break
        result = (steps, closed)
        self._cache[key] = result
        return result

    def two_sided(self, name):
        """Product of edge signs along the curve is +1."""
        prod = 1
        for e in self.curve_edges.get(name, []):
            prod *= self.edges[e].sign
        return prod == 1


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate_diagram(d):
    problems = []
    loc_seen = {}
    nh = 2 * d.num_edges
    for v, rot in enumerate(d.rotations, start=1):
        for slot, h in enumerate(rot):
            if not 0 <= h < nh:
                problems.append(f"vertex {v}: half-edge {h} does not exist")
            elif h in loc_seen:
                problems.append(f"half-edge {h} appears twice in rotations")
            else:
                loc_seen[h] = (v, slot)
    missing = [h for h in range(nh) if h not in loc_seen]
    if missing:
        problems.append(f"half-edges missing from rotations: {missing[:5]}")
    for e, edge in enumerate(d.edges):
        for end in (0, 1):
            h = 2 * e + end
            if loc_seen.get(h) is not None and tuple(edge.ends[end]) != loc_seen[h]:
                problems.append(f"edge {e}: endpoint {edge.ends[end]} disagrees with rotations")
        if edge.sign not in (1, -1):
            problems.append(f"edge {e}: sign must be +1 or -1")
        if edge.curve is not None and edge.curve not in d.system_of:
            problems.append(f"edge {e}: undeclared curve {edge.curve}")
    for name, system in d.curves:
        if system not in SYSTEMS:
            problems.append(f"curve {name}: unknown system {system}")
    if problems:
        return DiagramReport(False, problems)

    if not d.connected:
        problems.append("map is not connected")

    for v in range(1, d.num_vertices + 1):
        darts = d.curve_darts(v)
        names = [c for _, c in darts]
        if len(darts) == 0:
            continue
        if len(darts) == 2:
            if names[0] != names[1]:
                problems.append(f"vertex {v}: curves {names[0]} and {names[1]} meet without crossing")
            continue
        if len(darts) == 4 and names[0] == names[2] and names[1] == names[3]:
            a, b = names[0], names[1]
            if a == b:
                problems.append(f"vertex {v}: curve {a} crosses itself")
            elif d.system_of.get(a) == d.system_of.get(b):
                problems.append(f"vertex {v}: curves {a} and {b} of one system intersect")
            continue
        problems.append(f"vertex {v}: curve half-edges {names} are not a transversal crossing")

    for name, _ in d.curves:
        if not d.curve_edges.get(name):
            problems.append(f"curve {name} has no edges")
            continue
        if not d.two_sided(name):
            problems.append(f"curve {name} is one-sided")
            continue
        if problems:
            continue
        _, closed = d.trace_curve(name)
        if not closed:
            problems.append(f"curve {name} is not a single simple closed curve")

    ok = not problems
    return DiagramReport(
        ok,
        problems,
        euler_char=d.euler_char if ok else None,
        orientable=d.orientable if ok else None,
        num_faces=d.num_faces if ok else None,
        singular_vertices=len(d.singular_vertices) if ok else None,
    )


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------


def build_diagram(name, rotations, edge_specs, curves):
    """Assemble a diagram from per-vertex rotations of edge ends.

    ``rotations[v - 1]`` lists ``(edge, end)`` pairs in cyclic order and
    ``edge_specs[e] = (sign, curve)``.  Edge endpoints are read off the
    rotations.
    """
    ends = [[None, None] for _ in edge_specs]
    rots = []
    for v, rot in enumerate(rotations, start=1):
        row = []
        for slot, (e, end) in enumerate(rot):
            ends[e][end] = (v, slot)
            row.append(2 * e + end)
        rots.append(tuple(row))
    edges = []
    for e, (sign, curve) in enumerate(edge_specs):
        if ends[e][0] is None or ends[e][1] is None:
            raise DiagramFormatError(f"edge {e} is missing an end")
        edges.append(DiagramEdge((ends[e][0], ends[e][1]), sign, curve))
    return SurfaceDiagram(name, tuple(rots), tuple(edges), tuple(curves))


def lens_diagram(p, q, name=None):
    """Genus-one diagram of the lens space L(p, q), for coprime ``0 < q < p``.

    The prime curve ``a`` is a horizontal circle on the square torus and the
    double-prime curve ``b`` has slope ``p / q``; crossing ``k`` sits at
    ``x = k / p`` and ``b`` runs from crossing ``k`` up to crossing ``k + q``.
    """
    if not (p >= 1 and 0 <= q < max(p, 2)) or gcd(p, q) != 1:
        raise ValueError(f"need coprime 0 <= q < p, got p={p}, q={q}")
    rotations = []
    for k in range(p):
        # east, north, west, south
        rotations.append([(k, 0), (p + k, 0), ((k - 1) % p, 1), (p + (k - q) % p, 1)])
    specs = [(1, "a")] * p + [(1, "b")] * p
    return build_diagram(name or f"lens_{p}_{q}", rotations, specs, [("a", PRIME), ("b", DOUBLE_PRIME)])


# ---------------------------------------------------------------------------
# HDG v1 text format
# ---------------------------------------------------------------------------

_EDGE_LINE = re.compile(
    r"^edge\s+([0-9]+)\s*:\s*([0-9]+)\s*,\s*([0-9]+)\s*-\s*([0-9]+)\s*,\s*([0-9]+)"
    r"\s+sign\s+([+-]?1)\s+curve\s+(\S+)$"
)
_VERTEX_LINE = re.compile(r"^([0-9]+)\s*:\s*((?:[0-9]+\s*)*)$")
_CURVE_LINE = re.compile(r"^curve\s+(\S+)\s*:\s*system\s+(\S+)$")


def parse_hdg(text):
    """Parse an HDG v1 document into a :class:`SurfaceDiagram`.

    Structure is checked here; topological validity is left to
    :func:`validate_diagram`.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise DiagramFormatError("empty document")
    lineno, line = lines[0]
    head, _, name = line.partition(" ")
    if head != "hdg" or not name.strip():
        raise DiagramFormatError("expected 'hdg <name>'", lineno)
    if len(lines) < 2:
        raise DiagramFormatError("missing 'crossings <n>' line", lineno)
    lineno, line = lines[1]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "crossings" or not parts[1].isdigit():
        raise DiagramFormatError("expected 'crossings <n>'", lineno)
    n = int(parts[1])

    rotations = {}
    edges = {}
    curves = []
    curve_names = set()
    for lineno, line in lines[2:]:
        if line.startswith("edge"):
            m = _EDGE_LINE.match(line)
            if not m:
                raise DiagramFormatError(f"malformed edge line {line!r}", lineno)
            e = int(m.group(1))
            if e in edges:
                raise DiagramFormatError(f"edge {e} repeated", lineno)
            ends = ((int(m.group(2)), int(m.group(3))), (int(m.group(4)), int(m.group(5))))
            for v, _ in ends:
                if not 1 <= v <= n:
                    raise DiagramFormatError(f"vertex {v} out of range 1..{n}", lineno)
            curve = m.group(7)
            edges[e] = (lineno, DiagramEdge(ends, int(m.group(6)), None if curve == "-" else curve))
        elif line.startswith("curve"):
            m = _CURVE_LINE.match(line)
            if not m:
                raise DiagramFormatError(f"malformed curve line {line!r}", lineno)
            cname, system = m.group(1), m.group(2)
            if system not in SYSTEMS:
                raise DiagramFormatError(f"unknown system {system!r}", lineno)
            if cname in curve_names or cname == "-":
                raise DiagramFormatError(f"curve {cname} repeated or reserved", lineno)
            curve_names.add(cname)
            curves.append((cname, system))
        else:
            m = _VERTEX_LINE.match(line)
            if not m:
                raise DiagramFormatError(f"malformed line {line!r}", lineno)
            v = int(m.group(1))
            if not 1 <= v <= n:
                raise DiagramFormatError(f"vertex {v} out of range 1..{n}", lineno)
            if v in rotations:
                raise DiagramFormatError(f"vertex {v} repeated", lineno)
            rotations[v] = tuple(int(x) for x in m.group(2).split())
    for v in range(1, n + 1):
        if v not in rotations:
            raise DiagramFormatError(f"missing rotation for vertex {v}")
    if sorted(edges) != list(range(len(edges))):
        raise DiagramFormatError("edge ids must be 0..E-1")
    nh = 2 * len(edges)
    seen = {}
    for v in range(1, n + 1):
        for slot, h in enumerate(rotations[v]):
            if h >= nh:
                raise DiagramFormatError(f"vertex {v}: unknown half-edge {h}")
            if h in seen:
                raise DiagramFormatError(f"half-edge {h} listed twice")
            seen[h] = (v, slot)
    for e in range(len(edges)):
        lineno, edge = edges[e]
        for end in (0, 1):
            if seen.get(2 * e + end) != edge.ends[end]:
                raise DiagramFormatError(
                    f"edge {e}: end {edge.ends[end]} does not match the rotation lines", lineno
                )
        if edge.curve is not None and edge.curve not in curve_names:
            raise DiagramFormatError(f"edge {e}: undeclared curve {edge.curve}", lineno)
    return SurfaceDiagram(
        name.strip(),
        tuple(rotations[v] for v in range(1, n + 1)),
        tuple(edges[e][1] for e in range(len(edges))),
        tuple(curves),
    )


def serialize_hdg(d):
    out = [f"hdg {d.name}", f"crossings {d.num_vertices}"]
    for v, rot in enumerate(d.rotations, start=1):
        out.append(f"{v}: " + " ".join(str(h) for h in rot) if rot else f"{v}:")
    for e, edge in enumerate(d.edges):
        (a, sa), (b, sb) = edge.ends
        sign = "+1" if edge.sign > 0 else "-1"
        curve = "-" if edge.curve is None else edge.curve
        out.append(f"edge {e}: {a},{sa}-{b},{sb} sign {sign} curve {curve}")
    for cname, system in d.curves:
        out.append(f"curve {cname}: system {system}")
    return "\n".join(out) + "\n"
