"""Systems of curves on surfaces, their reduction, and modified Heegaard complexity.

Everything here is computed from the combinatorial map alone: surfaces come
from face tracing, the pieces of a cut surface from unions of faces, and
region counts from the faces of the reduced map.  Nothing in this module
looks at gems.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from gemcomplexity.diagram import (
    DOUBLE_PRIME,
    PRIME,
    DiagramEdge,
    SurfaceDiagram,
    validate_diagram,
)
from gemcomplexity.errors import BudgetExceeded, DiagramFormatError
from gemcomplexity.forests import DEFAULT_FOREST_CAP
from gemcomplexity.unionfind import UnionFind


@dataclass(frozen=True)
class CutComponent:
    faces: tuple[int, ...]
    capped_euler_char: int
    orientable: bool
    boundary_circles: int

    @property
    def genus_zero(self):
        return self.capped_euler_char == 2

    @property
    def genus(self):
        """``(2 - chi) / 2`` after capping, or ``None`` for an odd crosscap number."""
        k = 2 - self.capped_euler_char
        return k // 2 if k % 2 == 0 else None


@dataclass(frozen=True)
class DualGraph:
    system: str
    nodes: tuple[CutComponent, ...]
    edges: tuple[tuple[str, int, int], ...]  # (curve, node on its left, node on its right)
    surface_euler_char: int

    @property
    def positive_nodes(self):
        return tuple(i for i, c in enumerate(self.nodes) if not c.genus_zero)


@dataclass(frozen=True)
class SystemClass:
    proper: bool
    reduced: bool

    @property
    def case(self):
        return {(True, True): "i", (False, True): "ii", (True, False): "iii", (False, False): "iv"}[
            (self.proper, self.reduced)
        ]


@dataclass(frozen=True)
class TreeFormulaCheck:
    holds: bool
    lhs: int
    rhs: int | None
    note: str = ""


@dataclass
class GeneralizedHeegaardDiagram:
    diagram: SurfaceDiagram
    prime_proper: bool

    @classmethod
    def from_diagram(cls, d):
        report = validate_diagram(d)
        if not report.valid:
            raise DiagramFormatError("invalid diagram: " + "; ".join(report.problems))
        return cls(d, classify_system(d, PRIME).proper)


@dataclass
class ReducedDiagram:
    diagram: SurfaceDiagram
    removed_prime: tuple[str, ...]
    removed_double_prime: tuple[str, ...]
    forest_index: tuple[int, int]
    checks: dict


@dataclass
class HMWitness:
    removed_prime: tuple[str, ...]
    removed_double_prime: tuple[str, ...]
    forest_index: tuple[int, int]
    crossings: int
    region_faces: tuple[int, ...]
    region_singular: tuple[int, ...]
    value: int

    def to_dict(self):
        return {
            "removed_prime": list(self.removed_prime),
            "removed_double_prime": list(self.removed_double_prime),
            "forest_index": list(self.forest_index),
            "crossings": self.crossings,
            "region_faces": list(self.region_faces),
            "region_singular_vertices": list(self.region_singular),
            "value": self.value,
        }


# ---------------------------------------------------------------------------
# cutting along a system
# ---------------------------------------------------------------------------


def _in_system(d, e, system):
    curve = d.edges[e].curve
    return curve is not None and d.system_of[curve] == system


def cut_components(d, system):
    """Pieces of the surface cut along every curve of ``system``, with capped data.

    A piece is a union of faces joined across edges that are not on a
    ``system`` curve.  Its Euler characteristic with boundary is
    faces - interior edges + interior vertices (the boundary circles
    contribute zero); capping adds one per boundary circle.
    """
    key = ("cut", system)
    if key in d._cache:
        return d._cache[key]
    if not d.edges:
        comps = [CutComponent((0,), 2, True, 0)]
        d._cache[key] = comps
        return comps
    nf = d.num_faces
    ff = d.face_of_flag
    uf = UnionFind(nf)
    for e in range(d.num_edges):
        if not _in_system(d, e, system):
            uf.union(*d.faces_of_edge(e))
    roots = sorted({uf.find(f) for f in range(nf)}, key=lambda r: min(
        f for f in range(nf) if uf.find(f) == r))
    index = {r: k for k, r in enumerate(roots)}
    comp_of_face = [index[uf.find(f)] for f in range(nf)]
    k = len(roots)
    faces = [[] for _ in range(k)]
    for f in range(nf):
        faces[comp_of_face[f]].append(f)
    interior_edges = [0] * k
    for e in range(d.num_edges):
        if not _in_system(d, e, system):
            interior_edges[comp_of_face[d.faces_of_edge(e)[0]]] += 1
    interior_vertices = [0] * k
    for v, rot in enumerate(d.rotations, start=1):
        if rot and not any(_in_system(d, h // 2, system) for h in rot):
            interior_vertices[comp_of_face[ff[2 * rot[0]]]] += 1
    boundary = [0] * k
    for name in d.curve_names(system):
        h = 2 * d.curve_edges[name][0]
        boundary[comp_of_face[ff[2 * h]]] += 1
        boundary[comp_of_face[ff[2 * h + 1]]] += 1
    orientable = _piece_orientability(d, system, comp_of_face, k)
    comps = [
        CutComponent(
            tuple(faces[i]),
            len(faces[i]) - interior_edges[i] + interior_vertices[i] + boundary[i],
            orientable[i],
            boundary[i],
        )
        for i in range(k)
    ]
    d._cache[key] = comps
    return comps


def _piece_orientability(d, system, comp_of_face, k):
    t0, t1, t2 = d._flags
    ff = d.face_of_flag
    colour = [-1] * len(t0)
    ok = [True] * k
    for start in range(len(t0)):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        stack = [start]
        comp = comp_of_face[ff[start]]
        while stack:
            f = stack.pop()
            nbs = [t0[f], t1[f]]
            if not _in_system(d, f // 4, system):
                nbs.append(t2[f])
            for nb in nbs:
                if colour[nb] < 0:
                    colour[nb] = 1 - colour[f]
                    stack.append(nb)
                elif colour[nb] == colour[f]:
                    ok[comp] = False
    return ok


def classify_system(d, system):
    comps = cut_components(d, system)
    proper = all(c.genus_zero for c in comps)
    reduced = len(comps) == 1 or not any(c.genus_zero for c in comps)
    return SystemClass(proper, reduced)


def dual_graph(d, system):
    """Nodes are the cut pieces; each curve joins the pieces on its two sides."""
    comps = cut_components(d, system)
    ff = d.face_of_flag
    comp_of_face = {}
    for i, c in enumerate(comps):
        for f in c.faces:
            comp_of_face[f] = i
    edges = []
    for name in d.curve_names(system):
        h = 2 * d.curve_edges[name][0]
        edges.append((name, comp_of_face[ff[2 * h]], comp_of_face[ff[2 * h + 1]]))
    return DualGraph(system, tuple(comps), tuple(edges), d.euler_char)


def _is_admissible(dg, subset, positive):
    n = len(dg.nodes)
    uf = UnionFind(n)
    for k in subset:
        _, u, v = dg.edges[k]
        if not uf.union(u, v):
            return False  # loop or cycle
    if not positive:
        return uf.count == 1
    roots = [uf.find(p) for p in positive]
    if len(set(roots)) != len(roots):
        return False
    return set(roots) == {uf.find(x) for x in range(n)}


def admissible_forests(dg, cap=DEFAULT_FOREST_CAP):
    """All edge subsets of the dual graph allowed by the reduction rules.

    With no positive-genus node, the subsets are the maximal trees; otherwise
    they are the forests through every node whose trees each contain exactly
    one positive-genus node.  Subsets are tuples of edge indices, in
    lexicographic order.  Raises :class:`BudgetExceeded` after examining more
    than ``cap`` subsets.
    """
    positive = dg.positive_nodes
    out = []
    examined = 0
    m = len(dg.edges)
    for size in range(0, min(m, len(dg.nodes) - 1) + 1):
        for subset in combinations(range(m), size):
            examined += 1
            if cap is not None and examined > cap:
                raise BudgetExceeded(f"more than {cap} candidate forests examined")
            if _is_admissible(dg, subset, positive):
                out.append(subset)
    out.sort()
    return out


def check_tree_formula(dg, forest):
    """Compare ``|E(T)|`` with ``|C| - g - max(0, h-1) + sum g_j``.

    ``g`` is the genus of the surface and ``g_j`` the genera of the
    positive-genus pieces (crosscap number halved when non-orientable).
    When a genus is not an integer under that convention the identity is
    not evaluated and ``note`` says ``"convention mismatch"``.
    """
    lhs = len(forest)
    chi = dg.surface_euler_char
    if (2 - chi) % 2:
        return TreeFormulaCheck(False, lhs, None, "convention mismatch")
    g = (2 - chi) // 2
    positive = [dg.nodes[i] for i in dg.positive_nodes]
    genera = [c.genus for c in positive]
    if any(x is None for x in genera):
        return TreeFormulaCheck(False, lhs, None, "convention mismatch")
    h = len(positive)
    rhs = len(dg.edges) - g - max(0, h - 1) + sum(genera)
    return TreeFormulaCheck(lhs == rhs, lhs, rhs)


# ---------------------------------------------------------------------------
# removing curves
# ---------------------------------------------------------------------------


class _WorkMap:
    """Mutable copy of a diagram used while deleting and smoothing edges."""

    def __init__(self, d):
        self.rot = {v: [(h // 2, h % 2) for h in rot] for v, rot in enumerate(d.rotations, start=1)}
        self.edges = {
            e: {"ends": [edge.ends[0][0], edge.ends[1][0]], "sign": edge.sign, "curve": edge.curve}
            for e, edge in enumerate(d.edges)
        }

    def delete_edge(self, e):
        edge = self.edges.pop(e)
        for end in (0, 1):
            v = edge["ends"][end]
            self.rot[v].remove((e, end))

    def smooth(self, v):
        """Merge the two edges at a 2-valent vertex ``v`` into one."""
        (e1, end1), (e2, end2) = self.rot[v]
        a, b = self.edges[e1], self.edges[e2]
        far2 = 1 - end2
        w = b["ends"][far2]
        a["ends"][end1] = w
        a["sign"] *= b["sign"]
        rw = self.rot[w]
        rw[rw.index((e2, far2))] = (e1, end1)
        del self.edges[e2]
        del self.rot[v]

    def freeze(self, name, curves):
        vmap = {v: k for k, v in enumerate(sorted(self.rot), start=1)}
        emap = {e: k for k, e in enumerate(sorted(self.edges))}
        ends = {}
        rots = []
        for v in sorted(self.rot):
            row = []
            for slot, (e, end) in enumerate(self.rot[v]):
                ends[(emap[e], end)] = (vmap[v], slot)
                row.append(2 * emap[e] + end)
            rots.append(tuple(row))
        edges = []
        for e in sorted(self.edges):
            k = emap[e]
            edge = self.edges[e]
            edges.append(DiagramEdge((ends[(k, 0)], ends[(k, 1)]), edge["sign"], edge["curve"]))
        return SurfaceDiagram(name, tuple(rots), tuple(edges), tuple(curves))


def remove_curves(d, names, name=None):
    """Drop the given curves and tidy the map without changing the surface.

    The removed curves' edges become scaffold.  A scaffold edge with
    different faces on its sides is deleted (two disks merge into one),
    pendant scaffold edges are pruned, and 2-valent vertices whose two edges
    belong to the same curve (or are both scaffold) are smoothed.  Each
    crossing-free closed curve keeps one 2-valent marker vertex.
    """
    names = set(names)
    work = _WorkMap(d)
    for edge in work.edges.values():
        if edge["curve"] in names:
            edge["curve"] = None

    uf = UnionFind(max(d.num_faces, 1))
    for e in sorted(work.edges):
        if work.edges[e]["curve"] is None:
            f1, f2 = d.faces_of_edge(e)
            if uf.union(f1, f2):
                work.delete_edge(e)

    changed = True
    while changed:
        changed = False
        for v in sorted(work.rot):
            darts = work.rot.get(v)
            if darts is None:
                continue
            if len(darts) == 1 and len(work.rot) > 1:
                e, _ = darts[0]
                if work.edges[e]["curve"] is None:
                    work.delete_edge(e)
                    del work.rot[v]
                    changed = True
            elif len(darts) == 2:
                (e1, _), (e2, _) = darts
                if e1 != e2 and work.edges[e1]["curve"] == work.edges[e2]["curve"]:
                    work.smooth(v)
                    changed = True
    curves = [(c, s) for c, s in d.curves if c not in names]
    return work.freeze(name or d.name, curves)


def reduce_all(H, cap=DEFAULT_FOREST_CAP, check=True):
    """Every reduced diagram obtained from admissible forests of both systems.

    Ordered by (index of the prime forest, index of the double-prime forest).
    With ``check`` each result records the tree-formula outcome of both
    forests and the classification of its two systems.
    """
    d = H.diagram if isinstance(H, GeneralizedHeegaardDiagram) else H
    dg1 = dual_graph(d, PRIME)
    dg2 = dual_graph(d, DOUBLE_PRIME)
    forests1 = admissible_forests(dg1, cap=cap)
    forests2 = admissible_forests(dg2, cap=cap)
    checks1 = [check_tree_formula(dg1, t) for t in forests1] if check else None
    checks2 = [check_tree_formula(dg2, t) for t in forests2] if check else None
    out = []
    for (i, t1), (j, t2) in product(enumerate(forests1), enumerate(forests2)):
        removed1 = tuple(dg1.edges[k][0] for k in t1)
        removed2 = tuple(dg2.edges[k][0] for k in t2)
        rd = remove_curves(d, removed1 + removed2, name=f"{d.name}/rd{i}.{j}")
        checks = {}
        if check:
            c1 = classify_system(rd, PRIME)
            c2 = classify_system(rd, DOUBLE_PRIME)
            checks = {
                "tree_formula_prime": checks1[i],
                "tree_formula_double_prime": checks2[j],
                "prime": c1,
                "double_prime": c2,
                "euler_char_preserved": rd.euler_char == d.euler_char,
                "orientability_preserved": rd.orientable == d.orientable,
            }
        out.append(ReducedDiagram(rd, removed1, removed2, (i, j), checks))
    return out


# ---------------------------------------------------------------------------
# complexity
# ---------------------------------------------------------------------------


def diagram_regions(d):
    """Regions of the surface minus all curves, as sorted tuples of faces."""
    if not d.edges:
        return [(0,)]
    uf = UnionFind(d.num_faces)
    for e, edge in enumerate(d.edges):
        if edge.curve is None:
            uf.union(*d.faces_of_edge(e))
    return [tuple(g) for g in uf.groups()]


def modified_complexity_reduced(d):
    """``(value, region faces, singular vertices on it)`` for a reduced diagram.

    The value is the number of singular vertices minus the largest number
    of singular vertices on the closure of one region.
    """
    singular = set(d.singular_vertices)
    fv = d.face_vertices
    best = None
    for region in diagram_regions(d):
        on = set()
        for f in region:
            on |= fv[f] & singular
        if best is None or len(on) > len(best[1]):
            best = (region, on)
    region, on = best
    return len(singular) - len(on), region, tuple(sorted(on))


def modified_complexity(H, cap=DEFAULT_FOREST_CAP):
    """Minimum modified complexity over all reductions, with the realizing one."""
    best = None
    for rd in reduce_all(H, cap=cap, check=False):
        value, region, on = modified_complexity_reduced(rd.diagram)
        if best is None or value < best.value:
            best = HMWitness(
                rd.removed_prime,
                rd.removed_double_prime,
                rd.forest_index,
                len(rd.diagram.singular_vertices),
                region,
                on,
                value,
            )
    return best.value, best
