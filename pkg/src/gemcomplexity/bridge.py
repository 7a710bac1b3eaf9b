"""From gems to generalized Heegaard diagrams, and the two-way complexity check.

For a colour pair ``{a, b}`` the regular embedding of a gem is rebuilt as a
:class:`~gemcomplexity.diagram.SurfaceDiagram`: gem vertices become
crossings, gem edges become map edges, the ``{a,b}``-cycles form the prime
system and the ``{a2,b2}``-cycles the double-prime system.  The diagram side
of the package then reduces and measures it with no knowledge of the gem,
which makes it an independent check on the gem-side computation.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from gemcomplexity.diagram import DOUBLE_PRIME, PRIME, SurfaceDiagram, build_diagram
from gemcomplexity.embedding import normalize_pair, regular_embedding
from gemcomplexity.forests import DEFAULT_FOREST_CAP
from gemcomplexity.gem import COLOURS, bipartition, complement, residues
from gemcomplexity.gm import choice_value, forest_choices, gm_value, parse_pairs
from gemcomplexity.heegaard import (
    classify_system,
    cut_components,
    modified_complexity_reduced,
    reduce_all,
)
from gemcomplexity.snf import cokernel, invariant_factors


@dataclass
class InducedDiagram:
    gem: object
    pair: tuple[int, int]
    complement: tuple[int, int]
    diagram: SurfaceDiagram
    sides: tuple[int, ...]  # local orientation sign per gem vertex (index 0 unused)


def _local_sides(g):
    """+1/-1 per vertex: the bipartition, or a BFS 2-colouring when there is none."""
    classes = bipartition(g)
    if classes is not None:
        return tuple(1 if s == 0 else -1 for s in classes)
    side = [0] * (g.num_vertices + 1)
    for start in g.vertices():
        if side[start]:
            continue
        side[start] = 1
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for c in COLOURS:
                w = g.matchings[c][v]
                if not side[w]:
                    side[w] = -side[v]
                    queue.append(w)
    return tuple(side)


def induce_diagram(g, pair):
    """The diagram on the surface of the regular embedding for ``pair``.

    The rotation at a vertex follows ``(a, a2, b, b2)``, reversed where the
    local side is -1; an edge gets sign -1 exactly when its ends have the
    same side, so bipartite gems give all-positive signs.
    """
    a, b = normalize_pair(pair)
    a2, b2 = complement((a, b))
    eps = (a, a2, b, b2)
    sides = _local_sides(g)
    fam1 = residues(g, (a, b))
    fam2 = residues(g, (a2, b2))

    edge_id = {}
    specs = []
    for c in COLOURS:
        if c in (a, b):
            curve = "x{}"
            part = fam1
        else:
            curve = "y{}"
            part = fam2
        for u, w in g.pairs(c):
            edge_id[(c, u)] = (len(specs), 0)
            edge_id[(c, w)] = (len(specs), 1)
            specs.append((-sides[u] * sides[w], curve.format(part.index_of(u))))
    rotations = []
    for v in g.vertices():
        order = eps if sides[v] > 0 else eps[::-1]
        rotations.append([edge_id[(c, v)] for c in order])
    curves = [(f"x{k}", PRIME) for k in range(fam1.count)]
    curves += [(f"y{k}", DOUBLE_PRIME) for k in range(fam2.count)]
    d = build_diagram(f"{g.name}/{a}{b}", rotations, specs, curves)
    return InducedDiagram(g, (a, b), (a2, b2), d, sides)


# ---------------------------------------------------------------------------
# first homology
# ---------------------------------------------------------------------------


_GROUP_TERM = re.compile(r"^Z(\d*)$")


@dataclass(frozen=True)
class H1Fingerprint:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z{t}" for t in self.torsion]
        return "+".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text):
        """Read ``"0"``, ``"Z"``, ``"Z2"``, ``"Z+Z2+Z2"`` and the like."""
        text = text.replace(" ", "").replace("⊕", "+")
        if text in ("0", "1", ""):
            return cls(0, ())
        rank = 0
        torsion = []
        for term in text.split("+"):
            m = _GROUP_TERM.match(term.replace("_", ""))
            if not m:
                raise ValueError(f"bad group term {term!r}")
            if m.group(1) in ("", "0"):
                rank += 1
            elif int(m.group(1)) > 1:
                torsion.append(int(m.group(1)))
        return cls(rank, _normal_torsion(torsion))

    def __eq__(self, other):
        if isinstance(other, str):
            other = H1Fingerprint.parse(other)
        if not isinstance(other, H1Fingerprint):
            return NotImplemented
        return (self.rank, self.torsion) == (other.rank, other.torsion)

    def __hash__(self):
        return hash((self.rank, self.torsion))


def _normal_torsion(orders):
    """Invariant factors of a finite abelian group given as a product of cyclic groups."""
    if not orders:
        return ()
    diag = [[o if i == j else 0 for j in range(len(orders))] for i, o in enumerate(orders)]
    return tuple(f for f in invariant_factors(diag) if f > 1)


def _crossing_sign(d, gamma_at_v, slot_in):
    """+1 when a curve entering through ``slot_in`` comes from the left of gamma."""
    l, k, side, deg = gamma_at_v
    forward = 0 < (slot_in - l) % deg < (k - l) % deg
    return 1 if forward == (side == 0) else -1


def relation_matrix(d):
    """Rows: double-prime curves; columns: prime curves; entries: signed crossing counts."""
    loc = d.location
    primes = d.curve_names(PRIME)
    col = {name: j for j, name in enumerate(primes)}
    at = {}
    for name in primes:
        steps, _ = d.trace_curve(name)
        for h_out, _, side in steps:
            v, l = loc[h_out]
            rot = d.rotations[v - 1]
            k = next(s for s, h in enumerate(rot) if s != l and d.edges[h // 2].curve == name)
            at[v] = (name, (l, k, side, len(rot)))
    rows = []
    for name in d.curve_names(DOUBLE_PRIME):
        row = [0] * len(primes)
        steps, _ = d.trace_curve(name)
        for j, (h_out, _, _) in enumerate(steps):
            v, _ = loc[h_out]
            if v not in at:
                continue
            h_prev_in = steps[j - 1][1]
            pv, slot_in = loc[h_prev_in]
            assert pv == v
            gamma, data = at[v]
            row[col[gamma]] += _crossing_sign(d, data, slot_in)
        rows.append(row)
    return rows, primes


def diagram_homology(d):
    """H1 of the manifold of a diagram whose two systems are proper."""
    rows, primes = relation_matrix(d)
    rank, torsion = cokernel(rows, len(primes))
    return H1Fingerprint(rank, tuple(torsion))


def first_homology(g, pair=(0, 1)):
    """H1 fingerprint of the manifold of ``g``, read off one reduced induced diagram."""
    induced = induce_diagram(g, pair)
    rd = reduce_all(induced.diagram, check=False)[0]
    return diagram_homology(rd.diagram)


# ---------------------------------------------------------------------------
# cross-check
# ---------------------------------------------------------------------------


@dataclass
class PairSummary:
    pair: tuple[int, int]
    crossings: int
    prime_curves: int
    double_prime_curves: int
    euler_char: int
    orientable: bool
    embedding_euler_char: int
    prime_proper: bool
    prime_reduced: bool
    double_prime_proper: bool
    double_prime_reduced: bool
    reductions: int
    hm_value: int

    def to_dict(self):
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


@dataclass
class CrossCheckReport:
    gem_name: str
    gm_value: int
    hm_value: int
    equal: bool
    gem_witness: dict
    diagram_witness: dict
    pairs: list[PairSummary] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    forests_checked: int = 0
    choices_compared: int = 0
    positive_choices: int = 0

    @property
    def ok(self):
        return self.equal and not self.failures

    def to_dict(self):
        return {
            "gem": self.gem_name,
            "gm_value": self.gm_value,
            "hm_value": self.hm_value,
            "equal": self.equal,
            "gem_witness": self.gem_witness,
            "diagram_witness": self.diagram_witness,
            "pairs": [p.to_dict() for p in self.pairs],
            "failures": list(self.failures),
            "forests_checked": self.forests_checked,
            "choices_compared": self.choices_compared,
            "positive_choices": self.positive_choices,
        }


def _reduced_checks(rd, genus, failures, label):
    """Record every reduced-diagram property that fails."""
    d = rd.diagram
    checks = rd.checks
    for key in ("tree_formula_prime", "tree_formula_double_prime"):
        t = checks[key]
        if not t.holds:
            failures.append(f"{label}: {key} {t.lhs} != {t.rhs} {t.note}".rstrip())
    for system in (PRIME, DOUBLE_PRIME):
        cls = checks[system]
        if not cls.reduced:
            failures.append(f"{label}: {system} system not reduced")
        if cls.proper and cls.reduced and genus is not None:
            count = len(d.curve_names(system))
            if count != genus:
                failures.append(f"{label}: proper reduced {system} system has {count} curves, genus {genus}")
    if not checks["euler_char_preserved"] or not checks["orientability_preserved"]:
        failures.append(f"{label}: reduction changed the surface")
    value, _, on = modified_complexity_reduced(d)
    if len(on) > len(d.singular_vertices) or value < 0:
        failures.append(f"{label}: n(R) exceeds c(H')")


def _curve_indices(names):
    return tuple(sorted(int(name[1:]) for name in names))


def cross_check(g, forest_cap=DEFAULT_FOREST_CAP, pairs=None, checks=True):
    """Compare the gem-side and the diagram-side complexities of ``g``.

    Besides the two minima, the comparison is made choice by choice: the
    removed-cycle collections of the gem side must be exactly the curves
    removed by the admissible forests of the diagram side, and for each of
    them the region minimum must equal the complexity of the reduced
    diagram.  With ``checks`` every reduction is also tested for the tree
    edge-count identity, reducedness, the curve count of proper reduced
    systems, and preservation of the surface.  Problems go to ``failures``.
    """
    pairs = parse_pairs(pairs)
    m1, gem_witness = gm_value(g, pairs=pairs, forest_cap=forest_cap)
    failures = []
    summaries = []
    best = None
    forests = 0
    compared = 0
    positive = 0
    for pair in pairs:
        induced = induce_diagram(g, pair)
        d = induced.diagram
        emb = regular_embedding(g, pair)
        label = f"{g.name} pair {pair[0]}{pair[1]}"
        if d.euler_char != emb.euler_char or d.orientable != emb.orientable:
            failures.append(f"{label}: induced surface differs from the regular embedding")
        c1 = classify_system(d, PRIME)
        c2 = classify_system(d, DOUBLE_PRIME)
        if not (c1.proper and c2.proper):
            failures.append(f"{label}: induced systems are not proper")
        chi = d.euler_char
        genus = (2 - chi) // 2 if chi % 2 == 0 else None
        reductions = reduce_all(d, cap=forest_cap, check=checks)
        gem_choices = {
            (d1, d2)
            for d1 in forest_choices(g, induced.pair, cap=forest_cap)
            for d2 in forest_choices(g, induced.complement, cap=forest_cap)
        }
        diagram_choices = set()
        pair_best = None
        for rd in reductions:
            value, region, on = modified_complexity_reduced(rd.diagram)
            key = (_curve_indices(rd.removed_prime), _curve_indices(rd.removed_double_prime))
            diagram_choices.add(key)
            if key in gem_choices:
                compared += 1
                gv = choice_value(g, induced.pair, *key)
                positive += value > 0
                if gv != value:
                    failures.append(f"{label}: removing {key} gives {gv} on the gem, {value} on the diagram")
            if checks:
                forests += 1
                _reduced_checks(rd, genus, failures, f"{label} reduction {rd.forest_index}")
            if pair_best is None or value < pair_best:
                pair_best = value
            if best is None or value < best[0]:
                best = (value, pair, rd, region, on)
        if gem_choices != diagram_choices:
            failures.append(f"{label}: gem-side and diagram-side removal choices differ")
        summaries.append(
            PairSummary(
                pair=induced.pair,
                crossings=d.num_vertices,
                prime_curves=len(d.curve_names(PRIME)),
                double_prime_curves=len(d.curve_names(DOUBLE_PRIME)),
                euler_char=chi,
                orientable=d.orientable,
                embedding_euler_char=emb.euler_char,
                prime_proper=c1.proper,
                prime_reduced=c1.reduced,
                double_prime_proper=c2.proper,
                double_prime_reduced=c2.reduced,
                reductions=len(reductions),
                hm_value=pair_best,
            )
        )
    m2, pair, rd, region, on = best
    diagram_witness = {
        "pair": list(pair),
        "removed_prime": list(rd.removed_prime),
        "removed_double_prime": list(rd.removed_double_prime),
        "forest_index": list(rd.forest_index),
        "crossings": len(rd.diagram.singular_vertices),
        "region_faces": list(region),
        "region_singular_vertices": list(on),
        "value": m2,
    }
    return CrossCheckReport(
        g.name,
        m1,
        m2,
        m1 == m2,
        gem_witness.to_dict(),
        diagram_witness,
        summaries,
        failures,
        forests,
        compared,
        positive,
    )


def cut_bookkeeping(d, system):
    """``sum(capped chi - boundary circles)`` over the pieces; equals the surface's chi."""
    return sum(c.capped_euler_char - c.boundary_circles for c in cut_components(d, system))
