"""GM-complexity of 4-coloured graphs, by exhaustive minimization with a witness.

For each of the three splittings ``{a,b} | {a2,b2}`` of the colours, a
collection of ``{a,b}``-cycles is chosen dual to a maximal forest of the
1-dimensional subcomplex of K(gem) spanned by the ``a2``- and
``b2``-coloured vertices (and symmetrically for the ``{a2,b2}``-cycles).
The chosen cycles are erased from the regular embedding; for each region
of what remains, the vertices not covered by the erased cycles or by the
region's closure are counted.  The smallest count is the GM-complexity.

Convention note: the removed ``{a,b}``-cycles correspond to edges of the
subcomplex on the *complementary* colours ``a2, b2``, since an
``{i,j}``-residue is dual to a 1-simplex whose endpoints carry the two
colours not in ``{i,j}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gemcomplexity.embedding import (
    Region,
    curve_families,
    normalize_pair,
    region_partition,
    regular_embedding,
)
from gemcomplexity.errors import BudgetExceeded
from gemcomplexity.forests import DEFAULT_FOREST_CAP, spanning_forests
from gemcomplexity.gem import complement, is_contracted, residues

SPLITTINGS = ((0, 1), (0, 2), (0, 3))


@dataclass(frozen=True)
class SubcomplexGraph:
    colours: tuple[int, int]
    nodes: tuple[tuple[int, int], ...]  # (vertex colour of K, residue index)
    edges: tuple[tuple[int, int, int], ...]  # (residue index, node u, node v)


@dataclass
class ComplexityWitness:
    pair: tuple[int, int]
    complement: tuple[int, int]
    removed_ab: tuple[int, ...]
    removed_ab2: tuple[int, ...]
    region: Region
    region_index: int
    value: int
    covered: frozenset = field(default_factory=frozenset)

    def to_dict(self):
        return {
            "pair": list(self.pair),
            "complement": list(self.complement),
            "removed_ab": list(self.removed_ab),
            "removed_ab2": list(self.removed_ab2),
            "region_index": self.region_index,
            "region_faces": list(self.region.faces),
            "region_vertices": sorted(self.region.vertex_closure),
            "value": self.value,
        }


def parse_pairs(selection):
    """``"01,23"`` or ``[(0, 1)]`` -> list of splittings, each as the pair containing colour 0."""
    if selection is None:
        return list(SPLITTINGS)
    if isinstance(selection, str):
        items = [s.strip() for s in selection.split(",") if s.strip()]
        pairs = []
        for item in items:
            digits = [int(ch) for ch in item if ch.isdigit()]
            if len(digits) != 2:
                raise ValueError(f"bad colour pair {item!r}")
            pairs.append(tuple(digits))
    else:
        pairs = list(selection)
    out = []
    for p in pairs:
        a, b = normalize_pair(p)
        if 0 not in (a, b):
            a, b = complement((a, b))
        if (a, b) not in out:
            out.append((a, b))
    return sorted(out)


def subcomplex_graph(g, colours):
    """Subcomplex of K(gem) spanned by the vertices coloured ``i`` and ``j``.

    Nodes are the components of the gem without colour ``i`` (resp. ``j``);
    edges are the residues on the two remaining colours, each joining the
    two components that contain it.
    """
    i, j = normalize_pair(colours)
    hat_i = residues(g, complement((i,)))
    hat_j = residues(g, complement((j,)))
    nodes = [(i, k) for k in range(hat_i.count)] + [(j, k) for k in range(hat_j.count)]
    offset = hat_i.count
    edges = []
    for idx, cyc in enumerate(residues(g, complement((i, j))).classes):
        v = cyc[0]
        edges.append((idx, hat_i.index_of(v), offset + hat_j.index_of(v)))
    return SubcomplexGraph((i, j), tuple(nodes), tuple(edges))


def forest_choices(g, pair, cap=DEFAULT_FOREST_CAP):
    """Collections of ``pair``-cycles dual to the maximal forests of the complementary subcomplex.

    Each choice is a sorted tuple of residue indices into
    ``residues(g, pair)``; choices are returned in lexicographic order.
    """
    sub = subcomplex_graph(g, complement(normalize_pair(pair)))
    edge_pairs = [(u, v) for _, u, v in sub.edges]
    choices = []
    for forest in spanning_forests(len(sub.nodes), edge_pairs, cap=cap):
        choices.append(tuple(sorted(sub.edges[k][0] for k in forest)))
    choices.sort()
    return choices


def _vertex_mask(cycles, chosen):
    mask = 0
    for idx in chosen:
        for v in cycles[idx]:
            mask |= 1 << v
    return mask


def _best_region(emb, base, d, d2):
    """``(value, group, region index, covered mask)`` for the best region of one choice."""
    n = emb.gem.num_vertices
    best = None
    for r_index, group in enumerate(region_partition(emb, d, d2).groups()):
        covered = base
        for f in group:
            covered |= emb.faces[f].mask
        value = n - covered.bit_count()
        if best is None or value < best[0]:
            best = (value, group, r_index, covered)
    return best


def choice_value(g, pair, removed_ab, removed_ab2):
    """Inner minimum over regions for one splitting and one pair of removed collections."""
    emb = regular_embedding(g, pair)
    fam_ab, fam_ab2 = curve_families(emb)
    base = _vertex_mask(fam_ab, removed_ab) | _vertex_mask(fam_ab2, removed_ab2)
    return _best_region(emb, base, removed_ab, removed_ab2)[0]


def _scan(g, pairs, choices_for):
    best = None
    for pair in pairs:
        emb = regular_embedding(g, pair)
        fam_ab, fam_ab2 = curve_families(emb)
        for d in choices_for(emb.pair):
            mask_d = _vertex_mask(fam_ab, d)
            for d2 in choices_for(emb.complement):
                base = mask_d | _vertex_mask(fam_ab2, d2)
                value, group, r_index, covered = _best_region(emb, base, d, d2)
                if best is None or value < best[0]:
                    best = (value, emb, d, d2, group, r_index, covered)
    value, emb, d, d2, group, r_index, covered = best
    closure = set()
    for f in group:
        closure.update(emb.faces[f].vertices)
    witness = ComplexityWitness(
        pair=emb.pair,
        complement=emb.complement,
        removed_ab=tuple(d),
        removed_ab2=tuple(d2),
        region=Region(tuple(group), frozenset(closure)),
        region_index=r_index,
        value=value,
        covered=frozenset(v for v in g.vertices() if covered >> v & 1),
    )
    return value, witness


def gm_value(g, pairs=None, forest_cap=DEFAULT_FOREST_CAP):
    """GM-complexity of ``g`` with a minimizing witness (general definition).

    Scans splittings in the order 01|23, 02|13, 03|12, then removed-cycle
    collections lexicographically, then regions by smallest face; the first
    minimum found is the witness.
    """
    pairs = parse_pairs(pairs)
    cache = {}

    def choices_for(pair):
        if pair not in cache:
            cache[pair] = forest_choices(g, pair, cap=forest_cap)
        return cache[pair]

    return _scan(g, pairs, choices_for)


def gm_value_crystallization(g, pairs=None):
    """GM-complexity of a crystallization: one removed cycle per family."""
    if not is_contracted(g):
        raise ValueError(f"{g.name} is not contracted")
    pairs = parse_pairs(pairs)

    def choices_for(pair):
        return [(k,) for k in range(residues(g, pair).count)]

    return _scan(g, pairs, choices_for)


def catalogue_min(cat, fingerprint=None, forest_cap=DEFAULT_FOREST_CAP):
    """Smallest GM-complexity over catalogue entries (optionally with a given H1).

    This is an upper bound for the extended GM-complexity of the manifold,
    never the exact value.  Returns ``(value, entry)``.
    """
    entries = cat.select(fingerprint) if hasattr(cat, "select") else list(cat)
    if not entries:
        raise ValueError("no catalogue entry matches the selection")
    best = None
    for e in entries:
        g = getattr(e, "gem", e)
        value, _ = gm_value(g, forest_cap=forest_cap)
        if best is None or value < best[0]:
            best = (value, e)
    return best


@dataclass
class SpliceReport:
    left: str
    right: str
    left_value: int
    right_value: int
    best_sum_value: int
    best_vertices: tuple[int, int]
    all_values: dict
    subadditive: bool

    def to_dict(self):
        return {
            "left": self.left,
            "right": self.right,
            "left_value": self.left_value,
            "right_value": self.right_value,
            "best_sum_value": self.best_sum_value,
            "best_vertices": list(self.best_vertices),
            "subadditive": self.subadditive,
            "violations": sorted(
                f"{a},{b}" for (a, b), v in self.all_values.items()
                if v > self.left_value + self.right_value
            ),
        }


def splice_check(g1, g2, forest_cap=DEFAULT_FOREST_CAP):
    """Compare GM-complexity of connected sums, over all splice vertices, with the summands'."""
    from gemcomplexity.gem import connected_sum

    v1, _ = gm_value(g1, forest_cap=forest_cap)
    v2, _ = gm_value(g2, forest_cap=forest_cap)
    values = {}
    for a in g1.vertices():
        for b in g2.vertices():
            values[(a, b)] = gm_value(connected_sum(g1, a, g2, b), forest_cap=forest_cap)[0]
    best_vertices = min(values, key=lambda k: (values[k], k))
    best = values[best_vertices]
    return SpliceReport(g1.name, g2.name, v1, v2, best, best_vertices, values, best <= v1 + v2)


__all__ = [
    "BudgetExceeded",
    "ComplexityWitness",
    "SPLITTINGS",
    "SpliceReport",
    "SubcomplexGraph",
    "catalogue_min",
    "choice_value",
    "forest_choices",
    "gm_value",
    "gm_value_crystallization",
    "parse_pairs",
    "splice_check",
    "subcomplex_graph",
]
