"""Regular embeddings of a gem and the regions cut out by its curve families.

For a colour pair ``{a, b}`` with complement ``{a2, b2}`` the gem embeds in a
closed surface whose faces are the bicoloured cycles of the four mixed pairs
``{a,a2}, {a2,b}, {b,b2}, {b2,a}``.  The ``{a,b}``-cycles and the
``{a2,b2}``-cycles are then two families of curves on that surface crossing
at every vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gemcomplexity.gem import complement, is_bipartite, residues
from gemcomplexity.unionfind import UnionFind


def normalize_pair(pair):
    """Sorted colour pair; the splitting it defines is the same for its complement."""
    a, b = sorted(pair)
    if a == b or not {a, b} <= {0, 1, 2, 3}:
        raise ValueError(f"not a colour pair: {pair}")
    return a, b


@dataclass(frozen=True)
class Face:
    colours: tuple[int, int]
    residue_index: int
    vertices: tuple[int, ...]  # cyclic order
    edges: tuple[tuple[int, int], ...]  # (colour, smaller endpoint)
    mask: int  # bit v set for every boundary vertex v


@dataclass(frozen=True)
class Region:
    faces: tuple[int, ...]
    vertex_closure: frozenset

    def to_dict(self):
        return {"faces": list(self.faces), "vertex_closure": sorted(self.vertex_closure)}


@dataclass(frozen=True)
class RegularEmbedding:
    gem: object
    pair: tuple[int, int]
    complement: tuple[int, int]
    epsilon: tuple[int, int, int, int]
    faces: tuple[Face, ...]
    face_of: dict  # (colour, colour, vertex) -> face index, colours sorted
    euler_char: int
    orientable: bool
    rho: int  # (2 - chi) / 2, the handlebody genus

    @property
    def crosscap_number(self):
        """Non-orientable genus ``2 - chi``; ``None`` on orientable surfaces."""
        return None if self.orientable else 2 - self.euler_char

    @property
    def genus_label(self):
        if self.orientable:
            return f"orientable genus {self.rho}"
        return f"non-orientable, crosscap number {2 - self.euler_char}"

    def faces_at_edge(self, colour, u):
        """The two face indices on either side of the ``colour``-edge at ``u``."""
        eps = self.epsilon
        k = eps.index(colour)
        prev_c, next_c = eps[(k - 1) % 4], eps[(k + 1) % 4]
        f1 = self.face_of[(*sorted((colour, prev_c)), u)]
        f2 = self.face_of[(*sorted((colour, next_c)), u)]
        return f1, f2


@lru_cache(maxsize=4096)
def regular_embedding(g, pair):
    a, b = normalize_pair(pair)
    a2, b2 = complement((a, b))
    eps = (a, a2, b, b2)
    faces = []
    face_of = {}
    for j in range(4):
        i, k = sorted((eps[j], eps[(j + 1) % 4]))
        part = residues(g, (i, k))
        for idx, cyc in enumerate(part.classes):
            edges = []
            length = len(cyc)
            for t in range(length):
                u, w = cyc[t], cyc[(t + 1) % length]
                colour = i if t % 2 == 0 else k
                edges.append((colour, min(u, w)))
            mask = 0
            for v in cyc:
                mask |= 1 << v
                face_of[(i, k, v)] = len(faces)
            faces.append(Face((i, k), idx, cyc, tuple(edges), mask))
    n = g.num_vertices
    chi = n - 2 * n + len(faces)
    # chi = sum of g_hat - g_{a,b} - g_{a2,b2}; on a crystallization this is
    # 2 - 2 (g_{a,b} - g_hat_a - g_hat_b + 1), but not on a general gem
    hats = sum(residues(g, complement((c,))).count for c in range(4))
    rho = (residues(g, (a, b)).count + residues(g, (a2, b2)).count - hats) // 2 + 1
    return RegularEmbedding(
        gem=g,
        pair=(a, b),
        complement=(a2, b2),
        epsilon=eps,
        faces=tuple(faces),
        face_of=face_of,
        euler_char=chi,
        orientable=is_bipartite(g),
        rho=rho,
    )


def curve_families(emb):
    """The ``{a,b}``-cycles and the ``{a2,b2}``-cycles, each in cyclic vertex order."""
    g = emb.gem
    return residues(g, emb.pair).classes, residues(g, emb.complement).classes


def curve_edges(g, colours, cycle):
    """Edges ``(colour, smaller endpoint)`` of a bicoloured cycle as listed by :func:`residues`."""
    i, k = sorted(colours)
    out = []
    length = len(cycle)
    for t in range(length):
        u, w = cycle[t], cycle[(t + 1) % length]
        out.append((i if t % 2 == 0 else k, min(u, w)))
    return out


def region_partition(emb, kept_ab, kept_ab2):
    """Union-find over faces joined across every edge of a kept curve."""
    g = emb.gem
    fam_ab, fam_ab2 = curve_families(emb)
    uf = UnionFind(len(emb.faces))
    for colours, fam, kept in ((emb.pair, fam_ab, kept_ab), (emb.complement, fam_ab2, kept_ab2)):
        for idx in kept:
            for colour, u in curve_edges(g, colours, fam[idx]):
                uf.union(*emb.faces_at_edge(colour, u))
    return uf


def regions(emb, kept_ab=(), kept_ab2=()):
    """Regions of the surface minus every curve that is not kept.

    ``kept_ab`` / ``kept_ab2`` are residue indices into the two curve
    families.  Two faces lie in the same region iff they are linked by a
    chain of gem edges belonging to kept curves.  Regions are ordered by
    smallest face index.
    """
    uf = region_partition(emb, kept_ab, kept_ab2)
    out = []
    for group in uf.groups():
        closure = set()
        for f in group:
            closure.update(emb.faces[f].vertices)
        out.append(Region(tuple(group), frozenset(closure)))
    return out
