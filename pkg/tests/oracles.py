"""Independent reference computations used by the tests."""

from itertools import combinations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from gemcomplexity.gem import COLOURS, complement, residues


def simplicial_h1(g):
    """H1 of |K(gem)| from its cellular chain complex, reduced with sympy.

    Vertices of K are the 3-residues, edges the 2-residues and triangles the
    gem edges; every cell is oriented by increasing vertex colour.
    """
    vert = {c: residues(g, complement((c,))) for c in COLOURS}
    vindex = {}
    for c in COLOURS:
        for k in range(vert[c].count):
            vindex[(c, k)] = len(vindex)
    eindex = {}
    edge_ends = []
    for i, j in combinations(COLOURS, 2):
        part = residues(g, complement((i, j)))
        for k, cyc in enumerate(part.classes):
            eindex[(i, j, k)] = len(edge_ends)
            v = cyc[0]
            edge_ends.append((vindex[(i, vert[i].index_of(v))], vindex[(j, vert[j].index_of(v))]))
    d1 = [[0] * len(edge_ends) for _ in vindex]
    for e, (a, b) in enumerate(edge_ends):
        d1[a][e] -= 1
        d1[b][e] += 1

    def edge_of(i, j, v):
        return eindex[(i, j, residues(g, complement((i, j))).index_of(v))]

    d2_cols = []
    for c in COLOURS:
        i, j, k = complement((c,))
        for u, _ in g.pairs(c):
            col = [0] * len(edge_ends)
            col[edge_of(i, j, u)] += 1
            col[edge_of(i, k, u)] -= 1
            col[edge_of(j, k, u)] += 1
            d2_cols.append(col)
    m1 = Matrix(d1)
    m2 = Matrix(d2_cols).T
    r1 = m1.rank()
    r2 = m2.rank()
    rank = len(edge_ends) - r1 - r2
    snf = smith_normal_form(m2, domain=ZZ)
    torsion = sorted(abs(snf[t, t]) for t in range(min(snf.shape)) if abs(snf[t, t]) > 1)
    return rank, tuple(torsion)


def brute_spanning_forests(num_nodes, edges):
    """All edge subsets that are acyclic and have as many components as the whole graph."""
    def comps(subset):
        parent = list(range(num_nodes))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        acyclic = True
        for e in subset:
            a, b = find(edges[e][0]), find(edges[e][1])
            if a == b:
                acyclic = False
            else:
                parent[a] = b
        return acyclic, len({find(x) for x in range(num_nodes)})

    _, target = comps(range(len(edges)))
    size = num_nodes - target
    out = []
    for subset in combinations(range(len(edges)), size):
        ok, k = comps(subset)
        if ok and k == target:
            out.append(subset)
    return out


def kirchhoff_count(num_nodes, edges):
    """Number of maximal spanning forests: product of matrix-tree counts over components."""
    parent = list(range(num_nodes))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    total = 1
    groups = {}
    for x in range(num_nodes):
        groups.setdefault(find(x), []).append(x)
    for nodes in groups.values():
        if len(nodes) == 1:
            continue
        idx = {x: k for k, x in enumerate(nodes)}
        lap = [[0] * len(nodes) for _ in nodes]
        for a, b in edges:
            if a == b or a not in idx:
                continue
            lap[idx[a]][idx[a]] += 1
            lap[idx[b]][idx[b]] += 1
            lap[idx[a]][idx[b]] -= 1
            lap[idx[b]][idx[a]] -= 1
        minor = Matrix([row[1:] for row in lap[1:]])
        total *= int(minor.det())
    return total
