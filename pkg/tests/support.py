"""Shared data for the tests: cached censuses, bundled fixtures, strategies."""

from functools import lru_cache
from importlib import resources

from hypothesis import strategies as st

from gemcomplexity.census import census
from gemcomplexity.diagram import parse_hdg
from gemcomplexity.gem import connected_sum, insert_dipole, parse_gem

FIXTURE_DIR = resources.files("gemcomplexity").joinpath("fixtures")

# manifold each shipped gem represents, with its first homology
NAMED_GEMS = {
    "s3_order2": "0",
    "rp3": "Z2",
    "l31": "Z3",
    "s1xs2": "Z",
    "s1xts2": "Z",
}


def fixture_text(name):
    return FIXTURE_DIR.joinpath(name).read_text()


def fixture_gem(stem):
    return parse_gem(fixture_text(f"{stem}.gem"))


def fixture_hdg(stem):
    return parse_hdg(fixture_text(f"{stem}.hdg"))


@lru_cache(maxsize=None)
def census_gems(order):
    return tuple(census(order, with_h1=False).gems())


@lru_cache(maxsize=None)
def connected_sum_fixtures():
    """Connected sums of the named fixtures, including sums that are not contracted."""
    g = {k: fixture_gem(k) for k in NAMED_GEMS}
    sums = [
        connected_sum(g["rp3"], 1, g["rp3"], 1),
        connected_sum(g["rp3"], 2, g["l31"], 5),
        connected_sum(g["l31"], 1, g["l31"], 2),
        connected_sum(g["s1xs2"], 3, g["rp3"], 1),
        connected_sum(g["s1xts2"], 1, g["s1xs2"], 1),
        connected_sum(g["s1xts2"], 2, g["l31"], 7),
    ]
    # dipoles break contractedness, so these exercise forests with several edges
    sums.append(insert_dipole(insert_dipole(g["rp3"], 1, 0), 3, 2))
    sums.append(insert_dipole(sums[0], 5, 1))
    sums.append(insert_dipole(insert_dipole(g["s1xts2"], 2, 3), 9, 3))
    return tuple(sums)


def relabel_strategy(g):
    return st.permutations(list(g.vertices()))


def small_census():
    return census_gems(10)


gems_up_to_10 = st.deferred(lambda: st.sampled_from(small_census()))


@st.composite
def gem_and_relabelling(draw):
    g = draw(gems_up_to_10)
    perm = draw(relabel_strategy(g))
    return g, perm


@st.composite
def dipole_gem(draw):
    """A census gem with a few dipoles inserted (usually not contracted)."""
    g = draw(st.sampled_from(census_gems(8)))
    for _ in range(draw(st.integers(0, 3))):
        v = draw(st.integers(1, g.num_vertices))
        c = draw(st.integers(0, 3))
        g = insert_dipole(g, v, c)
    return g
