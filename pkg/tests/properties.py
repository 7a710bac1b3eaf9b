"""Randomized module invariants, shared by test_properties and the acceptance run.

Each property is a plain check wrapped by hypothesis on demand, so the caller
can count how many generated cases actually ran.
"""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from gemcomplexity.bridge import induce_diagram
from gemcomplexity.diagram import DOUBLE_PRIME, PRIME, parse_hdg, serialize_hdg, validate_diagram
from gemcomplexity.embedding import curve_families, regions, regular_embedding
from gemcomplexity.gem import parse_gem, serialize_gem
from gemcomplexity.gm import SPLITTINGS, choice_value, forest_choices
from gemcomplexity.heegaard import (
    classify_system,
    diagram_regions,
    modified_complexity_reduced,
    reduce_all,
    remove_curves,
)
from support import dipole_gem, gem_and_relabelling, gems_up_to_10

pairs = st.sampled_from(SPLITTINGS)
any_gem = st.one_of(gems_up_to_10, dipole_gem())


def gem_round_trip(case, data):
    g, perm = case
    h = g.relabelled([0] + list(perm))
    text = serialize_gem(h)
    again = parse_gem(text)
    assert again == h
    assert serialize_gem(again) == text


def hdg_round_trip(case, data):
    g, pair = case
    d = induce_diagram(g, pair).diagram
    text = serialize_hdg(d)
    again = parse_hdg(text)
    assert serialize_hdg(again) == text
    assert again.rotations == d.rotations and again.edges == d.edges and again.curves == d.curves


def region_partition(case, data):
    g, pair = case
    emb = regular_embedding(g, pair)
    fam_ab, fam_ab2 = curve_families(emb)
    kept = sorted(data.draw(st.sets(st.integers(0, len(fam_ab) - 1))))
    kept2 = sorted(data.draw(st.sets(st.integers(0, len(fam_ab2) - 1))))
    regs = regions(emb, kept, kept2)
    assert sorted(f for r in regs for f in r.faces) == list(range(len(emb.faces)))
    for r in regs:
        closure = set()
        for f in r.faces:
            closure.update(emb.faces[f].vertices)
        assert r.vertex_closure == closure
    # faces split by a kept curve edge always land in one region
    where = {f: k for k, r in enumerate(regs) for f in r.faces}
    for idx in kept:
        for v in fam_ab[idx]:
            for colour in emb.pair:
                f1, f2 = emb.faces_at_edge(colour, v)
                assert where[f1] == where[f2]


def _random_reduction(g, pair, data):
    d = induce_diagram(g, pair).diagram
    rds = reduce_all(d)
    return d, rds[data.draw(st.integers(0, len(rds) - 1))]


def reduction_reducedness(case, data):
    g, pair = case
    d, rd = _random_reduction(g, pair, data)
    r = rd.diagram
    assert validate_diagram(r).valid
    assert (r.euler_char, r.orientable) == (d.euler_char, d.orientable)
    genus = (2 - d.euler_char) // 2
    for system in (PRIME, DOUBLE_PRIME):
        cls = classify_system(r, system)
        assert cls.reduced
        if cls.proper:
            assert len(r.curve_names(system)) == genus
    assert rd.checks["tree_formula_prime"].holds and rd.checks["tree_formula_double_prime"].holds


def region_count_bound(case, data):
    g, pair = case
    _, rd = _random_reduction(g, pair, data)
    r = rd.diagram
    singular = set(r.singular_vertices)
    fv = r.face_vertices
    for region in diagram_regions(r):
        on = set()
        for f in region:
            on |= fv[f] & singular
        assert len(on) <= len(singular)
    value, _, on = modified_complexity_reduced(r)
    assert value == len(singular) - len(on) >= 0


def choice_agreement(case, data):
    g, pair = case
    induced = induce_diagram(g, pair)
    ds = forest_choices(g, induced.pair)
    ds2 = forest_choices(g, induced.complement)
    d1 = ds[data.draw(st.integers(0, len(ds) - 1))]
    d2 = ds2[data.draw(st.integers(0, len(ds2) - 1))]
    names = [f"x{k}" for k in d1] + [f"y{k}" for k in d2]
    r = remove_curves(induced.diagram, names)
    assert modified_complexity_reduced(r)[0] == choice_value(g, induced.pair, d1, d2)


gem_and_pair = st.tuples(any_gem, pairs)

# name -> (check, strategy for its case, default number of cases)
PROPERTIES = {
    "gem_round_trip": (gem_round_trip, gem_and_relabelling(), 200),
    "hdg_round_trip": (hdg_round_trip, gem_and_pair, 150),
    "region_partition": (region_partition, gem_and_pair, 250),
    "reduction_reducedness": (reduction_reducedness, gem_and_pair, 150),
    "region_count_bound": (region_count_bound, gem_and_pair, 150),
    "choice_agreement": (choice_agreement, gem_and_pair, 150),
}


def run_property(name, examples=None):
    """Run one property under hypothesis; returns the number of cases executed."""
    check, strategy, default = PROPERTIES[name]
    count = 0

    def counted(case, data):
        nonlocal count
        check(case, data)
        count += 1

    test = settings(
        max_examples=examples or default,
        deadline=None,
        database=None,
        suppress_health_check=[HealthCheck.too_slow],
    )(given(strategy, st.data())(counted))
    test()
    return count
