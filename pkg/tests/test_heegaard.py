import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gemcomplexity.bridge import induce_diagram
from gemcomplexity.diagram import DOUBLE_PRIME, PRIME, build_diagram, lens_diagram, validate_diagram
from gemcomplexity.errors import BudgetExceeded, DiagramFormatError
from gemcomplexity.gm import SPLITTINGS
from gemcomplexity.heegaard import (
    CutComponent,
    DualGraph,
    GeneralizedHeegaardDiagram,
    admissible_forests,
    check_tree_formula,
    classify_system,
    cut_components,
    dual_graph,
    modified_complexity,
    modified_complexity_reduced,
    reduce_all,
    remove_curves,
)
from support import fixture_hdg, gems_up_to_10

SPHERE = CutComponent((0,), 2, True, 1)
TORUS_PIECE = CutComponent((1,), 0, True, 1)


def sphere_map():
    # one vertex with a scaffold loop: two faces, chi = 2
    return build_diagram("sphere", [[(0, 0), (0, 1)]], [(1, None)], [])


def genus_two_map():
    # a single vertex with rotation a b a b c d c d of scaffold loops: one face
    rot = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0), (2, 1), (3, 1)]
    return build_diagram("genus2", [rot], [(1, None)] * 4, [])


def torus_with_trivial_curve():
    # the curve c bounds the monogon face at vertex 2
    return build_diagram(
        "disk",
        [[(0, 0), (1, 0), (0, 1), (1, 1), (3, 0)], [(2, 0), (2, 1), (3, 1)]],
        [(1, None), (1, None), (1, "c"), (1, None)],
        [("c", PRIME)],
    )


def test_empty_system_on_the_sphere():
    comps = cut_components(sphere_map(), PRIME)
    assert len(comps) == 1 and comps[0].capped_euler_char == 2 and comps[0].genus_zero


def test_one_essential_curve_on_the_torus():
    d = fixture_hdg("torus_s3")
    comps = cut_components(d, PRIME)
    assert len(comps) == 1
    assert comps[0].capped_euler_char == 2 and comps[0].boundary_circles == 2
    assert classify_system(d, PRIME).case == "i"


def test_two_parallel_curves_on_the_torus():
    d = fixture_hdg("torus_two_parallel")
    comps = cut_components(d, PRIME)
    assert [c.capped_euler_char for c in comps] == [2, 2]
    assert [c.boundary_circles for c in comps] == [2, 2]
    assert classify_system(d, PRIME).case == "iii"
    dg = dual_graph(d, PRIME)
    assert len(dg.nodes) == 2
    assert sorted(tuple(sorted((u, v))) for _, u, v in dg.edges) == [(0, 1), (0, 1)]


def test_empty_system_on_genus_two_is_case_ii():
    d = genus_two_map()
    assert validate_diagram(d).valid and d.euler_char == -2
    cls = classify_system(d, PRIME)
    assert (cls.proper, cls.reduced, cls.case) == (False, True, "ii")
    assert cut_components(d, PRIME)[0].genus == 2


def test_inessential_curve_is_case_iv():
    d = torus_with_trivial_curve()
    assert validate_diagram(d).valid
    assert sorted(c.capped_euler_char for c in cut_components(d, PRIME)) == [0, 2]
    assert classify_system(d, PRIME).case == "iv"


def test_dual_graph_of_a_reduced_system_is_a_bouquet():
    for d in (fixture_hdg("torus_s3"), lens_diagram(5, 2)):
        dg = dual_graph(d, PRIME)
        assert len(dg.nodes) == 1
        assert [(u, v) for _, u, v in dg.edges] == [(0, 0)]
        assert admissible_forests(dg) == [()]


def test_parallel_edges_give_one_tree_each():
    dg = dual_graph(fixture_hdg("torus_two_parallel"), PRIME)
    assert admissible_forests(dg) == [(0,), (1,)]


def test_forests_with_a_positive_genus_node():
    # admissibility only looks at which nodes have positive genus
    two = DualGraph(PRIME, (SPHERE, TORUS_PIECE), (("x", 0, 1), ("y", 0, 1), ("z", 1, 1)), -2)
    assert two.positive_nodes == (1,)
    assert admissible_forests(two) == [(0,), (1,)]

    three = DualGraph(
        PRIME, (SPHERE, SPHERE, TORUS_PIECE), (("x", 0, 2), ("y", 1, 2), ("z", 0, 1)), -2
    )
    assert admissible_forests(three) == [(0, 1), (0, 2), (1, 2)]

    # two positive nodes: every tree holds exactly one of them
    split = DualGraph(
        PRIME, (SPHERE, TORUS_PIECE, TORUS_PIECE), (("x", 0, 1), ("y", 0, 2), ("z", 1, 2)), -4
    )
    assert admissible_forests(split) == [(0,), (1,)]

    # every node positive: the empty forest is the only choice
    both = DualGraph(PRIME, (TORUS_PIECE, TORUS_PIECE), (("x", 0, 1),), -4)
    assert admissible_forests(both) == [()]


def test_forest_cap():
    dg = dual_graph(fixture_hdg("torus_two_parallel"), PRIME)
    with pytest.raises(BudgetExceeded):
        admissible_forests(dg, cap=1)


def test_tree_formula_examples():
    d = fixture_hdg("torus_s3")
    check = check_tree_formula(dual_graph(d, PRIME), ())
    assert check.holds and (check.lhs, check.rhs) == (0, 0)
    dg = dual_graph(fixture_hdg("torus_two_parallel"), PRIME)
    for forest in admissible_forests(dg):
        check = check_tree_formula(dg, forest)
        assert check.holds and (check.lhs, check.rhs) == (1, 1)


def test_tree_formula_with_positive_genus_pieces():
    # genus two cut along x and y into an annulus and a twice-holed torus
    annulus = CutComponent((0,), 2, True, 2)
    holed_torus = CutComponent((1,), 0, True, 2)
    dg = DualGraph(PRIME, (annulus, holed_torus), (("x", 0, 1), ("y", 0, 1)), -2)
    assert sum(c.capped_euler_char - c.boundary_circles for c in dg.nodes) == dg.surface_euler_char
    forests = admissible_forests(dg)
    assert forests == [(0,), (1,)]
    for forest in forests:
        check = check_tree_formula(dg, forest)
        # |C| - g - max(0, h - 1) + g_1 = 2 - 2 - 0 + 1
        assert check.holds and (check.lhs, check.rhs) == (1, 1)


def test_tree_formula_reports_convention_mismatch():
    odd_surface = DualGraph(PRIME, (SPHERE,), (("x", 0, 0),), 1)
    assert check_tree_formula(odd_surface, ()).note == "convention mismatch"
    crosscap = CutComponent((0,), 1, False, 1)
    odd_piece = DualGraph(PRIME, (SPHERE, crosscap), (("x", 0, 1),), 0)
    result = check_tree_formula(odd_piece, ())
    assert not result.holds and result.note == "convention mismatch"


def test_reduced_diagram_reduces_to_itself():
    d = fixture_hdg("torus_s3")
    rds = reduce_all(d)
    assert len(rds) == 1
    assert rds[0].removed_prime == () and rds[0].removed_double_prime == ()
    assert rds[0].diagram.num_vertices == d.num_vertices
    assert modified_complexity(d)[0] == modified_complexity_reduced(d)[0] == 0


def test_two_parallel_curves_reduce_to_the_s3_diagram():
    d = fixture_hdg("torus_two_parallel")
    rds = reduce_all(d)
    assert [rd.removed_prime for rd in rds] == [("a1",), ("a2",)]
    for rd in rds:
        r = rd.diagram
        assert validate_diagram(r).valid
        assert (r.num_vertices, len(r.singular_vertices), r.euler_char) == (1, 1, 0)
        assert rd.checks["prime"].case == "i" and rd.checks["double_prime"].case == "i"
        assert modified_complexity_reduced(r)[0] == 0
    value, witness = modified_complexity(d)
    assert value == 0 and witness.removed_prime == ("a1",)


def test_crossing_free_diagram_has_complexity_zero():
    d = fixture_hdg("torus_s1xs2")
    assert modified_complexity_reduced(d) == (0, (0,), ())
    assert modified_complexity(d)[0] == 0


# upper bounds from the standard genus-one diagram, not the complexity of the lens space
LENS_VALUES = {(2, 1): 0, (3, 1): 0, (4, 1): 1, (5, 1): 2, (5, 2): 1, (6, 1): 3, (7, 2): 3, (7, 3): 3, (8, 3): 4}


@pytest.mark.parametrize("pq", sorted(LENS_VALUES))
def test_lens_diagram_values(pq):
    d = lens_diagram(*pq)
    value, region, on = modified_complexity_reduced(d)
    assert value == LENS_VALUES[pq]
    assert value == len(d.singular_vertices) - len(on)
    assert modified_complexity(d)[0] == value


def test_lens_fixtures_match_generated_diagrams():
    assert modified_complexity(fixture_hdg("torus_l41"))[0] == 1
    assert modified_complexity(fixture_hdg("torus_l52"))[0] == 1


def test_invalid_diagram_cannot_be_a_heegaard_diagram():
    text_d = build_diagram("kb", [[(0, 0), (1, 0), (0, 1), (1, 1)]], [(-1, "a"), (1, None)], [("a", PRIME)])
    with pytest.raises(DiagramFormatError):
        GeneralizedHeegaardDiagram.from_diagram(text_d)
    H = GeneralizedHeegaardDiagram.from_diagram(fixture_hdg("torus_s3"))
    assert H.prime_proper


def test_removing_curves_keeps_the_surface():
    d = fixture_hdg("torus_two_parallel")
    for names in (["a1"], ["a2"], ["a1", "b"], ["a1", "a2", "b"]):
        r = remove_curves(d, names)
        assert (r.euler_char, r.orientable) == (d.euler_char, d.orientable)
        assert set(r.curve_names()) == set(d.curve_names()) - set(names)


def _chi_bookkeeping(d, system):
    return sum(c.capped_euler_char - c.boundary_circles for c in cut_components(d, system))


def test_euler_bookkeeping_on_fixtures():
    diagrams = [fixture_hdg(s) for s in ("torus_s3", "torus_two_parallel", "torus_s1xs2", "torus_l41")]
    diagrams += [genus_two_map(), torus_with_trivial_curve(), lens_diagram(7, 3)]
    for d in diagrams:
        for system in (PRIME, DOUBLE_PRIME):
            assert _chi_bookkeeping(d, system) == d.euler_char


@settings(max_examples=120, deadline=None)
@given(gems_up_to_10, st.sampled_from(SPLITTINGS))
def test_reductions_of_induced_diagrams(g, pair):
    d = induce_diagram(g, pair).diagram
    genus = (2 - d.euler_char) // 2
    for system in (PRIME, DOUBLE_PRIME):
        assert _chi_bookkeeping(d, system) == d.euler_char
    rds = reduce_all(d)
    dg1, dg2 = dual_graph(d, PRIME), dual_graph(d, DOUBLE_PRIME)
    assert len(rds) == len(admissible_forests(dg1)) * len(admissible_forests(dg2))
    for rd in rds:
        checks = rd.checks
        assert checks["prime"].reduced and checks["double_prime"].reduced
        assert checks["euler_char_preserved"] and checks["orientability_preserved"]
        assert checks["tree_formula_prime"].holds and checks["tree_formula_double_prime"].holds
        for system in (PRIME, DOUBLE_PRIME):
            if checks[system].case == "i":
                assert len(rd.diagram.curve_names(system)) == genus
        value, _, on = modified_complexity_reduced(rd.diagram)
        assert len(on) <= len(rd.diagram.singular_vertices)
        assert value >= 0
