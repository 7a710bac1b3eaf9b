from itertools import product

import pytest
from hypothesis import given, settings

from gemcomplexity.embedding import curve_families, regular_embedding
from gemcomplexity.errors import BudgetExceeded
from gemcomplexity.gem import complement, g_hat, residues
from gemcomplexity.gm import (
    SPLITTINGS,
    catalogue_min,
    choice_value,
    forest_choices,
    gm_value,
    gm_value_crystallization,
    parse_pairs,
    splice_check,
    subcomplex_graph,
)
from oracles import kirchhoff_count
from support import (
    NAMED_GEMS,
    census_gems,
    connected_sum_fixtures,
    dipole_gem,
    fixture_gem,
    gem_and_relabelling,
)


def test_subcomplex_graph_of_a_crystallization_is_a_bond():
    g = fixture_gem("l31")
    sub = subcomplex_graph(g, (2, 3))
    assert sub.nodes == ((2, 0), (3, 0))
    assert len(sub.edges) == residues(g, (0, 1)).count
    assert all(u == 0 and v == 1 for _, u, v in sub.edges)


def test_subcomplex_nodes_count_the_hat_residues():
    g = connected_sum_fixtures()[6]
    for i, j in [(0, 1), (0, 2), (1, 3), (2, 3)]:
        sub = subcomplex_graph(g, (i, j))
        assert len(sub.nodes) == g_hat(g, i) + g_hat(g, j)
        assert len(sub.edges) == residues(g, complement((i, j))).count


def test_crystallization_choices_are_single_cycles():
    for stem in NAMED_GEMS:
        g = fixture_gem(stem)
        for pair in SPLITTINGS:
            count = residues(g, pair).count
            assert forest_choices(g, pair) == [(k,) for k in range(count)]


def test_dipole_choices_match_the_matrix_tree_count():
    for g in connected_sum_fixtures()[6:]:
        for pair in SPLITTINGS:
            for side in (pair, complement(pair)):
                sub = subcomplex_graph(g, complement(side))
                expected = kirchhoff_count(len(sub.nodes), [(u, v) for _, u, v in sub.edges])
                choices = forest_choices(g, side)
                assert len(choices) == expected
                # the removed cycles are dual to edges of the complementary subcomplex
                other = complement(side)
                size = g_hat(g, other[0]) + g_hat(g, other[1]) - 1
                assert all(len(c) == size for c in choices)


def test_standard_gem_has_complexity_zero():
    value, witness = gm_value(fixture_gem("s3_order2"))
    assert value == 0
    assert witness.pair == (0, 1) and witness.removed_ab == (0,) and witness.removed_ab2 == (0,)


@pytest.mark.parametrize("stem", list(NAMED_GEMS))
def test_named_fixtures_have_complexity_zero(stem):
    g = fixture_gem(stem)
    value, witness = gm_value(g)
    assert value == 0
    assert witness.value == 0
    assert len(witness.covered) == g.num_vertices


def test_witness_reproduces_its_value():
    for g in list(census_gems(8)) + list(connected_sum_fixtures()):
        value, w = gm_value(g)
        assert choice_value(g, w.pair, w.removed_ab, w.removed_ab2) == value
        assert g.num_vertices - len(w.covered) == value
        assert w.to_dict()["value"] == value


def test_value_is_the_minimum_over_choices():
    g = connected_sum_fixtures()[1]
    value, _ = gm_value(g)
    values = []
    for pair in SPLITTINGS:
        emb = regular_embedding(g, pair)
        for d, d2 in product(forest_choices(g, emb.pair), forest_choices(g, emb.complement)):
            values.append(choice_value(g, pair, d, d2))
    assert value == min(values)
    # single choices do carry positive values; only the minimum vanishes
    assert max(values) > 0


def test_definitions_agree_on_contracted_gems():
    for g in census_gems(10):
        assert gm_value(g)[0] == gm_value_crystallization(g)[0]
        assert gm_value(g)[1].to_dict() == gm_value_crystallization(g)[1].to_dict()


def test_crystallization_path_rejects_non_contracted_gems():
    with pytest.raises(ValueError):
        gm_value_crystallization(connected_sum_fixtures()[6])


def test_restricting_pairs_never_lowers_the_value():
    for g in census_gems(8):
        full, _ = gm_value(g)
        for pair in SPLITTINGS:
            assert gm_value(g, pairs=[pair])[0] >= full


def test_parse_pairs():
    assert parse_pairs(None) == [(0, 1), (0, 2), (0, 3)]
    assert parse_pairs("23") == [(0, 1)]
    assert parse_pairs("13, 02") == [(0, 2)]
    assert parse_pairs([(1, 2), (0, 3)]) == [(0, 3)]
    with pytest.raises(ValueError):
        parse_pairs("0")
    with pytest.raises(ValueError):
        parse_pairs("11")


def test_catalogue_min_is_an_upper_bound_over_entries():
    from gemcomplexity.census import census

    cat = census(8)
    value, entry = catalogue_min(cat, "Z2")
    assert value == 0 and str(entry.h1) == "Z2"
    with pytest.raises(ValueError):
        catalogue_min(cat, "Z7")


def test_forest_cap_is_enforced():
    g = connected_sum_fixtures()[7]
    with pytest.raises(BudgetExceeded):
        gm_value(g, forest_cap=1)


def test_splice_check_on_small_sums():
    rep = splice_check(fixture_gem("rp3"), fixture_gem("s1xts2"))
    assert rep.subadditive
    assert rep.to_dict()["violations"] == []
    assert len(rep.all_values) == 64


@settings(max_examples=40, deadline=None)
@given(dipole_gem())
def test_dipoles_keep_the_value_bounded_by_choices(g):
    value, w = gm_value(g)
    assert 0 <= value <= g.num_vertices
    assert choice_value(g, w.pair, w.removed_ab, w.removed_ab2) == value
    emb = regular_embedding(g, w.pair)
    fam_ab, fam_ab2 = curve_families(emb)
    assert all(0 <= k < len(fam_ab) for k in w.removed_ab)
    assert all(0 <= k < len(fam_ab2) for k in w.removed_ab2)


@settings(max_examples=30, deadline=None)
@given(gem_and_relabelling())
def test_value_ignores_vertex_labels(case):
    g, perm = case
    h = g.relabelled([0] + list(perm))
    assert gm_value(h)[0] == gm_value(g)[0]
    for pair in SPLITTINGS:
        assert len(forest_choices(h, pair)) == len(forest_choices(g, pair))
