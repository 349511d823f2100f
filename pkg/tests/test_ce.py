from fractions import Fraction as F

import pytest
from hypothesis import given

import oracles
from equirobust import count_extreme_ce, extreme_ce, is_ce_unique, is_correlated_equilibrium, make_game
from equirobust.ce import (
    NORMALIZATION,
    CePolytope,
    NotACorrelatedEquilibrium,
    binding_constraints,
    max_profile_probability,
    same_binding_sets,
    unique_ce_as_nash,
    zero_probability_profiles,
)
from equirobust.game import is_nash, product_distribution
from strategies import games


def test_constraint_layout():
    g = make_game("flesch-2x2x2", eps=0)
    poly = CePolytope(g)
    # 8 nonnegativity rows, 1 normalization, 3 players x 2 ordered pairs
    assert len(poly) == 8 + 1 + 6
    kinds = [label.kind for label in poly.labels]
    assert kinds == ["nonnegativity"] * 8 + [NORMALIZATION] + ["incentive"] * 6
    assert str(poly.labels[9]) == "h[0](0->1)>=0"


@pytest.mark.parametrize("eps, count", [(0, 3), (F(-1, 10), 2), (F(1, 10), 6)])
def test_counting_game_extreme_ce(eps, count):
    g = make_game("counting-3x3", eps=eps)
    verts = extreme_ce(g)
    assert len(verts) == count
    assert all(oracles.ce_check(g, v) for v in verts)


def test_coordination_game_ce_polytope():
    assert count_extreme_ce(make_game("coord-2x2", eps=1)) == 1
    verts = extreme_ce(make_game("coord-2x2", eps=0))
    assert len(verts) > 1


def test_moulin_vial_4x4_uniqueness_switch():
    unique, mu = is_ce_unique(make_game("moulin-vial-4x4", x=2))
    assert unique
    point = [0] * 16
    point[15] = 1
    assert mu == tuple(point)
    assert is_ce_unique(make_game("moulin-vial-4x4", x=F(5, 4))) == (False, None)


def test_ranging_method_and_bad_method():
    g = make_game("prisoners-dilemma")
    assert is_ce_unique(g, method="ranging") == is_ce_unique(g)
    with pytest.raises(ValueError):
        is_ce_unique(g, method="bogus")


def test_reference_games_both_methods_agree():
    from equirobust.registry import reference_games

    for name, params, g in reference_games():
        if g.num_profiles > 9:
            continue
        cone, ranging = is_ce_unique(g, "cone"), is_ce_unique(g, "ranging")
        assert cone == ranging, (name, params)


@given(games())
def test_cone_and_ranging_uniqueness_agree(g):
    assert is_ce_unique(g, "cone") == is_ce_unique(g, "ranging")


@given(games(shapes=((2, 2), (2, 3), (3, 2))))
def test_unique_iff_single_vertex(g):
    unique, mu = is_ce_unique(g)
    verts = extreme_ce(g)
    assert unique == (len(verts) == 1)
    if unique:
        assert mu == verts[0]


@given(games(shapes=((2, 2), (2, 3), (2, 2, 2))))
def test_vertices_are_correlated_equilibria(g):
    for v in extreme_ce(g):
        assert sum(v) == 1 and min(v) >= 0
        assert oracles.ce_check(g, v)


@given(games(shapes=((2, 2), (2, 3))))
def test_max_profile_probability_against_float_lp(g):
    poly = CePolytope(g).polytope
    s = g.profiles()[-1]
    k = g.profile_index(s)
    c = [1 if j == k else 0 for j in range(g.num_profiles)]
    status, value = oracles.float_lp_max(c, poly.A, poly.b, poly.kinds, poly.lower, [None] * g.num_profiles)
    assert status == "optimal"
    assert abs(float(max_profile_probability(g, s)) - value) < 1e-7


def test_zero_probability_profiles_prisoners_dilemma():
    g = make_game("prisoners-dilemma")
    assert zero_probability_profiles(g) == [(0, 0), (0, 1), (1, 0)]
    assert max_profile_probability(g, (1, 1)) == 1


def test_binding_constraints_at_a_pure_equilibrium():
    g = make_game("prisoners-dilemma")
    mu = (0, 0, 0, 1)
    labels = binding_constraints(g, mu)
    assert sum(1 for l in labels if l.kind == "nonnegativity") == 3
    # recommendations that are never made give zero incentive rows
    assert {(l.player, l.s) for l in labels if l.kind == "incentive"} == {(0, 0), (1, 0)}


def test_binding_constraints_requires_a_ce():
    with pytest.raises(NotACorrelatedEquilibrium):
        binding_constraints(make_game("prisoners-dilemma"), (1, 0, 0, 0))


def test_same_binding_sets():
    g1 = make_game("prisoners-dilemma")
    g2 = g1.translated(0, 10)
    assert same_binding_sets(g1, (0, 0, 0, 1), g2, (0, 0, 0, 1))
    with pytest.raises(ValueError):
        same_binding_sets(g1, (0, 0, 0, 1), make_game("moulin-vial-3x3"), (1,) + (0,) * 8)


def test_unique_ce_as_nash():
    g = make_game("moulin-vial-4x4", x=2)
    sigma, is_product = unique_ce_as_nash(g)
    assert is_product
    assert sigma == ((0, 0, 0, 1), (0, 0, 0, 1))
    assert is_nash(g, sigma)
    with pytest.raises(ValueError):
        unique_ce_as_nash(make_game("coord-2x2", eps=0))


def test_matching_pennies_unique_ce_is_uniform_product():
    g = make_game("matching-pennies")
    unique, mu = is_ce_unique(g)
    assert unique and mu == (F(1, 4),) * 4
    half = (F(1, 2), F(1, 2))
    assert mu == product_distribution(g, (half, half))
    assert is_correlated_equilibrium(g, mu)
