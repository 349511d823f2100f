import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given, settings

import oracles
from equirobust import (
    Game,
    GameFormatError,
    analyze_2x2x2,
    enumerate_nash_bimatrix,
    enumerate_symmetric_nash,
    is_dominance_solvable,
    is_nash,
    is_quasi_strict,
    make_game,
)
from equirobust.game import pure_profile
from equirobust.nash import enumerate_pure_nash, strictly_dominated, verify_nash
from equirobust.random_games import random_dominance_solvable, rng_for
from strategies import games

HALF = F(1, 2)


@pytest.mark.parametrize("eps, count", [(0, 3), (F(-1, 10), 2), (F(1, 10), 4)])
def test_counting_game_nash(eps, count):
    g = make_game("counting-3x3", eps=eps)
    rep = enumerate_nash_bimatrix(g)
    assert rep.count == count
    # payoff ties (T and B both pay 0 against L) make every member degenerate
    assert rep.degenerate
    assert rep.complete
    assert all(oracles.nash_check(g, s) for s in rep.equilibria)


def test_moulin_vial_nash():
    g = make_game("moulin-vial-3x3")
    third = (F(1, 3),) * 3
    assert enumerate_nash_bimatrix(g).equilibria == [(third, third)]
    rep = enumerate_nash_bimatrix(make_game("moulin-vial-4x4", x=F(5, 4)))
    assert rep.equilibria == [((0, 0, 0, 1), (0, 0, 0, 1))]


def test_equilibria_are_ordered_by_support_size():
    rep = enumerate_nash_bimatrix(make_game("coord-2x2", eps=0))
    sizes = [sum(1 for v in x if v) + sum(1 for v in y if v) for x, y in rep.equilibria]
    assert sizes == sorted(sizes)
    # (T, L) strict, (B, R) weak; the mixed profiles between are not equilibria
    assert rep.equilibria == [((1, 0), (1, 0)), ((0, 1), (0, 1))]


def test_pairing_refers_to_vertices():
    rep = enumerate_nash_bimatrix(make_game("matching-pennies"))
    assert len(rep.pairing) == 1
    ix, iy = rep.pairing[0]
    assert rep.row_vertices[ix] and rep.col_vertices[iy]


@settings(max_examples=25)
@given(games(shapes=((2, 2), (2, 3), (3, 2))))
def test_bimatrix_matches_support_enumeration(g):
    rep = enumerate_nash_bimatrix(g)
    assume(not rep.degenerate)
    A = g.payoff_tensor(0).tolist()
    B = g.payoff_tensor(1).tolist()
    assert set(rep.equilibria) == oracles.support_enumeration(A, B)


@given(games(shapes=((2, 2), (2, 3), (3, 3))))
def test_bimatrix_equilibria_pass_definition(g):
    rep = enumerate_nash_bimatrix(g)
    assert rep.count >= 1
    for sigma in rep.equilibria:
        assert oracles.nash_check(g, sigma)
    pure = {pure_profile(g, s) for s in enumerate_pure_nash(g)}
    assert pure <= set(rep.equilibria)


@given(games())
def test_pure_nash_matches_definition(g):
    expect = [s for s in g.profiles() if oracles.nash_check(g, pure_profile(g, s))]
    assert enumerate_pure_nash(g) == expect


def test_symmetric_example():
    g0 = make_game("sym-3x3", eps=0)
    eqs = enumerate_symmetric_nash(g0)
    assert eqs == [((1, 0, 0), (1, 0, 0))]
    assert not is_quasi_strict(g0, eqs[0])
    eqs = enumerate_symmetric_nash(make_game("sym-3x3", eps=1))
    assert [s for s, _ in eqs] == [(HALF, HALF, 0), (HALF, 0, HALF), (F(3, 5), F(1, 5), F(1, 5))]


def test_symmetric_requires_symmetric_game():
    with pytest.raises(GameFormatError):
        enumerate_symmetric_nash(make_game("zerosum-3x2", eps=0))


@given(games(shapes=((2, 2), (3, 3))))
def test_symmetric_equilibria_are_nash(g):
    A = g.payoff_tensor(0)
    sym = Game.from_bimatrix(A, A.T)
    eqs = enumerate_symmetric_nash(sym)
    assert eqs  # every symmetric game has a symmetric equilibrium
    for s, t in eqs:
        assert s == t and oracles.nash_check(sym, (s, t))


def test_non_bimatrix_rejected():
    with pytest.raises(GameFormatError):
        enumerate_nash_bimatrix(make_game("flesch-2x2x2", eps=0))
    with pytest.raises(GameFormatError):
        analyze_2x2x2(make_game("prisoners-dilemma"))


def test_verify_nash_alias():
    g = make_game("prisoners-dilemma")
    assert verify_nash(g, pure_profile(g, (1, 1)))
    assert not verify_nash(g, pure_profile(g, (0, 0)))


# -- dominance


def test_prisoners_dilemma_is_dominance_solvable():
    assert is_dominance_solvable(make_game("prisoners-dilemma")) == (True, [(0, 0), (1, 0)])
    assert is_dominance_solvable(make_game("matching-pennies")) == (False, None)


def test_dominance_by_a_mixture_only():
    A = [[3, 0], [0, 3], [1, 1]]
    g = Game.from_bimatrix(A, [[0, 0]] * 3)
    remaining = [[0, 1, 2], [0, 1]]
    assert strictly_dominated(g, 0, 2, remaining)
    assert not strictly_dominated(g, 0, 0, remaining)
    # weak dominance does not count
    g2 = Game.from_bimatrix([[3, 0], [0, 3], [F(3, 2), F(3, 2)]], [[0, 0]] * 3)
    assert not strictly_dominated(g2, 0, 2, remaining)


@pytest.mark.parametrize("shape", [(2, 2), (3, 3), (2, 3), (2, 2, 2), (3, 2, 3)])
def test_generated_games_are_dominance_solvable(shape):
    for k in range(4):
        g, schedule = random_dominance_solvable(rng_for(5, k), shape)
        ok, order = is_dominance_solvable(g)
        assert ok
        assert len(order) == sum(m - 1 for m in shape) == len(schedule)


# -- 2x2x2 analysis


def test_flesch_game_unique_equilibrium():
    g = make_game("flesch-2x2x2", eps=0)
    rep = analyze_2x2x2(g)
    top_left_west = ((1, 0), (1, 0), (1, 0))
    assert rep.equilibria == [top_left_west]
    assert not rep.components and rep.complete
    assert not is_quasi_strict(g, top_left_west)
    assert rep.quadratic.coefficients == (3, 0, 0)
    assert not rep.quadratic.has_completely_mixed_equilibrium


def test_flesch_game_continuum():
    g = make_game("flesch-2x2x2", eps=HALF)
    rep = analyze_2x2x2(g)
    assert rep.has_continuum
    comps = [c for c in rep.components if c.interval == (0, False, F(1, 3), True)]
    assert len(comps) == 1
    comp = comps[0]
    assert comp.free == (0,) and comp.fixed == {1: 0, 2: 0}
    assert is_nash(g, comp.sample)
    for p in (F(1, 3), F(1, 7), F(1, 100)):
        assert is_nash(g, ((1 - p, p), (1, 0), (1, 0)))
    assert not is_nash(g, ((F(1, 2), F(1, 2)), (1, 0), (1, 0)))


def test_all_zero_game_is_one_cube():
    zero = np.zeros((2, 2, 2), dtype=object)
    rep = analyze_2x2x2(Game([zero, zero, zero]))
    assert len(rep.components) == 1 and rep.components[0].free == (0, 1, 2)


def test_irrational_completely_mixed_equilibrium_is_bracketed():
    # matching-pennies-like cycle with a quadratic whose roots are irrational
    found = None
    for seed in range(400):
        rng = rng_for(17, seed)
        vals = rng.integers(-5, 6, size=24).tolist()
        tensors = [np.array(vals[8 * i : 8 * i + 8], dtype=object).reshape(2, 2, 2) for i in range(3)]
        rep = analyze_2x2x2(Game(tensors))
        certs = [r for r in rep.quadratic.roots if r.exact is None and r.is_equilibrium]
        if certs and not rep.components:
            found = (Game(tensors), rep, certs[0])
            break
    assert found is not None
    g, rep, cert = found
    assert not rep.complete  # the irrational point is certified, not listed
    assert cert.lo < cert.hi
    numeric = oracles.completely_mixed_2x2x2(g)
    assert any(cert.lo <= z[2] <= cert.hi for z in numeric)


def _interior(sigma):
    return all(0 < s[1] < 1 for s in sigma)


@settings(max_examples=30)
@given(games(shapes=((2, 2, 2),)))
def test_2x2x2_matches_polynomial_solver(g):
    rep = analyze_2x2x2(g)
    assume(not rep.components)
    numeric = oracles.completely_mixed_2x2x2(g)
    assert numeric is not None
    exact = [tuple(float(s[1]) for s in sigma) for sigma in rep.equilibria if _interior(sigma)]
    certified = [r for r in rep.quadratic.roots if r.exact is None and r.is_equilibrium]
    assert len(numeric) == len(exact) + len(certified)
    for point in exact:
        assert any(max(abs(a - b) for a, b in zip(point, z)) < 1e-9 for z in numeric)
    for cert in certified:
        assert any(float(cert.lo) - 1e-12 <= z[2] <= float(cert.hi) + 1e-12 for z in numeric)
    pure = {pure_profile(g, s) for s in enumerate_pure_nash(g)}
    assert pure == {s for s in rep.equilibria if all(v in (0, 1) for v in (p[1] for p in s))}


@given(games(shapes=((2, 2, 2),)))
def test_2x2x2_points_and_samples_are_equilibria(g):
    rep = analyze_2x2x2(g)
    for sigma in rep.equilibria:
        assert oracles.nash_check(g, sigma)
    for comp in rep.components:
        if comp.sample is not None:
            assert oracles.nash_check(g, comp.sample)
