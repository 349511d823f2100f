"""Acceptance suite: twelve end-to-end checks, each with a wall-clock budget.

Every test prints one line, ``[A<n>] PASS`` or ``[A<n>] FAIL``, with the time
taken and the budget. Run with ``pytest tests/test_acceptance.py -v``.
"""

import time
from contextlib import contextmanager
from fractions import Fraction as F

import numpy as np
import pytest

import oracles
from equirobust import (
    MatrixGame,
    PerturbationSpec,
    analyze_2x2x2,
    check_claim_invariance,
    enumerate_nash_bimatrix,
    enumerate_symmetric_nash,
    extreme_ce,
    is_ce_unique,
    is_correlated_equilibrium,
    is_nash,
    is_quasi_strict,
    lp,
    make_game,
    maximizer_optimal_equals_ce,
    probe_count,
    probe_unique_ce,
    solve_zero_sum,
)
from equirobust.ce import unique_ce_as_nash
from equirobust.game import expected_payoff, expected_payoff_correlated, is_product_distribution
from equirobust.random_games import random_dominance_solvable, random_game, random_zero_sum, rng_for
from equirobust.registry import REGISTRY, reference_games
from equirobust.robustness import family_direction

HALF, THIRD = F(1, 2), F(1, 3)


@contextmanager
def criterion(number, title, budget, capsys):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
    except BaseException:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\n[A{number}] FAIL  {title}  ({elapsed:.2f}s / {budget}s)")
        raise
    with capsys.disabled():
        print(f"\n[A{number}] PASS  {title}  ({elapsed:.2f}s / {budget}s)")


def test_a01_moulin_vial_block(capsys):
    with criterion(1, "3x3 block: payoff-3/2 CE and the unique uniform Nash equilibrium", 1, capsys):
        g = make_game("moulin-vial-3x3")
        mu = [0 if a == b else F(1, 6) for a, b in g.profiles()]
        assert is_correlated_equilibrium(g, mu)
        assert [expected_payoff_correlated(g, mu, i) for i in (0, 1)] == [F(3, 2), F(3, 2)]
        uniform = (THIRD, THIRD, THIRD)
        assert enumerate_nash_bimatrix(g).equilibria == [(uniform, uniform)]
        assert [expected_payoff(g, (uniform, uniform), i) for i in (0, 1)] == [1, 1]


def test_a02_bordered_block(capsys):
    with criterion(2, "4x4 bordered game: x=5/4 unique pure NE, many CE; x=2 unique CE", 5, capsys):
        corner = (0, 0, 0, 1)
        g = make_game("moulin-vial-4x4", x=F(5, 4))
        assert enumerate_nash_bimatrix(g).equilibria == [(corner, corner)]
        assert is_ce_unique(g) == (False, None)
        unique, mu = is_ce_unique(make_game("moulin-vial-4x4", x=2))
        assert unique and mu == (0,) * 15 + (1,)


def test_a03_counting_game(capsys):
    with criterion(3, "3x3 counting game: extreme CE 3/2/6 and Nash 3/2/4", 10, capsys):
        expected = {F(0): (3, 3), F(-1, 10): (2, 2), F(1, 10): (6, 4)}
        for eps, (n_ce, n_nash) in expected.items():
            g = make_game("counting-3x3", eps=eps)
            assert len(extreme_ce(g)) == n_ce, eps
            assert enumerate_nash_bimatrix(g).count == n_nash, eps


def test_a04_three_player_game(capsys):
    with criterion(4, "2x2x2 game: certified unique TLW at 0, continuum with P(Bottom)<=1/3 at 1/2", 5, capsys):
        g = make_game("flesch-2x2x2", eps=0)
        rep = analyze_2x2x2(g)
        tlw = ((1, 0), (1, 0), (1, 0))
        assert rep.equilibria == [tlw] and not rep.components and rep.complete
        assert not is_quasi_strict(g, tlw)

        g = make_game("flesch-2x2x2", eps=HALF)
        rep = analyze_2x2x2(g)
        comps = [c for c in rep.components if c.fixed == {1: 0, 2: 0} and c.free == (0,)]
        assert len(comps) == 1
        assert comps[0].interval == (0, False, THIRD, True)
        assert is_nash(g, comps[0].sample)
        assert 0 < comps[0].sample[0][1] <= THIRD
        assert is_nash(g, ((1 - THIRD, THIRD), (1, 0), (1, 0)))
        assert not is_nash(g, ((1 - THIRD - F(1, 1000), THIRD + F(1, 1000)), (1, 0), (1, 0)))


def test_a05_symmetric_game(capsys):
    with criterion(5, "symmetric game: one non-quasi-strict symmetric NE at 0, three at 1", 5, capsys):
        g = make_game("sym-3x3", eps=0)
        eqs = enumerate_symmetric_nash(g)
        assert eqs == [((1, 0, 0), (1, 0, 0))]
        assert not is_quasi_strict(g, eqs[0])
        eqs = enumerate_symmetric_nash(make_game("sym-3x3", eps=1))
        assert {s for s, _ in eqs} == {(HALF, HALF, 0), (HALF, 0, HALF), (F(3, 5), F(1, 5), F(1, 5))}


def test_a06_zero_sum_counterexample(capsys):
    with criterion(6, "zero-sum: unique optimal T at 0, optimal segment at 1, value -1/2", 1, capsys):
        sol = solve_zero_sum(make_game("zerosum-3x2", eps=0), vertices=True)
        assert sol.row_face_dimension == 0 and sol.row_vertices == [(1, 0, 0)]
        m = MatrixGame.from_game(make_game("zerosum-3x2", eps=1))
        sol = solve_zero_sum(m, vertices=True)
        assert sol.row_face_dimension == 1
        assert set(sol.row_vertices) == {(HALF, HALF, 0), (HALF, 0, HALF)}
        eps = F(1)
        closed_form = -eps / (1 + eps)  # T with probability 1/(1+eps) equalizes both columns
        column_view = [[-v for v in col] for col in zip(*m.matrix)]
        assert sol.value == closed_form == -oracles.zero_sum_value_2xn(column_view) == -HALF


def test_a07_auxiliary_game_equivalence(capsys):
    with criterion(7, "auxiliary zero-sum game: maximizer-optimal set equals the CE set", 60, capsys):
        for name, params, g in reference_games():
            assert maximizer_optimal_equals_ce(g), (name, params)
        for k in range(100):
            shape = (2, 2) if k % 2 == 0 else (2, 3)
            g = random_game(rng_for(7, k), shape, low=-9, high=9)
            assert maximizer_optimal_equals_ce(g), k


def _generated_games(count, seed):
    shapes = [(2, 2), (2, 3), (3, 3), (3, 2), (2, 2, 2), (3, 2, 2), (2, 3, 3), (3, 3, 3)]
    for k in range(count):
        g, _ = random_dominance_solvable(rng_for(seed, k), shapes[k % len(shapes)])
        yield g


def test_a08_dominance_solvable_games(capsys):
    with criterion(8, "50 dominance-solvable games: unique CE, quasi-strict product, invariant marginals", 120, capsys):
        for k, g in enumerate(_generated_games(50, seed=8)):
            unique, mu = is_ce_unique(g)
            assert unique, k
            assert is_product_distribution(g, mu), k
            sigma, _ = unique_ce_as_nash(g)
            assert is_quasi_strict(g, sigma), k
            assert check_claim_invariance(g), k


def test_a09_unique_ce_persists(capsys):
    with criterion(9, "unique CE and its support persist under 200 perturbations of radius 1/100", 300, capsys):
        games = [make_game("moulin-vial-4x4", x=2)] + list(_generated_games(5, seed=9))
        spec = PerturbationSpec(delta=F(1, 100), samples=200, seed=2024)
        for k, g in enumerate(games):
            rep = probe_unique_ce(g, spec)
            agg = rep.aggregates
            assert agg["samples"] == 200
            assert agg["unique_fraction"] == 1 and agg["support_match_fraction"] == 1, (k, rep.attempts)
            with capsys.disabled():
                print(f"\n      game {k} shape {g.shape}: delta used {agg['delta_used']}, retries {agg['retries']}")


def test_a10_counts_jump_along_families(capsys):
    with criterion(10, "equilibrium counts jump along the one-parameter families", 60, capsys):
        def along(name, counter, magnitudes):
            family = REGISTRY[name]
            spec = PerturbationSpec(direction=family_direction(family), magnitudes=magnitudes)
            return probe_count(family(eps=0), spec, counter).records

        eps = (F(-1, 10), 0, F(1, 10))
        assert [r["nash_count"] for r in along("counting-3x3", "nash", eps)] == [2, 3, 4]
        assert [r["extreme_ce_count"] for r in along("counting-3x3", "extreme_ce", eps)] == [2, 3, 6]
        flesch = along("flesch-2x2x2", "nash", (0, HALF))
        assert flesch[0] == {"nash_count": 1, "continuum": False}
        assert flesch[1]["continuum"] is True
        sym = along("sym-3x3", "symmetric_nash", (0, 1))
        assert [r["symmetric_nash_count"] for r in sym] == [1, 3]
        assert sym[0]["quasi_strict"] == [False]


def test_a11_zero_sum_uniqueness_equivalence(capsys):
    with criterion(11, "100 zero-sum games: unique Nash iff unique CE", 120, capsys):
        tally = {True: 0, False: 0}
        for k in range(100):
            rng = rng_for(11, k)
            rows, cols = (int(v) for v in rng.integers(1, 4, size=2))
            m = random_zero_sum(rng, rows, cols, low=-3, high=3)
            g = m.to_game()
            unique_nash = enumerate_nash_bimatrix(g).count == 1
            assert unique_nash == is_ce_unique(g)[0], (k, m.matrix)
            tally[unique_nash] += 1
        assert tally[True] and tally[False]  # both sides of the equivalence are exercised


def _random_polytope(rng):
    n = int(rng.integers(1, 5))
    rows = int(rng.integers(1, 7))
    A = rng.integers(-3, 4, size=(rows, n)).tolist()
    b = rng.integers(-2, 6, size=rows).tolist()
    kinds = [lp.LE if v < 0.7 else lp.GE if v < 0.9 else lp.EQ for v in rng.random(rows)]
    if rng.random() < 0.3:
        # repeat a row to force degeneracy
        A.append(list(A[0]))
        b.append(b[0])
        kinds.append(kinds[0])
    return lp.Polytope(A, b, kinds, lower=[0] * n, upper=[3] * n)


def test_a12_lp_core(capsys):
    with criterion(12, "exact LP: every optimum certified by duality; vertices match brute force", 60, capsys):
        nonempty = 0
        for k in range(30):
            poly = _random_polytope(rng_for(12, k))
            got = lp.enumerate_vertices(poly)
            expect = oracles.brute_force_vertices(poly.A, poly.b, poly.kinds, poly.lower, poly.upper)
            assert got == expect, k
            nonempty += bool(got)
            for c in np.eye(poly.dim, dtype=int).tolist():
                sol = lp.solve(poly.program(c))
                if got:
                    assert sol.value == max(sum(ci * vi for ci, vi in zip(c, v)) for v in got)
        assert nonempty >= 15
        log = oracles.SOLVE_LOG
        with capsys.disabled():
            print(f"\n      {log.checked} optimal solves certified in this session, {len(log.failures)} failures")
        assert log.checked > 0 and not log.failures
