from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from equirobust import (
    GameFormatError,
    MatrixGame,
    build_auxiliary_game,
    extreme_ce,
    make_game,
    maximizer_optimal_equals_ce,
    solve_zero_sum,
)
from equirobust.zerosum import optimal_strategy_vertices
from strategies import games

HALF = F(1, 2)


def matrices(max_rows=3, max_cols=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(lambda rows: MatrixGame(tuple(map(tuple, rows))))


def test_matrix_validation_and_json():
    with pytest.raises(GameFormatError):
        MatrixGame(((1, 2), (3,)))
    with pytest.raises(GameFormatError):
        MatrixGame(())
    m = MatrixGame(((1, "1/2"), (0, -3)))
    assert MatrixGame.from_json(m.to_json()) == m
    with pytest.raises(GameFormatError):
        MatrixGame.from_dict({"rows": 3, "cols": 2, "matrix": [[1, 2], [3, 4]]})
    with pytest.raises(GameFormatError):
        MatrixGame.from_dict({"matrix": [[1]]})


def test_game_conversion():
    g = make_game("matching-pennies")
    m = MatrixGame.from_game(g)
    assert m.to_game() == g
    with pytest.raises(GameFormatError):
        MatrixGame.from_game(make_game("prisoners-dilemma"))
    with pytest.raises(GameFormatError):
        MatrixGame.from_game(make_game("flesch-2x2x2", eps=0))


def test_counterexample_at_zero():
    sol = solve_zero_sum(make_game("zerosum-3x2", eps=0), vertices=True)
    assert sol.value == 0
    assert sol.row_face_dimension == 0 and sol.row_unique
    assert sol.row_vertices == [(1, 0, 0)]
    assert sol.row_strategy == (1, 0, 0)


def test_counterexample_at_one():
    m = MatrixGame.from_game(make_game("zerosum-3x2", eps=1))
    sol = solve_zero_sum(m, vertices=True)
    # the column player's 2-row view gives the value independently
    assert sol.value == -oracles.zero_sum_value_2xn(_side_col(m)) == -HALF
    assert sol.row_face_dimension == 1
    assert set(sol.row_vertices) == {(HALF, HALF, 0), (HALF, 0, HALF)}


def _side_col(m):
    return [[-v for v in row] for row in zip(*m.matrix)]


def test_matching_pennies():
    sol = solve_zero_sum(make_game("matching-pennies"))
    assert sol.value == 0
    assert sol.row_strategy == sol.col_strategy == (HALF, HALF)
    assert sol.row_unique and sol.col_unique


def test_unknown_side():
    with pytest.raises(ValueError):
        optimal_strategy_vertices(MatrixGame(((1,),)), side="diagonal")


@given(st.integers(1, 4).flatmap(lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=2, max_size=2)))
def test_two_row_value_matches_envelope(rows):
    m = MatrixGame(tuple(map(tuple, rows)))
    assert solve_zero_sum(m).value == oracles.zero_sum_value_2xn(rows)


@given(matrices())
def test_value_against_float_lp(m):
    r, c = m.shape
    A = [list(m.column(j)) + [-1] for j in range(c)] + [[1] * r + [0]]
    status, value = oracles.float_lp_max([0] * r + [1], A, [0] * c + [1], [">="] * c + ["=="], [0] * r + [None], [None] * (r + 1))
    sol = solve_zero_sum(m)
    assert status == "optimal" and abs(float(sol.value) - value) < 1e-9


@given(matrices())
def test_optimal_vertices_and_face_dimension(m):
    sol = solve_zero_sum(m, vertices=True)
    for side, verts, dim in (("row", sol.row_vertices, sol.row_face_dimension), ("column", sol.col_vertices, sol.col_face_dimension)):
        assert verts
        assert (dim == 0) == (len(verts) == 1)
        assert dim <= len(verts) - 1
    for p in sol.row_vertices:
        assert min(sum(pi * a for pi, a in zip(p, m.column(j))) for j in range(m.cols)) == sol.value
    for q in sol.col_vertices:
        assert max(sum(qj * a for qj, a in zip(q, row)) for row in m.matrix) == sol.value


def test_auxiliary_game_layout():
    g = make_game("moulin-vial-3x3")
    aux = build_auxiliary_game(g)
    assert aux.matrix.shape == (9, 2 * 3 * 2 + 1)
    assert aux.col_labels[0] == (0, 0, 1) and aux.col_labels[-1] is None
    assert aux.row_labels == tuple(g.profiles())
    for r, s in enumerate(aux.row_labels):
        for c, label in enumerate(aux.col_labels):
            entry = aux.matrix.matrix[r][c]
            if label is None or s[label[0]] != label[1]:
                assert entry == 0
            else:
                i, a, b = label
                dev = s[:i] + (b,) + s[i + 1 :]
                assert entry == g.payoff(i, s) - g.payoff(i, dev)
    assert solve_zero_sum(aux.matrix).value == 0
    d = aux.to_dict()
    assert d["col_labels"][-1] is None and len(d["row_labels"]) == 9


def test_auxiliary_optimal_set_is_the_ce_polytope_on_registry_games():
    from equirobust.registry import reference_games

    for name, params, g in reference_games():
        if g.num_profiles <= 9:
            assert maximizer_optimal_equals_ce(g), (name, params)


@given(games(shapes=((2, 2), (2, 3), (2, 2, 2))))
def test_auxiliary_value_is_zero_and_sets_agree(g):
    aux = build_auxiliary_game(g)
    assert solve_zero_sum(aux.matrix).value == 0
    assert set(optimal_strategy_vertices(aux.matrix, "row")) == set(extreme_ce(g))
