"""Two-player zero-sum games and the auxiliary game whose maximizer-optimal
strategies are exactly the correlated equilibria of a given game."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import lp
from ._rational import as_rational, format_rational
from .ce import extreme_ce
from .game import Game, GameFormatError

__all__ = [
    "MatrixGame",
    "ZeroSumSolution",
    "AuxiliaryGame",
    "solve_zero_sum",
    "optimal_strategy_vertices",
    "optimal_polytope",
    "build_auxiliary_game",
    "maximizer_optimal_equals_ce",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class MatrixGame:
    """Payoff matrix of the row player (the maximizer)."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_rational(v, allow_decimal=True) for v in row) for row in self.matrix)
        if not rows or not rows[0]:
            raise GameFormatError("matrix game must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise GameFormatError("matrix rows have different lengths")
        object.__setattr__(self, "matrix", rows)

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0])

    @property
    def shape(self):
        return self.rows, self.cols

    def column(self, j):
        return tuple(row[j] for row in self.matrix)

    def transpose(self) -> "MatrixGame":
        return MatrixGame(tuple(zip(*self.matrix)))

    @classmethod
    def from_game(cls, game: Game) -> "MatrixGame":
        """Row player's matrix of a two-player zero-sum game."""
        if game.num_players != 2:
            raise GameFormatError("need a two-player game")
        A = game.payoff_tensor(0)
        B = game.payoff_tensor(1)
        if any(a + b != 0 for a, b in zip(A.reshape(-1), B.reshape(-1))):
            raise GameFormatError("game is not zero-sum")
        return cls(tuple(map(tuple, A.tolist())))

    def to_game(self) -> Game:
        return Game.from_bimatrix(self.matrix, [[-v for v in row] for row in self.matrix])

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "matrix": [[format_rational(v) for v in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, data) -> "MatrixGame":
        try:
            rows, cols, matrix = data["rows"], data["cols"], data["matrix"]
        except (KeyError, TypeError) as exc:
            raise GameFormatError(f"matrix game JSON needs rows, cols and matrix: {exc}") from None
        out = cls(tuple(tuple(row) for row in matrix))
        if out.shape != (rows, cols):
            raise GameFormatError(f"declared shape {(rows, cols)} does not match matrix {out.shape}")
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "MatrixGame":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ZeroSumSolution:
    value: Fraction
    row_strategy: tuple
    col_strategy: tuple
    row_face_dimension: int
    col_face_dimension: int
    row_vertices: Optional[list] = None
    col_vertices: Optional[list] = None

    @property
    def row_unique(self) -> bool:
        return self.row_face_dimension == 0

    @property
    def col_unique(self) -> bool:
        return self.col_face_dimension == 0


def _guarantee_lp(m: MatrixGame) -> lp.LinearProgram:
    """Variables ``(p, v)``: maximize v with ``p^T M >= v`` on the simplex."""
    r, c = m.shape
    A = [list(m.column(j)) + [-_ONE] for j in range(c)]
    A.append([_ONE] * r + [_ZERO])
    b = [_ZERO] * c + [_ONE]
    kinds = [lp.GE] * c + [lp.EQ]
    return lp.LinearProgram([_ZERO] * r + [_ONE], A, b, kinds, lower=[_ZERO] * r + [None])


def _side(m: MatrixGame, side: str) -> MatrixGame:
    if side == "row":
        return m
    if side == "column":
        # the column player maximizes -M^T
        return MatrixGame(tuple(tuple(-v for v in row) for row in zip(*m.matrix)))
    raise ValueError(f"side must be 'row' or 'column', got {side!r}")


def optimal_polytope(m: MatrixGame, side: str = "row") -> lp.Polytope:
    """The set of optimal mixed strategies of one side, as a polytope."""
    mm = _side(m, side)
    value = lp.solve(_guarantee_lp(mm)).value
    r, c = mm.shape
    A = [list(mm.column(j)) for j in range(c)] + [[_ONE] * r]
    b = [value] * c + [_ONE]
    return lp.Polytope(A, b, [lp.GE] * c + [lp.EQ], lower=[_ZERO] * r)


def optimal_strategy_vertices(m: MatrixGame, side: str = "row") -> list:
    return lp.enumerate_vertices(optimal_polytope(m, side), check_bounded=False)


def solve_zero_sum(m: MatrixGame, vertices: bool = False) -> ZeroSumSolution:
    if isinstance(m, Game):
        m = MatrixGame.from_game(m)
    row_lp = _guarantee_lp(m)
    col_lp = _guarantee_lp(_side(m, "column"))
    row = lp.solve(row_lp)
    col = lp.solve(col_lp)
    if row.value != -col.value:
        raise ArithmeticError("row and column guarantees differ")
    p = tuple(row.primal[: m.rows])
    q = tuple(col.primal[: m.cols])
    # minimax check: p guarantees the value against every column, q holds every row to it
    if min(sum(pi * a for pi, a in zip(p, m.column(j))) for j in range(m.cols)) != row.value:
        raise ArithmeticError("row strategy does not guarantee the value")
    if max(sum(qj * a for qj, a in zip(q, r)) for r in m.matrix) != row.value:
        raise ArithmeticError("column strategy does not hold the value")
    return ZeroSumSolution(
        value=row.value,
        row_strategy=p,
        col_strategy=q,
        row_face_dimension=lp.optimal_face_dimension(row_lp),
        col_face_dimension=lp.optimal_face_dimension(col_lp),
        row_vertices=optimal_strategy_vertices(m, "row") if vertices else None,
        col_vertices=optimal_strategy_vertices(m, "column") if vertices else None,
    )


@dataclass(frozen=True)
class AuxiliaryGame:
    """Rows are pure profiles of ``source``; columns are deviations ``(i, a, b)``
    followed by one all-zero column (label ``None``) for not deviating.

    Without that last column the value can be positive (whenever some CE is
    strict on every incentive row) and the maximizer's optimal set would then
    be a proper subset of the correlated equilibria.
    """

    source: Game
    matrix: MatrixGame
    row_labels: tuple
    col_labels: tuple

    def to_dict(self) -> dict:
        out = self.matrix.to_dict()
        out["row_labels"] = [list(s) for s in self.row_labels]
        out["col_labels"] = [None if t is None else list(t) for t in self.col_labels]
        return out


def build_auxiliary_game(game: Game) -> AuxiliaryGame:
    """Entry ``U^i(a, s^-i) - U^i(b, s^-i)`` when ``s^i = a``, else 0."""
    cols = [(i, a, b) for i, m in enumerate(game.shape) for a in range(m) for b in range(m) if a != b]
    profiles = game.profiles()
    tensors = [game.payoff_tensor(i) for i in range(game.num_players)]
    matrix = []
    for s in profiles:
        row = []
        for i, a, b in cols:
            if s[i] == a:
                U = tensors[i]
                row.append(U[s] - U[s[:i] + (b,) + s[i + 1 :]])
            else:
                row.append(_ZERO)
        row.append(_ZERO)
        matrix.append(tuple(row))
    return AuxiliaryGame(game, MatrixGame(tuple(matrix)), tuple(profiles), tuple(cols) + (None,))


def maximizer_optimal_equals_ce(game: Game) -> bool:
    """Compare the vertex sets of the auxiliary maximizer's optimal polytope and
    of the correlated-equilibrium polytope, each enumerated on its own."""
    aux = build_auxiliary_game(game)
    return set(optimal_strategy_vertices(aux.matrix, "row")) == set(extreme_ce(game))
