"""Named, parameterized constructors for the games used throughout the package.

Player order for three-player games is (row, column, matrix).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ._rational import as_rational
from .game import Game

__all__ = ["Example", "REGISTRY", "make_game", "list_examples", "UnknownExampleError"]


class UnknownExampleError(KeyError):
    pass


@dataclass(frozen=True)
class Example:
    name: str
    params: tuple  # parameter names
    defaults: tuple  # default value per parameter
    reference_values: tuple  # parameter tuples at which the game is studied
    description: str
    build: Callable

    def __call__(self, **params) -> Game:
        unknown = set(params) - set(self.params)
        if unknown:
            raise ValueError(f"{self.name} takes parameters {list(self.params)}, got {sorted(unknown)}")
        values = [as_rational(params.get(p, d)) for p, d in zip(self.params, self.defaults)]
        return self.build(*values)


def _bimatrix(cells, rows, cols):
    A = [[c[0] for c in row] for row in cells]
    B = [[c[1] for c in row] for row in cells]
    return Game.from_bimatrix(A, B, labels=[rows, cols])


def flesch_2x2x2(eps):
    # payoffs[row][col][matrix] = (u1, u2, u3); West is the first matrix
    table = {
        (0, 0, 0): (1, 1, 1),
        (0, 1, 0): (0, 1, 1),
        (1, 0, 0): (1, 1, 0),
        (1, 1, 0): (1, 0, 1),
        (0, 0, 1): (1, 0, 1 - eps),
        (0, 1, 1): (1, 1, 0),
        (1, 0, 1): (0, 1, 1),
        (1, 1, 1): (0, 0, 0),
    }
    return Game.from_function(
        (2, 2, 2), table.__getitem__, labels=[["Top", "Bottom"], ["Left", "Right"], ["West", "East"]]
    )


def symmetric_3x3(eps):
    return _bimatrix(
        [
            [(-eps, -eps), (1, 0), (1, 0)],
            [(0, 1), (0, 0), (-1, -1)],
            [(0, 1), (-1, -1), (0, 0)],
        ],
        ["T", "M", "B"],
        ["L", "M", "R"],
    )


def counting_3x3(eps):
    return _bimatrix(
        [
            [(0, 0), (-1, -1), (-1, 0)],
            [(-1, -1), (eps, eps), (-1, 0)],
            [(0, -1), (0, -1), (0, 0)],
        ],
        ["T", "M", "B"],
        ["L", "M", "R"],
    )


def one_person(eps):
    return Game([[0, eps]], labels=[["Top", "Bottom"]])


def coordination_2x2(eps):
    return _bimatrix([[(1, 1), (0, 0)], [(0, 0), (-eps, -eps)]], ["T", "B"], ["L", "R"])


_MV = [[(0, 0), (2, 1), (1, 2)], [(1, 2), (0, 0), (2, 1)], [(2, 1), (1, 2), (0, 0)]]


def moulin_vial_3x3():
    return _bimatrix(_MV, ["1", "2", "3"], ["1", "2", "3"])


def moulin_vial_4x4(x):
    cells = [row + [(-1, x)] for row in _MV] + [[(x, -1)] * 3 + [(0, 0)]]
    return _bimatrix(cells, ["1", "2", "3", "4"], ["1", "2", "3", "4"])


def zerosum_3x2(eps):
    M = [[-eps, 0], [0, -1], [0, -1]]
    return Game.from_bimatrix(M, [[-v for v in row] for row in M], labels=[["T", "M", "B"], ["L", "R"]])


def matching_pennies():
    M = [[1, -1], [-1, 1]]
    return Game.from_bimatrix(M, [[-v for v in row] for row in M], labels=[["H", "T"], ["H", "T"]])


def prisoners_dilemma():
    return _bimatrix([[(3, 3), (0, 5)], [(5, 0), (1, 1)]], ["C", "D"], ["C", "D"])


_F = Fraction
REGISTRY = {
    e.name: e
    for e in [
        Example("flesch-2x2x2", ("eps",), (0,), ((0,), (_F(1, 2),)),
                "three-player game with a unique Nash equilibrium at eps=0 and a continuum for eps>0",
                flesch_2x2x2),
        Example("sym-3x3", ("eps",), (0,), ((0,), (1,)),
                "symmetric game whose unique symmetric equilibrium splits into three for eps>0",
                symmetric_3x3),
        Example("counting-3x3", ("eps",), (0,), ((0,), (_F(-1, 10),), (_F(1, 10),)),
                "equilibrium counts 3 / 2 / 4 and extreme CE counts 3 / 2 / 6 for eps =0 / <0 / >0",
                counting_3x3),
        Example("one-person", ("eps",), (0,), ((0,), (1,)),
                "single player choosing between payoffs 0 and eps",
                one_person),
        Example("coord-2x2", ("eps",), (0,), ((0,), (1,)),
                "coordination game with a unique CE for eps>0 and two equilibria at eps=0",
                coordination_2x2),
        Example("moulin-vial-3x3", (), (), ((),),
                "Moulin-Vial game: unique Nash (1/3,1/3,1/3) with payoff 1, a CE with payoff 3/2",
                moulin_vial_3x3),
        Example("moulin-vial-4x4", ("x",), (2,), ((_F(5, 4),), (2,)),
                "Moulin-Vial block bordered by an outside option worth x",
                moulin_vial_4x4),
        Example("zerosum-3x2", ("eps",), (0,), ((0,), (1,)),
                "zero-sum game whose row player's optimal set jumps from a point to a segment",
                zerosum_3x2),
        Example("matching-pennies", (), (), ((),), "matching pennies", matching_pennies),
        Example("prisoners-dilemma", (), (), ((),), "prisoner's dilemma", prisoners_dilemma),
    ]
}


def make_game(name: str, **params) -> Game:
    try:
        example = REGISTRY[name]
    except KeyError:
        raise UnknownExampleError(name) from None
    return example(**params)


def list_examples():
    return [REGISTRY[k] for k in sorted(REGISTRY)]


def reference_games():
    """Yield ``(name, params, game)`` for every example at its studied parameters."""
    for ex in list_examples():
        for values in ex.reference_values:
            params = dict(zip(ex.params, values))
            yield ex.name, params, ex(**params)
