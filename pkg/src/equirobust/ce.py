"""The correlated-equilibrium polytope of a game and questions about it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from . import lp
from ._linalg import rank as _rank
from .game import Game, check_correlated, is_correlated_equilibrium, marginals, product_distribution

__all__ = [
    "ConstraintLabel",
    "CePolytope",
    "NotACorrelatedEquilibrium",
    "build_ce_polytope",
    "is_ce_unique",
    "extreme_ce",
    "count_extreme_ce",
    "max_profile_probability",
    "zero_probability_profiles",
    "binding_constraints",
    "same_binding_sets",
    "unique_ce_as_nash",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

NONNEGATIVITY = "nonnegativity"
NORMALIZATION = "normalization"
INCENTIVE = "incentive"


@dataclass(frozen=True, order=True)
class ConstraintLabel:
    kind: str
    profile: Optional[tuple] = None
    player: Optional[int] = None
    s: Optional[int] = None
    t: Optional[int] = None

    def __str__(self):
        if self.kind == NONNEGATIVITY:
            return f"mu{list(self.profile)}>=0"
        if self.kind == NORMALIZATION:
            return "sum(mu)=1"
        return f"h[{self.player}]({self.s}->{self.t})>=0"


class NotACorrelatedEquilibrium(ValueError):
    pass


class CePolytope:
    """Labeled constraint system whose feasible set is the set of CE of ``game``.

    Nonnegativity rows are carried as variable lower bounds of the underlying
    :class:`~equirobust.lp.Polytope`; :attr:`labels` and :meth:`rows` list
    them explicitly, in the order nonnegativity, normalization, incentive.
    """

    def __init__(self, game: Game):
        self.game = game
        q = game.num_profiles
        profiles = game.profiles()
        self._nonneg = [ConstraintLabel(NONNEGATIVITY, profile=s) for s in profiles]
        self._incentive_labels = []
        incentive_rows = []
        for i, m in enumerate(game.shape):
            U = game.payoff_tensor(i)
            for s_i in range(m):
                for t_i in range(m):
                    if s_i == t_i:
                        continue
                    row = [_ZERO] * q
                    for k, s in enumerate(profiles):
                        if s[i] == s_i:
                            row[k] = U[s] - U[s[:i] + (t_i,) + s[i + 1 :]]
                    incentive_rows.append(tuple(row))
                    self._incentive_labels.append(ConstraintLabel(INCENTIVE, player=i, s=s_i, t=t_i))
        self._incentive_rows = incentive_rows
        self.polytope = lp.Polytope(
            [tuple([_ONE] * q)] + incentive_rows,
            [_ONE] + [_ZERO] * len(incentive_rows),
            [lp.EQ] + [lp.GE] * len(incentive_rows),
            lower=[_ZERO] * q,
        )

    @cached_property
    def labels(self) -> tuple:
        return tuple(self._nonneg + [ConstraintLabel(NORMALIZATION)] + self._incentive_labels)

    def rows(self):
        """``(label, coefficients, rhs, kind)`` for every constraint."""
        q = self.game.num_profiles
        out = []
        for k, label in enumerate(self._nonneg):
            unit = tuple(_ONE if j == k else _ZERO for j in range(q))
            out.append((label, unit, _ZERO, lp.GE))
        out.append((ConstraintLabel(NORMALIZATION), tuple([_ONE] * q), _ONE, lp.EQ))
        for label, row in zip(self._incentive_labels, self._incentive_rows):
            out.append((label, row, _ZERO, lp.GE))
        return out

    def slacks(self, mu) -> dict:
        mu = check_correlated(self.game, mu)
        return {
            label: sum((a * x for a, x in zip(row, mu) if a), _ZERO) - rhs
            for label, row, rhs, _ in self.rows()
        }

    def __len__(self):
        return len(self.labels)


def build_ce_polytope(game: Game) -> CePolytope:
    return CePolytope(game)


def _polytope(game_or_poly):
    if isinstance(game_or_poly, CePolytope):
        return game_or_poly
    return CePolytope(game_or_poly)


def is_ce_unique(game: Game, method: str = "cone"):
    """``(True, mu)`` when the CE polytope is a single point, else ``(False, None)``.

    ``method="ranging"`` ranges every coordinate with two LPs. The default
    ``"cone"`` finds one CE and checks that no feasible direction leaves it:
    the directions keeping every binding constraint satisfied form a cone,
    and the point is unique iff that cone is ``{0}``. One bounded LP shows
    the cone equals its lineality space, and a rank test shows that space
    is trivial.
    """
    poly = _polytope(game)
    if method == "ranging":
        ranges = lp.coordinate_ranges(poly.polytope)
        if all(lo == hi for lo, hi in ranges):
            return True, tuple(lo for lo, _ in ranges)
        return False, None
    if method != "cone":
        raise ValueError(f"unknown method {method!r}")
    q = poly.game.num_profiles
    sol = lp.solve(poly.polytope.program([_ZERO] * q))
    if not sol.is_optimal:
        raise ArithmeticError("CE polytope is empty")
    mu = sol.primal
    binding = [a for label, a, rhs, kind in poly.rows() if kind == lp.GE and _dot(a, mu) == rhs]
    if _rank([tuple([_ONE] * q)] + binding) < q:
        return False, None
    # every direction d with sum 0 and a.d >= 0 on binding rows; a bounded LP
    # pushes the binding rows up, and a positive optimum exhibits a direction
    objective = [sum(col) for col in zip(*binding)] if binding else [_ZERO] * q
    cone = lp.LinearProgram(
        objective,
        [tuple([_ONE] * q)] + binding,
        [_ZERO] * (1 + len(binding)),
        [lp.EQ] + [lp.GE] * len(binding),
        lower=[-_ONE] * q,
        upper=[_ONE] * q,
    )
    if lp.solve(cone).value > 0:
        return False, None
    return True, tuple(mu)


def _dot(a, x):
    return sum((ai * xi for ai, xi in zip(a, x) if ai), _ZERO)


def extreme_ce(game: Game) -> list:
    """Vertices of the CE polytope, sorted lexicographically."""
    # CE polytopes are bounded by construction (a simplex slice)
    return lp.enumerate_vertices(_polytope(game).polytope, check_bounded=False)


def count_extreme_ce(game: Game) -> int:
    return len(extreme_ce(game))


def max_profile_probability(game: Game, profile) -> Fraction:
    poly = _polytope(game)
    k = poly.game.profile_index(profile)
    return lp.coordinate_range(poly.polytope, k)[1]


def zero_probability_profiles(game: Game) -> list:
    """Profiles that receive probability zero in every correlated equilibrium."""
    poly = _polytope(game)
    ranges = lp.coordinate_ranges(poly.polytope)
    return [game.profile_at(k) for k, (_, hi) in enumerate(ranges) if hi == 0]


def binding_constraints(game: Game, mu) -> frozenset:
    """Labels of the CE constraints that hold with equality at ``mu``."""
    mu = check_correlated(game, mu)
    if not is_correlated_equilibrium(game, mu):
        raise NotACorrelatedEquilibrium("binding sets are only defined at correlated equilibria")
    return frozenset(label for label, slack in _polytope(game).slacks(mu).items() if slack == 0)


def same_binding_sets(g1: Game, mu1, g2: Game, mu2) -> bool:
    """Compare binding sets among nonnegativity and incentive rows."""
    if g1.shape != g2.shape:
        raise ValueError(f"games have different shapes {g1.shape} and {g2.shape}")

    def informative(labels):
        return {l for l in labels if l.kind != NORMALIZATION}

    return informative(binding_constraints(g1, mu1)) == informative(binding_constraints(g2, mu2))


def unique_ce_as_nash(game: Game):
    """Factor a unique CE into a mixed profile.

    Returns ``(sigma, is_product)``; ``is_product`` False would mean the
    unique CE is not a product distribution, which no game should produce.
    Raises ``ValueError`` when the CE is not unique.
    """
    unique, mu = is_ce_unique(game)
    if not unique:
        raise ValueError("game does not have a unique correlated equilibrium")
    sigma = marginals(game, mu)
    return sigma, product_distribution(game, sigma) == tuple(mu)
