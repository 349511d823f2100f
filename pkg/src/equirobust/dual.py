"""Dual vectors of the correlated-equilibrium LP and the reduced games they induce.

A dual vector gives every player a row-stochastic matrix ``alpha[i]``; row
``s`` is the mixed strategy the player switches to when told to play ``s``.
Its slack at a pure profile is the total gain of all switches there; a
feasible dual vector has nonnegative slack everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from ._linalg import solve_linear
from .ce import is_ce_unique, zero_probability_profiles
from .game import Game, GameFormatError, check_mixed_profile, marginals

__all__ = [
    "DualVector",
    "ReducedGame",
    "InfeasibleDualVector",
    "apply_transition",
    "is_invariant",
    "slack_profile",
    "find_dual_vector",
    "find_strong_dual_vector",
    "recurrent_classes",
    "reduce_game",
    "check_claim_invariance",
    "identity_dual_vector",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class InfeasibleDualVector(ValueError):
    pass


def _check_stochastic(matrix):
    rows = [tuple(Fraction(v) for v in row) for row in matrix]
    m = len(rows)
    for row in rows:
        if len(row) != m:
            raise ValueError("transition matrix must be square")
        if any(v < 0 for v in row) or sum(row) != 1:
            raise ValueError("transition matrix rows must be probability vectors")
    return tuple(rows)


@dataclass(frozen=True)
class DualVector:
    alpha: tuple  # per player, tuple of rows

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(_check_stochastic(a) for a in self.alpha))

    def __getitem__(self, i):
        return self.alpha[i]

    @property
    def num_players(self):
        return len(self.alpha)


def identity_dual_vector(game: Game) -> DualVector:
    return DualVector(
        tuple(tuple(tuple(_ONE if r == c else _ZERO for c in range(m)) for r in range(m)) for m in game.shape)
    )


def apply_transition(alpha_i, tau_i) -> tuple:
    """``[alpha * tau](t) = sum_s tau(s) alpha(s, t)``."""
    alpha_i = _check_stochastic(alpha_i)
    tau = tuple(Fraction(v) for v in tau_i)
    if len(tau) != len(alpha_i):
        raise ValueError(f"strategy has length {len(tau)}, matrix is {len(alpha_i)}x{len(alpha_i)}")
    m = len(tau)
    return tuple(sum((tau[s] * alpha_i[s][t] for s in range(m) if tau[s]), _ZERO) for t in range(m))


def is_invariant(alpha_i, tau_i) -> bool:
    return apply_transition(alpha_i, tau_i) == tuple(Fraction(v) for v in tau_i)


def _check_dims(game: Game, alpha: DualVector):
    if alpha.num_players != game.num_players or any(
        len(a) != m for a, m in zip(alpha.alpha, game.shape)
    ):
        raise GameFormatError("dual vector dimensions do not match the game")


def slack_profile(game: Game, alpha: DualVector) -> dict:
    """Map each pure profile to ``sum_i [U^i(alpha^i * s^i, s^-i) - U^i(s)]``."""
    _check_dims(game, alpha)
    tensors = [game.payoff_tensor(i) for i in range(game.num_players)]
    out = {}
    for s in game.profiles():
        total = _ZERO
        for i, m in enumerate(game.shape):
            row = alpha[i][s[i]]
            u = tensors[i][s]
            for t in range(m):
                if row[t] and t != s[i]:
                    total += row[t] * (tensors[i][s[:i] + (t,) + s[i + 1 :]] - u)
        out[s] = total
    return out


def _variables(game: Game):
    return [(i, a, t) for i, m in enumerate(game.shape) for a in range(m) for t in range(m)]


def _feasible_set(game: Game):
    """Polytope over the alpha entries: row-stochastic rows and nonnegative slack."""
    var = _variables(game)
    index = {v: k for k, v in enumerate(var)}
    n = len(var)
    tensors = [game.payoff_tensor(i) for i in range(game.num_players)]
    A, b, kinds = [], [], []
    for i, m in enumerate(game.shape):
        for a in range(m):
            row = [_ZERO] * n
            for t in range(m):
                row[index[(i, a, t)]] = _ONE
            A.append(row)
            b.append(_ONE)
            kinds.append(lp.EQ)
    slack_rows = []
    for s in game.profiles():
        row = [_ZERO] * n
        for i, m in enumerate(game.shape):
            u = tensors[i][s]
            for t in range(m):
                if t != s[i]:
                    row[index[(i, s[i], t)]] = tensors[i][s[:i] + (t,) + s[i + 1 :]] - u
        slack_rows.append(row)
        A.append(row)
        b.append(_ZERO)
        kinds.append(lp.GE)
    poly = lp.Polytope(A, b, kinds, lower=[_ZERO] * n)
    return poly, var, slack_rows


def _to_dual_vector(game: Game, var, x) -> DualVector:
    alpha = [[[_ZERO] * m for _ in range(m)] for m in game.shape]
    for (i, a, t), v in zip(var, x):
        alpha[i][a][t] = v
    return DualVector(tuple(tuple(tuple(r) for r in mat) for mat in alpha))


def _verified(game: Game, alpha: DualVector) -> DualVector:
    if any(v < 0 for v in slack_profile(game, alpha).values()):
        raise ArithmeticError("dual vector violates the slack inequalities")
    return alpha


def find_dual_vector(game: Game) -> DualVector:
    """A feasible dual vector maximizing the total slack."""
    poly, var, slack_rows = _feasible_set(game)
    total = [sum(col) for col in zip(*slack_rows)]
    (sol,) = lp.maximize_each(poly, [total])
    if not sol.is_optimal:
        raise ArithmeticError(f"dual vector LP ended with status {sol.status}")
    return _verified(game, _to_dual_vector(game, var, sol.primal))


def find_strong_dual_vector(game: Game):
    """A dual vector whose slack is strictly positive at every profile that has
    probability zero in all correlated equilibria.

    One LP per such profile maximizes its slack; the optimal dual vectors are
    averaged with equal weights. Returns ``(alpha, slacks)``.
    """
    zero = zero_probability_profiles(game)
    if not zero:
        alpha = find_dual_vector(game)
        return alpha, slack_profile(game, alpha)
    poly, var, slack_rows = _feasible_set(game)
    sols = lp.maximize_each(poly, [slack_rows[game.profile_index(s)] for s in zero])
    acc = [_ZERO] * len(var)
    for s, sol in zip(zero, sols):
        if not sol.is_optimal or sol.value <= 0:
            raise ArithmeticError(f"no dual vector is strict at zero-probability profile {s}")
        acc = [x + y for x, y in zip(acc, sol.primal)]
    k = len(zero)
    alpha = _verified(game, _to_dual_vector(game, var, [x / k for x in acc]))
    slacks = slack_profile(game, alpha)
    for s in zero:
        if slacks[s] <= 0:
            raise ArithmeticError(f"averaged dual vector is not strict at {s}")
    return alpha, slacks


def recurrent_classes(alpha_i) -> list:
    """Recurrent classes of the Markov chain ``alpha_i`` with their stationary
    distributions, ordered by smallest member."""
    P = _check_stochastic(alpha_i)
    m = len(P)
    reach = [{j for j in range(m) if P[i][j] > 0} | {i} for i in range(m)]
    changed = True
    while changed:
        changed = False
        for i in range(m):
            new = set().union(*(reach[j] for j in reach[i]))
            if new != reach[i]:
                reach[i] = new
                changed = True
    seen = set()
    out = []
    for i in range(m):
        if i in seen:
            continue
        # recurrent: every state reachable from i leads back to i
        if all(i in reach[j] for j in reach[i]):
            cls = sorted(reach[i])
            seen.update(cls)
            out.append((tuple(cls), _stationary(P, cls)))
    return out


def _stationary(P, cls):
    k = len(cls)
    # pi (P_C - I) = 0 and sum pi = 1, written as rows over pi
    A = [[P[cls[r]][cls[c]] - (1 if r == c else 0) for r in range(k)] for c in range(k)]
    A.append([_ONE] * k)
    pi = solve_linear(A, [_ZERO] * k + [_ONE])
    full = [_ZERO] * len(P)
    for s, v in zip(cls, pi):
        full[s] = v
    return tuple(full)


@dataclass(frozen=True)
class ReducedGame:
    """The game whose strategies are the recurrent classes of a dual vector."""

    parent: Game
    alpha: DualVector
    classes: tuple  # per player, tuple of (members, stationary distribution)
    game: Game

    def lift(self, rho) -> tuple:
        """Map a mixed profile of the reduced game to one of the parent game."""
        rho = check_mixed_profile(self.game, rho)
        out = []
        for i, cls in enumerate(self.classes):
            vec = [_ZERO] * self.parent.shape[i]
            for weight, (_, pi) in zip(rho[i], cls):
                if weight:
                    for t, p in enumerate(pi):
                        vec[t] += weight * p
            out.append(tuple(vec))
        return tuple(out)

    def lift_pure(self, profile) -> tuple:
        return tuple(self.classes[i][c][1] for i, c in enumerate(profile))


def reduce_game(game: Game, alpha: DualVector) -> ReducedGame:
    _check_dims(game, alpha)
    if any(v < 0 for v in slack_profile(game, alpha).values()):
        raise InfeasibleDualVector("dual vector has negative slack at some profile")
    classes = tuple(tuple(recurrent_classes(a)) for a in alpha.alpha)
    shape = tuple(len(c) for c in classes)
    n = game.num_players
    payoffs = []
    for r in itertools.product(*(range(k) for k in shape)):
        sigma = [classes[i][r[i]][1] for i in range(n)]
        payoffs.append(tuple(_multilinear(game, sigma, i) for i in range(n)))
    reduced = Game.from_function(shape, dict(zip(itertools.product(*(range(k) for k in shape)), payoffs)).__getitem__)
    return ReducedGame(parent=game, alpha=alpha, classes=classes, game=reduced)


def _multilinear(game, sigma, i):
    U = game.payoff_tensor(i)
    supports = [[(t, p) for t, p in enumerate(vec) if p] for vec in sigma]
    total = _ZERO
    for combo in itertools.product(*supports):
        prob = _ONE
        for _, p in combo:
            prob *= p
        total += prob * U[tuple(t for t, _ in combo)]
    return total


def check_claim_invariance(game: Game) -> bool:
    """For a game with a unique correlated equilibrium, whether each of its
    marginals is invariant under the strong dual vector."""
    unique, mu = is_ce_unique(game)
    if not unique:
        raise ValueError("game does not have a unique correlated equilibrium")
    sigma = marginals(game, mu)
    alpha, _ = find_strong_dual_vector(game)
    return all(is_invariant(alpha[i], sigma[i]) for i in range(game.num_players))
