"""Finite normal-form games with exact payoffs and the basic equilibrium predicates.

Players are indexed from 0. Pure profiles are tuples of strategy indices and
are enumerated row-major (player 0 varies slowest), which is also the layout
of correlated strategies: a correlated strategy is a flat tuple of
``num_profiles`` Fractions.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from ._rational import as_rational, format_rational

__all__ = [
    "Game",
    "GameFormatError",
    "check_mixed_profile",
    "check_correlated",
    "pure_profile",
    "product_distribution",
    "marginals",
    "is_product_distribution",
    "expected_payoff",
    "expected_payoff_correlated",
    "deviation_payoffs",
    "h_value",
    "support",
    "pure_best_responses",
    "is_nash",
    "is_quasi_strict",
    "is_strict",
    "is_correlated_equilibrium",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GameFormatError(ValueError):
    """Raised for malformed games, profiles or game files."""


def _frozen_array(values, shape):
    arr = np.empty(shape, dtype=object)
    flat = arr.reshape(-1)
    for k, v in enumerate(values):
        flat[k] = v
    arr.flags.writeable = False
    return arr


class Game:
    """An n-player game with one dense payoff tensor per player.

    Parameters
    ----------
    payoffs : sequence of array-likes
        ``payoffs[i]`` has shape ``(m_0, ..., m_{n-1})``; entries are ints,
        Fractions or ``"p/q"`` strings.
    labels : optional list of per-player strategy name lists.
    """

    def __init__(self, payoffs, labels=None):
        if len(payoffs) == 0:
            raise GameFormatError("a game needs at least one player")
        arrays = [np.asarray(p, dtype=object) for p in payoffs]
        shape = arrays[0].shape
        if len(shape) != len(arrays):
            raise GameFormatError(
                f"{len(arrays)} players but payoff tensor has {len(shape)} axes"
            )
        if any(m < 1 for m in shape):
            raise GameFormatError("every player needs at least one strategy")
        tensors = []
        for i, arr in enumerate(arrays):
            if arr.shape != shape:
                raise GameFormatError(f"payoff tensor of player {i} has shape {arr.shape}, expected {shape}")
            try:
                vals = [as_rational(v) for v in arr.reshape(-1)]
            except (TypeError, ValueError) as exc:
                raise GameFormatError(f"payoff of player {i}: {exc}") from None
            tensors.append(_frozen_array(vals, shape))
        self._payoffs = tuple(tensors)
        self.shape = tuple(int(m) for m in shape)
        if labels is None:
            labels = [[str(k) for k in range(m)] for m in self.shape]
        labels = [list(map(str, lab)) for lab in labels]
        if len(labels) != len(self.shape) or any(len(l) != m for l, m in zip(labels, self.shape)):
            raise GameFormatError("labels do not match the strategy counts")
        self.labels = tuple(tuple(l) for l in labels)

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_bimatrix(cls, A, B, labels=None) -> "Game":
        return cls([A, B], labels=labels)

    @classmethod
    def from_function(cls, shape, func, labels=None) -> "Game":
        """Build from ``func(profile) -> sequence of payoffs``."""
        shape = tuple(shape)
        n = len(shape)
        tensors = [np.empty(shape, dtype=object) for _ in range(n)]
        for s in itertools.product(*(range(m) for m in shape)):
            vals = func(s)
            for i in range(n):
                tensors[i][s] = vals[i]
        return cls(tensors, labels=labels)

    # -- basic structure ------------------------------------------------

    @property
    def num_players(self) -> int:
        return len(self.shape)

    @cached_property
    def num_profiles(self) -> int:
        return int(np.prod(self.shape))

    def payoff_tensor(self, i: int) -> np.ndarray:
        return self._payoffs[i]

    def payoff(self, i: int, profile) -> Fraction:
        return self._payoffs[i][tuple(profile)]

    def profiles(self):
        return list(itertools.product(*(range(m) for m in self.shape)))

    def profile_index(self, profile) -> int:
        return int(np.ravel_multi_index(tuple(profile), self.shape))

    def profile_at(self, index: int) -> tuple:
        return tuple(int(v) for v in np.unravel_index(index, self.shape))

    def is_symmetric(self) -> bool:
        if self.num_players != 2 or self.shape[0] != self.shape[1]:
            return False
        A, B = self._payoffs
        return all(B[a, b] == A[b, a] for a in range(self.shape[0]) for b in range(self.shape[1]))

    def with_payoffs(self, payoffs) -> "Game":
        return Game(payoffs, labels=self.labels)

    def translated(self, player: int, constant) -> "Game":
        """Same game with ``constant`` added to every payoff of ``player``."""
        c = as_rational(constant)
        payoffs = [np.array(p) for p in self._payoffs]
        payoffs[player] = payoffs[player] + c
        return self.with_payoffs(payoffs)

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return self.shape == other.shape and all(
            np.array_equal(a, b) for a, b in zip(self._payoffs, other._payoffs)
        )

    def __hash__(self):
        return hash((self.shape, tuple(tuple(p.reshape(-1)) for p in self._payoffs)))

    def __repr__(self):
        dims = "x".join(map(str, self.shape))
        return f"Game({self.num_players} players, {dims})"

    # -- serialization --------------------------------------------------

    def to_dict(self) -> dict:
        def nested(arr):
            return np.vectorize(format_rational, otypes=[object])(arr).tolist() if arr.ndim else format_rational(arr[()])

        default = all(l == tuple(str(k) for k in range(m)) for l, m in zip(self.labels, self.shape))
        return {
            "players": self.num_players,
            "strategies": list(self.shape) if default else [list(l) for l in self.labels],
            "payoffs": [nested(p) for p in self._payoffs],
        }

    @classmethod
    def from_dict(cls, data) -> "Game":
        try:
            n = int(data["players"])
            strategies = data["strategies"]
            payoffs = data["payoffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise GameFormatError(f"missing or malformed field: {exc}") from None
        if not isinstance(strategies, list) or len(strategies) != n:
            raise GameFormatError("'strategies' must list one entry per player")
        if all(isinstance(s, list) for s in strategies):
            labels = strategies
            shape = tuple(len(s) for s in strategies)
        elif all(isinstance(s, int) and not isinstance(s, bool) for s in strategies):
            labels = None
            shape = tuple(strategies)
        else:
            raise GameFormatError("'strategies' must be counts or label lists")
        if not isinstance(payoffs, list) or len(payoffs) != n:
            raise GameFormatError("'payoffs' must hold one tensor per player")
        tensors = []
        for i, p in enumerate(payoffs):
            arr = np.array(p, dtype=object)
            if arr.shape != shape:
                raise GameFormatError(f"payoffs of player {i} have shape {arr.shape}, expected {shape}")
            try:
                vals = [as_rational(v, allow_decimal=True) for v in arr.reshape(-1)]
            except (TypeError, ValueError) as exc:
                raise GameFormatError(f"payoff of player {i}: {exc}") from None
            tensors.append(np.array(vals, dtype=object).reshape(shape))
        return cls(tensors, labels=labels)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Game":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GameFormatError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def fingerprint(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()


# ---------------------------------------------------------------------------
# validation helpers


def check_mixed_profile(game: Game, sigma) -> tuple:
    """Validate a mixed profile; returns a tuple of per-player Fraction tuples.

    Off-simplex vectors are rejected, never renormalized.
    """
    if len(sigma) != game.num_players:
        raise GameFormatError(f"profile has {len(sigma)} strategies, game has {game.num_players} players")
    out = []
    for i, (vec, m) in enumerate(zip(sigma, game.shape)):
        vec = tuple(as_rational(v) for v in vec)
        if len(vec) != m:
            raise GameFormatError(f"strategy of player {i} has length {len(vec)}, expected {m}")
        if any(v < 0 for v in vec) or sum(vec) != 1:
            raise GameFormatError(f"strategy of player {i} is not a probability vector")
        out.append(vec)
    return tuple(out)


def check_correlated(game: Game, mu) -> tuple:
    """Validate a correlated strategy given flat (row-major) or tensor-shaped."""
    arr = np.asarray(mu, dtype=object).reshape(-1)
    if arr.size != game.num_profiles:
        raise GameFormatError(f"correlated strategy has {arr.size} entries, expected {game.num_profiles}")
    vals = tuple(as_rational(v) for v in arr)
    if any(v < 0 for v in vals) or sum(vals) != 1:
        raise GameFormatError("correlated strategy is not a probability distribution")
    return vals


def pure_profile(game: Game, profile) -> tuple:
    """The mixed profile that plays ``profile`` with certainty."""
    return tuple(
        tuple(_ONE if k == s else _ZERO for k in range(m)) for s, m in zip(profile, game.shape)
    )


def product_distribution(game: Game, sigma) -> tuple:
    sigma = check_mixed_profile(game, sigma)
    out = []
    for s in game.profiles():
        p = _ONE
        for i, si in enumerate(s):
            p *= sigma[i][si]
            if not p:
                break
        out.append(p)
    return tuple(out)


def marginals(game: Game, mu) -> tuple:
    mu = check_correlated(game, mu)
    margs = [[_ZERO] * m for m in game.shape]
    for s, p in zip(game.profiles(), mu):
        if p:
            for i, si in enumerate(s):
                margs[i][si] += p
    return tuple(tuple(m) for m in margs)


def is_product_distribution(game: Game, mu) -> bool:
    return check_correlated(game, mu) == product_distribution(game, marginals(game, mu))


# ---------------------------------------------------------------------------
# payoffs


def _contract(tensor: np.ndarray, sigma, skip=None):
    """Contract every axis except ``skip`` against the mixed strategies."""
    out = tensor
    # contract from the last axis so earlier axis numbers stay valid
    for j in range(len(sigma) - 1, -1, -1):
        if j == skip:
            continue
        out = np.tensordot(out, np.asarray(sigma[j], dtype=object), axes=([j], [0]))
    return out


def expected_payoff(game: Game, sigma, i: int) -> Fraction:
    sigma = check_mixed_profile(game, sigma)
    _check_player(game, i)
    val = _contract(game.payoff_tensor(i), sigma)
    return as_rational(val[()] if isinstance(val, np.ndarray) else val)


def deviation_payoffs(game: Game, sigma, i: int) -> tuple:
    """``U^i(t, sigma^{-i})`` for every pure strategy ``t`` of player ``i``.

    ``sigma`` is a full profile (player ``i``'s own entry is ignored) or the
    list of the other players' strategies.
    """
    _check_player(game, i)
    sigma = _full_profile(game, sigma, i)
    vec = _contract(game.payoff_tensor(i), sigma, skip=i)
    return tuple(as_rational(v) for v in np.asarray(vec, dtype=object).reshape(-1))


def _full_profile(game, sigma, i):
    sigma = list(sigma)
    if len(sigma) == game.num_players - 1:
        m = game.shape[i]
        sigma.insert(i, [Fraction(1, m)] * m)
    elif len(sigma) == game.num_players:
        m = game.shape[i]
        # own strategy is irrelevant; replace to tolerate any placeholder
        sigma[i] = [Fraction(1, m)] * m
    return check_mixed_profile(game, sigma)


def expected_payoff_correlated(game: Game, mu, i: int) -> Fraction:
    mu = check_correlated(game, mu)
    _check_player(game, i)
    flat = game.payoff_tensor(i).reshape(-1)
    return sum((p * u for p, u in zip(mu, flat) if p), _ZERO)


def _check_player(game, i):
    if not 0 <= i < game.num_players:
        raise GameFormatError(f"player {i} out of range")


def _check_strategy(game, i, s):
    if not 0 <= s < game.shape[i]:
        raise GameFormatError(f"strategy {s} out of range for player {i}")


def h_value(game: Game, mu, i: int, s_i: int, t_i: int) -> Fraction:
    """Gain of obeying recommendation ``s_i`` rather than switching to ``t_i``."""
    mu = check_correlated(game, mu)
    _check_player(game, i)
    _check_strategy(game, i, s_i)
    _check_strategy(game, i, t_i)
    return _h(game, mu, i, s_i, t_i)


def _h(game, mu, i, s_i, t_i):
    U = game.payoff_tensor(i)
    total = _ZERO
    for k, s in enumerate(game.profiles()):
        if s[i] != s_i or not mu[k]:
            continue
        t = s[:i] + (t_i,) + s[i + 1 :]
        total += mu[k] * (U[s] - U[t])
    return total


# ---------------------------------------------------------------------------
# supports and predicates


def support(x, game: Optional[Game] = None):
    """Support of a mixed profile (tuple of frozensets, one per player) or of a
    correlated strategy (frozenset of profiles, or of flat indices when no
    game is given)."""
    items = list(x)
    if items and isinstance(items[0], (list, tuple, np.ndarray)):
        return tuple(frozenset(k for k, v in enumerate(vec) if as_rational(v) > 0) for vec in items)
    idx = frozenset(k for k, v in enumerate(np.asarray(x, dtype=object).reshape(-1)) if as_rational(v) > 0)
    if game is None:
        return idx
    return frozenset(game.profile_at(k) for k in idx)


def pure_best_responses(game: Game, i: int, sigma) -> frozenset:
    """Pure best responses of player ``i`` to the others' strategies in ``sigma``."""
    vals = deviation_payoffs(game, sigma, i)
    best = max(vals)
    return frozenset(k for k, v in enumerate(vals) if v == best)


def is_nash(game: Game, sigma) -> bool:
    sigma = check_mixed_profile(game, sigma)
    supp = support(sigma)
    return all(supp[i] <= pure_best_responses(game, i, sigma) for i in range(game.num_players))


def is_quasi_strict(game: Game, sigma) -> bool:
    """Nash, and every pure best response is played with positive probability."""
    sigma = check_mixed_profile(game, sigma)
    supp = support(sigma)
    return all(supp[i] == pure_best_responses(game, i, sigma) for i in range(game.num_players))


def is_strict(game: Game, sigma) -> bool:
    sigma = check_mixed_profile(game, sigma)
    supp = support(sigma)
    if any(len(s) != 1 for s in supp):
        return False
    return all(pure_best_responses(game, i, sigma) == supp[i] for i in range(game.num_players))


def is_correlated_equilibrium(game: Game, mu) -> bool:
    mu = check_correlated(game, mu)
    for i, m in enumerate(game.shape):
        for s_i in range(m):
            for t_i in range(m):
                if s_i != t_i and _h(game, mu, i, s_i, t_i) < 0:
                    return False
    return True
