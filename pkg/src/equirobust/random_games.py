"""Seeded generators of small random games with exact integer payoffs."""

from __future__ import annotations

import itertools

import numpy as np

from .game import Game
from .zerosum import MatrixGame

__all__ = ["rng_for", "random_game", "random_zero_sum", "random_dominance_solvable"]


def rng_for(seed, *stream) -> np.random.Generator:
    """Independent generator for ``(seed, *stream)``; same inputs, same draws."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, stream)]))


def _ints(rng, size, low, high):
    return [int(v) for v in rng.integers(low, high + 1, size=size)]


def random_game(rng, shape, low=-9, high=9) -> Game:
    shape = tuple(shape)
    n = len(shape)
    q = int(np.prod(shape))
    values = iter(_ints(rng, q * n, low, high))
    table = {s: tuple(next(values) for _ in range(n)) for s in itertools.product(*map(range, shape))}
    return Game.from_function(shape, table.__getitem__)


def random_zero_sum(rng, rows, cols, low=-9, high=9) -> MatrixGame:
    vals = _ints(rng, rows * cols, low, high)
    return MatrixGame(tuple(tuple(vals[r * cols : (r + 1) * cols]) for r in range(rows)))


def random_dominance_solvable(rng, shape, low=-5, high=5, max_margin=3):
    """A game solvable by iterated strict (pure) dominance.

    An elimination schedule ``(player, eliminated, dominator)`` is drawn
    first. Walking it backwards, each eliminated strategy's payoffs are set
    to the dominator's minus a positive margin against every opponent profile
    still alive at that step. Returns ``(game, schedule)``.
    """
    shape = tuple(shape)
    n = len(shape)
    remaining = [list(range(m)) for m in shape]
    schedule = []
    alive_at = []
    while any(len(r) > 1 for r in remaining):
        candidates = [i for i in range(n) if len(remaining[i]) > 1]
        i = candidates[int(rng.integers(len(candidates)))]
        e, d = (remaining[i][int(k)] for k in rng.choice(len(remaining[i]), size=2, replace=False))
        alive_at.append([list(r) for r in remaining])
        schedule.append((i, e, d))
        remaining[i].remove(e)
    tensors = [
        np.array(_ints(rng, int(np.prod(shape)), low, high), dtype=object).reshape(shape) for _ in range(n)
    ]
    for (i, e, d), alive in zip(reversed(schedule), reversed(alive_at)):
        others = [alive[j] if j != i else [None] for j in range(n)]
        for prof in itertools.product(*others):
            margin = int(rng.integers(1, max_margin + 1))
            de = prof[:i] + (e,) + prof[i + 1 :]
            dd = prof[:i] + (d,) + prof[i + 1 :]
            tensors[i][de] = tensors[i][dd] - margin
    game = Game.from_function(shape, lambda s: tuple(t[s] for t in tensors))
    return game, schedule
