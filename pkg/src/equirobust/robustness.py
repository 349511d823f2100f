"""Perturbation probes: do equilibrium properties survive small payoff changes?

Perturbed games live on a rational grid so every analysis stays exact. Each
sample draws from its own generator, split off the seed by sample index,
so results do not depend on how the work is scheduled.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from ._rational import as_rational, format_rational
from .ce import count_extreme_ce, is_ce_unique
from .game import Game, GameFormatError, is_quasi_strict, is_strict, support
from .nash import analyze_2x2x2, enumerate_nash_bimatrix, enumerate_symmetric_nash
from .random_games import rng_for

__all__ = [
    "PerturbationSpec",
    "RobustnessReport",
    "PreconditionError",
    "sample_perturbations",
    "family_direction",
    "probe_unique_ce",
    "probe_count",
    "probe_unique_strict",
    "probe_symmetric_unique",
    "COUNTERS",
]

_ZERO = Fraction(0)
MAX_RETRIES = 3


class PreconditionError(ValueError):
    """The base game does not have the property being probed."""


@dataclass(frozen=True)
class PerturbationSpec:
    """Grid perturbations of radius ``delta`` (max-norm over payoff entries).

    With ``direction`` set (one payoff delta per player, tensor-shaped or
    flat), the probe instead visits ``base + eps * direction`` for every
    ``eps`` in ``magnitudes`` and ``delta``/``samples`` are ignored.
    """

    delta: Fraction = Fraction(1, 100)
    samples: int = 100
    seed: int = 0
    grid_denominator: int = 1000
    direction: Optional[tuple] = None
    magnitudes: tuple = ()
    symmetric: bool = False

    def __post_init__(self):
        delta = as_rational(self.delta)
        if delta < 0:
            raise ValueError("delta must be nonnegative")
        if self.samples < 0 or self.grid_denominator <= 0:
            raise ValueError("samples must be >= 0 and grid_denominator > 0")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "magnitudes", tuple(as_rational(e) for e in self.magnitudes))
        if self.direction is not None:
            object.__setattr__(
                self,
                "direction",
                tuple(tuple(as_rational(v) for v in np.asarray(d, dtype=object).reshape(-1)) for d in self.direction),
            )

    @property
    def directed(self) -> bool:
        return self.direction is not None

    def to_dict(self) -> dict:
        out = {
            "delta": format_rational(self.delta),
            "samples": self.samples,
            "seed": self.seed,
            "grid_denominator": self.grid_denominator,
            "symmetric": self.symmetric,
        }
        if self.directed:
            out["direction"] = [[format_rational(v) for v in d] for d in self.direction]
            out["magnitudes"] = [format_rational(e) for e in self.magnitudes]
        return out


def family_direction(family, params: str = "eps"):
    """Payoff direction of a family ``family(**{params: value})`` that is affine
    in its parameter. Raises ``ValueError`` if it is not affine."""
    g0, g1, g2 = (family(**{params: v}) for v in (0, 1, 2))
    d, d2 = [], []
    for i in range(g0.num_players):
        a, b, c = (g.payoff_tensor(i).reshape(-1) for g in (g0, g1, g2))
        d.append(tuple(y - x for x, y in zip(a, b)))
        d2.append(tuple(z - x for x, z in zip(a, c)))
    if any(2 * u != v for du, dv in zip(d, d2) for u, v in zip(du, dv)):
        raise ValueError("family is not affine in its parameter")
    return tuple(d)


def _shifted(game: Game, deltas) -> Game:
    tensors = [
        game.payoff_tensor(i) + np.array(deltas[i], dtype=object).reshape(game.shape)
        for i in range(game.num_players)
    ]
    return game.with_payoffs(tensors)


def _grid_draw(rng, count, delta, denom):
    k = math.floor(delta * denom)
    if k == 0:
        return [_ZERO] * count
    return [Fraction(int(v), denom) for v in rng.integers(-k, k + 1, size=count)]


def sample_perturbations(game: Game, spec: PerturbationSpec) -> list:
    """The perturbed games a probe visits, in order."""
    if spec.directed:
        return [_shifted(game, [[e * v for v in d] for d in spec.direction]) for e in spec.magnitudes]
    return [_sample(game, spec, idx) for idx in range(spec.samples)]


def _sample(game: Game, spec: PerturbationSpec, idx: int) -> Game:
    rng = rng_for(spec.seed, idx)
    q = game.num_profiles
    if spec.symmetric:
        m = game.shape[0]
        flat = _grid_draw(rng, q, spec.delta, spec.grid_denominator)
        mirrored = [flat[b * m + a] for a in range(m) for b in range(m)]
        return _shifted(game, [flat, mirrored])
    return _shifted(game, [_grid_draw(rng, q, spec.delta, spec.grid_denominator) for _ in range(game.num_players)])


# ---------------------------------------------------------------------------
# per-game analyses (module level so they can run in worker processes)


def _nash_summary(game: Game):
    if game.num_players == 2:
        rep = enumerate_nash_bimatrix(game)
        return rep.count, rep.degenerate, rep
    if game.shape == (2, 2, 2):
        rep = analyze_2x2x2(game)
        return rep.count, bool(rep.components), rep
    raise GameFormatError("Nash counting is available for two-player and 2x2x2 games only")


def _analyze_unique_ce(game: Game):
    unique, mu = is_ce_unique(game)
    rec = {"ce_unique": unique}
    if unique:
        rec["support"] = sorted(support(mu, game))
    return rec


def _analyze_count(game: Game, counter: str):
    if counter == "nash":
        count, extra, _ = _nash_summary(game)
        key = "continuum" if game.num_players == 3 else "degenerate"
        return {"nash_count": count, key: extra}
    if counter == "extreme_ce":
        return {"extreme_ce_count": count_extreme_ce(game)}
    if counter == "symmetric_nash":
        eqs = enumerate_symmetric_nash(game)
        return {"symmetric_nash_count": len(eqs), "quasi_strict": [is_quasi_strict(game, e) for e in eqs]}
    raise ValueError(f"unknown counter {counter!r}; choose from {sorted(COUNTERS)}")


COUNTERS = ("nash", "extreme_ce", "symmetric_nash")


def _analyze_unique_strict(game: Game):
    count, _, rep = _nash_summary(game)
    unique = count == 1 and not rep.components
    return {"nash_count": count, "unique_strict": unique and is_strict(game, rep.equilibria[0])}


def _analyze_symmetric(game: Game):
    eqs = enumerate_symmetric_nash(game)
    qs = len(eqs) == 1 and is_quasi_strict(game, eqs[0])
    return {"symmetric_nash_count": len(eqs), "unique_quasi_strict": qs}


def _run_task(args):
    kind, game, extra = args
    if kind == "unique_ce":
        return _analyze_unique_ce(game)
    if kind == "count":
        return _analyze_count(game, extra)
    if kind == "unique_strict":
        return _analyze_unique_strict(game)
    if kind == "symmetric":
        return _analyze_symmetric(game)
    raise ValueError(kind)


def _map(kind, games, extra, workers):
    tasks = [(kind, g, extra) for g in games]
    if workers and workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    return [_run_task(t) for t in tasks]


# ---------------------------------------------------------------------------
# reports


@dataclass
class RobustnessReport:
    probe: str
    spec: PerturbationSpec
    base: dict
    games: list
    records: list
    aggregates: dict
    witnesses: list = field(default_factory=list)  # indices into games/records
    attempts: list = field(default_factory=list)  # (delta, grid_denominator, passed) per try

    def to_dict(self) -> dict:
        def jsonable(v):
            if isinstance(v, Fraction):
                return format_rational(v)
            if isinstance(v, (list, tuple)):
                return [jsonable(x) for x in v]
            if isinstance(v, dict):
                return {k: jsonable(x) for k, x in v.items()}
            return v

        records = []
        for k, (g, rec) in enumerate(zip(self.games, self.records)):
            item = {"index": k, **jsonable(rec), "game": g.to_dict()}
            if self.spec.directed:
                item["epsilon"] = format_rational(self.spec.magnitudes[k])
            records.append(item)
        return {
            "probe": self.probe,
            "spec": self.spec.to_dict(),
            "base": jsonable(self.base),
            "records": records,
            "aggregates": jsonable(self.aggregates),
            "witnesses": [{"index": k, "game": self.games[k].to_dict(), **jsonable(self.records[k])} for k in self.witnesses],
            "attempts": [
                {"delta": format_rational(d), "grid_denominator": n, "passed": p} for d, n, p in self.attempts
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _fraction(hits, total):
    return Fraction(hits, total) if total else Fraction(1)


def probe_unique_ce(game: Game, spec: PerturbationSpec, workers: int = 1, retry: bool = True) -> RobustnessReport:
    """Persistence of a unique correlated equilibrium and of its support.

    A failure at radius delta is read as delta being too large: the probe is
    repeated at delta/10 (grid ten times finer), at most three times.
    """
    base = _analyze_unique_ce(game)
    if not base["ce_unique"]:
        raise PreconditionError("base game does not have a unique correlated equilibrium")
    attempts = []
    current = spec
    while True:
        games = sample_perturbations(game, current)
        records = _map("unique_ce", games, None, workers)
        for rec in records:
            rec["support_match"] = rec["ce_unique"] and rec["support"] == base["support"]
        witnesses = [k for k, r in enumerate(records) if not r["support_match"]]
        attempts.append((current.delta, current.grid_denominator, not witnesses))
        if not witnesses or not retry or current.directed or len(attempts) > MAX_RETRIES:
            break
        current = replace(current, delta=current.delta / 10, grid_denominator=current.grid_denominator * 10)
    total = len(records)
    aggregates = {
        "samples": total,
        "unique_fraction": _fraction(sum(r["ce_unique"] for r in records), total),
        "support_match_fraction": _fraction(sum(r["support_match"] for r in records), total),
        "delta_used": current.delta,
        "retries": len(attempts) - 1,
    }
    return RobustnessReport("unique_ce", current, base, games, records, aggregates, witnesses, attempts)


def probe_count(game: Game, spec: PerturbationSpec, counter: str = "nash", workers: int = 1) -> RobustnessReport:
    """Distribution of an equilibrium count over perturbed games; every sample
    whose result differs from the base game's is kept as a witness."""
    if counter not in COUNTERS:
        raise ValueError(f"unknown counter {counter!r}; choose from {list(COUNTERS)}")
    base = _analyze_count(game, counter)
    games = sample_perturbations(game, spec)
    records = _map("count", games, counter, workers)
    key = f"{counter}_count"
    witnesses = [k for k, r in enumerate(records) if r != base]
    distribution = {}
    for r in records:
        distribution[r[key]] = distribution.get(r[key], 0) + 1
    aggregates = {
        "samples": len(records),
        "counter": counter,
        "base_count": base[key],
        "distribution": {str(k): v for k, v in sorted(distribution.items())},
        "persistence_fraction": _fraction(len(records) - len(witnesses), len(records)),
    }
    return RobustnessReport(f"count:{counter}", spec, base, games, records, aggregates, witnesses)


def probe_unique_strict(game: Game, spec: PerturbationSpec, workers: int = 1) -> RobustnessReport:
    base = _analyze_unique_strict(game)
    if not base["unique_strict"]:
        raise PreconditionError("base game does not have a unique strict equilibrium")
    games = sample_perturbations(game, spec)
    records = _map("unique_strict", games, None, workers)
    witnesses = [k for k, r in enumerate(records) if not r["unique_strict"]]
    aggregates = {
        "samples": len(records),
        "persistence_fraction": _fraction(len(records) - len(witnesses), len(records)),
    }
    return RobustnessReport("unique_strict", spec, base, games, records, aggregates, witnesses)


def probe_symmetric_unique(game: Game, spec: PerturbationSpec, workers: int = 1) -> RobustnessReport:
    """Persistence of a unique symmetric equilibrium under symmetric perturbations.

    Random samples perturb the row player's matrix and mirror it to the
    column player. The base equilibrium need not be quasi-strict; the report
    records whether it is, since persistence is only expected when it is.
    """
    if not game.is_symmetric():
        raise PreconditionError("base game is not symmetric")
    base_eqs = enumerate_symmetric_nash(game)
    if len(base_eqs) != 1:
        raise PreconditionError("base game does not have a unique symmetric equilibrium")
    base = _analyze_symmetric(game)
    spec = replace(spec, symmetric=True)
    games = sample_perturbations(game, spec)
    for g in games:
        if not g.is_symmetric():
            raise ValueError("direction leaves the space of symmetric games")
    records = _map("symmetric", games, None, workers)
    witnesses = [k for k, r in enumerate(records) if r["symmetric_nash_count"] != 1]
    aggregates = {
        "samples": len(records),
        "base_quasi_strict": base["unique_quasi_strict"],
        "unique_fraction": _fraction(len(records) - len(witnesses), len(records)),
        "quasi_strict_fraction": _fraction(sum(r["unique_quasi_strict"] for r in records), len(records)),
    }
    return RobustnessReport("symmetric_unique", spec, base, games, records, aggregates, witnesses)
