"""Exact equilibrium analysis of small normal-form games.

Correlated and Nash equilibria are computed in rational arithmetic, and a
seeded perturbation harness tests whether uniqueness survives small payoff
changes.
"""

from .ce import CePolytope, count_extreme_ce, extreme_ce, is_ce_unique
from .dual import (
    DualVector,
    check_claim_invariance,
    find_dual_vector,
    find_strong_dual_vector,
    reduce_game,
)
from .game import (
    Game,
    GameFormatError,
    is_correlated_equilibrium,
    is_nash,
    is_quasi_strict,
    is_strict,
)
from .nash import analyze_2x2x2, enumerate_nash_bimatrix, enumerate_symmetric_nash, is_dominance_solvable
from .registry import make_game
from .robustness import PerturbationSpec, probe_count, probe_unique_ce
from .zerosum import MatrixGame, build_auxiliary_game, maximizer_optimal_equals_ce, solve_zero_sum

__version__ = "0.1.0"

__all__ = [
    "CePolytope",
    "DualVector",
    "Game",
    "GameFormatError",
    "MatrixGame",
    "PerturbationSpec",
    "analyze_2x2x2",
    "build_auxiliary_game",
    "check_claim_invariance",
    "count_extreme_ce",
    "enumerate_nash_bimatrix",
    "enumerate_symmetric_nash",
    "extreme_ce",
    "find_dual_vector",
    "find_strong_dual_vector",
    "is_ce_unique",
    "is_correlated_equilibrium",
    "is_dominance_solvable",
    "is_nash",
    "is_quasi_strict",
    "is_strict",
    "make_game",
    "maximizer_optimal_equals_ce",
    "probe_count",
    "probe_unique_ce",
    "reduce_game",
    "solve_zero_sum",
]
