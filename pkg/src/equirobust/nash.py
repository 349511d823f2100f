"""Exact Nash equilibrium computations.

Bimatrix games are handled through the best-response polytopes
``P = {x >= 0 : B'^T x <= 1}`` and ``Q = {y >= 0 : A' y <= 1}`` (payoffs
shifted to be positive). A pair of vertices carrying every label is an
extreme equilibrium; in degenerate games these are the extreme points of
the maximal Nash subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import lp
from .game import Game, GameFormatError, is_nash, support

__all__ = [
    "NashReport",
    "Component",
    "QuadraticCaseResult",
    "RootCertificate",
    "enumerate_nash_bimatrix",
    "enumerate_symmetric_nash",
    "enumerate_pure_nash",
    "verify_nash",
    "analyze_2x2x2",
    "is_dominance_solvable",
    "strictly_dominated",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class Component:
    """A continuum of equilibria described by its defining conditions.

    ``fixed`` maps a player to the probability of their second strategy;
    ``free`` players range over the set cut out by ``conditions``.
    """

    fixed: dict
    free: tuple
    conditions: list
    sample: Optional[tuple] = None
    interval: Optional[tuple] = None  # (lo, lo_closed, hi, hi_closed) for one free player
    resolved: bool = True


@dataclass
class RootCertificate:
    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction]  # set when the root is rational
    is_equilibrium: bool
    reasons: list = field(default_factory=list)


@dataclass
class QuadraticCaseResult:
    """Completely mixed case of a 2x2x2 game after eliminating two players."""

    coefficients: tuple  # (a, b, c) of a z^2 + b z + c
    discriminant: Fraction
    identically_zero: bool
    roots: list  # RootCertificate for every root in (0, 1)
    special_points: list = field(default_factory=list)

    @property
    def has_completely_mixed_equilibrium(self) -> bool:
        return any(r.is_equilibrium for r in self.roots) or bool(self.special_points)


@dataclass
class NashReport:
    equilibria: list
    complete: bool
    degenerate: bool
    pairing: Optional[list] = None
    row_vertices: Optional[list] = None
    col_vertices: Optional[list] = None
    components: list = field(default_factory=list)
    quadratic: Optional[QuadraticCaseResult] = None

    @property
    def count(self) -> int:
        return len(self.equilibria)

    @property
    def has_continuum(self) -> bool:
        return bool(self.components)


def _order_key(sigma):
    supp = support(sigma)
    return (sum(len(s) for s in supp), tuple(tuple(sorted(s)) for s in supp), sigma)


def _normalize(vec):
    total = sum(vec)
    return tuple(v / total for v in vec)


def _positive(matrix):
    low = min(v for row in matrix for v in row)
    shift = _ONE - low
    return [[v + shift for v in row] for row in matrix]


def _bimatrix(game: Game):
    if game.num_players != 2:
        raise GameFormatError("a bimatrix game has exactly two players")
    A = game.payoff_tensor(0).tolist()
    B = game.payoff_tensor(1).tolist()
    return A, B


def _best_response_polytope(M, transpose):
    """``{x >= 0 : rows(M) . x <= 1}`` where rows come from M or its transpose."""
    rows = [list(r) for r in zip(*M)] if transpose else [list(r) for r in M]
    dim = len(rows[0])
    return lp.Polytope(rows, [_ONE] * len(rows), lp.LE, lower=[_ZERO] * dim)


def _labels(vertex, rows, own_offset, other_offset):
    own = {own_offset + k for k, v in enumerate(vertex) if v == 0}
    other = {
        other_offset + j for j, row in enumerate(rows) if sum(a * v for a, v in zip(row, vertex)) == 1
    }
    return own | other


def enumerate_nash_bimatrix(game: Game) -> NashReport:
    """All extreme Nash equilibria of a two-player game, exactly."""
    A, B = _bimatrix(game)
    m, n = game.shape
    Ap, Bp = _positive(A), _positive(B)
    P = _best_response_polytope(Bp, transpose=True)
    Q = _best_response_polytope(Ap, transpose=False)
    Pv = lp.enumerate_vertices(P, check_bounded=False)
    Qv = lp.enumerate_vertices(Q, check_bounded=False)
    BpT = [list(r) for r in zip(*Bp)]
    # labels 0..m-1 are row strategies, m..m+n-1 column strategies
    Pl = [_labels(x, BpT, 0, m) for x in Pv]
    Ql = [_labels(y, Ap, m, 0) for y in Qv]
    degenerate = any(len(l) > m for l in Pl) or any(len(l) > n for l in Ql)
    full = set(range(m + n))
    found = {}
    for ix, (x, lx) in enumerate(zip(Pv, Pl)):
        if not any(x):
            continue
        for iy, (y, ly) in enumerate(zip(Qv, Ql)):
            if not any(y):
                continue
            if lx | ly == full:
                sigma = (_normalize(x), _normalize(y))
                found.setdefault(sigma, []).append((ix, iy))
    equilibria = sorted(found, key=_order_key)
    pairing = [pair for sigma in equilibria for pair in found[sigma]]
    return NashReport(
        equilibria=equilibria,
        complete=True,
        degenerate=degenerate,
        pairing=pairing,
        row_vertices=Pv,
        col_vertices=Qv,
    )


def enumerate_symmetric_nash(game: Game) -> list:
    """Extreme symmetric equilibria ``(s, s)`` of a symmetric bimatrix game."""
    if not game.is_symmetric():
        raise GameFormatError("game is not symmetric")
    A, _ = _bimatrix(game)
    Ap = _positive(A)
    P = _best_response_polytope(Ap, transpose=False)
    found = set()
    m = game.shape[0]
    for x in lp.enumerate_vertices(P, check_bounded=False):
        if not any(x):
            continue
        payoff = [sum(a * v for a, v in zip(row, x)) for row in Ap]
        if all(x[i] == 0 or payoff[i] == 1 for i in range(m)):
            s = _normalize(x)
            found.add((s, s))
    return sorted(found, key=_order_key)


def enumerate_pure_nash(game: Game) -> list:
    """Pure profiles in which every player's strategy is a best response."""
    out = []
    tensors = [game.payoff_tensor(i) for i in range(game.num_players)]
    for s in game.profiles():
        ok = True
        for i, m in enumerate(game.shape):
            u = tensors[i][s]
            if any(tensors[i][s[:i] + (t,) + s[i + 1 :]] > u for t in range(m)):
                ok = False
                break
        if ok:
            out.append(s)
    return out


def verify_nash(game: Game, sigma) -> bool:
    return is_nash(game, sigma)


# ---------------------------------------------------------------------------
# dominance


def strictly_dominated(game: Game, player: int, strategy: int, remaining) -> bool:
    """Whether ``strategy`` is strictly dominated by a mixture of the player's
    other remaining strategies, against the others' remaining strategies."""
    others = [t for t in remaining[player] if t != strategy]
    if not others:
        return False
    U = game.payoff_tensor(player)
    opp = [remaining[j] if j != player else [None] for j in range(game.num_players)]
    rows = []
    for prof in itertools.product(*opp):
        def at(t):
            return U[prof[:player] + (t,) + prof[player + 1 :]]

        # sum_t tau_t U(t, s-i) - delta >= U(s, s-i)
        rows.append([at(t) for t in others] + [-_ONE])
        rows[-1].append(at(strategy))
    A = [r[:-1] for r in rows] + [[_ONE] * len(others) + [_ZERO]]
    b = [r[-1] for r in rows] + [_ONE]
    kinds = [lp.GE] * len(rows) + [lp.EQ]
    prog = lp.LinearProgram(
        [_ZERO] * len(others) + [_ONE], A, b, kinds, lower=[_ZERO] * len(others) + [None]
    )
    sol = lp.solve(prog)
    return sol.value > 0


def is_dominance_solvable(game: Game):
    """Iterated elimination of strictly dominated strategies (mixed dominators).

    Returns ``(True, order)`` when a single profile survives, where ``order``
    lists ``(player, strategy)`` eliminations; otherwise ``(False, None)``.
    The lowest player index, then lowest strategy index, is eliminated first.
    """
    remaining = [list(range(m)) for m in game.shape]
    order = []
    progress = True
    while progress:
        progress = False
        for i in range(game.num_players):
            for s in list(remaining[i]):
                if strictly_dominated(game, i, s, remaining):
                    remaining[i].remove(s)
                    order.append((i, s))
                    progress = True
                    break
            if progress:
                break
    if all(len(r) == 1 for r in remaining):
        return True, order
    return False, None


# ---------------------------------------------------------------------------
# 2x2x2 games


class _Bilinear:
    """``c00 + c10 u + c01 v + c11 u v`` in the probabilities ``u, v`` of the
    second strategies of two players."""

    def __init__(self, c00, c10, c01, c11, players):
        self.c = (c00, c10, c01, c11)
        self.players = players

    def __call__(self, u, v):
        c00, c10, c01, c11 = self.c
        return c00 + c10 * u + c01 * v + c11 * u * v

    def linear_in_second(self, u):
        """Coefficients ``(alpha, beta)`` of ``alpha + beta v`` once ``u`` is fixed."""
        c00, c10, c01, c11 = self.c
        return c00 + c10 * u, c01 + c11 * u

    def linear_in_first(self, v):
        c00, c10, c01, c11 = self.c
        return c00 + c01 * v, c10 + c11 * v

    def is_zero(self):
        return not any(self.c)

    def describe(self, names):
        u, v = (names[p] for p in self.players)
        c00, c10, c01, c11 = self.c
        terms = [f"{c00}"]
        if c10:
            terms.append(f"{c10}*{u}")
        if c01:
            terms.append(f"{c01}*{v}")
        if c11:
            terms.append(f"{c11}*{u}*{v}")
        return " + ".join(terms)


def _gain_functions(game: Game):
    """For each player, gain of the second strategy over the first as a
    bilinear function of the other two players' mixing probabilities."""
    out = []
    for i in range(3):
        U = game.payoff_tensor(i)
        j, k = [p for p in range(3) if p != i]

        def g(a, b):
            prof1 = [0, 0, 0]
            prof1[i], prof1[j], prof1[k] = 1, a, b
            prof0 = list(prof1)
            prof0[i] = 0
            return U[tuple(prof1)] - U[tuple(prof0)]

        g00, g10, g01, g11 = g(0, 0), g(1, 0), g(0, 1), g(1, 1)
        out.append(_Bilinear(g00, g10 - g00, g01 - g00, g11 - g10 - g01 + g00, (j, k)))
    return out


_NAMES = ("p0", "p1", "p2")


class _Interval:
    """Subset of (0, 1) cut out by linear sign conditions."""

    def __init__(self):
        self.lo, self.lo_closed, self.hi, self.hi_closed = _ZERO, False, _ONE, False
        self.empty = False

    def restrict(self, alpha, beta, sense):
        """Impose ``alpha + beta v (sense) 0`` with sense in {'<=', '>=', '=='}."""
        if self.empty:
            return
        if beta == 0:
            ok = {"<=": alpha <= 0, ">=": alpha >= 0, "==": alpha == 0}[sense]
            if not ok:
                self.empty = True
            return
        root = -alpha / beta
        if sense == "==":
            self._cap_lo(root, True)
            self._cap_hi(root, True)
        elif (sense == "<=") == (beta > 0):
            self._cap_hi(root, True)
        else:
            self._cap_lo(root, True)
        self._check()

    def _cap_lo(self, v, closed):
        if v > self.lo or (v == self.lo and not closed):
            self.lo, self.lo_closed = v, closed

    def _cap_hi(self, v, closed):
        if v < self.hi or (v == self.hi and not closed):
            self.hi, self.hi_closed = v, closed

    def _check(self):
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            self.empty = True

    @property
    def is_point(self):
        return not self.empty and self.lo == self.hi

    def sample(self):
        return self.lo if self.is_point else (self.lo + self.hi) / 2

    def describe(self, name):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{name} in {left}{self.lo}, {self.hi}{right}"

    def as_tuple(self):
        return (self.lo, self.lo_closed, self.hi, self.hi_closed)


def _sense(pure_choice):
    # second-strategy probability 0 needs gain <= 0; probability 1 needs gain >= 0
    return "<=" if pure_choice == 0 else ">="


def _profile(probs):
    return tuple((_ONE - p, p) for p in probs)


def _region_sample(f: _Bilinear, sense):
    """An exact interior point of (0,1)^2 where ``f (sense) 0``, or None."""
    corners = [(u, v, f(u, v)) for u in (_ZERO, _ONE) for v in (_ZERO, _ONE)]
    if f.is_zero():
        return (Fraction(1, 2), Fraction(1, 2))
    pick = min(corners, key=lambda c: c[2]) if sense == "<=" else max(corners, key=lambda c: c[2])
    good = pick[2] < 0 if sense == "<=" else pick[2] > 0
    if not good:
        return None
    u0, v0 = pick[0], pick[1]
    step = Fraction(1, 2)
    while True:
        u = u0 + step if u0 == 0 else u0 - step
        v = v0 + step if v0 == 0 else v0 - step
        val = f(u, v)
        if (val <= 0) if sense == "<=" else (val >= 0):
            return (u, v)
        step /= 2


def _linear_sign_at_root(coefs, lin, lo, hi):
    """Sign of the linear polynomial ``lin = (l0, l1)`` at the irrational root of
    the quadratic ``coefs`` isolated in ``(lo, hi)``; refines the interval."""
    l0, l1 = lin
    if l1 == 0:
        return (l0 > 0) - (l0 < 0), lo, hi
    zero = -l0 / l1
    while lo <= zero <= hi:
        lo, hi = _bisect(coefs, lo, hi)
    mid = (lo + hi) / 2
    val = l0 + l1 * mid
    return (val > 0) - (val < 0), lo, hi


def _quad(coefs, z):
    a, b, c = coefs
    return (a * z + b) * z + c


def _bisect(coefs, lo, hi):
    mid = (lo + hi) / 2
    fm = _quad(coefs, mid)
    if fm == 0:
        raise ArithmeticError("rational value hit while isolating an irrational root")
    if (_quad(coefs, lo) < 0) == (fm < 0):
        return mid, hi
    return lo, mid


def _rational_sqrt(x: Fraction):
    from math import isqrt

    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def analyze_2x2x2(game: Game) -> NashReport:
    """Complete exact equilibrium analysis of a three-player, two-strategy game.

    Each player's mixing probability (of the second strategy) is either 0,
    1 or interior; the 27 resulting cells are solved exactly. The cell with
    all three players mixing reduces to a quadratic in the third player's
    probability whose roots in (0, 1) are isolated by exact sign tests.
    """
    if game.shape != (2, 2, 2):
        raise GameFormatError(f"expected a 2x2x2 game, got shape {game.shape}")
    D = _gain_functions(game)
    if all(f.is_zero() for f in D):
        # every player is always indifferent: the whole cube
        half = Fraction(1, 2)
        cube = Component(
            fixed={}, free=(0, 1, 2), conditions=["p0 in [0, 1]", "p1 in [0, 1]", "p2 in [0, 1]"],
            sample=_profile([half, half, half]),
        )
        return NashReport(
            equilibria=[], complete=True, degenerate=True, components=[cube],
            quadratic=QuadraticCaseResult((_ZERO, _ZERO, _ZERO), _ZERO, True, []),
        )
    points = set()
    components = []
    quadratic = None
    for types in itertools.product((0, 1, "M"), repeat=3):
        mixed = [i for i, t in enumerate(types) if t == "M"]
        pure = {i: Fraction(t) for i, t in enumerate(types) if t != "M"}
        if len(mixed) == 0:
            if all(_holds(D[i](*(pure[p] for p in D[i].players)), _sense(types[i])) for i in range(3)):
                points.add(_profile([pure[0], pure[1], pure[2]]))
        elif len(mixed) == 1:
            _cell_one(D, types, mixed[0], pure, points, components)
        elif len(mixed) == 2:
            _cell_two(D, types, mixed, pure, points, components)
        else:
            quadratic = _cell_three(D, points, components)
    equilibria = sorted(points, key=_order_key)
    for sigma in equilibria:
        if not is_nash(game, sigma):
            raise ArithmeticError(f"2x2x2 analysis produced a non-equilibrium {sigma}")
    for comp in components:
        if comp.sample is not None and not is_nash(game, comp.sample):
            raise ArithmeticError("2x2x2 component sample is not an equilibrium")
    return NashReport(
        equilibria=equilibria,
        complete=not any(not c.resolved for c in components)
        and not any(r.is_equilibrium and r.exact is None for r in quadratic.roots),
        degenerate=bool(components),
        components=components,
        quadratic=quadratic,
    )


def _holds(value, sense):
    return {"<=": value <= 0, ">=": value >= 0, "==": value == 0}[sense]


def _cell_one(D, types, p, pure, points, components):
    # player p's own gain does not involve p's probability
    own = D[p](*(pure[q] for q in D[p].players))
    if own != 0:
        return
    iv = _Interval()
    conditions = []
    for q in range(3):
        if q == p:
            continue
        f = D[q]
        other = f.players[0] if f.players[1] == p else f.players[1]
        if f.players[0] == p:
            alpha, beta = f.linear_in_first(pure[other])
        else:
            alpha, beta = f.linear_in_second(pure[other])
        iv.restrict(alpha, beta, _sense(types[q]))
    if iv.empty:
        return
    probs = [pure.get(i) for i in range(3)]
    if iv.is_point:
        probs[p] = iv.lo
        points.add(_profile(probs))
        return
    probs[p] = iv.sample()
    conditions.append(iv.describe(_NAMES[p]))
    conditions.extend(f"{_NAMES[q]} = {pure[q]}" for q in pure)
    components.append(
        Component(
            fixed=dict(pure),
            free=(p,),
            conditions=conditions,
            sample=_profile(probs),
            interval=iv.as_tuple(),
        )
    )


def _indifference(f, fixed_player, fixed_value):
    """Solve ``f = 0`` for the non-fixed variable: returns ('value', v),
    ('free', None) or ('none', None)."""
    if f.players[0] == fixed_player:
        alpha, beta = f.linear_in_second(fixed_value)
    else:
        alpha, beta = f.linear_in_first(fixed_value)
    if beta == 0:
        return ("free", None) if alpha == 0 else ("none", None)
    v = -alpha / beta
    return ("value", v) if 0 < v < 1 else ("none", None)


def _cell_two(D, types, mixed, pure, points, components):
    p, q = mixed
    (r,) = pure
    a_r = pure[r]
    # p's gain depends on (q, r): solve it for q's probability, and vice versa
    kind_q, val_q = _indifference(D[p], r, a_r)
    kind_p, val_p = _indifference(D[q], r, a_r)
    if kind_q == "none" or kind_p == "none":
        return
    f = D[r]
    sense = _sense(types[r])
    probs = [None, None, None]
    probs[r] = a_r
    if kind_p == "value" and kind_q == "value":
        probs[p], probs[q] = val_p, val_q
        if _holds(f(*(probs[x] for x in f.players)), sense):
            points.add(_profile(probs))
        return
    if kind_p == "value" or kind_q == "value":
        fixed_pl, fixed_val, free_pl = (p, val_p, q) if kind_p == "value" else (q, val_q, p)
        if f.players[0] == fixed_pl:
            alpha, beta = f.linear_in_second(fixed_val)
        else:
            alpha, beta = f.linear_in_first(fixed_val)
        iv = _Interval()
        iv.restrict(alpha, beta, sense)
        if iv.empty:
            return
        probs[fixed_pl] = fixed_val
        if iv.is_point:
            probs[free_pl] = iv.lo
            points.add(_profile(probs))
            return
        probs[free_pl] = iv.sample()
        components.append(
            Component(
                fixed={r: a_r, fixed_pl: fixed_val},
                free=(free_pl,),
                conditions=[iv.describe(_NAMES[free_pl]), f"{_NAMES[fixed_pl]} = {fixed_val}", f"{_NAMES[r]} = {a_r}"],
                sample=_profile(probs),
                interval=iv.as_tuple(),
            )
        )
        return
    # both indifferences hold identically: a two-dimensional piece
    sample = _region_sample(f, sense)
    if sample is None:
        return
    probs[f.players[0]], probs[f.players[1]] = sample
    components.append(
        Component(
            fixed={r: a_r},
            free=tuple(sorted((p, q))),
            conditions=[
                f"{_NAMES[p]} in (0, 1)",
                f"{_NAMES[q]} in (0, 1)",
                f"{f.describe(_NAMES)} {sense} 0",
                f"{_NAMES[r]} = {a_r}",
            ],
            sample=_profile(probs),
        )
    )


def _cell_three(D, points, components) -> QuadraticCaseResult:
    """All three players mix. With z the probability of player 2:
    player 0's indifference gives p1 = -P0(z)/P1(z), player 1's gives
    p0 = -Q0(z)/Q1(z), and player 2's indifference becomes the quadratic
    R(z) = e00 P1 Q1 - e10 Q0 P1 - e01 P0 Q1 + e11 P0 Q0."""
    f0, f1, f2 = D
    # f0 over (p1, p2); f1 over (p0, p2); f2 over (p0, p1)
    c00, c10, c01, c11 = f0.c
    P0, P1 = (c00, c01), (c10, c11)  # linear in z as (const, slope)
    d00, d10, d01, d11 = f1.c
    Q0, Q1 = (d00, d01), (d10, d11)
    e00, e10, e01, e11 = f2.c

    def mul(u, v):
        return (u[0] * v[0], u[0] * v[1] + u[1] * v[0], u[1] * v[1])

    def add(*polys):
        out = [_ZERO, _ZERO, _ZERO]
        for k, poly in polys:
            for i in range(3):
                out[i] += k * poly[i]
        return out

    c_, b_, a_ = add((e00, mul(P1, Q1)), (-e10, mul(Q0, P1)), (-e01, mul(P0, Q1)), (e11, mul(P0, Q0)))
    coefs = (a_, b_, c_)
    disc = b_ * b_ - 4 * a_ * c_
    result = QuadraticCaseResult(coefficients=coefs, discriminant=disc, identically_zero=not any(coefs), roots=[])

    def lin(poly, z):
        return poly[0] + poly[1] * z

    special = set()
    for poly in (P1, Q1):
        if poly[1] != 0:
            z0 = -poly[0] / poly[1]
            if 0 < z0 < 1:
                special.add(z0)
    degenerate_family = (P1 == (0, 0)) or (Q1 == (0, 0))
    if degenerate_family:
        # an indifference coefficient vanishes for every z
        for poly_const, poly_coef in ((P0, P1), (Q0, Q1)):
            if poly_coef == (0, 0):
                if poly_const == (0, 0):
                    components.append(
                        Component(
                            fixed={},
                            free=(0, 1, 2),
                            conditions=[
                                "p0, p1, p2 in (0, 1)",
                                f"{f0.describe(_NAMES)} = 0",
                                f"{f1.describe(_NAMES)} = 0",
                                f"{f2.describe(_NAMES)} = 0",
                            ],
                            resolved=False,
                        )
                    )
                    return result
                if poly_const[1] != 0:
                    z0 = -poly_const[0] / poly_const[1]
                    if 0 < z0 < 1:
                        special.add(z0)
                # constant nonzero: no interior solution
                elif poly_const[0] != 0:
                    return result
        for z0 in sorted(special):
            _fixed_z(D, z0, points, components, result)
        return result

    for z0 in sorted(special):
        _fixed_z(D, z0, points, components, result)

    def conditions_ok(z):
        p1 = -lin(P0, z) / lin(P1, z)
        p0 = -lin(Q0, z) / lin(Q1, z)
        return 0 < p0 < 1 and 0 < p1 < 1, (p0, p1)

    if result.identically_zero:
        # a curve of completely mixed candidates parameterized by z
        sample = None
        for den in (2, 3, 4, 5, 7, 8, 16, 32, 64):
            for num in range(1, den):
                z = Fraction(num, den)
                if z in special:
                    continue
                ok, (p0, p1) = conditions_ok(z)
                if ok:
                    sample = _profile([p0, p1, z])
                    break
            if sample is not None:
                break
        components.append(
            Component(
                fixed={},
                free=(0, 1, 2),
                conditions=[
                    "p2 in (0, 1)",
                    f"p1 = -({P0[0]} + {P0[1]}*p2)/({P1[0]} + {P1[1]}*p2) in (0, 1)",
                    f"p0 = -({Q0[0]} + {Q0[1]}*p2)/({Q1[0]} + {Q1[1]}*p2) in (0, 1)",
                ],
                sample=sample,
                resolved=sample is not None,
            )
        )
        return result

    roots = []
    if a_ == 0:
        if b_ != 0:
            roots.append((-c_ / b_, None))
    else:
        sq = _rational_sqrt(disc)
        if sq is not None:
            for r in sorted({(-b_ - sq) / (2 * a_), (-b_ + sq) / (2 * a_)}):
                roots.append((r, None))
        elif disc > 0:
            vertex = -b_ / (2 * a_)
            cuts = [_ZERO] + ([vertex] if 0 < vertex < 1 else []) + [_ONE]
            for lo, hi in zip(cuts, cuts[1:]):
                flo, fhi = _quad(coefs, lo), _quad(coefs, hi)
                if flo * fhi < 0:
                    roots.append((None, (lo, hi)))
    for exact, bracket in roots:
        if exact is not None:
            if not 0 < exact < 1 or exact in special:
                continue
            ok, (p0, p1) = conditions_ok(exact)
            cert = RootCertificate(exact, exact, exact, ok)
            if not ok:
                cert.reasons.append(f"p0={p0}, p1={p1} not both in (0, 1)")
            else:
                points.add(_profile([p0, p1, exact]))
            result.roots.append(cert)
            continue
        lo, hi = bracket
        ok = True
        reasons = []
        # p1 in (0,1): P0*P1 < 0 and (P0+P1)*P1 > 0; same for p0 with Q
        for name, num, den in (("p1", P0, P1), ("p0", Q0, Q1)):
            s_den, lo, hi = _linear_sign_at_root(coefs, den, lo, hi)
            s_num, lo, hi = _linear_sign_at_root(coefs, num, lo, hi)
            s_sum, lo, hi = _linear_sign_at_root(coefs, (num[0] + den[0], num[1] + den[1]), lo, hi)
            if not (s_num * s_den < 0 and s_sum * s_den > 0):
                ok = False
                reasons.append(f"{name} outside (0, 1) at the root")
        result.roots.append(RootCertificate(lo, hi, None, ok, reasons))
    return result


def _fixed_z(D, z0, points, components, result):
    """Completely mixed candidates with player 2's probability fixed at z0."""
    f0, f1, f2 = D
    kind1, v1 = _indifference(f0, 2, z0)  # solves for p1
    kind0, v0 = _indifference(f1, 2, z0)  # solves for p0
    if kind1 == "none" or kind0 == "none":
        return
    if kind0 == "value" and kind1 == "value":
        if f2(v0, v1) == 0:
            points.add(_profile([v0, v1, z0]))
            result.special_points.append((v0, v1, z0))
        return
    if kind0 == "value" or kind1 == "value":
        fixed_pl, fixed_val, free_pl = (0, v0, 1) if kind0 == "value" else (1, v1, 0)
        if fixed_pl == 0:
            alpha, beta = f2.linear_in_second(fixed_val)
        else:
            alpha, beta = f2.linear_in_first(fixed_val)
        iv = _Interval()
        iv.restrict(alpha, beta, "==")
        if iv.empty:
            return
        probs = [None, None, z0]
        probs[fixed_pl] = fixed_val
        if iv.is_point:
            probs[free_pl] = iv.lo
            points.add(_profile(probs))
            result.special_points.append(tuple(probs))
            return
        probs[free_pl] = iv.sample()
        components.append(
            Component(
                fixed={2: z0, fixed_pl: fixed_val},
                free=(free_pl,),
                conditions=[iv.describe(_NAMES[free_pl]), f"{_NAMES[fixed_pl]} = {fixed_val}", f"p2 = {z0}"],
                sample=_profile(probs),
                interval=iv.as_tuple(),
            )
        )
        result.special_points.append(tuple(probs))
        return
    components.append(
        Component(
            fixed={2: z0},
            free=(0, 1),
            conditions=["p0 in (0, 1)", "p1 in (0, 1)", f"{f2.describe(_NAMES)} = 0", f"p2 = {z0}"],
            resolved=False,
        )
    )
