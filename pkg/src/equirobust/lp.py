"""Exact linear programming over the rationals.

Inputs and outputs are :class:`fractions.Fraction` values and nothing is ever
rounded. Internally the tableau holds ``gmpy2.mpq`` numbers, which are much
faster. The solver is a dense two-phase tableau simplex with Bland's pivoting
rule, which guarantees termination on the heavily degenerate programs that
correlated-equilibrium polytopes produce.

Dual sign convention
--------------------
For ``maximize c.x`` subject to rows ``A_r x (>=, <=, ==) b_r`` and variable
bounds, :attr:`LPSolution.dual` holds one multiplier ``y_r`` per row and
:attr:`LPSolution.bound_dual` one pair ``(lower, upper)`` per variable, such
that

* ``y_r >= 0`` for every ``>=`` row and every ``<=`` row, ``y_r`` free for ``==``;
* ``c + sum_r sign_r y_r A_r + lower - upper = 0`` where ``sign_r = +1`` for
  ``>=`` and ``==`` rows and ``-1`` for ``<=`` rows;
* ``value == -sum_r sign_r y_r b_r - lower.l + upper.u``.

So ``y_r`` is the rate at which the optimum *decreases* when a ``>=`` row is
tightened. Every optimal solve checks all three identities exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np
from gmpy2 import mpq


from ._linalg import primitive_int_vector, rank
from ._rational import as_rational

__all__ = [
    "GE",
    "LE",
    "EQ",
    "LPError",
    "InfeasibleError",
    "UnboundedError",
    "LinearProgram",
    "LPSolution",
    "Polytope",
    "solve",
    "coordinate_range",
    "maximize_each",
    "coordinate_ranges",
    "enumerate_vertices",
    "optimal_face_dimension",
]

GE, LE, EQ = ">=", "<=", "=="
_KINDS = (GE, LE, EQ)
_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class LPError(ValueError):
    """Malformed linear program or polytope."""


class InfeasibleError(LPError):
    pass


class UnboundedError(LPError):
    pass


def _vec(values, name):
    try:
        return tuple(as_rational(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise LPError(f"{name}: {exc}") from None


def _opt_vec(values, n, name):
    if values is None:
        return (None,) * n
    values = tuple(values)
    if len(values) != n:
        raise LPError(f"{name} has length {len(values)}, expected {n}")
    return tuple(None if v is None else as_rational(v) for v in values)


def _check_rows(A, b, kinds, n):
    A = tuple(_vec(row, "A") for row in A)
    b = _vec(b, "b")
    if isinstance(kinds, str):
        kinds = (kinds,) * len(A)
    kinds = tuple(kinds)
    if len(b) != len(A) or len(kinds) != len(A):
        raise LPError("A, b and kinds must have the same number of rows")
    for row in A:
        if len(row) != n:
            raise LPError(f"constraint row of length {len(row)}, expected {n}")
    for k in kinds:
        if k not in _KINDS:
            raise LPError(f"unknown row kind {k!r}")
    return A, b, kinds


@dataclass(frozen=True)
class LinearProgram:
    """``maximize objective . x`` subject to linear rows and variable bounds.

    ``kinds`` may be a single kind applied to every row. Bounds default to
    free (``None``).
    """

    objective: tuple
    A: tuple = ()
    b: tuple = ()
    kinds: tuple = ()
    lower: Optional[tuple] = None
    upper: Optional[tuple] = None

    def __post_init__(self):
        c = _vec(self.objective, "objective")
        A, b, kinds = _check_rows(self.A, self.b, self.kinds, len(c))
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "lower", _opt_vec(self.lower, len(c), "lower"))
        object.__setattr__(self, "upper", _opt_vec(self.upper, len(c), "upper"))
        for lo, up in zip(self.lower, self.upper):
            if lo is not None and up is not None and lo > up:
                raise InfeasibleError(f"empty variable bound [{lo}, {up}]")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction] = None
    primal: Optional[tuple] = None
    dual: Optional[tuple] = None
    bound_dual: Optional[tuple] = None
    active_rows: frozenset = frozenset()
    ray: Optional[tuple] = None  # improving direction when unbounded
    farkas: Optional[tuple] = None  # row multipliers proving infeasibility

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


@dataclass(frozen=True)
class Polytope:
    """``{x : A x (kinds) b, lower <= x <= upper}``; vertices cached once enumerated."""

    A: tuple
    b: tuple
    kinds: tuple
    lower: Optional[tuple] = None
    upper: Optional[tuple] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        n = self.dim
        A, b, kinds = _check_rows(self.A, self.b, self.kinds, n)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "lower", _opt_vec(self.lower, n, "lower"))
        object.__setattr__(self, "upper", _opt_vec(self.upper, n, "upper"))

    @property
    def dim(self) -> int:
        if self.A:
            return len(self.A[0])
        for bounds in (self.lower, self.upper):
            if bounds is not None:
                return len(bounds)
        raise LPError("cannot infer the dimension of an unconstrained polytope")

    def program(self, objective) -> LinearProgram:
        return LinearProgram(objective, self.A, self.b, self.kinds, self.lower, self.upper)

    def inequalities(self):
        """All constraints as explicit rows ``(a, b, kind)``, bounds appended."""
        rows = list(zip(self.A, self.b, self.kinds))
        n = self.dim
        for k in range(n):
            unit = tuple(_ONE if j == k else _ZERO for j in range(n))
            if self.lower[k] is not None:
                rows.append((unit, self.lower[k], GE))
            if self.upper[k] is not None:
                rows.append((unit, self.upper[k], LE))
        return rows

    def contains(self, x) -> bool:
        x = _vec(x, "x")
        for a, rhs, kind in self.inequalities():
            lhs = sum((ai * xi for ai, xi in zip(a, x) if ai), _ZERO)
            if (kind == GE and lhs < rhs) or (kind == LE and lhs > rhs) or (kind == EQ and lhs != rhs):
                return False
        return True


# --------------------------------------------------------------------------
# simplex core


class _Tableau:
    """Standard-form ``max c.z, M z = r, z >= 0`` built from a LinearProgram.

    Columns are laid out as structural columns, then one slack per
    inequality row, then artificials.
    """

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        n = lp.num_vars
        # each original variable is x_k = offset_k + sum(coef * z_col)
        self.var_cols = []
        self.offset = []
        ncols = 0
        extra_rows = []  # (orig_var, bound) for variables bounded on both sides
        for k in range(n):
            lo, up = lp.lower[k], lp.upper[k]
            if lo is not None:
                self.var_cols.append(((ncols, _ONE),))
                self.offset.append(lo)
                ncols += 1
                if up is not None:
                    extra_rows.append((k, up))
            elif up is not None:
                self.var_cols.append(((ncols, -_ONE),))
                self.offset.append(up)
                ncols += 1
            else:
                self.var_cols.append(((ncols, _ONE), (ncols + 1, -_ONE)))
                self.offset.append(_ZERO)
                ncols += 2
        self.n_struct = ncols

        # rows in ">=" / "==" orientation over the original variables
        grows = []  # (coefs over original vars, rhs, is_eq, sign)
        for a, rhs, kind in zip(lp.A, lp.b, lp.kinds):
            if kind == LE:
                grows.append(([-v for v in a], -rhs, False, -1))
            else:
                grows.append((list(a), rhs, kind == EQ, 1))
        for k, up in extra_rows:
            a = [_ZERO] * n
            a[k] = -_ONE
            grows.append((a, -up, False, -1))
        self.n_orig_rows = len(lp.A)
        self.extra_rows = extra_rows
        self.grow_sign = [g[3] for g in grows]

        m = len(grows)
        self.m = m
        n_slack = sum(1 for g in grows if not g[2])
        rows = []
        rhs_list = []
        self.flip = []
        self.init_col = [None] * m
        slack_col = ncols
        art_needed = []
        slack_of_row = []
        for i, (a, rhs, is_eq, _) in enumerate(grows):
            row = [_ZERO] * (ncols + n_slack)
            shift = rhs
            for k, coef in enumerate(a):
                if coef:
                    shift -= coef * self.offset[k]
                    for col, mult in self.var_cols[k]:
                        row[col] += coef * mult
            if not is_eq:
                row[slack_col] = -_ONE
                slack_of_row.append(slack_col)
                slack_col += 1
            else:
                slack_of_row.append(None)
            flip = 1
            if shift < 0:
                row = [-v for v in row]
                shift = -shift
                flip = -1
            self.flip.append(flip)
            if slack_of_row[i] is not None and row[slack_of_row[i]] == 1:
                self.init_col[i] = slack_of_row[i]
            else:
                art_needed.append(i)
            rows.append(row)
            rhs_list.append(shift)
        self.n_real = ncols + n_slack
        n_art = len(art_needed)
        for row in rows:
            row.extend([_ZERO] * n_art)
        for j, i in enumerate(art_needed):
            rows[i][self.n_real + j] = _ONE
            self.init_col[i] = self.n_real + j
        self.ncols = self.n_real + n_art
        self.T = [[mpq(v) for v in row] for row in rows]
        self.rhs = [mpq(v) for v in rhs_list]
        self.basis = list(self.init_col)
        self.cost = None
        self.d = None

    # -- pivoting -------------------------------------------------------

    def _set_objective(self, cost):
        cost = [mpq(v) for v in cost]
        self.cost = cost
        d = list(cost)
        for i, bcol in enumerate(self.basis):
            cb = cost[bcol]
            if cb:
                for j, v in enumerate(self.T[i]):
                    if v:
                        d[j] -= cb * v
        self.d = d
        self.obj = sum((cost[b] * r for b, r in zip(self.basis, self.rhs)), mpq(0))

    def _pivot(self, r, c):
        T = self.T
        prow = T[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [v * inv if v else v for v in prow]
            T[r] = prow
            self.rhs[r] *= inv
        nz = [j for j, v in enumerate(prow) if v]
        rr = self.rhs[r]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                self.rhs[i] -= f * rr
        f = self.d[c]
        if f:
            for j in nz:
                self.d[j] -= f * prow[j]
            self.obj += f * rr
        self.basis[r] = c

    def _run(self, allowed):
        """Bland's rule. Returns None at optimum or the unbounded entering column."""
        while True:
            enter = next((j for j in range(allowed) if self.d[j] > 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return enter
            self._pivot(best[1], enter)

    def phase_one(self) -> bool:
        cost = [_ZERO] * self.n_real + [-_ONE] * (self.ncols - self.n_real)
        self._set_objective(cost)
        self._run(self.ncols)
        if self.obj < 0:
            self.farkas_y = self._duals()
            return False
        # drive zero-level artificials out of the basis where possible
        for i in range(self.m):
            if self.basis[i] >= self.n_real:
                col = next((j for j in range(self.n_real) if self.T[i][j] != 0), None)
                if col is not None:
                    self._pivot(i, col)
        return True

    def _duals(self):
        # y_i = c_init - d_init because the initial basis is an identity
        return [_frac(self.cost[self.init_col[i]] - self.d[self.init_col[i]]) for i in range(self.m)]

    def set_original_objective(self, c):
        cost = [_ZERO] * self.ncols
        for k, ck in enumerate(c):
            if ck:
                for col, mult in self.var_cols[k]:
                    cost[col] += ck * mult
        self._set_objective(cost)
        self.const = sum((ck * o for ck, o in zip(c, self.offset)), _ZERO)

    def primal(self):
        z = [_ZERO] * self.ncols
        for i, bcol in enumerate(self.basis):
            z[bcol] = _frac(self.rhs[i])
        return self._to_x(z, self.offset)

    def _to_x(self, z, offset):
        return tuple(
            o + sum((mult * z[col] for col, mult in cols), _ZERO) for o, cols in zip(offset, self.var_cols)
        )

    def ray(self, enter):
        z = [_ZERO] * self.ncols
        z[enter] = _ONE
        for i, bcol in enumerate(self.basis):
            z[bcol] = -_frac(self.T[i][enter])
        return self._to_x(z, [_ZERO] * len(self.offset))

    def copy(self):
        other = object.__new__(_Tableau)
        other.__dict__.update(self.__dict__)
        other.T = [list(row) for row in self.T]
        other.rhs = list(self.rhs)
        other.basis = list(self.basis)
        return other

    def row_multipliers(self, y):
        """Map standard-form duals to per-row multipliers in the documented convention."""
        # lambda_i for the ">=" oriented row = -flip_i * y_i
        return [-(f * yi) for f, yi in zip(self.flip, y)]


def _finish(tab: _Tableau, lp: LinearProgram) -> LPSolution:
    enter = tab._run(tab.n_real)
    if enter is not None:
        return LPSolution("unbounded", ray=tab.ray(enter))
    x = tab.primal()
    value = _frac(tab.obj) + tab.const
    lam = tab.row_multipliers(tab._duals())
    n = lp.num_vars
    nrows = tab.n_orig_rows
    dual = tuple(lam[:nrows])
    # residual r = c + sum sign_r y_r A_r; bounds absorb it
    resid = list(lp.objective)
    dual_obj = _ZERO
    for r in range(nrows):
        y = dual[r]
        if y:
            s = -1 if lp.kinds[r] == LE else 1
            for k, a in enumerate(lp.A[r]):
                if a:
                    resid[k] += s * y * a
            dual_obj -= s * y * lp.b[r]
    for r in range(nrows):
        if lp.kinds[r] != EQ and dual[r] < 0:
            raise ArithmeticError("dual infeasible multiplier on inequality row")
    bound_dual = []
    for k in range(n):
        lo, up = lp.lower[k], lp.upper[k]
        rk = resid[k]
        lo_d = up_d = _ZERO
        if rk < 0:
            if lo is None:
                raise ArithmeticError("dual residual on variable without lower bound")
            lo_d = -rk
            dual_obj -= lo_d * lo
        elif rk > 0:
            if up is None:
                raise ArithmeticError("dual residual on variable without upper bound")
            up_d = rk
            dual_obj += up_d * up
        bound_dual.append((lo_d, up_d))
    if dual_obj != value:
        raise ArithmeticError(f"strong duality violated: primal {value} != dual {dual_obj}")
    for a, rhs, kind in zip(lp.A, lp.b, lp.kinds):
        lhs = sum((ai * xi for ai, xi in zip(a, x) if ai), _ZERO)
        if (kind == GE and lhs < rhs) or (kind == LE and lhs > rhs) or (kind == EQ and lhs != rhs):
            raise ArithmeticError("simplex returned an infeasible primal point")
    active = frozenset(
        r
        for r, (a, rhs) in enumerate(zip(lp.A, lp.b))
        if sum((ai * xi for ai, xi in zip(a, x) if ai), _ZERO) == rhs
    )
    return LPSolution(
        "optimal",
        value=value,
        primal=x,
        dual=dual,
        bound_dual=tuple(bound_dual),
        active_rows=active,
    )


class _Solver:
    """Phase one done once; phase two re-run for many objectives."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        self.tab = _Tableau(lp)
        self.feasible = self.tab.phase_one()

    def infeasible_solution(self) -> LPSolution:
        lam = self.tab.row_multipliers(self.tab.farkas_y)
        return LPSolution("infeasible", farkas=tuple(lam))

    def maximize(self, c) -> LPSolution:
        if not self.feasible:
            return self.infeasible_solution()
        lp = LinearProgram(c, self.lp.A, self.lp.b, self.lp.kinds, self.lp.lower, self.lp.upper)
        tab = self.tab.copy()
        tab.set_original_objective(lp.objective)
        return _finish(tab, lp)


def solve(lp: LinearProgram) -> LPSolution:
    """Solve ``lp`` exactly. Optimal solutions carry a verified dual."""
    if not isinstance(lp, LinearProgram):
        raise LPError("solve() expects a LinearProgram")
    return _Solver(lp).maximize(lp.objective)


def maximize_each(poly: Polytope, objectives) -> list:
    """Solve ``max c . x`` over ``poly`` for every ``c``, sharing phase one."""
    solver = _Solver(poly.program([_ZERO] * poly.dim))
    return [solver.maximize(c) for c in objectives]


def coordinate_ranges(poly: Polytope, coords: Optional[Sequence[int]] = None):
    """Exact ``(min, max)`` of each requested coordinate over ``poly``."""
    n = poly.dim
    coords = range(n) if coords is None else coords
    solver = _Solver(poly.program([_ZERO] * n))
    if not solver.feasible:
        raise InfeasibleError("polytope is empty")
    out = []
    for k in coords:
        unit = [_ZERO] * n
        unit[k] = _ONE
        hi = solver.maximize(unit)
        unit[k] = -_ONE
        lo = solver.maximize(unit)
        if hi.status == "unbounded" or lo.status == "unbounded":
            raise UnboundedError(f"coordinate {k} is unbounded")
        out.append((-lo.value, hi.value))
    return out


def coordinate_range(poly: Polytope, k: int):
    if not 0 <= k < poly.dim:
        raise LPError(f"coordinate {k} out of range")
    return coordinate_ranges(poly, [k])[0]


def optimal_face_dimension(lp: LinearProgram) -> int:
    """Affine dimension of the set of optimal solutions.

    The optimal face is the feasible set cut by ``c.x = value``. A constraint
    is an implicit equality of the face when its slack cannot be made
    positive; the dimension is ``n`` minus the rank of those rows.
    """
    sol = solve(lp)
    if sol.status != "optimal":
        raise LPError(f"program is {sol.status}")
    face = Polytope(
        lp.A + (lp.objective,),
        lp.b + (sol.value,),
        lp.kinds + (EQ,),
        lp.lower,
        lp.upper,
    )
    n = lp.num_vars
    solver = _Solver(face.program([_ZERO] * n))
    tight = []
    for a, rhs, kind in face.inequalities():
        if kind == EQ:
            tight.append(a)
            continue
        if kind == GE:
            res = solver.maximize(a)
        else:
            res = solver.maximize(tuple(-v for v in a))
        if res.status == "unbounded":
            continue
        # max slack: a.x - rhs for ">=", rhs - a.x for "<="
        slack = res.value - rhs if kind == GE else res.value + rhs
        if slack == 0:
            tight.append(a)
    return n - rank(tight) if tight else n


# --------------------------------------------------------------------------
# vertex enumeration (double description on the homogenized cone)


def _int_row(a, rhs):
    # homogenized row (a, -rhs) for a.x - rhs*t
    return primitive_int_vector(list(a) + [-rhs]) if any(a) or rhs else None


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v) if x)


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in v)
    return tuple(v)


def _double_description(constraints, d):
    """Extreme rays of ``{z : a.z >= 0 (ineq) or a.z == 0 (eq)}`` in Z^d.

    ``constraints`` is a list of ``(int_vector, is_eq)``. Returns
    ``(lineality_basis, rays)``; rays are primitive integer tuples. Ray
    arithmetic uses Python ints; only the zero-set bookkeeping for the
    combinatorial adjacency test is vectorized (uint64 bitmask words).
    """
    words = max(1, (len(constraints) + 63) // 64)
    lineality = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    rays = []
    masks = np.zeros((0, words), dtype=np.uint64)
    for idx, (a, is_eq) in enumerate(constraints):
        word, bit = divmod(idx, 64)
        bitval = np.uint64(1 << bit)
        vals = [_dot(a, l) for l in lineality]
        pick = next((i for i, v in enumerate(vals) if v != 0), None)
        if pick is not None:
            l0 = lineality[pick]
            v0 = vals[pick]
            if v0 < 0:
                l0 = tuple(-x for x in l0)
                v0 = -v0
            new_lin = []
            for i, l in enumerate(lineality):
                if i == pick:
                    continue
                w = vals[i]
                new_lin.append(_primitive(tuple(v0 * x - w * y for x, y in zip(l, l0))) if w else l)
            new_rays = []
            for vec in rays:
                w = _dot(a, vec)
                if w:
                    vec = _primitive(tuple(v0 * x - w * y for x, y in zip(vec, l0)))
                new_rays.append(vec)
            masks = masks.copy()
            masks[:, word] |= bitval
            if not is_eq:
                # l0 was lineality, hence tight on every earlier constraint
                new_rays.append(l0)
                row = np.zeros((1, words), dtype=np.uint64)
                for j in range(idx):
                    row[0, j // 64] |= np.uint64(1 << (j % 64))
                masks = np.vstack([masks, row])
            lineality = new_lin
            rays = new_rays
            continue
        ws = [_dot(a, vec) for vec in rays]
        pos = [k for k, w in enumerate(ws) if w > 0]
        neg = [k for k, w in enumerate(ws) if w < 0]
        zero = [k for k, w in enumerate(ws) if w == 0]
        if not neg and not is_eq:
            masks = masks.copy()
            masks[zero, word] |= bitval
            continue
        need = d - len(lineality) - 2
        created, created_masks = [], []
        if pos and neg:
            neg_masks = masks[neg]
            for p in pos:
                common = neg_masks & masks[p]
                counts = _popcount(common)
                cand = np.nonzero(counts >= need)[0]
                if cand.size == 0:
                    continue
                common = common[cand]
                # a candidate is adjacent when only p and q contain the common zero set
                contained = np.ones((cand.size, masks.shape[0]), dtype=bool)
                for w in range(words):
                    cw = common[:, w][:, None]
                    contained &= (masks[None, :, w] & cw) == cw
                ok = contained.sum(axis=1) == 2
                vp, wp = rays[p], ws[p]
                for ci in np.nonzero(ok)[0]:
                    q = neg[cand[ci]]
                    vq, wq = rays[q], ws[q]
                    created.append(_primitive(tuple(wp * y - wq * x for x, y in zip(vp, vq))))
                    row = common[ci].copy()
                    row[word] |= bitval
                    created_masks.append(row)
        zero_masks = masks[zero].copy()
        zero_masks[:, word] |= bitval
        keep = zero if is_eq else pos + zero
        new_masks = [masks[pos]] if not is_eq else []
        new_masks.append(zero_masks)
        if created_masks:
            new_masks.append(np.array(created_masks, dtype=np.uint64))
        rays = [rays[k] for k in keep] + created
        masks = np.vstack(new_masks) if new_masks else np.zeros((0, words), dtype=np.uint64)
    return lineality, rays


def _popcount(arr):
    return np.bitwise_count(arr).sum(axis=1)


def _implicit_equalities(poly: Polytope):
    """Indices (into ``poly.inequalities()``) of inequalities tight on all of ``poly``.

    Returns None for an empty polytope. Folding these into equalities lets
    the double description run inside the affine hull, which avoids the
    blow-up that degenerate, lower-dimensional polytopes otherwise cause.
    """
    solver = _Solver(poly.program([_ZERO] * poly.dim))
    if not solver.feasible:
        return None
    tight = set()
    for idx, (a, rhs, kind) in enumerate(poly.inequalities()):
        if kind == EQ:
            continue
        res = solver.maximize(a if kind == GE else tuple(-v for v in a))
        if res.status == "unbounded":
            continue
        slack = res.value - rhs if kind == GE else res.value + rhs
        if slack == 0:
            tight.add(idx)
    return tight


def enumerate_vertices(poly: Polytope, check_bounded: bool = True):
    """All vertices of ``poly`` as tuples of Fractions, sorted lexicographically.

    Boundedness is verified first by ranging every coordinate (two LPs each);
    an unbounded polytope raises :class:`UnboundedError`. An empty polytope
    has no vertices.
    """
    cached = poly._cache.get("vertices")
    if cached is not None:
        return list(cached)
    n = poly.dim
    if check_bounded:
        try:
            coordinate_ranges(poly)
        except InfeasibleError:
            poly._cache["vertices"] = ()
            return []
    implicit = _implicit_equalities(poly)
    if implicit is None:
        poly._cache["vertices"] = ()
        return []
    eqs, ineqs = [], []
    for idx, (a, rhs, kind) in enumerate(poly.inequalities()):
        if kind == LE:
            a, rhs = tuple(-v for v in a), -rhs
        vec = _int_row(a, rhs)
        if vec is None:
            continue
        is_eq = kind == EQ or idx in implicit
        (eqs if is_eq else ineqs).append((vec, is_eq))
    t_row = (tuple([0] * n + [1]), False)
    # bounds were appended last; cutting with them first keeps the
    # intermediate cones far smaller on simplex-like polytopes
    constraints = eqs + [t_row] + ineqs[::-1]
    lineality, rays = _double_description(constraints, n + 1)
    vertices = set()
    for vec in rays:
        t = vec[n]
        if t == 0:
            raise UnboundedError("polytope has a recession direction")
        vertices.add(tuple(Fraction(x, t) for x in vec[:n]))
    if lineality and rays:
        raise UnboundedError("polytope contains a line")
    result = sorted(vertices)
    poly._cache["vertices"] = tuple(result)
    return result
