"""Exact rational linear programming.

All programs have nonnegative variables.  The solver is a two-phase revised
simplex.  It prices by most negative reduced cost and falls back on Bland's
rule during long runs of degenerate pivots, which rules out cycling while
keeping the pivot count low on the highly degenerate coherence systems.
Ties are broken by index, so results are deterministic.  Arithmetic is exact: rows are scaled to
integers and the basis inverse is an integer matrix over a shared
denominator, so pivots run on Python integers and no tolerance is needed.

Infeasibility is certified by a Farkas multiplier vector ``y`` (one entry per
constraint) read off the phase-1 duals: ``y`` is nonnegative on ``>=`` rows,
nonpositive on ``<=`` rows and free on ``=`` rows, the combined row
``sum(y[i] * a[i])`` is componentwise ``<= 0`` and ``sum(y[i] * b[i]) > 0``.
Adding the nonnegativity rows ``x_j >= 0`` with multipliers
``-sum(y[i] * a[i][j])`` cancels every coefficient and leaves ``0 >= y.b``,
a contradiction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

EQ, LE, GE = "=", "<=", ">="
_RELATIONS = (EQ, LE, GE)


def _fractions(values) -> tuple[Fraction, ...]:
    return tuple(a if type(a) is Fraction else Fraction(a) for a in values)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", _fractions(self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((a * xi for a, xi in zip(self.coeffs, x) if a), Fraction(0))
        if self.relation == EQ:
            return lhs == self.rhs
        if self.relation == LE:
            return lhs <= self.rhs
        return lhs >= self.rhs


@dataclass(frozen=True)
class Objective:
    coeffs: tuple[Fraction, ...]
    sense: str = "min"

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError(f"unknown objective sense {self.sense!r}")
        object.__setattr__(self, "coeffs", _fractions(self.coeffs))


@dataclass(frozen=True)
class LinearProgram:
    n_vars: int
    constraints: tuple[Constraint, ...]
    objective: Objective | None = None

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if len(c.coeffs) != self.n_vars:
                raise ValueError("constraint length does not match the variable count")
        if self.objective is not None and len(self.objective.coeffs) != self.n_vars:
            raise ValueError("objective length does not match the variable count")

    def with_objective(self, coeffs, sense="min") -> LinearProgram:
        return LinearProgram(self.n_vars, self.constraints, Objective(tuple(coeffs), sense))

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        return (len(x) == self.n_vars and all(xi >= 0 for xi in x)
                and all(c.holds(x) for c in self.constraints))


@dataclass(frozen=True)
class Feasible:
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    certificate: tuple[Fraction, ...]


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    witness: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    pass


def combine_rows(lp: LinearProgram, y: Sequence[Fraction]):
    """Return ``(sum(y[i] * a[i]), sum(y[i] * b[i]))`` over the constraints."""
    coeffs = [Fraction(0)] * lp.n_vars
    rhs = Fraction(0)
    for yi, c in zip(y, lp.constraints):
        if yi:
            for j, a in enumerate(c.coeffs):
                if a:
                    coeffs[j] += yi * a
            rhs += yi * c.rhs
    return coeffs, rhs


def verify_certificate(lp: LinearProgram, y: Sequence[Fraction]) -> bool:
    """Check that ``y`` proves ``lp`` has no nonnegative solution."""
    if len(y) != len(lp.constraints):
        return False
    for yi, c in zip(y, lp.constraints):
        if (c.relation == GE and yi < 0) or (c.relation == LE and yi > 0):
            return False
    coeffs, rhs = combine_rows(lp, y)
    return rhs > 0 and all(a <= 0 for a in coeffs)


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


class Simplex:
    """Revised simplex state for one program; call :meth:`phase1` first.

    Rows are scaled to integers; the basis inverse is kept as an integer
    matrix over one shared positive denominator.  After a successful phase 1
    the instance may be optimized repeatedly for different objectives, each
    run starting from the basis the previous one left.
    """

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        n = self.n = lp.n_vars
        m = self.m = len(lp.constraints)
        cols: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self.scale = []  # original row = scaled row / scale
        self.origin = []  # per row: the column forming the initial basis
        rhs = []
        aux_cols = []
        art_rows = []
        for i, c in enumerate(lp.constraints):
            sign = -1 if c.rhs < 0 else 1
            den = _lcm([a.denominator for a in c.coeffs if a] + [c.rhs.denominator])
            for j, a in enumerate(c.coeffs):
                if a:
                    cols[j].append((i, sign * a.numerator * (den // a.denominator)))
            rhs.append(sign * c.rhs.numerator * (den // c.rhs.denominator))
            self.scale.append(sign * den)
            if c.relation != EQ:
                coef = (1 if c.relation == LE else -1) * sign
                aux_cols.append((i, coef))
                if coef == 1:
                    self.origin.append(n + len(aux_cols) - 1)
                    continue
            art_rows.append(i)
            self.origin.append(None)
        for i, coef in aux_cols:
            cols.append([(i, coef)])
        self.first_art = len(cols)
        for i in art_rows:
            self.origin[i] = len(cols)
            cols.append([(i, 1)])
        self.cols = cols
        self.n_cols = len(cols)
        self.basis = list(self.origin)
        self.in_basis = set(self.basis)
        self.inv = [[int(i == k) for k in range(m)] for i in range(m)]
        self.beta = rhs
        self.den = 1
        self.status = None
        self.pivots = 0

    # -- linear algebra -----------------------------------------------------

    def _column(self, j: int) -> list[int]:
        """Basis-inverse image of column ``j``, over ``self.den``."""
        inv = self.inv
        out = [0] * self.m
        for i, a in self.cols[j]:
            for k in range(self.m):
                v = inv[k][i]
                if v:
                    out[k] += v * a
        return out

    def _duals(self, costs) -> list[int]:
        """``c_B^T B^-1`` over ``self.den``."""
        y = [0] * self.m
        for r, b in enumerate(self.basis):
            cb = costs.get(b, 0)
            if cb:
                row = self.inv[r]
                for i in range(self.m):
                    if row[i]:
                        y[i] += cb * row[i]
        return y

    def _reduced(self, j: int, costs, y) -> int:
        """Reduced cost of column ``j`` times ``self.den``."""
        d = costs.get(j, 0) * self.den
        for i, a in self.cols[j]:
            d -= y[i] * a
        return d

    def _pivot(self, r: int, j: int, alpha: list[int]) -> None:
        ar = alpha[r]
        den = self.den
        inv, beta = self.inv, self.beta
        pivot_row, pivot_beta = inv[r], beta[r]
        for k in range(self.m):
            if k == r:
                continue
            f = alpha[k]
            if f:
                inv[k] = [u * ar - f * v for u, v in zip(inv[k], pivot_row)]
                beta[k] = beta[k] * ar - f * pivot_beta
            elif ar != 1:
                inv[k] = [u * ar for u in inv[k]]
                beta[k] *= ar
        inv[r] = [v * den for v in pivot_row]
        beta[r] = pivot_beta * den
        den *= ar
        if den < 0:
            den = -den
            for k in range(self.m):
                inv[k] = [-u for u in inv[k]]
                beta[k] = -beta[k]
        g = den
        for k in range(self.m):
            if g == 1:
                break
            g = math.gcd(g, beta[k], *inv[k])
        if g > 1:
            for k in range(self.m):
                inv[k] = [u // g for u in inv[k]]
                beta[k] //= g
            den //= g
        self.den = den
        self.in_basis.discard(self.basis[r])
        self.basis[r] = j
        self.in_basis.add(j)
        self.pivots += 1

    #: consecutive degenerate pivots tolerated before falling back to Bland's rule
    STALL_LIMIT = 50

    def _entering(self, costs, y, limit: int, bland: bool):
        """Entering column: most negative reduced cost, or the first negative one."""
        best, best_d = None, 0
        in_basis = self.in_basis
        for j in range(limit):
            if j in in_basis:
                continue
            d = self._reduced(j, costs, y)
            if d < best_d:
                if bland:
                    return j
                best, best_d = j, d
        return best

    def _run(self, costs, limit: int) -> bool:
        """Simplex iterations; False when the objective is unbounded.

        Pricing picks the most negative reduced cost, but a run of degenerate
        pivots switches to Bland's rule until the objective moves again, so
        the method cannot cycle.
        """
        stalled = 0
        while True:
            y = self._duals(costs)
            entering = self._entering(costs, y, limit, stalled >= self.STALL_LIMIT)
            if entering is None:
                return True
            alpha = self._column(entering)
            best = None
            for i, a in enumerate(alpha):
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    lhs, rhs = self.beta[i] * alpha[best], self.beta[best] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return False
            stalled = stalled + 1 if self.beta[best] == 0 else 0
            self._pivot(best, entering, alpha)

    # -- phase 1 ------------------------------------------------------------

    def phase1(self) -> bool:
        costs = {j: 1 for j in range(self.first_art, self.n_cols)}
        self._run(costs, self.n_cols)
        y = self._duals(costs)
        value = sum(y[i] * b for i, b in enumerate(self._rhs()))
        self._phase1_duals = y
        if value > 0:
            self.status = "infeasible"
            return False
        self._drive_out_artificials()
        self.status = "feasible"
        return True

    def _rhs(self) -> list[int]:
        # the scaled right-hand side, recovered from the initial basis B = I
        out = [0] * self.m
        for i, c in enumerate(self.lp.constraints):
            out[i] = c.rhs * self.scale[i]
        return out

    def _drive_out_artificials(self) -> None:
        for r in range(self.m):
            if self.basis[r] < self.first_art:
                continue
            for j in range(self.first_art):
                if j in self.in_basis:
                    continue
                alpha = self._column(j)
                if alpha[r]:
                    self._pivot(r, j, alpha)
                    break
            # otherwise the row is redundant: the artificial stays basic at
            # zero and can never leave, since every column has alpha[r] == 0

    def certificate(self) -> tuple[Fraction, ...]:
        """Farkas multipliers for the original constraints (after a failed phase 1)."""
        if self.status != "infeasible":
            raise RuntimeError("certificate requested for a program not proven infeasible")
        y = [Fraction(v * s) for v, s in zip(self._phase1_duals, self.scale)]
        scale = _lcm(v.denominator for v in y)
        ints = [int(v * scale) for v in y]
        g = math.gcd(*ints) or 1
        return tuple(Fraction(v, g) for v in ints)

    # -- phase 2 ------------------------------------------------------------

    def witness(self) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * self.n
        for r, b in enumerate(self.basis):
            if b < self.n:
                x[b] = Fraction(self.beta[r], self.den)
        return tuple(x)

    def optimize(self, coeffs: Sequence[Fraction], sense: str = "min"):
        if self.status != "feasible":
            raise RuntimeError("optimize requires a successful phase 1")
        c = [Fraction(a) for a in coeffs]
        if sense == "max":
            c = [-a for a in c]
        scale = _lcm(a.denominator for a in c)
        costs = {j: a.numerator * (scale // a.denominator) for j, a in enumerate(c) if a}
        if not self._run(costs, self.first_art):
            return Unbounded()
        total = sum(costs.get(b, 0) * self.beta[r] for r, b in enumerate(self.basis))
        value = Fraction(total, self.den * scale)
        if sense == "max":
            value = -value
        return Optimal(value, self.witness())


def solve_feasibility(lp: LinearProgram):
    """Return :class:`Feasible` with an exact witness or :class:`Infeasible`."""
    s = Simplex(lp)
    if s.phase1():
        return Feasible(s.witness())
    return Infeasible(s.certificate())


def optimize(lp: LinearProgram):
    """Solve ``lp`` for its objective: :class:`Optimal`, :class:`Infeasible` or :class:`Unbounded`."""
    if lp.objective is None:
        raise ValueError("optimize needs a program with an objective")
    s = Simplex(lp)
    if not s.phase1():
        return Infeasible(s.certificate())
    return s.optimize(lp.objective.coeffs, lp.objective.sense)
