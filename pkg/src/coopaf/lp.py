"""Exact-rational linear programming: two-phase tableau simplex with Bland's rule.

No tolerances anywhere; every pivot is a Fraction operation, and Bland's
smallest-index rule guarantees termination on degenerate problems.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import MalformedProblem
from .rational import as_rational

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_RELATIONS = {"<=", "=", ">="}


@dataclass(frozen=True)
class LPProblem:
    """``sense`` the objective subject to ``constraints``.

    Each constraint is ``(coefficients, relation, rhs)`` with relation one of
    ``"<="``, ``"="``, ``">="``. ``lower_bounds[j]`` is a Fraction or ``None``
    for a free variable; it defaults to all zeros.
    """

    objective: tuple
    constraints: tuple = ()
    sense: str = "min"
    lower_bounds: Optional[tuple] = None

    def __post_init__(self):
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(as_rational(c) for c in self.objective))
        if self.sense not in ("min", "max"):
            raise MalformedProblem(f"sense must be 'min' or 'max', got {self.sense!r}")
        rows = []
        for row in self.constraints:
            try:
                coeffs, rel, rhs = row
            except (TypeError, ValueError):
                raise MalformedProblem(f"constraint must be (coefficients, relation, rhs): {row!r}") from None
            if rel not in _RELATIONS:
                raise MalformedProblem(f"unknown relation {rel!r}")
            if len(coeffs) != n:
                raise MalformedProblem(f"constraint has {len(coeffs)} coefficients, objective has {n}")
            rows.append((tuple(as_rational(a) for a in coeffs), rel, as_rational(rhs)))
        object.__setattr__(self, "constraints", tuple(rows))
        lb = self.lower_bounds
        if lb is None:
            lb = (Fraction(0),) * n
        elif len(lb) != n:
            raise MalformedProblem(f"{len(lb)} lower bounds for {n} variables")
        object.__setattr__(self, "lower_bounds", tuple(None if b is None else as_rational(b) for b in lb))

    @property
    def n_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LPResult:
    status: str
    optimum: Optional[Fraction] = None
    witness: Optional[tuple] = None


def _pivot(T: List[list], basis: List[int], r: int, c: int) -> None:
    row = T[r]
    p = row[c]
    if p != 1:
        inv = 1 / p
        row[:] = [a * inv for a in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                other[:] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(T: List[list], basis: List[int], cost: Sequence[Fraction], allowed: int) -> str:
    """Minimize ``cost`` over columns ``< allowed`` from a feasible basis."""
    rhs = len(T[0]) - 1 if T else 0
    while True:
        entering = -1
        for j in range(allowed):
            if j in basis:
                continue
            rc = cost[j]
            for i, b in enumerate(basis):
                cb = cost[b]
                if cb:
                    rc -= cb * T[i][j]
            if rc < 0:
                entering = j
                break
        if entering < 0:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                key = (row[rhs] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], entering)


def solve_lp(p: LPProblem) -> LPResult:
    n = p.n_vars
    # Column map: original variable j = offset_j + sum(sign * column).
    cols: List[List[Tuple[int, int]]] = []
    offsets: List[Fraction] = []
    ncol = 0
    for lb in p.lower_bounds:
        if lb is None:
            cols.append([(ncol, 1), (ncol + 1, -1)])
            offsets.append(Fraction(0))
            ncol += 2
        else:
            cols.append([(ncol, 1)])
            offsets.append(lb)
            ncol += 1
    n_struct = ncol

    rows = []
    for coeffs, rel, rhs in p.constraints:
        dense = [Fraction(0)] * n_struct
        b = rhs
        for j, a in enumerate(coeffs):
            if a:
                b -= a * offsets[j]
                for col, sign in cols[j]:
                    dense[col] += sign * a
        if b < 0:
            dense = [-a for a in dense]
            b = -b
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        rows.append((dense, rel, b))

    n_slack = sum(1 for _, rel, _ in rows if rel != "=")
    n_art = sum(1 for _, rel, _ in rows if rel != "<=")
    width = n_struct + n_slack + n_art
    T: List[list] = []
    basis: List[int] = []
    s_idx, a_idx = n_struct, n_struct + n_slack
    for dense, rel, b in rows:
        row = dense + [Fraction(0)] * (n_slack + n_art) + [b]
        if rel == "<=":
            row[s_idx] = Fraction(1)
            basis.append(s_idx)
            s_idx += 1
        else:
            if rel == ">=":
                row[s_idx] = Fraction(-1)
                s_idx += 1
            row[a_idx] = Fraction(1)
            basis.append(a_idx)
            a_idx += 1
        T.append(row)

    art_start = n_struct + n_slack
    if n_art:
        phase1 = [Fraction(0)] * art_start + [Fraction(1)] * n_art
        _simplex(T, basis, phase1, width)
        if sum((T[i][-1] for i, b in enumerate(basis) if b >= art_start), Fraction(0)) > 0:
            return LPResult(INFEASIBLE)
        # Drive zero-valued artificials out of the basis; drop redundant rows.
        i = 0
        while i < len(T):
            if basis[i] >= art_start:
                j = next((j for j in range(art_start) if T[i][j] != 0), None)
                if j is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, j)
            i += 1
        for row in T:
            del row[art_start:width]
    sign = -1 if p.sense == "max" else 1
    cost = [Fraction(0)] * art_start
    for j, c in enumerate(p.objective):
        for col, s in cols[j]:
            cost[col] += sign * s * c
    status = _simplex(T, basis, cost, art_start)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)

    values = [Fraction(0)] * art_start
    for i, b in enumerate(basis):
        values[b] = T[i][-1]
    x = tuple(offsets[j] + sum((s * values[col] for col, s in cols[j]), Fraction(0)) for j in range(n))
    optimum = sum((c * xj for c, xj in zip(p.objective, x)), Fraction(0))
    if not satisfies(p, x):
        raise AssertionError("simplex produced a witness violating the constraints")
    return LPResult(OPTIMAL, optimum, x)


def satisfies(p: LPProblem, x: Sequence[Fraction]) -> bool:
    """Exact feasibility of ``x`` for ``p``."""
    for lb, xj in zip(p.lower_bounds, x):
        if lb is not None and xj < lb:
            return False
    for coeffs, rel, rhs in p.constraints:
        lhs = sum((a * xj for a, xj in zip(coeffs, x) if a), Fraction(0))
        if rel == "<=" and lhs > rhs or rel == ">=" and lhs < rhs or rel == "=" and lhs != rhs:
            return False
    return True
