"""Core membership, core non-emptiness, balancedness and core vertices.

Everything is decided exactly: LPs go through :func:`coopaf.lp.solve_lp`,
vertex enumeration solves each candidate tight system by exact elimination.
"""
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from .config import CORE_VERTEX_MAX_PLAYERS
from .errors import ConstructionFailed, NotNormalized, TooLarge
from .game import Coalition, Game, is_normalized, members, popcount
from .imputation import dominates_via, is_imputation, proper_coalitions
from .lp import OPTIMAL, LPProblem, LPResult, solve_lp


def _coalition_sum(x: Sequence, C: Coalition) -> Fraction:
    return sum((x[k - 1] for k in members(C)), Fraction(0))


def _indicator(C: Coalition, m: int) -> tuple:
    return tuple(1 if C >> k & 1 else 0 for k in range(m))


def in_core(x: Sequence, g: Game) -> bool:
    """``sum(x over C) >= v(C)`` for every coalition ``C``."""
    return all(_coalition_sum(x, C) >= g.v(C) for C in range(1, 1 << g.m))


def blocking_coalition(x: Sequence, g: Game) -> Optional[Coalition]:
    """Smallest proper nonempty coalition that receives less than its value."""
    for C in proper_coalitions(g.m):
        if _coalition_sum(x, C) < g.v(C):
            return C
    return None


def build_dominator(x: Sequence, C: Coalition, g: Game) -> tuple:
    """An imputation dominating ``x`` via a blocking coalition ``C``.

    Members of ``C`` each gain ``(v(C) - x(C)) / (|C| + 1)``; whatever is left
    of ``v(N)`` goes to the others, each first receiving their singleton
    value and then an equal share of the remainder.
    """
    m = g.m
    eps = (g.v(C) - _coalition_sum(x, C)) / (popcount(C) + 1)
    y = [Fraction(0)] * m
    for k in members(C):
        y[k - 1] = x[k - 1] + eps
    outside = [k for k in range(1, m + 1) if not C >> (k - 1) & 1]
    left = g.v(g.grand) - sum(y, Fraction(0)) - sum((g.singleton(k) for k in outside), Fraction(0))
    share = left / len(outside)
    for k in outside:
        y[k - 1] = g.singleton(k) + share
    return tuple(y)


def is_dominated_exact(x: Sequence, g: Game) -> Optional[tuple]:
    """``(C, y)`` with ``y`` dominating ``x`` via ``C`` over all imputations, or None.

    The answer is decided on the continuum: ``x`` is dominated exactly when
    some proper coalition is paid strictly less than its value.
    """
    if not is_normalized(g):
        raise NotNormalized("exact undominatedness is decided on (0,1)-normalized games")
    C = blocking_coalition(x, g)
    if C is None:
        return None
    y = build_dominator(x, C, g)
    if not (is_imputation(y, g) and dominates_via(y, x, C, g)):
        raise ConstructionFailed(f"built {y} does not dominate {x} via {members(C)}")
    return C, y


class CoreStatus(NamedTuple):
    nonempty: bool
    witness: Optional[tuple]


def core_lp(g: Game) -> LPProblem:
    """Minimize total payout subject to every proper coalition being paid its value."""
    m = g.m
    rows = [(_indicator(C, m), ">=", g.v(C)) for C in proper_coalitions(m) if popcount(C) > 1]
    return LPProblem(objective=(1,) * m, constraints=tuple(rows), sense="min",
                     lower_bounds=g.singletons())


def core_nonempty(g: Game) -> CoreStatus:
    res = solve_lp(core_lp(g))
    if res.status != OPTIMAL or res.optimum > g.v(g.grand):
        return CoreStatus(False, None)
    x = list(res.witness)
    # Raising payoffs never breaks a lower-bound inequality.
    x[0] += g.v(g.grand) - res.optimum
    return CoreStatus(True, tuple(x))


def balanced_lp(g: Game) -> LPProblem:
    """Maximize ``sum f(S) v(S)`` over balanced weights on nonempty coalitions."""
    m = g.m
    coalitions = range(1, 1 << m)
    rows = []
    for k in range(m):
        rows.append((tuple(1 if S >> k & 1 else 0 for S in coalitions), "=", 1))
    return LPProblem(objective=tuple(g.v(S) for S in coalitions), constraints=tuple(rows), sense="max")


class BalanceCertificate(NamedTuple):
    balanced: bool
    value: Fraction
    weights: dict  # coalition mask -> weight, nonzero entries only


def balance_certificate(g: Game) -> BalanceCertificate:
    res: LPResult = solve_lp(balanced_lp(g))
    # Weight 1 on N alone is balanced, so the LP is always feasible and bounded.
    assert res.status == OPTIMAL
    weights = {S: w for S, w in zip(range(1, 1 << g.m), res.witness) if w}
    return BalanceCertificate(res.optimum <= g.v(g.grand), res.optimum, weights)


def is_balanced(g: Game) -> bool:
    return balance_certificate(g).balanced


def is_balanced_function(weights: dict, m: int) -> bool:
    """Every player's coalitions carry total weight exactly 1, all weights in [0,1]."""
    if any(not 0 <= w <= 1 for w in weights.values()):
        return False
    return all(sum((w for S, w in weights.items() if S >> k & 1), Fraction(0)) == 1 for k in range(m))


def supercore_nonempty(g: Game) -> bool:
    """The supercore is empty exactly when the core is, i.e. when the game is unbalanced."""
    return is_balanced(g)


def _solve_square(A: list, b: list) -> Optional[list]:
    """Unique solution of ``A x = b`` by exact Gauss-Jordan elimination, or None."""
    n = len(A)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [a / p for a in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [row[n] for row in M]


def core_vertices(g: Game, max_players: int = CORE_VERTEX_MAX_PLAYERS) -> list:
    """Exact vertices of the core polytope, sorted lexicographically.

    Every vertex is the unique solution of efficiency plus ``m - 1`` tight
    coalition inequalities, so all such tight sets are tried.
    """
    m = g.m
    if m > max_players:
        raise TooLarge(f"vertex enumeration capped at {max_players} players, game has {m}")
    vN = g.v(g.grand)
    if m == 1:
        return [(vN,)] if in_core((vN,), g) else []
    found = set()
    ones = [Fraction(1)] * m
    rows = {C: [Fraction(C >> k & 1) for k in range(m)] for C in proper_coalitions(m)}
    for tight in combinations(proper_coalitions(m), m - 1):
        sol = _solve_square([ones] + [rows[C] for C in tight], [vN] + [g.v(C) for C in tight])
        if sol is not None and in_core(sol, g):
            found.add(tuple(sol))
    return sorted(found)
