"""Imputations, the domination relations, simplex grids, and the descending chain."""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Optional, Sequence

from .errors import NotNormalized
from .game import Coalition, Game, canonical_game, coalition, is_normalized, members
from .rational import as_rational


def is_feasible(x: Sequence, g: Game) -> bool:
    _check_len(x, g)
    return sum(x, Fraction(0)) <= g.v(g.grand)


def is_imputation(x: Sequence, g: Game) -> bool:
    """Efficient and individually rational."""
    _check_len(x, g)
    if sum(x, Fraction(0)) != g.v(g.grand):
        return False
    return all(xk >= vk for xk, vk in zip(x, g.singletons()))


def _check_len(x, g):
    if len(x) != g.m:
        raise ValueError(f"payoff vector has length {len(x)}, game has {g.m} players")


def dominates_via(x: Sequence, y: Sequence, C: Coalition, g: Game) -> bool:
    """``x`` dominates ``y`` via ``C``.

    Every member of ``C`` strictly prefers ``x`` and ``C`` can pay out its
    share of ``x`` on its own. For ``C`` empty both conditions hold
    vacuously, so the relation through the empty coalition is total.
    """
    total = Fraction(0)
    k = 0
    c = C
    while c:
        if c & 1:
            if not x[k] > y[k]:
                return False
            total += x[k]
        c >>= 1
        k += 1
    return total <= g.v(C)


def dominates(x: Sequence, y: Sequence, g: Game) -> Optional[Coalition]:
    """Smallest nonempty coalition (by bitmask) through which ``x`` dominates ``y``."""
    better = 0
    for k in range(g.m):
        if x[k] > y[k]:
            better |= 1 << k
    if not better:
        return None
    for C in range(1, 1 << g.m):
        if C & ~better:
            continue
        if sum((x[k - 1] for k in members(C)), Fraction(0)) <= g.v(C):
            return C
    return None


@dataclass(frozen=True)
class GridSpec:
    denominator: int

    def __post_init__(self):
        if not isinstance(self.denominator, int) or self.denominator < 1:
            raise ValueError(f"grid denominator must be a positive integer, got {self.denominator!r}")


def grid_size(m: int, d: int) -> int:
    return comb(d + m - 1, m - 1)


def iter_grid_numerators(m: int, d: int) -> Iterator[tuple]:
    """Integer vectors of length ``m`` summing to ``d``, lexicographically descending.

    Descending order puts ``(d, 0, ..., 0)`` first, matching the usual listing
    of simplex vertices ``(1,0,0), (0,1,0), (0,0,1)``.
    """
    if m == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in iter_grid_numerators(m - 1, d - first):
            yield (first,) + rest


def enumerate_grid(g: Game, spec: GridSpec) -> list:
    """All imputations of a normalized game with components in ``{0, 1/d, ..., 1}``."""
    if not is_normalized(g):
        raise NotNormalized("grid enumeration needs a (0,1)-normalized game")
    d = spec.denominator
    return [tuple(Fraction(n, d) for n in nums) for nums in iter_grid_numerators(g.m, d)]


@lru_cache(maxsize=None)
def half_game() -> Game:
    """Canonical game with every pair worth 1/2."""
    return canonical_game(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))


def counterexample_point(i: int) -> tuple:
    """``i``-th point of the infinite descending chain in the all-pairs-1/2 game.

    Players 1 and 2 each get ``1/4 - 1/(2(i+2))`` and player 3 the rest.
    """
    if i < 0:
        raise ValueError("chain index must be a natural number")
    t = Fraction(1, i + 2)
    low = Fraction(1, 4) - t / 2
    return (low, low, Fraction(1, 2) + t)


def verify_descending_chain(n: int) -> bool:
    """Check that point ``i+1`` dominates point ``i`` via {1,2} for all ``i < n``."""
    if n < 0:
        raise ValueError("chain length must be non-negative")
    g = half_game()
    C = coalition(1, 2)
    prev = counterexample_point(0)
    for i in range(n):
        nxt = counterexample_point(i + 1)
        if not dominates_via(nxt, prev, C, g):
            return False
        prev = nxt
    return True


def as_payoff(xs) -> tuple:
    return tuple(as_rational(x) for x in xs)


def imputation_extreme_points(g: Game) -> list:
    """Vertices of the imputation simplex: player k takes all the surplus."""
    single = g.singletons()
    surplus = g.v(g.grand) - sum(single)
    return [tuple(s + (surplus if i == k else 0) for i, s in enumerate(single)) for k in range(g.m)]


def proper_coalitions(m: int):
    """Nonempty proper coalitions in ascending bitmask order."""
    return range(1, (1 << m) - 1)


__all__ = [
    "GridSpec", "as_payoff", "counterexample_point", "dominates", "dominates_via",
    "enumerate_grid", "grid_size", "half_game", "imputation_extreme_points",
    "is_feasible", "is_imputation", "iter_grid_numerators", "proper_coalitions",
    "verify_descending_chain",
]
