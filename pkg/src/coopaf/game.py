"""Transferable-utility games in normal form.

Players are numbered ``1..m``; a coalition is an ``int`` bitmask where
player ``k`` is bit ``k - 1``. A :class:`Game` stores the dense table of all
``2**m`` coalition values as Fractions, indexed by bitmask.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .config import MAX_PLAYERS
from .errors import InessentialGame, InvalidGame, WrongPlayerCount
from .rational import as_rational

Coalition = int


def coalition(*players: int) -> Coalition:
    """Bitmask of the given 1-based players."""
    mask = 0
    for k in players:
        if k < 1:
            raise ValueError(f"players are numbered from 1, got {k}")
        mask |= 1 << (k - 1)
    return mask


def members(mask: Coalition) -> tuple:
    """1-based players in ``mask``, ascending."""
    out = []
    k = 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int):
    """All submasks of ``mask`` including 0 and ``mask`` itself, descending."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Game:
    m: int
    values: tuple

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidGame(f"player count must be >= 1, got {self.m!r}")
        if self.m > MAX_PLAYERS:
            raise InvalidGame(f"player count {self.m} exceeds cap {MAX_PLAYERS}")
        vals = tuple(as_rational(v) for v in self.values)
        if len(vals) != 1 << self.m:
            raise InvalidGame(f"expected {1 << self.m} coalition values, got {len(vals)}")
        if vals[0] != 0:
            raise InvalidGame("value of the empty coalition must be 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, m: int, v: Callable[[Coalition], object]) -> "Game":
        return cls(m, tuple(Fraction(0) if c == 0 else as_rational(v(c)) for c in range(1 << m)))

    @classmethod
    def from_mapping(cls, m: int, table: dict) -> "Game":
        """Build from ``{coalition_mask_or_player_tuple: value}``.

        Every nonempty coalition must be present; the empty one may be omitted.
        """
        vals = [None] * (1 << m)
        vals[0] = Fraction(0)
        for key, value in table.items():
            mask = key if isinstance(key, int) else coalition(*key)
            if mask >> m:
                raise InvalidGame(f"coalition {members(mask)} has players outside 1..{m}")
            vals[mask] = as_rational(value)
        missing = [members(c) for c, v in enumerate(vals) if v is None]
        if missing:
            raise InvalidGame(f"missing values for coalitions {missing[:5]}")
        return cls(m, tuple(vals))

    @property
    def grand(self) -> Coalition:
        return (1 << self.m) - 1

    def v(self, mask: Coalition) -> Fraction:
        return self.values[mask]

    def singleton(self, k: int) -> Fraction:
        """Value of the 1-based player ``k`` alone."""
        return self.values[1 << (k - 1)]

    def singletons(self) -> tuple:
        return tuple(self.values[1 << i] for i in range(self.m))


def check_nonnegative(g: Game) -> bool:
    return all(v >= 0 for v in g.values)


def check_monotonic(g: Game) -> bool:
    # Adding one player at a time suffices: nested pairs are chains of covers.
    vals = g.values
    for c in range(1 << g.m):
        for i in range(g.m):
            bit = 1 << i
            if not c & bit and vals[c] > vals[c | bit]:
                return False
    return True


def check_superadditive(g: Game) -> bool:
    vals = g.values
    for c in range(1, 1 << g.m):
        vc = vals[c]
        low = c & -c
        # Only splits with the lowest member on the left; the relation is symmetric.
        for a in submasks(c):
            if a & low and a != c and vc < vals[a] + vals[c ^ a]:
                return False
    return True


def check_constant_sum(g: Game) -> bool:
    vals, grand = g.values, g.grand
    return all(vals[c] + vals[grand ^ c] == vals[grand] for c in range(1 << g.m))


def check_essential(g: Game) -> bool:
    return sum(g.singletons()) != g.v(g.grand)


def check_convex(g: Game) -> bool:
    """Supermodularity, checked through increasing marginal contributions.

    ``v(S+i+j) - v(S+i) >= v(S+j) - v(S)`` for every ``S`` and ``i, j`` outside
    ``S`` is equivalent to the pairwise condition over all coalitions.
    """
    vals = g.values
    m = g.m
    for s in range(1 << m):
        for i in range(m):
            bi = 1 << i
            if s & bi:
                continue
            for j in range(i + 1, m):
                bj = 1 << j
                if s & bj:
                    continue
                if vals[s | bi | bj] - vals[s | bi] < vals[s | bj] - vals[s]:
                    return False
    return True


class Normalization(NamedTuple):
    game: Game
    K: Fraction
    shift: tuple


def apply_equivalence(g: Game, K, shift: Sequence) -> Game:
    """The game ``C -> K*v(C) + sum(shift[k] for k in C)``."""
    K = as_rational(K)
    if K <= 0:
        raise ValueError("scale K must be positive")
    shift = tuple(as_rational(c) for c in shift)
    if len(shift) != g.m:
        raise ValueError("shift length must equal the player count")
    shift_sum = [Fraction(0)] * (1 << g.m)
    for c in range(1, 1 << g.m):
        low = c & -c
        shift_sum[c] = shift_sum[c ^ low] + shift[low.bit_length() - 1]
    return Game(g.m, tuple(K * v + s for v, s in zip(g.values, shift_sum)))

def normalize_01(g: Game) -> Normalization:
    excess = g.v(g.grand) - sum(g.singletons())
    if excess == 0:
        raise InessentialGame("sum of singleton values equals v(N); game is inessential")
    K = 1 / excess
    if K <= 0:
        # v(N) below the singleton sum: no positive scale reaches v'(N) = 1.
        raise InvalidGame("v(N) is below the sum of singleton values; (0,1)-normalization needs K > 0")
    shift = tuple(-K * s for s in g.singletons())
    return Normalization(apply_equivalence(g, K, shift), K, shift)


def is_normalized(g: Game) -> bool:
    return g.v(g.grand) == 1 and all(s == 0 for s in g.singletons())


def _excess(g: Game) -> list:
    single = g.singletons()
    return [g.values[c] - sum((single[k - 1] for k in members(c)), Fraction(0)) for c in range(1 << g.m)]


def _solve_equivalence(g: Game, g2: Game) -> Optional[tuple]:
    # Singletons pin shift_k = v2({k}) - K v({k}); what remains is one scalar K.
    e1, e2 = _excess(g), _excess(g2)
    K = None
    for a, b in zip(e1, e2):
        if a == 0:
            if b != 0:
                return None
            continue
        ratio = b / a
        if K is None:
            K = ratio
        elif ratio != K:
            return None
    if K is None:
        K = Fraction(1)
    if K <= 0:
        return None
    shift = tuple(b - K * a for a, b in zip(g.singletons(), g2.singletons()))
    return K, shift


def strategically_equivalent(g: Game, g2: Game) -> Optional[tuple]:
    """Witness ``(K, shift)`` with ``v2(C) = K*v(C) + sum(shift over C)``, or None."""
    if g.m != g2.m:
        raise WrongPlayerCount("games have different player counts")
    ess1, ess2 = check_essential(g), check_essential(g2)
    if ess1 != ess2:
        return None
    if ess1:
        try:
            n1, n2 = normalize_01(g), normalize_01(g2)
        except InvalidGame:
            return _solve_equivalence(g, g2)
        if n1.game.values != n2.game.values:
            return None
        K = n1.K / n2.K
        shift = tuple((s1 - s2) / n2.K for s1, s2 in zip(n1.shift, n2.shift))
        return K, shift
    return _solve_equivalence(g, g2)


@dataclass(frozen=True)
class CanonicalThreePlayer:
    """Normalized 3-player game with pair values ``a={1,2}, b={2,3}, c={3,1}``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            q = as_rational(getattr(self, name))
            if not 0 <= q <= 1:
                raise InvalidGame(f"canonical parameter {name}={q} outside [0, 1]")
            object.__setattr__(self, name, q)

    def game(self) -> Game:
        return canonical_game(self.a, self.b, self.c)


def canonical_game(a, b, c) -> Game:
    """The (0,1)-normalized 3-player game with the given pair values."""
    return Game.from_mapping(3, {
        (1,): 0, (2,): 0, (3,): 0,
        (1, 2): a, (2, 3): b, (1, 3): c,
        (1, 2, 3): 1,
    })


def to_canonical_three_player(g: Game) -> CanonicalThreePlayer:
    if g.m != 3:
        raise WrongPlayerCount(f"canonical form needs 3 players, got {g.m}")
    n = normalize_01(g).game
    return CanonicalThreePlayer(n.v(coalition(1, 2)), n.v(coalition(2, 3)), n.v(coalition(1, 3)))


def canonical_is_convex(p: CanonicalThreePlayer) -> bool:
    return p.a + p.b <= 1 and p.b + p.c <= 1 and p.c + p.a <= 1


def additive_game(m: int, weights: Optional[Iterable] = None) -> Game:
    w = [Fraction(1)] * m if weights is None else [as_rational(x) for x in weights]
    return Game.from_function(m, lambda c: sum((w[k - 1] for k in members(c)), Fraction(0)))


def zero_game(m: int) -> Game:
    return Game(m, (Fraction(0),) * (1 << m))


def running_game() -> Game:
    """Three players; singletons earn 0, pairs 10, all three together 20."""
    return Game.from_function(3, lambda c: {1: 0, 2: 10, 3: 20}[popcount(c)])
