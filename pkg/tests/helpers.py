import random
from fractions import Fraction

from hypothesis import strategies as st

from coopaf.af import Framework
from coopaf.game import Game, canonical_game, normalize_01, popcount

HALF = Fraction(1, 2)


def random_fraction(rng, lo=0, hi=10, max_den=6):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_game(rng, m, lo=-5, hi=10):
    """Unstructured game; anything goes except v(empty) = 0."""
    return Game(m, (Fraction(0),) + tuple(random_fraction(rng, lo, hi) for _ in range(1, 1 << m)))


def random_superadditive_game(rng, m, max_den=6, essential=True):
    """Non-negative super-additive game built bottom-up over coalition sizes."""
    vals = [Fraction(0)] * (1 << m)
    for c in sorted(range(1, 1 << m), key=popcount):
        best = Fraction(0)
        sub = (c - 1) & c
        while sub:
            best = max(best, vals[sub] + vals[c ^ sub])
            sub = (sub - 1) & c
        vals[c] = best + random_fraction(rng, 0, 3, max_den) * rng.choice([0, 1, 1])
    grand = (1 << m) - 1
    if essential and vals[grand] == sum(vals[1 << i] for i in range(m)):
        vals[grand] += 1
    return Game(m, tuple(vals))


def random_normalized_game(rng, m, max_den=6):
    return normalize_01(random_superadditive_game(rng, m, max_den)).game


def random_imputation(rng, g, max_den=12):
    """Random rational point of the imputation set of ``g``."""
    weights = [rng.randint(0, max_den) for _ in range(g.m)]
    if not any(weights):
        weights[rng.randrange(g.m)] = 1
    total = sum(weights)
    single = g.singletons()
    surplus = g.v(g.grand) - sum(single)
    return tuple(s + surplus * Fraction(w, total) for s, w in zip(single, weights))


def random_framework(rng, n, density=None, self_attacks=True):
    p = rng.uniform(0.05, 0.5) if density is None else density
    pairs = [(a, b) for a in range(n) for b in range(n)
             if (self_attacks or a != b) and rng.random() < p]
    return Framework.from_attacks(n, pairs)


def random_acyclic_framework(rng, n):
    order = list(range(n))
    rng.shuffle(order)
    p = rng.uniform(0.05, 0.6)
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Framework.from_attacks(n, pairs)


small_fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


@st.composite
def games(draw, min_m=1, max_m=4):
    m = draw(st.integers(min_m, max_m))
    vals = draw(st.lists(small_fractions, min_size=(1 << m) - 1, max_size=(1 << m) - 1))
    return Game(m, (Fraction(0),) + tuple(vals))


@st.composite
def superadditive_games(draw, min_m=2, max_m=4):
    seed = draw(st.integers(0, 2**32 - 1))
    m = draw(st.integers(min_m, max_m))
    return random_superadditive_game(random.Random(seed), m)


@st.composite
def frameworks(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = draw(st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))),
                         max_size=3 * n)) if n else set()
    return Framework.from_attacks(n, pairs)


# filled by tests/test_acceptance.py, printed by the terminal-summary hook
ACCEPTANCE_LINES = []
