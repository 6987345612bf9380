import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from coopaf.af import (
    Framework, arg_members, argset, attacked_by, complete_extensions, defence,
    exhaustive_semantics, grounded, has_all_glbs, has_directed_lubs, is_admissible,
    is_conflict_free, is_self_defending, is_well_founded, neutrality, parse_af_text,
    preferred_extensions, stable_extensions, to_af_text, to_dot, unattacked,
)
from coopaf.errors import ParseError, TooLarge
from helpers import frameworks, random_acyclic_framework, random_framework

A, B, C = 1, 2, 4  # bitmasks of arguments 0, 1, 2

CHAIN = Framework.from_attacks(3, [(0, 1), (1, 2)])
CYCLE = Framework.from_attacks(3, [(0, 1), (1, 2), (2, 0)])
MUTUAL = Framework.from_attacks(2, [(0, 1), (1, 0)])
SELF = Framework.from_attacks(1, [(0, 0)])
FREE2 = Framework.from_attacks(2, [])


def naive(f):
    """Definitions applied to every subset, in plain Python sets."""
    args = range(f.n_args)
    att = {(a, b) for a in args for b in args if f.targets[a] >> b & 1}
    subsets = [frozenset(s) for r in range(f.n_args + 1) for s in combinations(args, r)]

    def plus(S):
        return {b for a, b in att if a in S}

    def n(S):
        return frozenset(args) - plus(S)

    def d(S):
        P = plus(S)
        return frozenset(a for a in args if all(x in P for x, y in att if y == a))

    complete = [S for S in subsets if S <= n(S) and S <= d(S) and d(S) <= S]
    preferred = [S for S in complete if not any(S < T for T in complete)]
    stable = [S for S in subsets if n(S) == S]
    ground = [S for S in complete if all(S <= T for T in complete)]
    to_mask = lambda S: argset(S)
    return (to_mask(ground[0]), {to_mask(S) for S in complete},
            {to_mask(S) for S in preferred}, {to_mask(S) for S in stable})


class TestOperators:
    def test_attacked_by(self):
        assert attacked_by(A, CHAIN) == B
        assert attacked_by(0, CHAIN) == 0
        assert attacked_by(A | B, CYCLE) == B | C

    def test_neutrality(self):
        assert neutrality(A, CHAIN) == A | C
        assert neutrality(0, CHAIN) == A | B | C
        assert neutrality(A, CYCLE) == A | C

    def test_defence(self):
        assert defence(A, CHAIN) == A | C
        assert defence(0, CHAIN) == unattacked(CHAIN) == A
        assert defence(0, CYCLE) == 0

    def test_admissibility(self):
        assert is_conflict_free(A | C, CHAIN)
        assert is_self_defending(A | C, CHAIN)
        assert is_admissible(A | C, CHAIN)
        assert is_conflict_free(0, CHAIN) and is_self_defending(0, CHAIN) and is_admissible(0, CHAIN)
        assert not is_conflict_free(A | B, CHAIN)

    @settings(max_examples=200, deadline=None)
    @given(frameworks())
    def test_defence_is_neutrality_squared(self, f):
        rng = random.Random(f.n_args)
        for _ in range(10):
            S = rng.getrandbits(f.n_args) if f.n_args else 0
            assert defence(S, f) == neutrality(neutrality(S, f), f)


class TestSemantics:
    def test_grounded(self):
        assert grounded(CHAIN) == A | C
        assert grounded(FREE2) == A | B
        assert grounded(CYCLE) == 0

    def test_complete(self):
        assert complete_extensions(CHAIN) == [A | C]
        assert complete_extensions(MUTUAL) == [0, A, B]
        assert complete_extensions(FREE2) == [A | B]

    def test_preferred(self):
        assert preferred_extensions(MUTUAL) == [A, B]
        assert preferred_extensions(CYCLE) == [0]
        assert preferred_extensions(FREE2) == [A | B]

    def test_stable(self):
        assert stable_extensions(MUTUAL) == [A, B]
        assert stable_extensions(CYCLE) == []
        assert stable_extensions(SELF) == []

    def test_well_founded(self):
        assert is_well_founded(CHAIN)
        assert not is_well_founded(CYCLE)
        assert not is_well_founded(SELF)
        assert is_well_founded(Framework(0, ()))

    def test_canonical_order(self):
        f = Framework.from_attacks(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
        assert [arg_members(S) for S in complete_extensions(f)] == [
            (), (0,), (1,), (2,), (3,), (0, 2), (0, 3), (1, 2), (1, 3)]

    def test_cap(self):
        with pytest.raises(TooLarge):
            complete_extensions(Framework(21, (0,) * 21))
        with pytest.raises(TooLarge):
            exhaustive_semantics(Framework(5, (0,) * 5), cap=4)

    def test_labelling_matches_naive_enumeration(self):
        rng = random.Random(3)
        for _ in range(150):
            f = random_framework(rng, rng.randint(0, 8))
            g, comp, pref, stab = naive(f)
            assert grounded(f) == g
            assert set(complete_extensions(f)) == comp
            assert set(preferred_extensions(f)) == pref
            assert set(stable_extensions(f)) == stab
            ex = exhaustive_semantics(f)
            assert ex.grounded == g and set(ex.complete) == comp
            assert set(ex.preferred) == pref and set(ex.stable) == stab

    def test_family_relations(self):
        rng = random.Random(4)
        for _ in range(100):
            f = random_framework(rng, rng.randint(1, 10))
            comp = complete_extensions(f)
            pref = preferred_extensions(f)
            stab = stable_extensions(f)
            inter = f.full
            for S in comp:
                inter &= S
            assert grounded(f) == inter and grounded(f) in comp
            assert set(stab) <= set(pref) <= set(comp)
            assert pref
            assert unattacked(f) & ~grounded(f) == 0

    def test_well_founded_collapse(self):
        rng = random.Random(5)
        for _ in range(80):
            f = random_acyclic_framework(rng, rng.randint(1, 12))
            assert is_well_founded(f)
            G = grounded(f)
            assert complete_extensions(f) == preferred_extensions(f) == stable_extensions(f) == [G]


def glbs_brute_force(family):
    fam = list(family)
    for r in range(1, len(fam) + 1):
        for sub in combinations(fam, r):
            lower = [E for E in fam if all(E & ~S == 0 for S in sub)]
            if not any(all(L & ~E == 0 for L in lower) for E in lower):
                return False
    return True


class TestLattice:
    def test_closure_check_matches_subfamily_brute_force(self):
        rng = random.Random(6)
        seen_false = 0
        for _ in range(300):
            n = rng.randint(1, 5)
            fam = {rng.getrandbits(n) for _ in range(rng.randint(1, 7))}
            expected = glbs_brute_force(fam)
            assert has_all_glbs(fam) == expected
            seen_false += not expected
        assert seen_false > 0

    def test_complete_family_is_semilattice(self):
        rng = random.Random(8)
        for _ in range(100):
            f = random_framework(rng, rng.randint(1, 12))
            comp = complete_extensions(f)
            assert has_all_glbs(comp)
            if len(comp) <= 10:
                assert glbs_brute_force(comp)
                assert has_directed_lubs(comp)

    def test_directed_lubs_small(self):
        # the pair {a},{b} is not directed, so only singletons need lubs
        assert has_directed_lubs([A, B])
        assert has_directed_lubs([0, A, A | B])


class TestFormats:
    def test_roundtrip(self):
        rng = random.Random(9)
        for _ in range(30):
            f = random_framework(rng, rng.randint(0, 9))
            assert parse_af_text(to_af_text(f)) == f

    def test_text(self):
        assert to_af_text(CHAIN) == "p af 3\natt 1 2\natt 2 3\n"
        f = parse_af_text("# comment\np af 2\n\natt 1 2\natt 2 1\n")
        assert f == MUTUAL

    @pytest.mark.parametrize("text", [
        "", "att 1 2\n", "p af x\n", "p af 2\natt 1 3\n", "p af 2\nattack 1 2\n", "p af 2\natt 1\n",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_af_text(text)

    def test_dot(self):
        dot = to_dot(CHAIN, highlight=A)
        assert dot.startswith("digraph af {")
        assert "a1 -> a2;" in dot and "a2 -> a3;" in dot
        assert "fillcolor" in dot.splitlines()[1]
