import random
from fractions import Fraction
from math import comb

import pytest

from coopaf.errors import NotNormalized
from coopaf.game import apply_equivalence, canonical_game, coalition, running_game
from coopaf.imputation import (
    GridSpec, counterexample_point, dominates, dominates_via, enumerate_grid, grid_size,
    half_game, is_feasible, is_imputation, verify_descending_chain,
)
from helpers import random_imputation, random_normalized_game, random_superadditive_game

F = Fraction


def test_feasibility():
    g = running_game()
    assert is_feasible((5, 5, 5), g)
    assert is_feasible((20, 0, 0), g)
    assert not is_feasible((20, 1, 0), g)


def test_imputations():
    g = running_game()
    assert is_imputation((10, 5, 5), g)
    assert not is_imputation((5, 5, 5), g)
    assert is_imputation((1, 0, 0), half_game())
    assert not is_imputation((F(3, 2), F(-1, 2), 0), half_game())


def test_length_mismatch():
    with pytest.raises(ValueError):
        is_imputation((1, 0), half_game())


class TestDomination:
    def test_running_game_example(self):
        g = running_game()
        x, y = (12, 4, 4), (20, 0, 0)
        assert dominates_via(x, y, coalition(2, 3), g)
        assert dominates(x, y, g) == coalition(2, 3)

    def test_grand_and_singletons_never_dominate(self, rng):
        g = running_game()
        for _ in range(200):
            x, y = random_imputation(rng, g), random_imputation(rng, g)
            assert not dominates_via(x, y, g.grand, g)
            for k in (1, 2, 3):
                assert not dominates_via(x, y, coalition(k), g)

    def test_empty_coalition_is_total(self, rng):
        g = half_game()
        for _ in range(50):
            x, y = random_imputation(rng, g), random_imputation(rng, g)
            assert dominates_via(x, y, 0, g)
            assert dominates(x, y, g) != 0

    def test_irreflexive(self, rng):
        for _ in range(100):
            g = random_normalized_game(rng, rng.randint(2, 4))
            x = random_imputation(rng, g)
            assert dominates(x, x, g) is None

    def test_core_point_is_undominated_by_sample(self):
        g = half_game()
        x, y = (F(1, 3), F(1, 3), F(1, 3)), (F(1, 2), F(1, 2), 0)
        assert dominates(x, y, g) is None
        # oracle: all 8 coalitions
        assert not any(dominates_via(x, y, C, g) for C in range(1, 8))

    def test_smallest_witness(self):
        g = canonical_game(F(1, 2), F(1, 2), F(1, 2))
        x, y = (F(1, 4), F(1, 4), F(1, 2)), (0, 0, 1)
        assert dominates(x, y, g) == coalition(1, 2)

    def test_per_coalition_relation_is_asymmetric_and_transitive(self):
        g = half_game()
        pts = enumerate_grid(g, GridSpec(6))
        for C in range(1, 8):
            rel = {(i, j) for i, x in enumerate(pts) for j, y in enumerate(pts) if dominates_via(x, y, C, g)}
            assert all((j, i) not in rel for i, j in rel)
            for i, j in rel:
                for j2, k in rel:
                    if j2 == j:
                        assert (i, k) in rel

    def test_strategic_equivalence_is_isomorphism(self, rng):
        for _ in range(60):
            m = rng.randint(2, 4)
            g = random_superadditive_game(rng, m)
            K = F(rng.randint(1, 7), rng.randint(1, 4))
            shift = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(m)]
            h = apply_equivalence(g, K, shift)
            f = lambda x: tuple(K * xk + ck for xk, ck in zip(x, shift))
            for _ in range(10):
                x, y = random_imputation(rng, g), random_imputation(rng, g)
                assert is_imputation(f(x), h)
                assert dominates(x, y, g) == dominates(f(x), f(y), h)


class TestGrid:
    def test_vertices(self):
        pts = enumerate_grid(half_game(), GridSpec(1))
        assert pts == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    @pytest.mark.parametrize("d,count", [(1, 3), (2, 6), (4, 15)])
    def test_counts(self, d, count):
        pts = enumerate_grid(half_game(), GridSpec(d))
        assert len(pts) == count == grid_size(3, d)

    def test_counts_match_stars_and_bars(self):
        for m in range(2, 5):
            g = random_normalized_game(random.Random(m), m)
            for d in range(1, 7):
                pts = enumerate_grid(g, GridSpec(d))
                assert len(pts) == len(set(pts)) == comb(d + m - 1, m - 1)
                assert all(is_imputation(p, g) for p in pts)
                assert pts == sorted(pts, reverse=True)

    def test_requires_normalized(self):
        with pytest.raises(NotNormalized):
            enumerate_grid(running_game(), GridSpec(2))

    def test_bad_denominator(self):
        with pytest.raises(ValueError):
            GridSpec(0)


class TestChain:
    @pytest.mark.parametrize("i,expected", [
        (0, (0, 0, 1)),
        (1, (F(1, 12), F(1, 12), F(5, 6))),
        (2, (F(1, 8), F(1, 8), F(3, 4))),
    ])
    def test_points(self, i, expected):
        assert counterexample_point(i) == expected

    def test_points_are_imputations(self):
        g = half_game()
        assert all(is_imputation(counterexample_point(i), g) for i in range(500))

    def test_single_step(self):
        g = half_game()
        x1, x0 = counterexample_point(1), counterexample_point(0)
        assert x1[0] > x0[0] and x1[1] > x0[1] and x1[0] + x1[1] == F(1, 6) <= F(1, 2)
        assert dominates_via(x1, x0, coalition(1, 2), g)
        assert verify_descending_chain(1)

    def test_lengths(self):
        assert verify_descending_chain(0)
        assert verify_descending_chain(10000)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            verify_descending_chain(-1)
