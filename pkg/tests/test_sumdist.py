import random
from fractions import Fraction as F

import numpy as np
import pytest

from anongames import (AnonymousGame, MixedProfile, expected_utility,
                       random_profile, regret_profile, sum_distribution,
                       tv_distance)
from anongames.tvlab import poisson_binomial_pmf


def anti_coordination(n=2):
    """u^p_i(x) = 1 iff some other player plays the other strategy (k=2)."""
    # partitions of n-1 players over 2 strategies, lex order: (0,n-1)..(n-1,0)
    table = []
    for p in range(n):
        per_strategy = []
        for i in range(2):
            row = []
            for x1 in range(n):          # partition (x1, n-1-x1) has rank x1
                other = 1 - i
                count_other = x1 if other == 0 else (n - 1 - x1)
                row.append(F(1) if count_other > 0 else F(0))
            per_strategy.append(tuple(row))
        table.append(tuple(per_strategy))
    return AnonymousGame(n=n, k=2, utilities=tuple(table))


def constant_game(n, k, c):
    from anongames.games import partition_count
    size = partition_count(n - 1, k)
    row = tuple([F(c)] * size)
    return AnonymousGame(n=n, k=k, utilities=tuple(
        tuple(row for _ in range(k)) for _ in range(n)))


def test_single_vector():
    d = sum_distribution([(F(3, 10), F(7, 10))])
    assert d.as_dict() == {(0, 1): F(7, 10), (1, 0): F(3, 10)}


def test_two_fair_coins():
    d = sum_distribution([(F(1, 2), F(1, 2))] * 2)
    assert d.as_dict() == {(0, 2): F(1, 4), (1, 1): F(1, 2), (2, 0): F(1, 4)}


def test_empty_input_is_point_mass():
    d = sum_distribution([], k=3)
    assert d.as_dict() == {(0, 0, 0): F(1)}


def test_empty_input_requires_k():
    with pytest.raises(ValueError):
        sum_distribution([])


def test_rejects_bad_vectors():
    with pytest.raises(ValueError):
        sum_distribution([(F(1, 2), F(1, 3))])
    with pytest.raises(ValueError):
        sum_distribution([(F(3, 2), F(-1, 2))])


def test_masses_sum_to_one_exactly():
    for seed in range(10):
        prof = random_profile(5, 3, seed=seed)
        d = sum_distribution(prof.probs)
        assert sum(d.mass) == 1


def test_order_invariance():
    prof = random_profile(5, 3, seed=42)
    rows = list(prof.probs)
    d1 = sum_distribution(rows)
    rng = random.Random(0)
    for _ in range(3):
        rng.shuffle(rows)
        assert sum_distribution(rows).mass == d1.mass


def test_k2_marginal_matches_poisson_binomial():
    for seed in range(5):
        prof = random_profile(6, 2, seed=seed)
        d = sum_distribution(prof.probs)
        pb = poisson_binomial_pmf([row[0] for row in prof.probs])
        # partition (j, n-j) has rank j
        assert d.mass == pb


def test_monte_carlo_cross_check():
    prof = random_profile(4, 3, seed=17)
    d = sum_distribution(prof.probs)
    rng = np.random.default_rng(1234)
    trials = 100_000
    rows = [np.array([float(v) for v in r]) for r in prof.probs]
    counts = {}
    draws = [rng.choice(3, size=trials, p=r / r.sum()) for r in rows]
    for t in range(trials):
        part = [0, 0, 0]
        for d_i in draws:
            part[d_i[t]] += 1
        key = tuple(part)
        counts[key] = counts.get(key, 0) + 1
    for part, mass in d.as_dict().items():
        p = float(mass)
        got = counts.get(part, 0) / trials
        sigma = (p * (1 - p) / trials) ** 0.5
        assert abs(got - p) <= 3 * sigma + 1e-12, (part, got, p)


def test_float_mode_matches_exact_mode():
    prof = random_profile(6, 3, seed=21)
    rows_float = [[float(v) for v in r] for r in prof.probs]
    exact = sum_distribution(prof.probs, exact=True)
    approx = sum_distribution(rows_float, exact=False)
    assert max(abs(float(a) - b) for a, b in zip(exact.mass, approx.mass)) < 1e-12
    game = anti_coordination()
    e = expected_utility(game, 0, 0, [(F(3, 10), F(7, 10))], exact=True)
    f = expected_utility(game, 0, 0, [(0.3, 0.7)], exact=False)
    assert abs(float(e) - f) < 1e-12


def test_float_mode_input_tolerance():
    # float mode tolerates 1e-9 input drift; exact mode does not
    drifty = [(0.3 + 2e-10, 0.7)]
    d = sum_distribution(drifty, exact=False)
    assert abs(sum(d.mass) - 1.0) <= 1e-12
    with pytest.raises(ValueError):
        sum_distribution([(0.30000001, 0.7)], exact=False)
    with pytest.raises(ValueError):
        sum_distribution(drifty, exact=True)


def test_tv_basic_cases():
    d1 = sum_distribution([(F(1), F(0))])
    d2 = sum_distribution([(F(0), F(1))])
    assert tv_distance(d1, d1) == 0
    assert tv_distance(d1, d2) == 1
    a = sum_distribution([(F(3, 10), F(7, 10))])
    b = sum_distribution([(F(1, 2), F(1, 2))])
    assert tv_distance(a, b) == F(1, 5)


def test_tv_rejects_mismatched_lattices():
    a = sum_distribution([(F(1), F(0))])
    b = sum_distribution([(F(1), F(0))] * 2)
    with pytest.raises(ValueError):
        tv_distance(a, b)


def test_tv_symmetry_and_triangle():
    dists = [sum_distribution(random_profile(4, 3, seed=s).probs) for s in range(3)]
    a, b, c = dists
    assert tv_distance(a, b) == tv_distance(b, a)
    assert tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c)


def test_expected_utility_anti_coordination():
    game = anti_coordination()
    assert expected_utility(game, 0, 0, [(F(0), F(1))]) == 1
    assert expected_utility(game, 0, 0, [(F(1, 2), F(1, 2))]) == F(1, 2)


def test_expected_utility_constant_game():
    game = constant_game(3, 2, F(2, 5))
    for seed in range(3):
        prof = random_profile(2, 2, seed=seed)
        assert expected_utility(game, 0, 1, prof.probs) == F(2, 5)


def test_expected_utility_wrong_arity():
    game = anti_coordination()
    with pytest.raises(ValueError):
        expected_utility(game, 0, 0, [])


def test_regret_anti_coordination_mixed():
    game = anti_coordination()
    prof = MixedProfile(probs=((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))))
    report = regret_profile(game, prof)
    assert report.max_support_gap == 0
    assert report.max_approx_regret == 0
    assert report.is_epsilon_nash(0)


def test_regret_anti_coordination_pure_clash():
    game = anti_coordination()
    prof = MixedProfile(probs=((F(1), F(0)), (F(1), F(0))))
    report = regret_profile(game, prof)
    assert report.support_gap == (F(1), F(1))


def test_regret_constant_game():
    game = constant_game(2, 2, F(1, 3))
    prof = MixedProfile(probs=((F(1), F(0)), (F(1, 4), F(3, 4))))
    report = regret_profile(game, prof)
    assert report.max_support_gap == 0
    assert report.max_approx_regret == 0


def test_epsilon_boundary_is_inclusive():
    # gap of exactly eps is accepted: the definition triggers on strict >
    game = anti_coordination()
    prof = MixedProfile(probs=((F(1), F(0)), (F(1), F(0))))
    report = regret_profile(game, prof)
    assert report.is_epsilon_nash(1)
    assert not report.is_epsilon_nash(F(99, 100))
