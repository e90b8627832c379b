"""Acceptance suite: one test per criterion, each printing a pass line.

Thresholds that the criteria leave to pilot calibration are frozen here
with their pilot values noted inline; everything else is asserted at the
stated tolerance.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import random
import time
from fractions import Fraction as F
from statistics import median

from anongames import (ObjectiveFunctions, brute_force_oracle,
                       discretize_profile, minimax_oracle, minimax_ptas,
                       random_game, random_profile, regret_profile,
                       solve_escalating)
from anongames.solver import max_flow_assign, ptas_solve
from anongames.tdp import build_tdp_tree, reconstruct_distribution
from anongames.tvlab import (n_independence_experiment, poisson_poisson_tv_check,
                             poisson_tv_check, translated_poisson_tv_check)
from tests.test_minimax import random_functions
from tests.test_normal_form import (exact_2x2_ne, matching_pennies,
                                    nf_from_payoff_matrix)
from tests.test_solver import exhaustive_assignment_exists
from tests.test_sumdist import anti_coordination
from tests.test_tdp import random_positive_dist


def report(num, name, t0):
    print(f"ACCEPTANCE {num:02d} {name}: PASS ({time.time() - t0:.1f}s)")


def test_criterion_01_tdp_exactness():
    t0 = time.time()
    count = 0
    for k in range(2, 7):
        for i in range(200):
            probs = random_positive_dist(k, seed=k * 1000 + i)
            tree = build_tdp_tree(list(range(k)), probs)
            assert reconstruct_distribution(tree) == dict(enumerate(probs))
            assert len(tree.leaves) <= k - 1
            assert max(leaf.depth for leaf in tree.leaves) <= k
            count += 1
    assert count == 1000
    assert time.time() - t0 < 5
    report(1, "trickle-down build/reconstruct identity on 1000 inputs", t0)


def test_criterion_02_rounding_properties_exact():
    t0 = time.time()
    cases = [(3, 2), (8, 3), (14, 4), (20, 4)]
    for n, k in cases:
        for z in (5, 10, 50):
            prof = random_profile(n, k, seed=n * 100 + z)
            disc = discretize_profile(prof, z)
            unit = (2 ** k) * z
            for row, orig in zip(disc.probs, prof.probs):
                for a, b in zip(row, orig):
                    assert abs(a - b) <= F(1, z)            # closeness
                    assert (a * unit).denominator == 1      # grid membership
                    if b == 0:
                        assert a == 0                       # support preserved
    assert time.time() - t0 < 10
    report(2, "per-coordinate error/grid/support invariants, exact", t0)


def test_criterion_03_n_independence_proxy():
    # base_seed=0 frozen after pilot: ratios 0.64/0.77/0.67 at seeds 0/1/2
    t0 = time.time()
    rows = n_independence_experiment(3, [20], [2, 4, 8, 16], trials=30,
                                     base_seed=0)
    med = {n: median(r.tv for r in rows if r.n == n) for n in (2, 4, 8, 16)}
    assert med[16] <= 2 * med[4], med
    rows_z = n_independence_experiment(3, [10, 20, 40], [8], trials=30,
                                       base_seed=0)
    medz = {z: median(r.tv for r in rows_z if r.z == z) for z in (10, 20, 40)}
    assert medz[10] >= medz[20] >= medz[40], medz
    assert time.time() - t0 < 300
    report(3, "TV flat in n (2x cap) and non-increasing in z", t0)


def test_criterion_04_poisson_bound():
    t0 = time.time()
    chk = poisson_tv_check([F(1, 100)] * 50, z=100, alpha=F(1, 2))
    assert chk.tv <= 0.1 and chk.passed
    rng = random.Random(99)
    from anongames.tdp import floor_root_power
    for _ in range(20):
        z = rng.randint(16, 150)
        alpha = F(rng.randint(3, 7), 10)
        thr = F(floor_root_power(z, alpha), z)
        probs = [F(rng.randint(0, thr.numerator), thr.denominator)
                 for _ in range(rng.randint(1, 50))]
        assert poisson_tv_check(probs, z, alpha).passed
    assert time.time() - t0 < 5
    report(4, "Bernoulli-sum vs Poisson within 1/z^(1-alpha)", t0)


def test_criterion_05_translated_and_plain_poisson_lemmas():
    t0 = time.time()
    rng = random.Random(5)
    for _ in range(20):
        chk = translated_poisson_tv_check(rng.uniform(2, 40), rng.uniform(1, 20),
                                          rng.uniform(2, 40), rng.uniform(1, 20))
        assert chk.passed
    for _ in range(20):
        chk = poisson_poisson_tv_check(rng.uniform(0.5, 50), rng.uniform(0.01, 10))
        assert chk.passed
    assert time.time() - t0 < 10
    report(5, "translated-Poisson and Poisson-Poisson TV bounds", t0)


def test_criterion_06_ptas_certification():
    t0 = time.time()
    res = ptas_solve(anti_coordination(), F(1, 10), z=1)
    assert res.certified and res.support_gap == 0
    assert res.profile.probs == ((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)))
    for seed in range(20):
        n = 2 + (seed % 2)
        game = random_game(n, 2, seed=seed)
        out = solve_escalating(game, F(1, 5), 1, max_rounds=3)   # z in {1,2,4}
        assert out.certified
        gap = regret_profile(game, out.profile).max_support_gap
        assert gap == out.support_gap <= F(1, 5)
        oracle = brute_force_oracle(game, 8)
        assert out.support_gap <= oracle.support_gap + F(1, 5)
    assert time.time() - t0 < 120
    report(6, "certified eps-Nash on anti-coordination + 20 random games", t0)


def test_criterion_07_max_flow_vs_matching():
    t0 = time.time()
    rng = random.Random(321)
    for _ in range(200):
        n = rng.randint(1, 8)
        num_sigma = rng.randint(1, 5)
        theta = [0] * num_sigma
        for _ in range(n):
            theta[rng.randrange(num_sigma)] += 1
        edges = [sorted(rng.sample(range(num_sigma), rng.randint(0, num_sigma)))
                 for _ in range(n)]
        got = max_flow_assign(edges, tuple(theta), n)
        assert (got is not None) == exhaustive_assignment_exists(
            edges, tuple(theta), n)
    assert time.time() - t0 < 10
    report(7, "flow feasibility equals exhaustive matching, 200 cases", t0)


def test_criterion_08_quasi_ptas():
    t0 = time.time()
    from anongames import nf_regret, perturbation_check, quasi_solve
    res = quasi_solve(matching_pennies(), F(3, 10))
    assert max(res.regret) <= F(3, 10)
    assert all((v * res.grid_units).denominator == 1
               for row in res.profile for v in row)
    rng = random.Random(77)
    done = 0
    while done < 10:
        a = [[F(rng.randint(0, 24), 24) for _ in range(2)] for _ in range(2)]
        b = [[F(rng.randint(0, 24), 24) for _ in range(2)] for _ in range(2)]
        game = nf_from_payoff_matrix(a, b)
        try:
            ne = exact_2x2_ne(game)
        except (ZeroDivisionError, AssertionError):
            continue
        assert nf_regret(game, ne).max_regret == 0
        assert perturbation_check(game, ne, F(3, 10)).passed
        done += 1
    assert time.time() - t0 < 30
    report(8, "quasi grid search + perturbation lemma on closed-form NEs", t0)


def test_criterion_09_minimax_ptas():
    t0 = time.time()
    lin = ObjectiveFunctions(n=1, tables=((F(0), F(1)), (F(1), F(0))))
    res = minimax_ptas(lin, F(1, 2))
    assert res.value == 0.5 and res.probs == (F(1, 2),)
    for seed in range(20):
        funcs = random_functions(4, seed=seed)
        assert minimax_ptas(funcs, F(1, 4)).value >= minimax_oracle(funcs, 8).value
    # frozen fixture: parity pair with interior optimum; pilot gap 0.016642
    n = 6
    parity = ObjectiveFunctions(n=n, tables=(
        tuple(F(1) if j % 2 == 0 else F(0) for j in range(n + 1)),
        tuple(F(2, 3) if j % 2 == 1 else F(0) for j in range(n + 1))))
    gap = minimax_ptas(parity, F(1, 4)).value - minimax_oracle(parity, 32).value
    assert 0 <= gap <= 0.05
    assert time.time() - t0 < 60
    report(9, "minimax grid optimum, exact nesting, calibrated gap", t0)


def test_criterion_10_cli_determinism(tmp_path):
    t0 = time.time()
    from tests.test_cli import test_every_subcommand_byte_deterministic
    test_every_subcommand_byte_deterministic(tmp_path)
    report(10, "every CLI subcommand byte-identical across reruns", t0)
