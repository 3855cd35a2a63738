"""Acceptance gate: one test per criterion, each printing a PASS line.

Every expected value here is either trivial arithmetic, a frozen value
computed by an independent oracle in this suite, or a documented reference
quantity of the two example families.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from packlab.core import make_instance, profile, validate_packing
from packlab.covers import Uncoverable, enumerate_configs, min_cover
from packlab.generator import (GeneratorParams, example2_instance, generate,
                               generate_on_delta_grid)
from packlab.heuristics import ALGORITHMS, decreasing_variant, first_fit, solve_heuristic
from packlab.leveldp import solve as dp_solve, solve_rounded
from packlab.oracle import exact_opt, exhaustive_opt, lower_bound_volume
from packlab.partition import (algorithm_b, distribution_vector, segment_of,
                               truncate_segment)

from test_partition import exact_min_cover, small_plan_instances


def report(name, elapsed=None):
    suffix = f" ({elapsed:.1f}s)" if elapsed is not None else ""
    print(f"PASS {name}{suffix}")


def test_criterion_1_complementary_family_reproduction(ex1):
    start = time.time()
    prof = profile(ex1)
    d = distribution_vector(prof)
    assert d.mass == (Fraction(252), Fraction(162), Fraction(174),
                      Fraction(312))
    assert d.length == 900
    assert segment_of(d, 15).target == (Fraction(21, 5), Fraction(27, 10),
                                        Fraction(29, 10), Fraction(26, 5))
    out = algorithm_b(ex1, Fraction(1, 10))
    assert out.packing.bins_opened == 900 == lower_bound_volume(ex1)
    assert validate_packing(ex1, out.packing).ok
    elapsed = time.time() - start
    assert elapsed < 10
    report("criterion 1: complementary family packs to the volume bound",
           elapsed)


def test_criterion_2_singleton_family_reproduction(ex2):
    start = time.time()
    prof = profile(ex2)
    d = distribution_vector(prof)
    assert d.mass == (Fraction(600), Fraction(650), Fraction(750))
    assert d.length == 2000
    seg20 = segment_of(d, 20)
    assert seg20.target == (Fraction(6), Fraction(13, 2), Fraction(15, 2))
    # cover-infeasible below delta = 0.4 ...
    for delta in (Fraction(1, 5), Fraction(3, 10)):
        configs = enumerate_configs(prof, delta)
        if configs.configs:
            with pytest.raises(Uncoverable):
                min_cover(seg20, configs)
    # ... and feasible at 0.4 with the forced 30-singleton cover
    cover = min_cover(seg20, enumerate_configs(prof, Fraction(2, 5)))
    assert cover.size == 30
    assert Fraction(cover.size, 20) == Fraction(3, 2)
    out = algorithm_b(ex2, Fraction(1, 10))
    assert out.packing.bins_opened == 3000
    assert validate_packing(ex2, out.packing).ok
    scaled = example2_instance(copies=10)  # 30 items, oracle-checkable
    assert exact_opt(scaled) == 30 == scaled.n
    elapsed = time.time() - start
    assert elapsed < 10
    report("criterion 2: singleton family forces one bin per item", elapsed)


def test_criterion_3_dp_exactness_property():
    start = time.time()
    rng = random.Random(2024)
    checked = 0
    for delta in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)):
        for _ in range(67):
            n = rng.randint(1, 12)
            inst = generate_on_delta_grid(n=n, m=n, delta=delta,
                                          seed=rng.randrange(10**9))
            result = dp_solve(inst, delta)
            assert result.regular_bins_opened == exact_opt(inst)
            assert validate_packing(inst, result.packing).ok
            checked += 1
    assert checked >= 200
    elapsed = time.time() - start
    assert elapsed < 60
    report(f"criterion 3: DP equals exact OPT on {checked} gridded instances",
           elapsed)


def test_criterion_4_rounding_theorem_ratio():
    start = time.time()
    eps, c = Fraction(1, 5), 2
    factor = 1 + eps / c + Fraction(1, c)  # 8/5
    rng = random.Random(77)
    for trial in range(100):
        n = rng.randint(1, 12)
        sizes = [Fraction(rng.randint(21, 100), 100) for _ in range(n)]
        inst = make_instance(100, sizes, bin_count=n)
        result = solve_rounded(inst, eps, c)
        opt = exact_opt(inst)
        assert result.regular_bins_opened <= math.ceil(factor * opt), trial
        assert validate_packing(inst, result.packing).ok
    elapsed = time.time() - start
    assert elapsed < 120
    report("criterion 4: rounded DP within (1 + eps/c + 1/c) of OPT "
           "on 100 instances", elapsed)


@pytest.fixture(scope="module")
def small_instances():
    return small_plan_instances(50, seed=7)


def test_criterion_5_cover_size_inequality(small_instances):
    start = time.time()
    for inst, prof, d, plan in small_instances:
        out = algorithm_b(inst, Fraction(1, 4))
        full = segment_of(d, d.length)
        opt_cover = exact_min_cover(full, prof)
        assert out.cover.size <= (opt_cover.size + prof.k * plan.copies
                                  + 2 * plan.c_star)
        assert validate_packing(inst, out.packing).ok
    report("criterion 5: constructed cover within min-cover + k*l + 2c "
           "on 50 instances", time.time() - start)


def test_criterion_6_truncation_inequalities(small_instances):
    start = time.time()
    for inst, prof, d, plan in small_instances:
        trunc = truncate_segment(plan.segment, prof)
        mc_t = exact_min_cover(plan.segment, prof)
        mc_tt = exact_min_cover(trunc.as_segment(), prof)
        full = segment_of(d, d.length)
        opt_cover = exact_min_cover(full, prof)
        assert mc_t.size <= mc_tt.size + prof.k
        assert plan.copies * mc_tt.size <= opt_cover.size
    report("criterion 6: truncation lemmas hold on 50 instances",
           time.time() - start)


def test_criterion_7_oracle_chain():
    start = time.time()
    params = GeneratorParams(grid=20, n=10, min_num=1, max_num=20)
    for seed in range(200):
        inst = generate(params, seed)
        assert exact_opt(inst) == exhaustive_opt(inst), seed
    report("criterion 7: branch-and-bound equals exhaustive enumeration "
           "on 200 instances", time.time() - start)


def test_criterion_8_universal_validity():
    start = time.time()
    rng = random.Random(5150)
    for _ in range(40):
        n = rng.randint(1, 12)
        grid = rng.choice((12, 20, 60))
        inst = generate(GeneratorParams(grid=grid, n=n, min_num=1,
                                        max_num=grid), rng.randrange(10**9))
        for alg in ALGORITHMS:
            p = solve_heuristic(inst, alg)
            assert validate_packing(inst, p).ok, alg
        out = algorithm_b(inst, Fraction(1, 4))
        assert validate_packing(inst, out.packing).ok
        big = [s for s in inst.items if s > Fraction(1, 5)]
        if big:
            dp_inst = make_instance(grid, big)
            result = solve_rounded(dp_inst, Fraction(1, 5), 2)
            assert validate_packing(dp_inst, result.packing).ok
    report("criterion 8: every emitted packing validates", time.time() - start)


def test_criterion_9_baseline_ratio_sanity(ex1):
    start = time.time()
    # oracle-checkable random instances
    params = GeneratorParams(grid=50, n=12, min_num=1, max_num=50)
    for seed in range(100):
        inst = generate(params, seed)
        opt = exact_opt(inst)
        ffd = decreasing_variant(inst, "ff").bins_opened
        ff = first_fit(inst).bins_opened
        assert 9 * ffd <= 11 * opt + 9, seed       # FFD <= (11/9) OPT + 1
        assert 10 * ff <= 17 * opt + 10, seed      # FF  <= 1.7 OPT + 1
    # the big complementary family, whose OPT = 900 is certified by the
    # volume bound being met
    ffd_big = decreasing_variant(ex1, "ff").bins_opened
    assert ffd_big == 1100
    assert 9 * ffd_big <= 11 * 900 + 9
    report("criterion 9: FFD and FF empirical ratio bounds hold",
           time.time() - start)
