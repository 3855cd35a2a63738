"""Seeded instance generation for benchmarks and property suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import Instance, PackLabError, make_instance


class GeneratorError(PackLabError):
    pass


@dataclass(frozen=True)
class GeneratorParams:
    grid: int
    n: int
    min_num: int  # size range as numerators over grid
    max_num: int
    bins: Optional[int] = None  # default: one bin per item
    allow_empty: bool = False


def generate(params: GeneratorParams, seed: int) -> Instance:
    """Uniform random sizes on the grid; deterministic for a fixed seed."""
    if params.n < 0:
        raise GeneratorError("n must be non-negative")
    if params.n == 0:
        if not params.allow_empty:
            raise GeneratorError("n=0 requires allow_empty")
        return make_instance(params.grid, [], bin_count=0, allow_empty=True)
    if not 0 <= params.min_num <= params.max_num <= params.grid:
        raise GeneratorError(
            f"empty or invalid size range [{params.min_num}, {params.max_num}]"
            f" on grid {params.grid}")
    rng = random.Random(seed)
    sizes = [Fraction(rng.randint(params.min_num, params.max_num), params.grid)
             for _ in range(params.n)]
    return make_instance(params.grid, sizes, bin_count=params.bins)


def generate_clustered(grid: int, base_nums: Sequence[int], copies: int,
                       bins: Optional[int] = None) -> Instance:
    """Replicate a base size tuple ``copies`` times (complementary-size families)."""
    if copies < 1:
        raise GeneratorError("copies must be >= 1")
    if not base_nums:
        raise GeneratorError("base tuple must be non-empty")
    sizes = [Fraction(num, grid) for num in base_nums] * copies
    return make_instance(grid, sizes, bin_count=bins)


def example1_instance(copies: int = 600) -> Instance:
    """The complementary-size family: sizes .52/.29/.27 once and .21 twice per copy."""
    sizes = ([Fraction(52, 100)] * copies + [Fraction(29, 100)] * copies
             + [Fraction(27, 100)] * copies + [Fraction(21, 100)] * 2 * copies)
    return make_instance(100, sizes, bin_count=1000)


def example2_instance(copies: int = 1000) -> Instance:
    """The pairwise-incompatible family: sizes .60/.65/.75, one each per copy."""
    sizes = ([Fraction(60, 100)] * copies + [Fraction(65, 100)] * copies
             + [Fraction(75, 100)] * copies)
    return make_instance(100, sizes, bin_count=copies * 3)


def generate_on_delta_grid(n: int, m: int, delta: Fraction,
                           seed: int) -> Instance:
    """Random instance whose sizes are exact non-zero multiples of delta."""
    delta = Fraction(delta)
    top = int(1 / delta)
    rng = random.Random(seed)
    sizes = [rng.randint(1, top) * delta for _ in range(n)]
    grid = delta.denominator
    return make_instance(grid, sizes, bin_count=m)
