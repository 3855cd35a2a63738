"""Level-state dynamic program for packing with pre-opened irregular bins.

Bins are tracked only by fill level (an integer multiple of delta), never by
composition, so the state is a histogram over D+1 levels.  Assigning an item
to an empty unit bin costs 1; assigning into any non-empty feasible bin costs
0.  The DP minimizes the total cost, i.e. the number of unit bins opened.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Instance, Packing, PackLabError, opened_count


class ItemBelowEpsilon(PackLabError):
    """solve_rounded requires every item to exceed epsilon."""


class StuckError(PackLabError):
    """No feasible assignment of the items into the available bins."""


class StateBudgetError(PackLabError):
    """Memo table outgrew the configured state budget."""


class OffGridError(PackLabError):
    """A size or capacity is not an exact multiple of delta."""


@dataclass(frozen=True)
class DpConfig:
    delta: Fraction
    state_budget: int = 5_000_000

    @property
    def levels(self) -> int:
        """D: the highest bin level index."""
        return math.ceil(1 / self.delta)


@dataclass(frozen=True)
class LevelState:
    """Histogram of bins by level, levels 0..D."""

    counts: tuple[int, ...]

    @property
    def bins(self) -> int:
        return sum(self.counts)


def item_type(size: Fraction, delta: Fraction) -> int:
    return math.ceil(size / delta)


def exact_type(size: Fraction, delta: Fraction) -> int:
    """Item type for on-grid sizes; rejects sizes off the delta grid."""
    t = item_type(size, delta)
    if t * delta != size:
        raise OffGridError(f"size {size} is not a multiple of {delta}")
    return t


def initial_state(inst: Instance, delta: Fraction) -> LevelState:
    """Encode the bin inventory as levels: capacity c enters at level (1-c)/delta."""
    delta = Fraction(delta)
    D = math.ceil(1 / delta)
    counts = [0] * (D + 1)
    for cap in inst.capacities:
        filled = 1 - cap
        level = filled / delta
        if level.denominator != 1:
            raise OffGridError(
                f"capacity {cap} implies level {filled} off the {delta} grid")
        counts[int(level)] += 1
    return LevelState(tuple(counts))


def allow(size: Fraction, state: LevelState, cfg: DpConfig) -> list[int]:
    """Bin levels that can feasibly receive an item of the given size."""
    return [j for j, n in enumerate(state.counts)
            if n >= 1 and size + j * cfg.delta <= 1]


def step_cost(state: LevelState, j: int) -> int:
    """1 when an empty bin is opened, 0 otherwise (infeasible levels never reach here)."""
    return 1 if j == 0 else 0


@dataclass
class DpResult:
    regular_bins_opened: int
    trace: tuple[int, ...]  # chosen bin level per item
    packing: Packing
    states_visited: int

    def report_obj(self) -> dict:
        return {"opened": self.regular_bins_opened,
                "trace": [{"item": i, "bin_type": j}
                          for i, j in enumerate(self.trace)],
                "state_count": self.states_visited}


def _replay(trace: tuple[int, ...], inst: Instance, types: list[int],
            delta: Fraction) -> Packing:
    """Turn a level trace into a concrete packing (lowest bin id per level)."""
    D = math.ceil(1 / delta)
    buckets: list[list[int]] = [[] for _ in range(D + 1)]
    for b in range(inst.bin_count - 1, -1, -1):
        level = int((1 - inst.capacities[b]) / delta)
        buckets[level].append(b)  # reversed so pop() yields the lowest id
    assignment = []
    for i, j in enumerate(trace):
        b = buckets[j].pop()
        assignment.append(b)
        o = j + types[i]
        buckets[o].append(b)
        buckets[o].sort(reverse=True)
    return Packing(tuple(assignment), opened_count(inst, assignment))


def assign(state: LevelState, cfg: DpConfig, items: Instance) -> DpResult:
    """Minimum unit-bin openings for packing the items from the given state.

    Memoized over (level histogram, next item index); ties among equal-cost
    levels break toward the smallest level.
    """
    delta = cfg.delta
    sizes = list(items.items)
    types = [exact_type(s, delta) for s in sizes]
    n = len(sizes)
    D = cfg.levels
    if len(state.counts) != D + 1:
        raise ValueError(f"state has {len(state.counts)} levels, expected {D + 1}")
    if state != initial_state(items, delta):
        # pre-filled levels are expressed through the instance's capacities so
        # that the trace can be replayed onto concrete bins
        raise ValueError("state does not match the instance's bin inventory")
    memo: dict[tuple[tuple[int, ...], int], tuple[float, int]] = {}
    INF = math.inf
    sys.setrecursionlimit(max(sys.getrecursionlimit(), n + 200))

    def rec(counts: tuple[int, ...], i: int) -> tuple[float, int]:
        if i == n:
            return 0.0, -1
        key = (counts, i)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if len(memo) >= cfg.state_budget:
            raise StateBudgetError(
                f"memo exceeded state budget {cfg.state_budget}")
        t = types[i]
        best, best_j = INF, -1
        for j in range(D - t + 1):
            if counts[j] < 1:
                continue
            if sizes[i] + j * delta > 1:
                continue
            moved = list(counts)
            moved[j] -= 1
            moved[j + t] += 1
            sub, _ = rec(tuple(moved), i + 1)
            total = sub + (1 if j == 0 else 0)
            if total < best:
                best, best_j = total, j
        memo[key] = (best, best_j)
        return best, best_j

    cost, _ = rec(state.counts, 0)
    if cost == INF:
        raise StuckError("items cannot be packed into the available bins")
    # reconstruct the optimal trace by replaying the memo
    trace: list[int] = []
    counts = state.counts
    for i in range(n):
        _, j = memo[(counts, i)]
        trace.append(j)
        moved = list(counts)
        moved[j] -= 1
        moved[j + types[i]] += 1
        counts = tuple(moved)
    packing = _replay(tuple(trace), items, types, delta)
    return DpResult(int(cost), tuple(trace), packing, len(memo))


def solve(inst: Instance, delta: Fraction,
          state_budget: int = 5_000_000) -> DpResult:
    """Run the DP from the instance's own bin inventory."""
    cfg = DpConfig(Fraction(delta), state_budget)
    return assign(initial_state(inst, cfg.delta), cfg, inst)


def solve_rounded(inst: Instance, eps: Fraction, c: int,
                  state_budget: int = 5_000_000) -> DpResult:
    """Round sizes up to the eps/c grid, solve exactly, replay on true sizes.

    Rounding only raises levels, so the returned packing is feasible for the
    original sizes; the opened-bin count is the DP optimum of the rounded
    instance.
    """
    eps = Fraction(eps)
    if c <= 1:
        raise ValueError(f"c must be an integer > 1, got {c}")
    for i, s in enumerate(inst.items):
        if s <= eps:
            raise ItemBelowEpsilon(f"item {i} has size {s} <= eps={eps}")
    delta = eps / Fraction(c)
    rounded_sizes = [item_type(s, delta) * delta for s in inst.items]
    grid = math.lcm(inst.grid, delta.denominator)
    rounded = Instance(grid, tuple(rounded_sizes), inst.bin_count,
                       inst.capacities)
    cfg = DpConfig(delta, state_budget)
    result = assign(initial_state(rounded, delta), cfg, rounded)
    # replay the trace against the original (smaller or equal) sizes
    types = [item_type(s, delta) for s in inst.items]
    packing = _replay(result.trace, inst, types, delta)
    return DpResult(result.regular_bins_opened, result.trace, packing,
                    result.states_visited)


def state_count_bound(m: int, delta: Fraction, n: int) -> int:
    """Admission guard: items times level histograms, n * C(m+D-1, D-1)."""
    D = math.ceil(1 / Fraction(delta))
    return n * math.comb(m + D - 1, D - 1)
