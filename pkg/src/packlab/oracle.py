"""Ground-truth solvers: exhaustive set-partition search and branch-and-bound.

The exhaustive solver enumerates canonical set partitions with no pruning
beyond the capacity check; it is the reference the faster branch-and-bound is
tested against.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .core import Instance, PackLabError


class OptBudgetExhausted(PackLabError):
    """Search ran out of nodes; carries the proven interval."""

    def __init__(self, lower: int, upper: int):
        super().__init__(f"node budget exhausted; OPT in [{lower}, {upper}]")
        self.lower = lower
        self.upper = upper


def lower_bound_volume(inst: Instance) -> int:
    """Ceiling of the total item size, computed exactly."""
    return math.ceil(sum(inst.items, Fraction(0)))


def _require_regular(inst: Instance) -> None:
    if not inst.is_regular:
        raise PackLabError("oracle requires a regular instance")


def exhaustive_opt(inst: Instance) -> int:
    """Minimum bins by enumerating every set partition (canonical growth order).

    Obviously correct and intentionally unpruned; only practical for n <= ~10.
    """
    _require_regular(inst)
    sizes = inst.items
    n = len(sizes)
    if n == 0:
        return 0
    best = n

    def rec(i: int, loads: list[Fraction]) -> None:
        nonlocal best
        if i == n:
            best = min(best, len(loads))
            return
        s = sizes[i]
        for b in range(len(loads)):
            if loads[b] + s <= 1:
                loads[b] += s
                rec(i + 1, loads)
                loads[b] -= s
        loads.append(s)
        rec(i + 1, loads)
        loads.pop()

    rec(0, [])
    return best


def exact_opt(inst: Instance, node_budget: int = 5_000_000) -> int:
    """Exact minimum bins by branch-and-bound.

    Items are placed in decreasing size order; bins at identical load are
    interchangeable for the remaining items, so only the first of each load is
    tried.  Nodes are cut by the residual volume bound.
    """
    _require_regular(inst)
    sizes = sorted(inst.items, reverse=True)
    n = len(sizes)
    if n == 0:
        return 0
    suffix = [Fraction(0)] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + sizes[i]
    best = n  # every item alone is always feasible for sizes <= 1
    root_lb = math.ceil(suffix[0])
    nodes = 0
    exhausted = False

    def rec(i: int, loads: list[Fraction]) -> None:
        nonlocal best, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        if i == n:
            if len(loads) < best:
                best = len(loads)
            return
        free = sum((1 - load for load in loads), Fraction(0))
        overflow = suffix[i] - free
        lb = len(loads) + max(0, math.ceil(overflow))
        if lb >= best:
            return
        s = sizes[i]
        seen: set[Fraction] = set()
        for b in range(len(loads)):
            if loads[b] + s <= 1 and loads[b] not in seen:
                seen.add(loads[b])
                loads[b] += s
                rec(i + 1, loads)
                loads[b] -= s
        if len(loads) + 1 < best:
            loads.append(s)
            rec(i + 1, loads)
            loads.pop()

    rec(0, [])
    if exhausted:
        if best == root_lb:
            return best
        raise OptBudgetExhausted(root_lb, best)
    return best
