"""Classical bin-packing comparators: NF, FF, BF and their Decreasing variants.

All rules are deterministic: FF takes the lowest-index feasible bin, BF the
feasible bin with least residual capacity (ties to the lowest index), and the
decreasing sort is stable on equal sizes.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import Instance, Packing, PackLabError, opened_count

ALGORITHMS = ("nf", "ff", "bf", "nfd", "ffd", "bfd")


class NotRegularError(PackLabError):
    """Heuristics only accept unit-capacity instances."""


def _require_regular(inst: Instance) -> None:
    if not inst.is_regular:
        raise NotRegularError("heuristic requires all bin capacities = 1")


def _pack_in_order(sizes: Sequence[Fraction], order: Sequence[int],
                   rule: str) -> tuple[list[int], int]:
    assignment = [-1] * len(sizes)
    loads: list[Fraction] = []
    current = -1  # NF's single open bin
    for i in order:
        s = sizes[i]
        chosen = -1
        if rule == "nf":
            if current >= 0 and loads[current] + s <= 1:
                chosen = current
        elif rule == "ff":
            for b, load in enumerate(loads):
                if load + s <= 1:
                    chosen = b
                    break
        elif rule == "bf":
            best_residual = None
            for b, load in enumerate(loads):
                residual = 1 - load - s
                if residual >= 0 and (best_residual is None
                                      or residual < best_residual):
                    chosen = b
                    best_residual = residual
        else:
            raise ValueError(f"unknown rule {rule!r}")
        if chosen < 0:
            loads.append(Fraction(0))
            chosen = len(loads) - 1
            current = chosen
        loads[chosen] += s
        assignment[i] = chosen
    return assignment, len(loads)


def _solve(inst: Instance, rule: str, decreasing: bool) -> Packing:
    _require_regular(inst)
    order = list(range(inst.n))
    if decreasing:
        order.sort(key=lambda i: -inst.items[i])  # stable: ties keep input order
    assignment, _ = _pack_in_order(inst.items, order, rule)
    return Packing(tuple(assignment), opened_count(inst, assignment))


def next_fit(inst: Instance) -> Packing:
    return _solve(inst, "nf", decreasing=False)


def first_fit(inst: Instance) -> Packing:
    return _solve(inst, "ff", decreasing=False)


def best_fit(inst: Instance) -> Packing:
    return _solve(inst, "bf", decreasing=False)


def decreasing_variant(inst: Instance, base: str) -> Packing:
    """NFD/FFD/BFD: sort sizes descending (stable), then apply the base rule."""
    base = base.lower()
    if base not in ("nf", "ff", "bf"):
        raise ValueError(f"base rule must be nf|ff|bf, got {base!r}")
    return _solve(inst, base, decreasing=True)


def solve_heuristic(inst: Instance, name: str) -> Packing:
    """Dispatch by CLI name: nf|ff|bf|nfd|ffd|bfd."""
    name = name.lower()
    if name not in ALGORITHMS:
        raise ValueError(f"unknown heuristic {name!r}")
    if name.endswith("d"):
        return decreasing_variant(inst, name[:-1])
    return _solve(inst, name, decreasing=False)
