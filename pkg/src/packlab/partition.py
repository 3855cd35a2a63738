"""Partition scheme: distribution vector, (c, delta) sweep, cover assembly.

The scheme summarizes the instance as a per-size mass vector, slices it into
identical segments of integer length c, covers one segment by near-full bin
configurations, and replicates that cover.  The sweep picks the (c, delta)
cell minimizing cover size per unit of mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Instance, Packing, PackLabError, SizeProfile, opened_count, profile
from .covers import (BinConfig, ConfigSet, Cover, SegmentVector, Uncoverable,
                     cover_union, enumerate_configs, min_cover, scaled_cover)
from .heuristics import decreasing_variant


class NoFeasiblePlan(PackLabError):
    """Every (c, delta) cell of the sweep was infeasible."""


class InfeasibleCover(PackLabError):
    """Cover does not dominate the instance's distribution vector."""


@dataclass(frozen=True)
class DistributionVector:
    """Total mass per distinct size: component i is count_i * size_i."""

    sizes: tuple[Fraction, ...]
    mass: tuple[Fraction, ...]

    @property
    def length(self) -> Fraction:
        return sum(self.mass, Fraction(0))

    @property
    def k(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class TruncatedSegment:
    """Segment with each component floored to a whole number of items."""

    sizes: tuple[Fraction, ...]
    counts: tuple[int, ...]

    @property
    def mass(self) -> tuple[Fraction, ...]:
        return tuple(c * s for c, s in zip(self.counts, self.sizes))

    @property
    def length(self) -> Fraction:
        return sum(self.mass, Fraction(0))

    def as_segment(self) -> SegmentVector:
        return SegmentVector(self.sizes, self.mass)


@dataclass(frozen=True)
class SweepCell:
    c: int
    delta: Fraction
    cover: Optional[Cover]  # None: no configs, or target uncoverable

    @property
    def cover_size(self) -> Optional[int]:
        return None if self.cover is None else self.cover.size


@dataclass
class PartitionPlan:
    c_star: int
    delta_star: Fraction
    segment: SegmentVector
    copies: int
    residual: SegmentVector
    segment_cover: Cover
    residual_cover: Optional[Cover]  # None when the residual has no cover
    table: list[SweepCell]

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.segment_cover.size, self.c_star)

    def report_obj(self) -> dict:
        return {
            "c_star": self.c_star,
            "delta_star": str(self.delta_star),
            "ratio": str(self.ratio),
            "copies": self.copies,
            "segment_cover_size": self.segment_cover.size,
            "residual_cover_size": (None if self.residual_cover is None
                                    else self.residual_cover.size),
            "table": [{"c": cell.c, "delta": str(cell.delta),
                       "cover_size": cell.cover_size}
                      for cell in self.table],
        }


def distribution_vector(prof: SizeProfile) -> DistributionVector:
    return DistributionVector(
        prof.sizes,
        tuple(n * s for n, s in zip(prof.counts, prof.sizes)))


def segment_of(d: DistributionVector, c: Fraction | int) -> SegmentVector:
    """The length-c initial segment: d scaled by c / length(d)."""
    c = Fraction(c)
    total = d.length
    if c > total:
        raise ValueError(f"segment length {c} exceeds vector length {total}")
    if total == 0:
        return SegmentVector(d.sizes, tuple(Fraction(0) for _ in d.sizes))
    factor = c / total
    return SegmentVector(d.sizes, tuple(m * factor for m in d.mass))


def truncate_segment(seg: SegmentVector, prof: SizeProfile) -> TruncatedSegment:
    """Floor each component to a whole multiple of its size."""
    counts = []
    for s, t in zip(prof.sizes, seg.target):
        counts.append(0 if s == 0 else int(t / s))
    return TruncatedSegment(seg.sizes, tuple(counts))


def delta_grid(eps: Fraction) -> list[Fraction]:
    """Multiples of eps in (eps, 1/2]."""
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2):
        raise ValueError(f"eps must be in (0, 1/2), got {eps}")
    out = []
    j = 2
    while j * eps <= Fraction(1, 2):
        out.append(j * eps)
        j += 1
    return out


def sweep_parameters(d: DistributionVector, prof: SizeProfile, eps: Fraction,
                     node_budget: int = 200_000,
                     config_cap: int = 200_000) -> PartitionPlan:
    """Evaluate every (c, delta) cell and pick the best packing ratio.

    Ties on delta break toward smaller delta, ties on c toward smaller c.
    """
    eps = Fraction(eps)
    deltas = delta_grid(eps)
    c_max = math.ceil(2 / eps)
    config_cache: dict[Fraction, ConfigSet] = {}
    table: list[SweepCell] = []
    best: Optional[tuple[Fraction, int, Fraction, Cover]] = None  # ratio, c, delta, cover

    for c in range(1, c_max + 1):
        if c > d.length:
            break
        seg = segment_of(d, c)
        best_cell: Optional[tuple[int, Fraction, Cover]] = None
        for delta in deltas:
            if delta not in config_cache:
                config_cache[delta] = enumerate_configs(prof, delta, config_cap)
            configs = config_cache[delta]
            if not configs.configs:
                table.append(SweepCell(c, delta, None))
                continue
            try:
                cover = min_cover(seg, configs, node_budget)
            except Uncoverable:
                table.append(SweepCell(c, delta, None))
                continue
            table.append(SweepCell(c, delta, cover))
            if best_cell is None or cover.size < best_cell[0]:
                best_cell = (cover.size, delta, cover)
        if best_cell is None:
            continue
        size, delta_c, cover_c = best_cell
        ratio = Fraction(size, c)
        if best is None or ratio < best[0]:
            best = (ratio, c, delta_c, cover_c)

    if best is None:
        raise NoFeasiblePlan("no (c, delta) cell admits a cover")
    _, c_star, delta_star, segment_cover = best
    segment = segment_of(d, c_star)
    copies = int(d.length / c_star)
    residual = SegmentVector(
        d.sizes, tuple(m - copies * t for m, t in zip(d.mass, segment.target)))
    residual_cover = _cover_residual(residual, prof, node_budget, config_cap)
    return PartitionPlan(c_star, delta_star, segment, copies, residual,
                         segment_cover, residual_cover, table)


def _cover_residual(residual: SegmentVector, prof: SizeProfile,
                    node_budget: int, config_cap: int) -> Optional[Cover]:
    # delta = 1/2 yields the largest configuration set on the grid, hence the
    # smallest cover over all delta (configuration sets grow with delta)
    if all(t <= 0 for t in residual.target):
        return Cover({})
    configs = enumerate_configs(prof, Fraction(1, 2), config_cap)
    if not configs.configs:
        return None
    try:
        return min_cover(residual, configs, node_budget)
    except Uncoverable:
        return None


def _fill_slots(cover: Cover, inst: Instance) -> tuple[list[int], list[int]]:
    """Assign items to cover slots; returns (assignment, leftover item indices).

    Configuration copies are instantiated in sorted order; items of each size
    class are consumed in ascending index order.  Unfilled slots are legal
    (cover surplus).
    """
    prof = profile(inst)
    class_of = {s: i for i, s in enumerate(prof.sizes)}
    queues: list[list[int]] = [[] for _ in prof.sizes]
    zero_items: list[int] = []
    for idx, s in enumerate(inst.items):
        if s == 0:
            zero_items.append(idx)
        else:
            queues[class_of[s]].append(idx)
    assignment = [-1] * inst.n
    ordered = sorted(cover.multiplicities.items(), key=lambda kv: kv[0].counts)
    heads = [0] * len(queues)
    bin_index = 0
    for cfg, mult in ordered:
        for _ in range(mult):
            for i, cnt in enumerate(cfg.counts):
                take = min(cnt, len(queues[i]) - heads[i])
                for _ in range(take):
                    assignment[queues[i][heads[i]]] = bin_index
                    heads[i] += 1
            bin_index += 1
    leftovers = [idx for i, q in enumerate(queues) for idx in q[heads[i]:]]
    # zero-size items ride along in the first bin; they never force capacity
    for idx in zero_items:
        assignment[idx] = 0
    return assignment, sorted(leftovers)


def cover_to_packing(cover: Cover, inst: Instance) -> Packing:
    """Realize a cover as a concrete packing of the instance's items."""
    prof = profile(inst)
    slot_counts = [0] * prof.k
    for cfg, mult in cover.multiplicities.items():
        for i in range(prof.k):
            slot_counts[i] += cfg.counts[i] * mult
    for i in range(prof.k):
        if prof.sizes[i] > 0 and slot_counts[i] < prof.counts[i]:
            raise InfeasibleCover(
                f"cover provides {slot_counts[i]} slots for "
                f"{prof.counts[i]} items of size {prof.sizes[i]}")
    assignment, leftovers = _fill_slots(cover, inst)
    assert not leftovers
    return Packing(tuple(assignment), opened_count(inst, assignment))


@dataclass
class PartitionOutcome:
    cover: Cover
    packing: Packing
    plan: Optional[PartitionPlan]
    fallback: bool = False


def algorithm_b(inst: Instance, eps: Fraction,
                node_budget: int = 200_000,
                config_cap: int = 200_000) -> PartitionOutcome:
    """End-to-end partition scheme; falls back to FFD when no cell is feasible."""
    if not inst.is_regular:
        raise PackLabError("partition scheme requires a regular instance")
    if inst.n == 0:
        return PartitionOutcome(Cover({}), Packing((), 0), None)
    prof = profile(inst)
    d = distribution_vector(prof)
    try:
        plan = sweep_parameters(d, prof, eps, node_budget, config_cap)
    except NoFeasiblePlan:
        packing = decreasing_variant(inst, "ff")
        return PartitionOutcome(Cover({}), packing, None, fallback=True)
    cover = scaled_cover(plan.segment_cover, plan.copies)
    if plan.residual_cover is not None:
        cover = cover_union(cover, plan.residual_cover)
        packing = cover_to_packing(cover, inst)
        return PartitionOutcome(cover, packing, plan)
    # residual uncoverable: place what the replicated cover holds, then
    # first-fit-decreasing the leftover items into fresh bins
    assignment, leftovers = _fill_slots(cover, inst)
    next_bin = (max(assignment) + 1) if any(b >= 0 for b in assignment) else 0
    loads: list[Fraction] = []
    order = sorted(leftovers, key=lambda i: -inst.items[i])
    for idx in order:
        s = inst.items[idx]
        placed = False
        for b, load in enumerate(loads):
            if load + s <= 1:
                loads[b] += s
                assignment[idx] = next_bin + b
                placed = True
                break
        if not placed:
            loads.append(s)
            assignment[idx] = next_bin + len(loads) - 1
    packing = Packing(tuple(assignment), opened_count(inst, assignment))
    return PartitionOutcome(cover, packing, plan)
