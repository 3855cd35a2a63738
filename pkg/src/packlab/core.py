"""Exact-arithmetic data model: items, instances, packings, validity checking.

All item sizes and bin capacities live on a shared rational grid 1/G and are
represented as :class:`fractions.Fraction`.  Feasibility is always decided by
exact comparison, never by floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence


class PackLabError(Exception):
    """Base class for all errors raised by this package."""


class InstanceFormatError(PackLabError):
    """Malformed or out-of-contract instance data."""


def grid_value(numerator: int, grid: int) -> Fraction:
    """Build an exact size numerator/grid, checked to lie in [0, 1]."""
    if grid < 1:
        raise InstanceFormatError(f"grid must be positive, got {grid}")
    if not 0 <= numerator <= grid:
        raise InstanceFormatError(
            f"size {numerator}/{grid} outside [0, 1]")
    return Fraction(numerator, grid)


def on_grid(value: Fraction, grid: int) -> bool:
    return (value * grid).denominator == 1


@dataclass(frozen=True)
class Instance:
    """A bin-packing instance: item sizes plus a bin inventory.

    ``capacities`` gives the capacity of bins 0..bin_count-1.  A *regular*
    instance has every capacity equal to 1.  Solvers for the regular problem
    may open bins beyond ``bin_count``; those are unit-capacity by convention.
    """

    grid: int
    items: tuple[Fraction, ...]
    bin_count: int
    capacities: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "capacities", tuple(self.capacities))
        if self.grid < 1:
            raise InstanceFormatError(f"grid must be positive, got {self.grid}")
        if self.bin_count < 0:
            raise InstanceFormatError("bin_count must be non-negative")
        if len(self.capacities) != self.bin_count:
            raise InstanceFormatError(
                f"{len(self.capacities)} capacities for {self.bin_count} bins")
        for s in self.items:
            if not 0 <= s <= 1:
                raise InstanceFormatError(f"item size {s} outside [0, 1]")
            if not on_grid(s, self.grid):
                raise InstanceFormatError(
                    f"item size {s} not representable on grid 1/{self.grid}")
        for c in self.capacities:
            if not 0 <= c <= 1:
                raise InstanceFormatError(f"capacity {c} outside [0, 1]")
            if not on_grid(c, self.grid):
                raise InstanceFormatError(
                    f"capacity {c} not representable on grid 1/{self.grid}")

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def is_regular(self) -> bool:
        return all(c == 1 for c in self.capacities)

    def capacity_of(self, bin_index: int) -> Fraction:
        """Capacity of a bin; bins beyond the declared inventory are unit bins."""
        if bin_index < self.bin_count:
            return self.capacities[bin_index]
        return Fraction(1)


def make_instance(grid: int,
                  sizes: Iterable[Fraction | int],
                  bin_count: Optional[int] = None,
                  capacities: Optional[Sequence[Fraction]] = None,
                  allow_empty: bool = False) -> Instance:
    """Convenience constructor; ``bin_count`` defaults to the item count."""
    items = tuple(Fraction(s) for s in sizes)
    if not items and not allow_empty:
        raise InstanceFormatError("empty instance requires allow_empty")
    if bin_count is None:
        bin_count = len(items)
    if capacities is None:
        capacities = tuple(Fraction(1) for _ in range(bin_count))
    return Instance(grid, items, bin_count, tuple(capacities))


def parse_instance(text: bytes | str) -> Instance:
    """Parse the JSON instance format.

    Schema: ``{"grid": G, "items": [{"size_num": int, "count": int}, ...],
    "bins": m, "capacities_num": [ints]?, "allow_empty": bool?}``.
    Sizes are numerators over the declared grid.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InstanceFormatError("top-level value must be an object")
    try:
        grid = int(obj["grid"])
        raw_items = obj["items"]
        bins = int(obj.get("bins", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"missing or bad field: {exc}") from exc
    allow_empty = bool(obj.get("allow_empty", False))
    sizes: list[Fraction] = []
    for entry in raw_items:
        try:
            num = int(entry["size_num"])
            count = int(entry.get("count", 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceFormatError(f"bad item entry {entry!r}") from exc
        if count < 0:
            raise InstanceFormatError(f"negative count in {entry!r}")
        sizes.extend([grid_value(num, grid)] * count)
    if not sizes and not allow_empty:
        raise InstanceFormatError("no items (set allow_empty for the empty instance)")
    if sizes and bins < 1:
        raise InstanceFormatError("bins must be >= 1 for a non-empty instance")
    cap_nums = obj.get("capacities_num")
    if cap_nums is None:
        capacities = tuple(Fraction(1) for _ in range(bins))
    else:
        if len(cap_nums) != bins:
            raise InstanceFormatError(
                f"{len(cap_nums)} capacities for {bins} bins")
        capacities = tuple(grid_value(int(c), grid) for c in cap_nums)
    return Instance(grid, tuple(sizes), bins, capacities)


def instance_to_json(inst: Instance) -> str:
    """Serialize an Instance back to the JSON instance format."""
    prof = profile(inst)
    obj = {
        "grid": inst.grid,
        "items": [{"size_num": int(s * inst.grid), "count": c}
                  for s, c in zip(prof.sizes, prof.counts)],
        "bins": inst.bin_count,
    }
    if not inst.is_regular:
        obj["capacities_num"] = [int(c * inst.grid) for c in inst.capacities]
    if inst.n == 0:
        obj["allow_empty"] = True
    return json.dumps(obj, sort_keys=True)


@dataclass(frozen=True)
class SizeProfile:
    """Distinct sizes in ascending order with their multiplicities."""

    sizes: tuple[Fraction, ...]
    counts: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def n(self) -> int:
        return sum(self.counts)

    def expand(self) -> tuple[Fraction, ...]:
        """Re-expand to the sorted item multiset."""
        out: list[Fraction] = []
        for s, c in zip(self.sizes, self.counts):
            out.extend([s] * c)
        return tuple(out)


def profile(inst: Instance) -> SizeProfile:
    """Summarize the instance by distinct size, ascending."""
    tally: dict[Fraction, int] = {}
    for s in inst.items:
        tally[s] = tally.get(s, 0) + 1
    sizes = tuple(sorted(tally))
    return SizeProfile(sizes, tuple(tally[s] for s in sizes))


@dataclass(frozen=True)
class Packing:
    """An item-to-bin assignment.

    ``bins_opened`` counts unit-capacity bins that received at least one item;
    pre-opened sub-unit bins never count, matching the costing of the
    irregular problem.
    """

    assignment: tuple[int, ...]
    bins_opened: int

    def to_json(self) -> str:
        return json.dumps({"assignment": list(self.assignment),
                           "bins_opened": self.bins_opened})

    @staticmethod
    def from_json(text: str) -> "Packing":
        obj = json.loads(text)
        return Packing(tuple(int(b) for b in obj["assignment"]),
                       int(obj["bins_opened"]))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    item_index: Optional[int] = None
    bin_index: Optional[int] = None


def opened_count(inst: Instance, assignment: Sequence[int]) -> int:
    """Number of unit-capacity bins receiving at least one item."""
    used = set(assignment)
    return sum(1 for b in used if inst.capacity_of(b) == 1)


def validate_packing(inst: Instance, p: Packing) -> ValidationReport:
    """Check a packing against the instance; reports the first violation."""
    if len(p.assignment) != inst.n:
        return ValidationReport(
            False, f"{len(p.assignment)} assignments for {inst.n} items")
    loads: dict[int, Fraction] = {}
    for i, b in enumerate(p.assignment):
        if b < 0:
            return ValidationReport(False, "negative bin index",
                                    item_index=i, bin_index=b)
        loads[b] = loads.get(b, Fraction(0)) + inst.items[i]
    for b in sorted(loads):
        if loads[b] > inst.capacity_of(b):
            return ValidationReport(
                False, f"bin {b} overflows: load {loads[b]} > "
                       f"capacity {inst.capacity_of(b)}", bin_index=b)
    expected = opened_count(inst, p.assignment)
    if p.bins_opened != expected:
        return ValidationReport(
            False, f"bins_opened={p.bins_opened} but {expected} unit bins used")
    return ValidationReport(True)
