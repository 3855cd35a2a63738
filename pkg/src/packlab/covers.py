"""Bin-configuration enumeration and exact minimum multi-cover.

A configuration is a per-size count vector for one unit bin whose total length
lies in [1-delta, 1].  A cover is a multiset of configurations whose
component-wise mass sums dominate a target vector; min_cover finds a smallest
one by branch-and-bound over configuration multiplicities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import PackLabError, SizeProfile


class ConfigExplosion(PackLabError):
    def __init__(self, cap: int, found: int):
        super().__init__(f"more than {cap} configurations (stopped at {found})")
        self.cap = cap
        self.found = found


class Uncoverable(PackLabError):
    """Some positive target component has no configuration covering it."""


@dataclass(frozen=True)
class BinConfig:
    """Contents of one unit bin as counts per distinct size."""

    counts: tuple[int, ...]
    sizes: tuple[Fraction, ...]

    def mass(self, i: int) -> Fraction:
        return self.counts[i] * self.sizes[i]

    @property
    def length(self) -> Fraction:
        return sum((c * s for c, s in zip(self.counts, self.sizes)),
                   Fraction(0))


@dataclass(frozen=True)
class ConfigSet:
    delta: Fraction
    sizes: tuple[Fraction, ...]
    configs: tuple[BinConfig, ...]

    def __len__(self) -> int:
        return len(self.configs)


@dataclass(frozen=True)
class SegmentVector:
    """Per-size mass targets; length is the component sum."""

    sizes: tuple[Fraction, ...]
    target: tuple[Fraction, ...]

    @property
    def length(self) -> Fraction:
        return sum(self.target, Fraction(0))

    @property
    def k(self) -> int:
        return len(self.sizes)


@dataclass
class Cover:
    """Multiset of configurations; ``optimal`` is False for budget-cut incumbents."""

    multiplicities: dict[BinConfig, int] = field(default_factory=dict)
    optimal: bool = True

    @property
    def size(self) -> int:
        return sum(self.multiplicities.values())

    def mass_sum(self, i: int) -> Fraction:
        return sum((cfg.mass(i) * x for cfg, x in self.multiplicities.items()),
                   Fraction(0))

    def dominates(self, seg: SegmentVector) -> bool:
        return all(self.mass_sum(i) >= t for i, t in enumerate(seg.target))

    def to_json_obj(self) -> list[dict]:
        items = sorted(self.multiplicities.items(),
                       key=lambda kv: kv[0].counts)
        return [{"counts": list(cfg.counts), "multiplicity": x}
                for cfg, x in items]


def enumerate_configs(prof: SizeProfile, delta: Fraction,
                      cap: int = 200_000) -> ConfigSet:
    """All count vectors with length in [1-delta, 1] and counts_i <= n_i.

    Depth-first over sizes in ascending order.  Zero-size classes are pinned
    to count 0: they contribute no mass and are packed for free elsewhere.
    """
    delta = Fraction(delta)
    if not 0 < delta <= Fraction(1, 2):
        raise ValueError(f"delta must be in (0, 1/2], got {delta}")
    if cap < 1:
        raise ValueError("cap must be positive")
    sizes = prof.sizes
    found: list[BinConfig] = []
    counts = [0] * len(sizes)
    low = 1 - delta

    def dfs(idx: int, length: Fraction) -> None:
        if idx == len(sizes):
            if length >= low:
                if len(found) >= cap:
                    raise ConfigExplosion(cap, len(found))
                found.append(BinConfig(tuple(counts), sizes))
            return
        s = sizes[idx]
        if s == 0:
            dfs(idx + 1, length)
            return
        top = min(prof.counts[idx], int((1 - length) / s))
        for c in range(top + 1):
            counts[idx] = c
            dfs(idx + 1, length + c * s)
        counts[idx] = 0

    dfs(0, Fraction(0))
    return ConfigSet(delta, sizes, tuple(found))


def cover_union(a: Cover, b: Cover) -> Cover:
    """Multiplicity-wise sum; sizes add."""
    for cfg in b.multiplicities:
        if a.multiplicities and cfg.sizes != next(iter(a.multiplicities)).sizes:
            raise ValueError("covers are over different size profiles")
    merged = dict(a.multiplicities)
    for cfg, x in b.multiplicities.items():
        merged[cfg] = merged.get(cfg, 0) + x
    return Cover(merged, optimal=a.optimal and b.optimal)


def scaled_cover(c: Cover, factor: int) -> Cover:
    if factor < 0:
        raise ValueError("factor must be non-negative")
    if factor == 0:
        return Cover({}, optimal=c.optimal)
    return Cover({cfg: x * factor for cfg, x in c.multiplicities.items()},
                 optimal=c.optimal)


def _greedy_cover(target: list[Fraction],
                  configs: tuple[BinConfig, ...]) -> Optional[dict[BinConfig, int]]:
    """Initial incumbent: repeatedly take the config with maximal useful mass."""
    t = list(target)
    chosen: dict[BinConfig, int] = {}
    while any(x > 0 for x in t):
        best = None
        best_gain = Fraction(0)
        for cfg in configs:
            gain = sum((min(cfg.mass(i), t[i])
                        for i in range(len(t)) if t[i] > 0), Fraction(0))
            if gain > best_gain:
                best_gain = gain
                best = cfg
        if best is None:
            return None
        chosen[best] = chosen.get(best, 0) + 1
        for i in range(len(t)):
            t[i] = max(Fraction(0), t[i] - best.mass(i))
    return chosen


def min_cover(target: SegmentVector, configs: ConfigSet,
              node_budget: int = 2_000_000) -> Cover:
    """Exact smallest cover of ``target`` by branch-and-bound.

    Branches on configurations in order of decreasing length, choosing the
    multiplicity of each from its upper bound down to zero.  The bound at a
    node is the larger of the remaining-volume bound (every bin holds at most
    length 1) and the per-component bound ceil(t_i / max_j mass_ij).  All
    arithmetic is integer on a common denominator of the grid quantities.
    """
    k = target.k
    if configs.sizes != target.sizes:
        raise ValueError("config set and target use different size profiles")
    if all(x <= 0 for x in target.target):
        return Cover({})

    # common denominator: exact integers for masses, lengths and targets
    scale = 1
    for x in list(target.target) + list(target.sizes):
        scale = math.lcm(scale, Fraction(x).denominator)
    t0 = [max(0, int(x * scale)) for x in target.target]

    ordered = sorted(configs.configs,
                     key=lambda cfg: (-cfg.length, cfg.counts))
    n_cfg = len(ordered)
    masses = [[int(cfg.mass(i) * scale) for i in range(k)] for cfg in ordered]

    max_mass = [0] * k
    for row in masses:
        for i in range(k):
            if row[i] > max_mass[i]:
                max_mass[i] = row[i]
    for i in range(k):
        if t0[i] > 0 and max_mass[i] == 0:
            raise Uncoverable(
                f"no configuration covers size {target.sizes[i]}")

    # coverage available from the suffix starting at each index, per component
    suffix_covers = [[False] * k for _ in range(n_cfg + 1)]
    for idx in range(n_cfg - 1, -1, -1):
        for i in range(k):
            suffix_covers[idx][i] = (suffix_covers[idx + 1][i]
                                     or masses[idx][i] > 0)

    def bound(t: list[int]) -> int:
        b = -(-sum(x for x in t if x > 0) // scale)
        for i in range(k):
            if t[i] > 0:
                per = -(-t[i] // max_mass[i])
                if per > b:
                    b = per
        return b

    greedy = _greedy_cover([Fraction(x, scale) for x in t0], tuple(ordered))
    best_idx: dict[int, int] = {}
    best_size: Optional[int] = None
    if greedy is not None:
        pos = {cfg: j for j, cfg in enumerate(ordered)}
        best_idx = {pos[cfg]: x for cfg, x in greedy.items()}
        best_size = sum(best_idx.values())
    nodes = 0
    exhausted = False
    chosen: dict[int, int] = {}

    def dfs(idx: int, used: int, t: list[int]) -> None:
        nonlocal best_idx, best_size, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        if all(x <= 0 for x in t):
            if best_size is None or used < best_size:
                best_idx = dict(chosen)
                best_size = used
            return
        if idx == n_cfg:
            return
        cover_flags = suffix_covers[idx]
        for i in range(k):
            if t[i] > 0 and not cover_flags[i]:
                return
        if best_size is not None and used + bound(t) >= best_size:
            return
        row = masses[idx]
        ub = 0
        for i in range(k):
            if row[i] > 0 and t[i] > 0:
                need = -(-t[i] // row[i])
                if need > ub:
                    ub = need
        if best_size is not None:
            ub = min(ub, best_size - used - 1)
        for x in range(ub, 0, -1):
            chosen[idx] = x
            dfs(idx + 1, used + x, [t[i] - x * row[i] for i in range(k)])
            if exhausted:
                break
        chosen.pop(idx, None)
        if not exhausted:
            dfs(idx + 1, used, t)

    dfs(0, 0, t0)
    if best_size is None:
        raise Uncoverable("search exhausted the node budget before any cover")
    return Cover({ordered[j]: x for j, x in best_idx.items()},
                 optimal=not exhausted)
