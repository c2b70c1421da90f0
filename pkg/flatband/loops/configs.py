"""
Simple loops and loop configurations at a base vertex j.

A simple j-loop is a closed walk j -> n_1 -> ... -> n_{k-1} -> j whose
interior vertices avoid j. A loop configuration is a simple loop in which
each interior occurrence may carry an ordered sequence of attached j-loop
configurations. Every attachment adds its insertion vertex to the footprint
and a factor -1 to the sign, so cont = sign * weights * prod_s W_s^mult(s).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.config import get_config
from ..core.errors import ExplosionGuard
from ..graph.model import LatticeVector, Potential, ValidatedGraph

logger = logging.getLogger(__name__)

Footprint = Tuple[Tuple[int, int], ...]


def footprint_of(counter: Mapping[int, int]) -> Footprint:
    """Canonical multiset form: sorted (vertex, multiplicity) pairs"""
    return tuple(sorted((v, m) for v, m in counter.items() if m))


@dataclass(frozen=True, order=True)
class Step:
    """Move to `vertex` across an edge term with `shift`"""

    vertex: int
    shift: LatticeVector
    weight: object = field(default=None, compare=False)

    def encode(self):
        return (self.vertex, self.shift)


@dataclass(frozen=True)
class SimpleLoop:
    base: int
    steps: Tuple[Step, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def interior(self) -> Tuple[int, ...]:
        return tuple(step.vertex for step in self.steps[:-1])

    def encode(self):
        return tuple(step.encode() for step in self.steps)

    def __str__(self):
        path = f"{self.base}"
        for step in self.steps:
            path += f" -{list(step.shift)}-> {step.vertex}"
        return path


@dataclass(frozen=True)
class LoopConfig:
    """Simple loop plus attachments: (interior position, attached configurations) pairs"""

    root: SimpleLoop
    attachments: Tuple[Tuple[int, Tuple['LoopConfig', ...]], ...] = ()

    @property
    def base(self) -> int:
        return self.root.base

    @property
    def is_simple(self) -> bool:
        return not self.attachments

    @cached_property
    def stats(self) -> 'LoopStats':
        return loop_stats(self)

    def encode(self):
        """Preorder serialization used for ordering and deduplication"""
        return (self.root.encode(),
                tuple((pos, tuple(c.encode() for c in seq)) for pos, seq in self.attachments))

    def __str__(self):
        if not self.attachments:
            return str(self.root)
        inner = "; ".join(f"@{pos}: [" + ", ".join(str(c) for c in seq) + "]"
                          for pos, seq in self.attachments)
        return f"{self.root} with {inner}"


@dataclass(frozen=True)
class LoopStats:
    length: int
    quasi: LatticeVector
    footprint: Footprint
    sign: int
    weight_product: object

    @property
    def footprint_size(self) -> int:
        return sum(m for _, m in self.footprint)

    @property
    def distinct(self) -> int:
        return len(self.footprint)

    def cont(self, potential: Potential, j: int):
        """sign * weights * prod W_s^mult for the given potential"""
        factors = potential.W(j)
        value = self.weight_product * self.sign
        for vertex, mult in self.footprint:
            value = value * factors[vertex] ** mult
        return value


def loop_stats(cfg: LoopConfig) -> LoopStats:
    d = len(cfg.root.steps[0].shift)
    quasi = [0] * d
    footprint: Counter = Counter(cfg.root.interior)
    sign = 1
    weight = None
    for step in cfg.root.steps:
        weight = step.weight if weight is None else weight * step.weight
        for k, a in enumerate(step.shift):
            quasi[k] += a
    for position, sequence in cfg.attachments:
        vertex = cfg.root.interior[position]
        for attached in sequence:
            inner = attached.stats
            footprint[vertex] += 1
            footprint.update(dict(inner.footprint))
            sign = -sign * inner.sign
            weight = weight * inner.weight_product
            for k, a in enumerate(inner.quasi):
                quasi[k] += a
    length = cfg.root.length + sum(c.stats.length for _, seq in cfg.attachments for c in seq)
    return LoopStats(length, tuple(quasi), footprint_of(footprint), sign, weight)


class FootprintCap:
    """Per-vertex maximum multiplicity; a uniform int or a vertex map (missing vertices get 0)"""

    def __init__(self, cap: Union[None, int, Mapping[int, int]] = None):
        self.cap = cap

    def limit(self, vertex: int) -> float:
        if self.cap is None:
            return float('inf')
        if isinstance(self.cap, int):
            return self.cap
        return self.cap.get(vertex, 0)

    def admits(self, counter: Mapping[int, int]) -> bool:
        return all(m <= self.limit(v) for v, m in counter.items())


class _EnumerationGuard:
    def __init__(self, cap: Optional[int]):
        self.cap = cap if cap is not None else get_config().explosion_cap
        self.count = 0

    def spend(self, amount: int = 1):
        self.count += amount
        if self.count > self.cap:
            raise ExplosionGuard(f"enumeration exceeded the cap of {self.cap} items; lower the order")


def _simple_loops_of_length(g: ValidatedGraph, j: int, length: int, cap: FootprintCap,
                            guard: _EnumerationGuard) -> Iterator[SimpleLoop]:
    """Depth-first, lexicographic in (vertex, shift) per step"""
    path: List[Step] = []
    visits: Counter = Counter()

    def extend(current: int) -> Iterator[SimpleLoop]:
        remaining = length - len(path)
        for edge in g.adjacency[current]:
            if remaining == 1:
                if edge.target != j:
                    continue
                guard.spend()
                yield SimpleLoop(j, tuple(path) + (Step(j, edge.shift, edge.weight),))
                continue
            if edge.target == j:
                continue
            visits[edge.target] += 1
            if visits[edge.target] <= cap.limit(edge.target):
                path.append(Step(edge.target, edge.shift, edge.weight))
                yield from extend(edge.target)
                path.pop()
            visits[edge.target] -= 1

    yield from extend(j)


def enumerate_simple_loops(g: ValidatedGraph, j: int, max_len: int, cap=None,
                           explosion_cap: Optional[int] = None) -> Iterator[SimpleLoop]:
    """Every simple j-loop of length <= max_len, by length then lexicographically"""
    if max_len < 1:
        raise ValueError("maximal loop length must be at least 1")
    guard = _EnumerationGuard(explosion_cap)
    footprint_cap = cap if isinstance(cap, FootprintCap) else FootprintCap(cap)
    for length in range(1, max_len + 1):
        yield from _simple_loops_of_length(g, j, length, footprint_cap, guard)


class ConfigEnumerator:
    """Memoized generation of all j-loop configurations by length"""

    def __init__(self, g: ValidatedGraph, j: int, cap=None, explosion_cap: Optional[int] = None):
        self.g = g
        self.j = j
        self.cap = cap if isinstance(cap, FootprintCap) else FootprintCap(cap)
        self.guard = _EnumerationGuard(explosion_cap)
        self._configs: Dict[int, List[LoopConfig]] = {}
        self._sequences: Dict[int, List[Tuple[LoopConfig, ...]]] = {0: [()]}
        self._simple: Dict[int, List[SimpleLoop]] = {}

    def simple_loops(self, length: int) -> List[SimpleLoop]:
        if length not in self._simple:
            self._simple[length] = list(_simple_loops_of_length(self.g, self.j, length, self.cap, self.guard))
        return self._simple[length]

    def sequences(self, total: int) -> List[Tuple[LoopConfig, ...]]:
        """Ordered sequences of configurations with lengths summing to total"""
        if total not in self._sequences:
            result = []
            for first in range(1, total + 1):
                for cfg in self.configs(first):
                    for rest in self.sequences(total - first):
                        result.append((cfg,) + rest)
            self.guard.spend(len(result))
            self._sequences[total] = result
        return self._sequences[total]

    def _distributions(self, slots: int, total: int) -> Iterator[Tuple[int, ...]]:
        """Weak compositions of total into `slots` parts, in lexicographic order"""
        if slots == 0:
            if total == 0:
                yield ()
            return
        for first in range(total + 1):
            for rest in self._distributions(slots - 1, total - first):
                yield (first,) + rest

    def configs(self, length: int) -> List[LoopConfig]:
        if length in self._configs:
            return self._configs[length]
        result: List[LoopConfig] = []
        for root_length in range(1, length + 1):
            extra = length - root_length
            for loop in self.simple_loops(root_length):
                slots = root_length - 1
                if extra and slots == 0:
                    continue
                for split in self._distributions(slots, extra):
                    result.extend(self._attach(loop, split))
        self.guard.spend(len(result))
        self._configs[length] = result
        return result

    def _attach(self, loop: SimpleLoop, split: Tuple[int, ...]) -> Iterator[LoopConfig]:
        choices = [self.sequences(m) for m in split]

        def build(position: int, chosen: list) -> Iterator[LoopConfig]:
            if position == len(split):
                cfg = LoopConfig(loop, tuple(chosen))
                counter = Counter(dict(cfg.stats.footprint))
                if self.cap.admits(counter):
                    yield cfg
                return
            if split[position] == 0:
                yield from build(position + 1, chosen)
                return
            for sequence in choices[position]:
                chosen.append((position, sequence))
                yield from build(position + 1, chosen)
                chosen.pop()

        yield from build(0, [])


def enumerate_configs(g: ValidatedGraph, j: int, k: int, cap=None,
                      explosion_cap: Optional[int] = None) -> Iterator[LoopConfig]:
    """
    Every j-loop configuration of total length k exactly once.

    Order: root length, then the root's (vertex, shift) steps, then the
    attachment layout. With a footprint cap, configurations whose footprint
    exceeds it are pruned together with every part that already exceeds it.
    """
    if k < 1:
        raise ValueError("configuration length must be at least 1")
    enumerator = ConfigEnumerator(g, j, cap, explosion_cap)
    yield from enumerator.configs(k)
