"""Deterministic enumeration of weak orders (ordered set partitions)."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator

from omconf.core import EventRelation, SizeLimitError, StateSpace, triple_cap
from omconf.construct import StateWeakOrder

MAX_ORDER_STATES = 8
MAX_EVENT_ORDER_STATES = 3


@lru_cache(maxsize=None)
def fubini(k: int) -> int:
    """Number of ordered set partitions of ``k`` elements."""
    if k == 0:
        return 1
    return sum(comb(k, j) * fubini(k - j) for j in range(1, k + 1))


def ordered_set_partitions(k: int) -> Iterator[tuple[int, ...]]:
    """Every ordered partition of ``range(k)`` into non-empty blocks (bit masks).

    The first block is chosen among the non-empty subsets of the remaining
    elements in increasing mask order, recursively.
    """

    def rec(remaining: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        sub = remaining
        blocks = []
        while sub:
            blocks.append(sub)
            sub = (sub - 1) & remaining
        for block in reversed(blocks):
            for rest in rec(remaining & ~block):
                yield (block,) + rest

    yield from rec((1 << k) - 1)


def partition_levels(blocks: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Level of each element; the first block gets the highest level ``len(blocks)``."""
    levels = [0] * k
    top = len(blocks)
    for j, block in enumerate(blocks):
        level = top - j
        for i in range(k):
            if block >> i & 1:
                levels[i] = level
    return tuple(levels)


def default_space(n: int) -> StateSpace:
    return StateSpace([chr(ord("a") + i) if n <= 26 else f"s{i}" for i in range(n)])


def enumerate_state_orders(n: int, space: StateSpace | None = None) -> Iterator[StateWeakOrder]:
    if n > min(MAX_ORDER_STATES, triple_cap()):
        raise SizeLimitError(f"state order enumeration is limited to n <= {MAX_ORDER_STATES}")
    space = space or default_space(n)
    for blocks in ordered_set_partitions(n):
        yield StateWeakOrder(space, partition_levels(blocks, n))


def event_order_levels(n: int) -> Iterator[tuple[int, ...]]:
    """Per-event level tuples of every weak order on the ``2**n`` events."""
    if n > MAX_EVENT_ORDER_STATES:
        raise SizeLimitError(f"event weak order enumeration is limited to n <= {MAX_EVENT_ORDER_STATES}")
    k = 1 << n
    for blocks in ordered_set_partitions(k):
        yield partition_levels(blocks, k)


def enumerate_event_weak_orders(n: int, space: StateSpace | None = None) -> Iterator[EventRelation]:
    space = space or default_space(n)
    for levels in event_order_levels(n):
        yield EventRelation.from_scores(space, levels)
