"""Seeded random generators for distributions and basic relations."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

import numpy as np

from omconf.construct import check_big_stepped
from omconf.core import BasicRelation, ProbabilityDistribution, StateSpace


def rng_for(seed: int, *purpose: object) -> random.Random:
    """Independent, reproducible stream for one purpose under one seed."""
    return random.Random("/".join(str(x) for x in (seed,) + purpose))


def random_levels(rng: random.Random, n: int) -> list[int]:
    """Random weak order on ``n`` items as dense levels 1..k."""
    k = rng.randint(1, n)
    raw = [rng.randint(1, k) for _ in range(n)]
    distinct = sorted(set(raw))
    return [distinct.index(v) + 1 for v in raw]


def random_distribution(rng: random.Random, space: StateSpace, max_weight: int = 6) -> ProbabilityDistribution:
    while True:
        weights = [rng.randint(0, max_weight) for _ in range(space.n)]
        if any(weights):
            return ProbabilityDistribution.from_weights(space, weights)


def random_big_stepped(
    rng: random.Random, space: StateSpace, null_rate: float = 0.15
) -> ProbabilityDistribution:
    """Big-stepped distribution with random order, random step sizes and optional null states.

    Class values are built bottom-up with random slack above the mass already
    placed, then verified; failures are rejected.
    """
    n = space.n
    while True:
        null = [rng.random() < null_rate for _ in range(n)]
        if all(null):
            continue
        live = [i for i in range(n) if not null[i]]
        levels = random_levels(rng, len(live))
        values: dict[int, int] = {}
        below = 0
        for level in sorted(set(levels)):
            v = below + rng.randint(1, below + 3)
            values[level] = v
            below += v * levels.count(level)
        weights = [0] * n
        for i, level in zip(live, levels):
            weights[i] = values[level]
        p = ProbabilityDistribution.from_weights(space, weights)
        if check_big_stepped(p).passed:
            return p


def random_basic_relation(rng: random.Random, space: StateSpace) -> BasicRelation:
    """Complete quasi-transitive basic relation with some state strictly above bottom."""
    n = space.n
    while True:
        g = np.eye(n + 1, dtype=bool)
        for i in range(n):
            for j in range(i + 1, n):
                r = rng.randrange(3)
                g[i, j] = r != 2
                g[j, i] = r != 0
            g[i, n] = True
            g[n, i] = rng.random() < 0.3
        basic = BasicRelation(space, g)
        if basic.violation() is None and basic.has_positive_state():
            return basic


def big_stepped_stream(seed: int, space: StateSpace) -> Iterator[ProbabilityDistribution]:
    rng = rng_for(seed, "big-stepped", space.n)
    while True:
        yield random_big_stepped(rng, space)


def distribution_stream(seed: int, space: StateSpace) -> Iterator[ProbabilityDistribution]:
    rng = rng_for(seed, "distribution", space.n)
    while True:
        yield random_distribution(rng, space)


def basic_relation_stream(seed: int, space: StateSpace) -> Iterator[BasicRelation]:
    rng = rng_for(seed, "basic", space.n)
    while True:
        yield random_basic_relation(rng, space)


def fraction_text(x: Fraction) -> str:
    return str(Fraction(x))
