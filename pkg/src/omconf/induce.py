"""Build explicit event relations from distributions, basic relations and partitions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from omconf.core import (
    BasicRelation,
    EventLike,
    EventRelation,
    Partition,
    PossibilityDistribution,
    ProbabilityDistribution,
    bits_of,
)

Distribution = Union[PossibilityDistribution, ProbabilityDistribution]


def _event_index(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def induce_possibility(pi: PossibilityDistribution) -> EventRelation:
    return EventRelation.from_scores(pi.space, pi.event_levels().tolist())


def induce_necessity(pi: PossibilityDistribution) -> EventRelation:
    # N(A) >= N(B) iff Pi(not B) >= Pi(not A); no arithmetic on the levels
    poss = pi.event_levels()
    full = pi.space.full
    idx = _event_index(pi.space.n)
    return EventRelation.from_scores(pi.space, (-poss[full ^ idx]).tolist())


def induce_probability(p: ProbabilityDistribution) -> EventRelation:
    return EventRelation.from_scores(p.space, p.event_masses())


def induce_discrimax(pi: PossibilityDistribution) -> EventRelation:
    poss = pi.event_levels()
    idx = _event_index(pi.space.n)
    a_minus_b = idx[:, None] & ~idx[None, :]
    return EventRelation(pi.space, poss[a_minus_b] >= poss[a_minus_b.T])


def confidence_vector(pl: Distribution, event: EventLike) -> tuple:
    """Per-state values of ``pl`` restricted to the event, bottom elsewhere."""
    values = _values(pl)
    bits = bits_of(event, pl.space)
    zero = values[0] * 0
    return tuple(v if bits >> i & 1 else zero for i, v in enumerate(values))


def _values(pl: Distribution) -> Sequence:
    if isinstance(pl, PossibilityDistribution):
        return pl.levels
    if isinstance(pl, ProbabilityDistribution):
        return pl.weights
    raise TypeError(f"expected a distribution, got {type(pl).__name__}")


def leximax_key(pl: Distribution, event: EventLike) -> tuple:
    """Confidence vector sorted in decreasing order; compare keys lexicographically."""
    return tuple(sorted(confidence_vector(pl, event), reverse=True))


def induce_leximax(pl: Distribution) -> EventRelation:
    keys = [leximax_key(pl, bits) for bits in range(pl.space.size)]
    return EventRelation.from_scores(pl.space, keys)


def basic_from_relation(rel: EventRelation) -> BasicRelation:
    """Restriction of ``rel`` to singletons plus the empty event (as bottom)."""
    n = rel.space.n
    points = [1 << i for i in range(n)] + [0]
    basic = BasicRelation(rel.space, rel.geq[np.ix_(points, points)])
    return basic.check()


def lifted_strict(basic: BasicRelation) -> np.ndarray:
    """Strict part of the relation simply generated by ``basic``.

    ``A |> B`` iff every state of B is strictly below some state of A; the
    empty event is never strictly above anything and ``A |> {}`` iff some
    state of A is strictly above bottom.
    """
    n = basic.space.n
    s = basic.strict_matrix
    idx = _event_index(n)
    size = 1 << n
    dominators = [sum(1 << i for i in range(n) if s[i, j]) for j in range(n + 1)]
    hits = [(idx & d) != 0 for d in dominators]
    strict = np.empty((size, size), dtype=bool)
    strict[:, 0] = hits[n]
    every = np.ones(size, dtype=bool)
    cols = [every] + [None] * (size - 1)
    for b in range(1, size):
        low = b & -b
        col = cols[b ^ low] & hits[low.bit_length() - 1]
        cols[b] = col
        strict[:, b] = col
    return strict


def simply_generate(basic: BasicRelation) -> EventRelation:
    basic.check()
    strict = lifted_strict(basic)
    # completion: A >= B iff not (B |> A)
    return EventRelation(basic.space, ~strict.T)


def rank(event: EventLike, partition: Partition) -> int:
    """1-based index of the first block meeting the event."""
    bits = bits_of(event, partition.space)
    if bits == 0:
        raise ValueError("RANK_UNDEFINED: the empty event has no rank")
    for j, block in enumerate(partition.blocks):
        if block & bits:
            return j + 1
    raise AssertionError("partition does not cover the event")


def upper_approx(event: EventLike, partition: Partition) -> int:
    """Union of the blocks meeting the event, as a canonical index."""
    bits = bits_of(event, partition.space)
    out = 0
    for block in partition.blocks:
        if block & bits:
            out |= block
    return out


def induce_om_partition(partition: Partition) -> EventRelation:
    space = partition.space
    bottom = len(partition.blocks) + 1
    ranks = [bottom] + [rank(bits, partition) for bits in range(1, space.size)]
    return EventRelation.from_scores(space, [-r for r in ranks])


def induce_lexicographic(
    partition: Partition, weights: Sequence[Fraction]
) -> tuple[ProbabilityDistribution, EventRelation]:
    from omconf.axioms import check_COM_P
    from omconf.construct import lexico_scale

    p = lexico_scale(partition, weights)
    rel = induce_probability(p)
    verdict = check_COM_P(rel, partition)
    if not verdict.passed:
        raise AssertionError(f"scaled lexicographic probability breaks COM_P: {verdict}")
    return p, rel


INDUCERS = {
    "possibility": induce_possibility,
    "necessity": induce_necessity,
    "probability": induce_probability,
    "discrimax": induce_discrimax,
    "leximax": induce_leximax,
}
