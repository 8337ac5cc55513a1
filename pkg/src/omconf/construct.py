"""Distributions realizing the existence results: big-stepped, possibilistic, lexicographic."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from omconf.axioms import AxiomVerdict, Classification, classify
from omconf.core import (
    EventRelation,
    Partition,
    PossibilityDistribution,
    ProbabilityDistribution,
    StateSpace,
    dense_ranks,
)
from omconf.induce import induce_probability


@dataclass(frozen=True)
class StateWeakOrder:
    """Weak order on states as levels 1..k, higher meaning more plausible."""

    space: StateSpace
    levels: tuple[int, ...]

    def __post_init__(self) -> None:
        levels = tuple(int(v) for v in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) != self.space.n:
            raise ValueError(f"expected {self.space.n} levels, got {len(levels)}")
        if set(levels) != set(range(1, max(levels) + 1)):
            raise ValueError(f"levels must occupy 1..k contiguously, got {levels}")

    @classmethod
    def from_classes(cls, space: StateSpace, classes: Sequence[int]) -> "StateWeakOrder":
        """Build from equivalence classes (bit masks) listed most plausible first."""
        k = len(classes)
        levels = [0] * space.n
        for j, block in enumerate(classes):
            for i in range(space.n):
                if block >> i & 1:
                    levels[i] = k - j
        return cls(space, tuple(levels))

    @classmethod
    def parse(cls, text: str, space: Optional[StateSpace] = None) -> "StateWeakOrder":
        """Parse ``"a > b = c > d"``; whitespace is insignificant.

        Without ``space`` the states are declared in order of appearance.
        """
        compact = re.sub(r"\s+", "", text)
        if not compact:
            raise ValueError("empty order string")
        groups = [g.split("=") for g in compact.split(">")]
        names = [name for group in groups for name in group]
        if any(not name for name in names):
            raise ValueError(f"malformed order string {text!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"state repeated in order string {text!r}")
        if space is None:
            space = StateSpace(names)
        elif set(names) != set(space.names):
            raise ValueError(f"order {text!r} must mention every state of {space.names} once")
        return cls.from_classes(space, [space.mask(group) for group in groups])

    @property
    def classes(self) -> list[int]:
        """Equivalence classes as bit masks, most plausible first."""
        k = max(self.levels)
        return [
            sum(1 << i for i, v in enumerate(self.levels) if v == level)
            for level in range(k, 0, -1)
        ]

    def render(self) -> str:
        return " > ".join(
            " = ".join(self.space.members(block)) for block in self.classes
        )

    def as_possibility(self) -> PossibilityDistribution:
        return PossibilityDistribution(self.space, self.levels)


def _big_stepped_weights(levels: Sequence[int]) -> list[int]:
    """Integer class values ``v_k = 1, v_i = 1 + sum_{j>i} |C_j| v_j``; level 0 gets 0."""
    positive = sorted({v for v in levels if v > 0})
    value: dict[int, int] = {0: 0}
    below = 0
    for level in positive:
        v = 1 + below
        value[level] = v
        below += v * sum(1 for x in levels if x == level)
    return [value[v] for v in levels]


def big_stepped_from_order(order: StateWeakOrder) -> ProbabilityDistribution:
    weights = _big_stepped_weights(order.levels)
    return ProbabilityDistribution.from_weights(order.space, weights)


def check_big_stepped(p: ProbabilityDistribution) -> AxiomVerdict:
    """Each positive weight must strictly exceed the sum of all strictly smaller weights.

    Zero-weight states are skipped. The witness is the singleton of the first
    failing state.
    """
    weights = p.weights
    for i, w in enumerate(weights):
        if w == 0:
            continue
        smaller = sum((x for x in weights if x < w), Fraction(0))
        if not w > smaller:
            return AxiomVerdict(
                "big_stepped", False, (1 << i,), f"p({p.space.names[i]}) = {w} <= {smaller}"
            )
    return AxiomVerdict("big_stepped", True)


def possibility_from_prob(p: ProbabilityDistribution) -> PossibilityDistribution:
    positive = sorted({w for w in p.weights if w > 0})
    rank = {w: i + 1 for i, w in enumerate(positive)}
    rank[Fraction(0)] = 0
    return PossibilityDistribution(p.space, tuple(rank[w] for w in p.weights))


def lexico_scale(partition: Partition, weights: Sequence) -> ProbabilityDistribution:
    """Scale in-block weights so each state outweighs every later block together.

    Blocks are processed bottom-up. The last block keeps its weights; block
    ``i`` is multiplied by the least integer ``c`` with ``c * min(w) > T``,
    ``T`` being the mass already assigned below it. The result is normalized.
    """
    space = partition.space
    w = [Fraction(x) for x in weights]
    if len(w) != space.n:
        raise ValueError(f"expected {space.n} weights, got {len(w)}")
    if any(x <= 0 for x in w):
        raise ValueError("in-block weights must be positive")
    scaled = [Fraction(0)] * space.n
    below = Fraction(0)
    for block in reversed(partition.blocks):
        members = [i for i in range(space.n) if block >> i & 1]
        lightest = min(w[i] for i in members)
        factor = (below / lightest).__floor__() + 1
        for i in members:
            scaled[i] = factor * w[i]
        below += sum(scaled[i] for i in members)
    return ProbabilityDistribution(space, tuple(x / below for x in scaled))


class RepresentationError(ValueError):
    """No big-stepped representation could be produced for a relation.

    ``kind`` is ``"PRECONDITION_FAILED"`` when an axiom fails (``verdict``
    holds the failing axiom) or ``"THEOREM_COUNTEREXAMPLE"`` when every axiom
    holds yet the constructed distribution disagrees on ``pair``.
    """

    def __init__(
        self,
        kind: str,
        message: str,
        verdict: Optional[AxiomVerdict] = None,
        pair: Optional[tuple[int, int]] = None,
    ):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.verdict = verdict
        self.pair = pair


_REQUIRED = ("reflexive", "non_trivial", "consistent", "quasi_transitive", "monotonic",
             "complete", "transitive", "ADD", "COM")


def represent_big_stepped(
    rel: EventRelation, classification: Optional[Classification] = None
) -> ProbabilityDistribution:
    info = classification if classification is not None else classify(rel)
    if not info.big_stepped_representable:
        for name in _REQUIRED:
            verdict = info.verdicts[name]
            if not verdict.passed:
                raise RepresentationError(
                    "PRECONDITION_FAILED", verdict.describe(rel), verdict=verdict
                )
    levels = rel.singleton_levels()
    if levels is None or max(levels) == 0:
        raise RepresentationError(
            "THEOREM_COUNTEREXAMPLE", "axioms hold but singleton levels are not extractable"
        )
    p = ProbabilityDistribution.from_weights(rel.space, _big_stepped_weights(levels))
    rebuilt = induce_probability(p)
    if rebuilt != rel:
        diff = (rebuilt.geq != rel.geq).nonzero()
        pair = (int(diff[0][0]), int(diff[1][0]))
        raise RepresentationError(
            "THEOREM_COUNTEREXAMPLE",
            f"big-stepped candidate disagrees on ({rel.space.format(pair[0])}, "
            f"{rel.space.format(pair[1])})",
            pair=pair,
        )
    return p


def order_of(levels: Sequence[int], space: StateSpace) -> StateWeakOrder:
    """Weak order with the same comparisons as arbitrary (comparable) values."""
    ranks = dense_ranks(levels)
    return StateWeakOrder(space, tuple(r + 1 for r in ranks))
