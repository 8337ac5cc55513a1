"""Ordinal confidence relations on the events of a finite state space."""

from omconf.core import (
    BasicRelation,
    Event,
    EventRelation,
    Partition,
    PossibilityDistribution,
    ProbabilityDistribution,
    StateSpace,
    Verdict,
)

__version__ = "0.1.0"

__all__ = [
    "BasicRelation",
    "Event",
    "EventRelation",
    "Partition",
    "PossibilityDistribution",
    "ProbabilityDistribution",
    "StateSpace",
    "Verdict",
]
