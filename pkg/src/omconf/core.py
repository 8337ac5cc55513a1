"""Value types: state spaces, events, distributions and explicit relations.

Events are bit vectors over a :class:`StateSpace`; bit ``i`` is state ``i``.
Internally every module works on the canonical integer index of an event,
:class:`Event` is the checked public wrapper around that integer.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

MAX_STATES = 24
MAX_MATRIX_STATES = 12
MAX_TRIPLE_STATES = 8


class SizeLimitError(ValueError):
    """Raised when an operation is asked to run beyond its documented size cap."""


def _env_cap(default: int) -> int:
    raw = os.environ.get("OMCONF_MAX_N")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return min(default, value)


def state_cap() -> int:
    return _env_cap(MAX_STATES)


def matrix_cap() -> int:
    return _env_cap(MAX_MATRIX_STATES)


def triple_cap() -> int:
    return _env_cap(MAX_TRIPLE_STATES)


def require_size(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise SizeLimitError(f"{what} is limited to n <= {cap} (got n = {n})")


@dataclass(frozen=True)
class StateSpace:
    names: tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a state space needs at least one state")
        require_size(len(names), state_cap(), "StateSpace")
        for name in names:
            if not isinstance(name, str) or not name:
                raise ValueError(f"invalid state label {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate state labels in {names}")

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        """Number of events, ``2**n``."""
        return 1 << len(self.names)

    @property
    def full(self) -> int:
        return (1 << len(self.names)) - 1

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown state {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        bits = 0
        for name in names:
            bits |= 1 << self.index(name)
        return bits

    def event(self, names: Iterable[str] = ()) -> "Event":
        return Event(self, self.mask(names))

    def empty(self) -> "Event":
        return Event(self, 0)

    def whole(self) -> "Event":
        return Event(self, self.full)

    def singleton(self, i: int) -> "Event":
        return Event(self, 1 << i)

    def events(self) -> Iterator["Event"]:
        for bits in range(self.size):
            yield Event(self, bits)

    def members(self, bits: int) -> list[str]:
        return [name for i, name in enumerate(self.names) if bits >> i & 1]

    def format(self, bits: int) -> str:
        return "{" + ",".join(self.members(int(bits))) + "}"


@dataclass(frozen=True)
class Event:
    space: StateSpace
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits <= self.space.full:
            raise ValueError(f"event bits {self.bits:#x} exceed a space of {self.space.n} states")

    def __index__(self) -> int:
        return self.bits

    def __int__(self) -> int:
        return self.bits

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[int]:
        return (i for i in range(self.space.n) if self.bits >> i & 1)

    def __contains__(self, state: Union[int, str]) -> bool:
        if isinstance(state, str):
            state = self.space.index(state)
        return bool(self.bits >> state & 1)

    def __str__(self) -> str:
        return self.space.format(self.bits)

    def _other(self, other: "Event") -> int:
        if not isinstance(other, Event):
            raise TypeError(f"expected an Event, got {type(other).__name__}")
        if other.space.n != self.space.n or other.space != self.space:
            raise ValueError(
                f"events over different state spaces ({self.space.n} vs {other.space.n} states)"
            )
        return other.bits

    def complement(self) -> "Event":
        return Event(self.space, self.space.full & ~self.bits)

    def union(self, other: "Event") -> "Event":
        return Event(self.space, self.bits | self._other(other))

    def intersection(self, other: "Event") -> "Event":
        return Event(self.space, self.bits & self._other(other))

    def difference(self, other: "Event") -> "Event":
        return Event(self.space, self.bits & ~self._other(other))

    def issubset(self, other: "Event") -> bool:
        return self.bits & ~self._other(other) == 0

    def isdisjoint(self, other: "Event") -> bool:
        return self.bits & self._other(other) == 0

    __invert__ = complement
    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset


EventLike = Union[Event, int]


def bits_of(event: EventLike, space: StateSpace | None = None) -> int:
    """Canonical index of ``event``; checks the space when both are known."""
    if isinstance(event, Event):
        if space is not None and event.space != space:
            raise ValueError("event belongs to a different state space")
        return event.bits
    bits = int(event)
    if space is not None and not 0 <= bits <= space.full:
        raise ValueError(f"event index {bits} out of range for {space.n} states")
    return bits


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class PossibilityDistribution:
    """Ordinal possibility levels, 0 meaning impossible.

    Only the order of levels matters; relabelings that preserve it induce the
    same relations.
    """

    space: StateSpace
    levels: tuple[int, ...]

    def __post_init__(self) -> None:
        levels = tuple(int(v) for v in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) != self.space.n:
            raise ValueError(f"expected {self.space.n} levels, got {len(levels)}")
        if any(v < 0 for v in levels):
            raise ValueError("possibility levels must be non-negative")
        if max(levels) == 0:
            raise ValueError("at least one state must be possible (level > 0)")

    @classmethod
    def from_mapping(cls, space: StateSpace, levels: dict[str, int]) -> "PossibilityDistribution":
        return cls(space, tuple(levels.get(name, 0) for name in space.names))

    @property
    def top(self) -> int:
        return max(self.levels)

    def normalized(self) -> "PossibilityDistribution":
        """Same order, levels compressed to 0..k (0 kept for impossible states)."""
        distinct = sorted({v for v in self.levels if v > 0})
        rank = {v: i + 1 for i, v in enumerate(distinct)}
        rank[0] = 0
        return PossibilityDistribution(self.space, tuple(rank[v] for v in self.levels))

    def event_levels(self) -> np.ndarray:
        """``possibility_of`` for every event, indexed canonically."""
        return _max_table(self.levels)


def _max_table(levels: Sequence[int]) -> np.ndarray:
    n = len(levels)
    idx = np.arange(1 << n)
    out = np.zeros(1 << n, dtype=np.int64)
    for i, v in enumerate(levels):
        np.maximum(out, np.where(idx >> i & 1, v, 0), out=out)
    return out


@dataclass(frozen=True)
class ProbabilityDistribution:
    space: StateSpace
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        weights = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != self.space.n:
            raise ValueError(f"expected {self.space.n} weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise ValueError("probability weights must be non-negative")
        total = sum(weights, Fraction(0))
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1 (deficit {1 - total})")

    @classmethod
    def from_weights(cls, space: StateSpace, weights: Sequence) -> "ProbabilityDistribution":
        """Normalize arbitrary non-negative weights to sum to one."""
        weights = [Fraction(w) for w in weights]
        total = sum(weights, Fraction(0))
        if total <= 0:
            raise ValueError("weights must have a positive total")
        return cls(space, tuple(w / total for w in weights))

    def integer_weights(self) -> tuple[list[int], int]:
        """Weights over their common denominator: ``(numerators, denominator)``."""
        den = 1
        for w in self.weights:
            den = den * w.denominator // _gcd(den, w.denominator)
        return [w.numerator * (den // w.denominator) for w in self.weights], den

    def event_masses(self) -> list[int]:
        """Numerators of ``probability_of`` for every event over the common denominator."""
        nums, _ = self.integer_weights()
        masses = [0] * self.space.size
        for bits in range(1, self.space.size):
            low = bits & -bits
            masses[bits] = masses[bits ^ low] + nums[low.bit_length() - 1]
        return masses


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def possibility_of(pi: PossibilityDistribution, event: EventLike) -> int:
    bits = bits_of(event, pi.space)
    return max((v for i, v in enumerate(pi.levels) if bits >> i & 1), default=0)


def probability_of(p: ProbabilityDistribution, event: EventLike) -> Fraction:
    bits = bits_of(event, p.space)
    return sum((w for i, w in enumerate(p.weights) if bits >> i & 1), Fraction(0))


@dataclass(frozen=True)
class Partition:
    """Well-ordered partition; ``blocks[0]`` is the most plausible block."""

    space: StateSpace
    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        blocks = tuple(bits_of(b, self.space) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = 0
        for b in blocks:
            if b == 0:
                raise ValueError("partition blocks must be non-empty")
            if b & seen:
                raise ValueError("partition blocks overlap")
            seen |= b
        if seen != self.space.full:
            missing = self.space.members(self.space.full & ~seen)
            raise ValueError(f"partition does not cover states {missing}")

    @classmethod
    def from_names(cls, space: StateSpace, blocks: Iterable[Iterable[str]]) -> "Partition":
        return cls(space, tuple(space.mask(b) for b in blocks))

    def block_of(self, state: int) -> int:
        for j, b in enumerate(self.blocks):
            if b >> state & 1:
                return j
        raise ValueError(f"state {state} not covered")


class Verdict(enum.Enum):
    STRICT_GREATER = ">"
    EQUIVALENT = "~"
    STRICT_LESS = "<"
    INCOMPARABLE = "?"


@dataclass(frozen=True, eq=False)
class EventRelation:
    """The at-least-as-confident relation on the whole powerset.

    ``geq[A, B]`` is ``A >= B`` with rows and columns indexed by canonical
    event index. Nothing about the relation is assumed at construction.
    """

    space: StateSpace
    geq: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        require_size(self.space.n, matrix_cap(), "EventRelation")
        geq = np.array(self.geq, dtype=bool)
        size = self.space.size
        if geq.shape != (size, size):
            raise ValueError(f"relation matrix must be {size}x{size}, got {geq.shape}")
        geq.setflags(write=False)
        object.__setattr__(self, "geq", geq)

    @classmethod
    def from_scores(cls, space: StateSpace, scores: Sequence) -> "EventRelation":
        """Weak order ``A >= B`` iff ``scores[A] >= scores[B]`` (any totally ordered values)."""
        return cls(space, _geq_from_ranks(dense_ranks(scores)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EventRelation):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.geq, other.geq)

    def __hash__(self) -> int:
        return hash((self.space, self.geq.tobytes()))

    def at(self, a: EventLike, b: EventLike) -> bool:
        return bool(self.geq[bits_of(a, self.space), bits_of(b, self.space)])

    def strict(self, a: EventLike, b: EventLike) -> bool:
        a, b = bits_of(a, self.space), bits_of(b, self.space)
        return bool(self.geq[a, b] and not self.geq[b, a])

    def equiv(self, a: EventLike, b: EventLike) -> bool:
        a, b = bits_of(a, self.space), bits_of(b, self.space)
        return bool(self.geq[a, b] and self.geq[b, a])

    def incomparable(self, a: EventLike, b: EventLike) -> bool:
        a, b = bits_of(a, self.space), bits_of(b, self.space)
        return bool(not self.geq[a, b] and not self.geq[b, a])

    def query(self, a: EventLike, b: EventLike) -> Verdict:
        return relation_query(self, a, b)

    @property
    def strict_matrix(self) -> np.ndarray:
        return self.geq & ~self.geq.T

    @property
    def equiv_matrix(self) -> np.ndarray:
        return self.geq & self.geq.T

    def rows(self) -> list[str]:
        return ["".join("1" if x else "0" for x in row) for row in self.geq]

    def singleton_levels(self) -> tuple[int, ...] | None:
        """Dense levels of the singletons, ``{s} ~ {}`` mapped to 0.

        ``None`` when the restriction to singletons and the empty set is not
        a weak order.
        """
        n = self.space.n
        points = [0] + [1 << i for i in range(n)]
        sub = self.geq[np.ix_(points, points)]
        if not (sub | sub.T).all():
            return None
        if not _transitive(sub):
            return None
        # number of points strictly below, made dense
        below = [int((sub[i] & ~sub[:, i]).sum()) for i in range(n + 1)]
        ranks = dense_ranks(below)
        base = ranks[0]
        levels = tuple(ranks[i + 1] - base for i in range(n))
        if min(levels) < 0:
            return None
        return levels


def _transitive(g: np.ndarray) -> bool:
    gi = g.astype(np.int64)
    return not ((gi @ gi > 0) & ~g).any()


def dense_ranks(scores: Sequence) -> list[int]:
    """Rank of each score among the distinct scores, lowest = 0."""
    distinct = sorted(set(scores))
    rank = {v: i for i, v in enumerate(distinct)}
    return [rank[v] for v in scores]


def _geq_from_ranks(ranks: Sequence[int]) -> np.ndarray:
    r = np.asarray(ranks, dtype=np.int64)
    return r[:, None] >= r[None, :]


def relation_query(rel: EventRelation, a: EventLike, b: EventLike) -> Verdict:
    a, b = bits_of(a, rel.space), bits_of(b, rel.space)
    ab, ba = bool(rel.geq[a, b]), bool(rel.geq[b, a])
    if ab and ba:
        return Verdict.EQUIVALENT
    if ab:
        return Verdict.STRICT_GREATER
    if ba:
        return Verdict.STRICT_LESS
    return Verdict.INCOMPARABLE


BOTTOM = "⊥"


class BasicRelationError(ValueError):
    """A singleton-level relation breaks the basic confidence relation axioms."""

    def __init__(self, code: str, witness: tuple, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.witness = witness


@dataclass(frozen=True, eq=False)
class BasicRelation:
    """Reflexive quasi-transitive relation on the states plus a bottom element.

    ``geq`` is ``(n+1) x (n+1)``; index ``n`` is the bottom element standing
    for the empty event.
    """

    space: StateSpace
    geq: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        geq = np.array(self.geq, dtype=bool)
        m = self.space.n + 1
        if geq.shape != (m, m):
            raise ValueError(f"basic relation matrix must be {m}x{m}, got {geq.shape}")
        geq.setflags(write=False)
        object.__setattr__(self, "geq", geq)

    @classmethod
    def from_levels(cls, space: StateSpace, levels: Sequence[int]) -> "BasicRelation":
        """Complete transitive basic relation; level 0 ties a state with bottom."""
        r = np.array(list(levels) + [0], dtype=np.int64)
        return cls(space, r[:, None] >= r[None, :])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasicRelation):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.geq, other.geq)

    def __hash__(self) -> int:
        return hash((self.space, self.geq.tobytes()))

    @property
    def bottom(self) -> int:
        return self.space.n

    @property
    def strict_matrix(self) -> np.ndarray:
        return self.geq & ~self.geq.T

    def label(self, x: int) -> str:
        return BOTTOM if x == self.space.n else self.space.names[x]

    def is_complete(self) -> bool:
        return bool((self.geq | self.geq.T).all())

    def has_positive_state(self) -> bool:
        """Some state lies strictly above bottom."""
        s = self.strict_matrix
        return bool(s[: self.space.n, self.space.n].any())

    def violation(self) -> tuple[str, tuple, str] | None:
        """First broken axiom as ``(code, witness, message)``, or ``None``."""
        g = self.geq
        s = self.strict_matrix
        m = self.space.n + 1
        bot = self.space.n
        for x in range(m):
            if not g[x, x]:
                return "REFLEXIVITY_VIOLATED", (x,), f"{self.label(x)} is not related to itself"
        for x in range(bot):
            if s[bot, x]:
                return (
                    "NON_TRIVIALITY_VIOLATED",
                    (bot, x),
                    f"{BOTTOM} is strictly above {self.label(x)}",
                )
        for x in range(bot):
            if not g[x, bot]:
                return "CONSISTENCY_VIOLATED", (x, bot), f"{self.label(x)} is not above {BOTTOM}"
        for x in range(m):
            for y in range(m):
                if not s[x, y]:
                    continue
                for z in range(m):
                    if s[y, z] and not s[x, z]:
                        return (
                            "QUASI_TRANSITIVITY_VIOLATED",
                            (x, y, z),
                            f"{self.label(x)} > {self.label(y)} > {self.label(z)} "
                            f"but not {self.label(x)} > {self.label(z)}",
                        )
        return None

    def check(self) -> "BasicRelation":
        found = self.violation()
        if found is not None:
            raise BasicRelationError(*found)
        return self
