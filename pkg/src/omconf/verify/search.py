"""Search procedures used by the theorem harness.

``om_completions`` enumerates complete relations consistent with a basic
relation by backtracking over event pairs, pruning with the clauses of an
OM-relation as soon as all pairs they mention are fixed.

``pin_relation`` propagates preadditivity (an equality constraint between
``B >= C`` and ``A|B >= A|C``) from the disjoint pairs fixed by the
simply generated relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from omconf.core import BasicRelation, EventRelation, popcount
from omconf.induce import lifted_strict

# value of the unordered pair (x, y), x < y
_GT, _EQ, _LT = 0, 1, 2


def _pair_index(size: int) -> tuple[list[tuple[int, int]], dict[tuple[int, int], int]]:
    pairs = [(x, y) for x in range(size) for y in range(x + 1, size)]
    pairs.sort(key=lambda p: (popcount(p[0]) + popcount(p[1]), p[1], p[0]))
    return pairs, {p: k for k, p in enumerate(pairs)}


def om_completions(
    basic: BasicRelation, limit: Optional[int] = None, om_clauses: bool = True
) -> tuple[list[EventRelation], int]:
    """All complete relations that pass the OM pruning clauses and agree with ``basic``.

    With ``om_clauses=False`` only quasi-transitivity and monotonicity prune,
    which enumerates every complete monotonic completion instead.

    Returns the relations found and the number of search nodes visited.
    Agreement means the restriction to singletons and the empty event equals
    ``basic`` (the empty event playing the bottom element).
    """
    space = basic.space
    n = space.n
    size = space.size
    full = size - 1
    pairs, pid = _pair_index(size)
    vals = [-1] * len(pairs)

    def g(x: int, y: int) -> bool:
        if x == y:
            return True
        if x < y:
            return vals[pid[x, y]] != _LT
        return vals[pid[y, x]] != _GT

    def s(x: int, y: int) -> bool:
        return g(x, y) and not g(y, x)

    def e(x: int, y: int) -> bool:
        return g(x, y) and g(y, x)

    point = {0: n}
    for i in range(n):
        point[1 << i] = i
    domains: list[list[int]] = []
    for x, y in pairs:
        allowed = {_GT, _EQ, _LT}
        if x in point and y in point:
            bx, by = point[x], point[y]
            xy, yx = bool(basic.geq[bx, by]), bool(basic.geq[by, bx])
            if xy and yx:
                allowed = {_EQ}
            elif xy or yx:
                allowed = {_GT if xy else _LT}
            else:
                allowed = set()
        if x == 0 and y == full:
            allowed &= {_LT}
        if y == full or x == 0:
            allowed.discard(_GT)
        if x & ~y == 0:
            allowed.discard(_GT)
        domains.append(sorted(allowed))

    Clause = Callable[[], bool]
    attached: list[list[Clause]] = [[] for _ in pairs]

    def attach(involved: set[tuple[int, int]], clause: Clause) -> None:
        keys = [pid[min(p), max(p)] for p in involved if p[0] != p[1]]
        if keys:
            attached[max(keys)].append(clause)

    for a in range(size):
        for b in range(size):
            for c in range(size):
                attach({(a, b), (b, c), (a, c)},
                       lambda a=a, b=b, c=c: not (s(a, b) and s(b, c)) or s(a, c))
                attach({(a, b), (a | c, b)},
                       lambda a=a, b=b, c=c: not g(a, b) or g(a | c, b))
                attach({(a, b | c), (a, b)},
                       lambda a=a, b=b, c=c: not g(a, b | c) or g(a, b))
                if not om_clauses:
                    continue
                if not (a & b or a & c or b & c):
                    attach({(a, b), (a, c), (a, b | c)},
                           lambda a=a, b=b, c=c: not (s(a, b) and s(a, c)) or s(a, b | c))
                attach({(a, b), (a, c), (a, b | c)},
                       lambda a=a, b=b, c=c: not (e(a, b) and g(a, c)) or e(a, b | c))

    found: list[EventRelation] = []
    nodes = 0

    def build() -> EventRelation:
        geq = np.eye(size, dtype=bool)
        for (x, y), v in zip(pairs, vals):
            geq[x, y] = v != _LT
            geq[y, x] = v != _GT
        return EventRelation(space, geq)

    def rec(k: int) -> bool:
        nonlocal nodes
        if k == len(pairs):
            found.append(build())
            return limit is not None and len(found) >= limit
        for v in domains[k]:
            nodes += 1
            vals[k] = v
            if all(clause() for clause in attached[k]):
                if rec(k + 1):
                    return True
        vals[k] = -1
        return False

    rec(0)
    return found, nodes


@dataclass(frozen=True)
class PinResult:
    """Outcome of propagating ADD from the disjoint pairs."""

    geq: np.ndarray
    known: np.ndarray
    conflicts: int
    free_pairs: int


def pin_relation(basic: BasicRelation, reading: str = "verdict") -> PinResult:
    """Fix disjoint pairs from the simply generated relation, then close under ADD.

    ADD makes ``B >= C`` and ``A|B >= A|C`` equal whenever ``A`` misses
    ``B|C``; the ordered pairs are grouped with a union-find and each group
    takes the value pinned on its disjoint members. Under ``reading="strict"``
    only strict verdicts are pinned and completeness turns a pair with no
    strict verdict either way into an equivalence.
    """
    n = basic.space.n
    size = 1 << n
    full = size - 1
    parent = list(range(size * size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in range(size):
        for c in range(size):
            rest = full & ~(b | c)
            a = rest
            while a:
                ra, rb = find(b * size + c), find((a | b) * size + (a | c))
                if ra != rb:
                    parent[ra] = rb
                a = (a - 1) & rest

    lifted = lifted_strict(basic)
    pinned: dict[int, set[bool]] = {}
    for x in range(size):
        for y in range(size):
            if x & y:
                continue
            if reading == "verdict":
                value = not lifted[y, x]
            else:
                # strict verdicts only; completeness supplies the rest
                value = bool(lifted[x, y]) or not lifted[y, x]
            pinned.setdefault(find(x * size + y), set()).add(value)

    geq = np.zeros((size, size), dtype=bool)
    known = np.zeros((size, size), dtype=bool)
    conflicts = 0
    for x in range(size):
        for y in range(size):
            values = pinned.get(find(x * size + y))
            if not values:
                continue
            if len(values) > 1:
                conflicts += 1
                continue
            known[x, y] = True
            geq[x, y] = next(iter(values))
    return PinResult(geq, known, conflicts, int((~known).sum()))
