"""Exhaustive axiom checkers for explicit event relations.

Every checker scans its quantifier domain in canonical order and reports the
lexicographically smallest violating tuple of event indices. ``replay``
re-evaluates a witness directly from the axiom's formula, independently of
the vectorized scans, so witnesses can be validated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from omconf.core import (
    BasicRelation,
    BasicRelationError,
    EventRelation,
    Partition,
    matrix_cap,
    require_size,
    triple_cap,
)
from omconf.induce import basic_from_relation, induce_om_partition, lifted_strict

CPOM_READINGS = ("verdict", "strict")
_CHUNK_CELLS = 1 << 20


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    witness: Optional[tuple[int, ...]] = None
    detail: str = ""

    def __post_init__(self) -> None:
        if self.passed != (self.witness is None):
            raise ValueError("a verdict carries a witness exactly when it fails")

    def describe(self, rel: EventRelation) -> str:
        if self.passed:
            return f"{self.axiom}: pass"
        events = ", ".join(rel.space.format(w) for w in self.witness)
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.axiom}: FAIL witness ({events}){extra}"

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "pass": self.passed,
            "witness": None if self.witness is None else list(self.witness),
            "detail": self.detail,
        }


def _ok(axiom: str) -> AxiomVerdict:
    return AxiomVerdict(axiom, True)


def _fail(axiom: str, witness: tuple[int, ...], detail: str = "") -> AxiomVerdict:
    return AxiomVerdict(axiom, False, tuple(int(w) for w in witness), detail)


class _Cube:
    """Shared index tables for scanning all (A, B, C) triples of one relation."""

    def __init__(self, rel: EventRelation):
        require_size(rel.space.n, triple_cap(), "triple axiom scans")
        self.n = rel.space.n
        self.size = rel.space.size
        self.full = rel.space.full
        self.idx = np.arange(self.size, dtype=np.int64)
        self.union = self.idx[:, None] | self.idx[None, :]
        self.disjoint = (self.idx[:, None] & self.idx[None, :]) == 0
        self.g = rel.geq
        self.s = rel.geq & ~rel.geq.T
        self.e = rel.geq & rel.geq.T

    def first(self, violation: Callable[[np.ndarray], np.ndarray]) -> Optional[tuple[int, int, int]]:
        size = self.size
        chunk = max(1, _CHUNK_CELLS // (size * size))
        for start in range(0, size, chunk):
            a = self.idx[start : start + chunk]
            hits = np.flatnonzero(violation(a))
            if hits.size:
                k = int(hits[0])
                i, rest = divmod(k, size * size)
                b, c = divmod(rest, size)
                return int(a[i]), b, c
        return None

    def pairwise_disjoint(self, a: np.ndarray) -> np.ndarray:
        ab = (a[:, None] & self.idx[None, :]) == 0
        return ab[:, :, None] & ab[:, None, :] & self.disjoint[None, :, :]


def _first_pair(mask: np.ndarray) -> Optional[tuple[int, int]]:
    hits = np.flatnonzero(mask)
    if not hits.size:
        return None
    a, b = divmod(int(hits[0]), mask.shape[1])
    return a, b


# ---------------------------------------------------------------- confidence


def check_reflexive(rel: EventRelation) -> AxiomVerdict:
    bad = np.flatnonzero(~np.diag(rel.geq))
    if bad.size:
        return _fail("reflexive", (bad[0],), "A >= A fails")
    return _ok("reflexive")


def check_non_trivial(rel: EventRelation) -> AxiomVerdict:
    full = rel.space.full
    if rel.geq[full, 0] and not rel.geq[0, full]:
        return _ok("non_trivial")
    return _fail("non_trivial", (full, 0), "S > {} fails")


def check_consistent(rel: EventRelation) -> AxiomVerdict:
    full = rel.space.full
    candidates = []
    below_top = np.flatnonzero(~rel.geq[full, :])
    if below_top.size:
        candidates.append((full, int(below_top[0])))
    above_bottom = np.flatnonzero(~rel.geq[:, 0])
    if above_bottom.size:
        candidates.append((int(above_bottom[0]), 0))
    if candidates:
        return _fail("consistent", min(candidates), "S >= A and A >= {} required")
    return _ok("consistent")


def check_quasi_transitive(rel: EventRelation) -> AxiomVerdict:
    cube = _Cube(rel)
    s = cube.s
    hit = cube.first(lambda a: s[a][:, :, None] & s[None, :, :] & ~s[a][:, None, :])
    if hit:
        return _fail("quasi_transitive", hit, "A > B and B > C but not A > C")
    return _ok("quasi_transitive")


def check_monotonic(rel: EventRelation) -> AxiomVerdict:
    cube = _Cube(rel)
    g, idx, union = cube.g, cube.idx, cube.union

    def violation(a: np.ndarray) -> np.ndarray:
        ga = g[a]
        a_or_c = a[:, None] | idx[None, :]
        grow_left = ga[:, :, None] & ~g[a_or_c[:, None, :], idx[None, :, None]]
        shrink_right = g[a[:, None, None], union[None, :, :]] & ~ga[:, :, None]
        return grow_left | shrink_right

    hit = cube.first(violation)
    if hit is None:
        return _ok("monotonic")
    a, b, c = hit
    if g[a, b] and not g[a | c, b]:
        return _fail("monotonic", hit, "A >= B but not A|C >= B")
    return _fail("monotonic", hit, "A >= B|C but not A >= B")


def check_confidence(rel: EventRelation) -> dict[str, AxiomVerdict]:
    verdicts = [
        check_reflexive(rel),
        check_non_trivial(rel),
        check_consistent(rel),
        check_quasi_transitive(rel),
        check_monotonic(rel),
    ]
    return {v.axiom: v for v in verdicts}


def check_def1(rel: EventRelation) -> AxiomVerdict:
    """All confidence-relation clauses folded into one verdict (first failure wins)."""
    for verdict in check_confidence(rel).values():
        if not verdict.passed:
            return AxiomVerdict("DEF1", False, verdict.witness, f"{verdict.axiom}: {verdict.detail}")
    return _ok("DEF1")


# ------------------------------------------------------------ order shape


def check_complete(rel: EventRelation) -> AxiomVerdict:
    hit = _first_pair(~(rel.geq | rel.geq.T))
    if hit:
        return _fail("complete", hit, "A and B incomparable")
    return _ok("complete")


def check_transitive(rel: EventRelation) -> AxiomVerdict:
    cube = _Cube(rel)
    g = cube.g
    hit = cube.first(lambda a: g[a][:, :, None] & g[None, :, :] & ~g[a][:, None, :])
    if hit:
        return _fail("transitive", hit, "A >= B and B >= C but not A >= C")
    return _ok("transitive")


# ------------------------------------------------------------ ADD, NEG, ...


def check_preadditivity(rel: EventRelation) -> AxiomVerdict:
    cube = _Cube(rel)
    g, idx, union = cube.g, cube.idx, cube.union

    def violation(a: np.ndarray) -> np.ndarray:
        free = (a[:, None, None] & union[None, :, :]) == 0
        a_or = a[:, None] | idx[None, :]
        shifted = g[a_or[:, :, None], a_or[:, None, :]]
        return free & (g[None, :, :] != shifted)

    hit = cube.first(violation)
    if hit:
        return _fail("ADD", hit, "B >= C differs from A|B >= A|C")
    return _ok("ADD")


def check_NEG(rel: EventRelation) -> AxiomVerdict:
    cube = _Cube(rel)
    s, union = cube.s, cube.union

    def violation(a: np.ndarray) -> np.ndarray:
        sa = s[a]
        return (
            cube.pairwise_disjoint(a)
            & sa[:, :, None]
            & sa[:, None, :]
            & ~s[a[:, None, None], union[None, :, :]]
        )

    hit = cube.first(violation)
    if hit:
        return _fail("NEG", hit, "A > B and A > C but not A > B|C")
    return _ok("NEG")


def check_CLO(rel: EventRelation, disjoint_only: bool = False) -> AxiomVerdict:
    cube = _Cube(rel)
    e, g, union = cube.e, cube.g, cube.union

    def violation(a: np.ndarray) -> np.ndarray:
        out = e[a][:, :, None] & g[a][:, None, :] & ~e[a[:, None, None], union[None, :, :]]
        if disjoint_only:
            out &= cube.pairwise_disjoint(a)
        return out

    hit = cube.first(violation)
    if hit:
        return _fail("CLO", hit, "A ~ B and A >= C but not A ~ B|C")
    return _ok("CLO")


def _ccs_violation(cube: _Cube, a: np.ndarray) -> np.ndarray:
    s, idx, union = cube.s, cube.idx, cube.union
    a_or = a[:, None] | idx[None, :]
    # s[A|C, B] laid out as (A, B, C) and s[A|B, C] likewise
    left = s[a_or[:, None, :], idx[None, :, None]]
    right = s[a_or[:, :, None], idx[None, None, :]]
    return left & right & ~s[a[:, None, None], union[None, :, :]]


def check_CCS(rel: EventRelation) -> AxiomVerdict:
    cube = _Cube(rel)
    hit = cube.first(lambda a: cube.pairwise_disjoint(a) & _ccs_violation(cube, a))
    if hit:
        return _fail("CCS", hit, "A|C > B and A|B > C but not A > B|C")
    return _ok("CCS")


def check_QUAL(rel: EventRelation) -> AxiomVerdict:
    cube = _Cube(rel)
    hit = cube.first(lambda a: _ccs_violation(cube, a))
    if hit:
        return _fail("QUAL", hit, "A|C > B and A|B > C but not A > B|C")
    return _ok("QUAL")


def check_OM(rel: EventRelation) -> AxiomVerdict:
    for verdict in (check_def1(rel), check_NEG(rel), check_CLO(rel)):
        if not verdict.passed:
            detail = verdict.detail if verdict.axiom == "DEF1" else f"{verdict.axiom}: {verdict.detail}"
            return AxiomVerdict("OM", False, verdict.witness, detail)
    return _ok("OM")


# ------------------------------------------------ order-of-magnitude compat


def check_COM(rel: EventRelation) -> AxiomVerdict:
    """``A |> B`` in the relation simply generated from the singletons implies ``A > B``.

    Raises :class:`BasicRelationError` when the singleton restriction is not a
    basic confidence relation.
    """
    require_size(rel.space.n, matrix_cap(), "COM")
    lifted = lifted_strict(basic_from_relation(rel))
    hit = _first_pair(lifted & ~rel.strict_matrix)
    if hit:
        return _fail("COM", hit, "A |> B but not A > B")
    return _ok("COM")


def check_CPOM(rel: EventRelation, reading: str = "verdict") -> AxiomVerdict:
    """Disjoint pairs must carry the simply generated verdict.

    ``reading="verdict"`` compares full verdicts (|> with >, =. with ~);
    ``reading="strict"`` compares strict parts only.
    """
    if reading not in CPOM_READINGS:
        raise ValueError(f"unknown CPOM reading {reading!r}")
    require_size(rel.space.n, matrix_cap(), "CPOM")
    lifted = lifted_strict(basic_from_relation(rel))
    idx = np.arange(rel.space.size)
    disjoint = (idx[:, None] & idx[None, :]) == 0
    if reading == "verdict":
        mismatch = disjoint & (~lifted.T != rel.geq)
    else:
        mismatch = disjoint & (lifted != rel.strict_matrix)
    hit = _first_pair(mismatch)
    if hit:
        return _fail("CPOM", hit, f"{reading} reading: lifted and relation verdicts differ")
    return _ok("CPOM")


def check_COM_P(rel: EventRelation, partition: Partition) -> AxiomVerdict:
    if partition.space != rel.space:
        raise ValueError("partition and relation use different state spaces")
    lifted = induce_om_partition(partition).strict_matrix
    hit = _first_pair(lifted & ~rel.strict_matrix)
    if hit:
        return _fail("COMP", hit, "A |>_P B but not A > B")
    return _ok("COMP")


# ------------------------------------------------------------ classification


@dataclass(frozen=True)
class Classification:
    confidence_relation: bool
    complete: bool
    transitive: bool
    weak_order: bool
    preadditive: bool
    NEG: bool
    CLO: bool
    CCS: bool
    QUAL: bool
    OM_relation: bool
    comparative_probability: bool
    comparative_possibility: bool
    COM: bool
    CPOM: bool
    big_stepped_representable: bool
    COM_P: Optional[bool] = None
    verdicts: dict = field(default_factory=dict, compare=False, repr=False)

    def flags(self) -> dict[str, Optional[bool]]:
        return {k: v for k, v in self.__dict__.items() if k != "verdicts"}


def classify(
    rel: EventRelation, partition: Optional[Partition] = None, cpom_reading: str = "verdict"
) -> Classification:
    verdicts: dict[str, AxiomVerdict] = dict(check_confidence(rel))
    for verdict in (
        check_complete(rel),
        check_transitive(rel),
        check_preadditivity(rel),
        check_NEG(rel),
        check_CLO(rel),
        check_CCS(rel),
        check_QUAL(rel),
    ):
        verdicts[verdict.axiom] = verdict
    try:
        verdicts["COM"] = check_COM(rel)
        verdicts["CPOM"] = check_CPOM(rel, cpom_reading)
    except BasicRelationError as err:
        verdicts["COM"] = _basic_failure("COM", rel, err)
        verdicts["CPOM"] = _basic_failure("CPOM", rel, err)
    if partition is not None:
        verdicts["COMP"] = check_COM_P(rel, partition)

    def ok(name: str) -> bool:
        return verdicts[name].passed

    confidence = all(ok(k) for k in ("reflexive", "non_trivial", "consistent", "quasi_transitive", "monotonic"))
    complete, transitive = ok("complete"), ok("transitive")
    weak_order = complete and transitive
    om = confidence and ok("NEG") and ok("CLO")
    return Classification(
        confidence_relation=confidence,
        complete=complete,
        transitive=transitive,
        weak_order=weak_order,
        preadditive=ok("ADD"),
        NEG=ok("NEG"),
        CLO=ok("CLO"),
        CCS=ok("CCS"),
        QUAL=ok("QUAL"),
        OM_relation=om,
        comparative_probability=confidence and weak_order and ok("ADD"),
        comparative_possibility=weak_order and om,
        COM=ok("COM"),
        CPOM=ok("CPOM"),
        big_stepped_representable=confidence and weak_order and ok("ADD") and ok("COM"),
        COM_P=None if partition is None else ok("COMP"),
        verdicts=verdicts,
    )


def _basic_failure(axiom: str, rel: EventRelation, err: BasicRelationError) -> AxiomVerdict:
    """Translate a basic-relation witness (state indices, bottom = n) into events."""
    n = rel.space.n
    events = tuple(0 if x == n else 1 << x for x in err.witness)
    return AxiomVerdict(axiom, False, events, str(err))


# ------------------------------------------------------------------- replay


def _lifted_pair(basic: BasicRelation, a: int, b: int) -> bool:
    """Strict simply generated relation on one pair, straight from the quantifiers."""
    n = basic.space.n
    s = basic.strict_matrix
    if a == 0:
        return False
    in_a = [i for i in range(n) if a >> i & 1]
    if b == 0:
        return any(s[i, n] for i in in_a)
    return all(any(s[i, j] for i in in_a) for j in range(n) if b >> j & 1)


def replay(
    axiom: str,
    rel: EventRelation,
    witness: tuple[int, ...],
    partition: Optional[Partition] = None,
    reading: str = "verdict",
) -> bool:
    """True when ``witness`` genuinely violates ``axiom`` in ``rel``."""
    g = lambda x, y: bool(rel.geq[x, y])  # noqa: E731
    s = lambda x, y: g(x, y) and not g(y, x)  # noqa: E731
    e = lambda x, y: g(x, y) and g(y, x)  # noqa: E731
    full = rel.space.full
    w = tuple(int(x) for x in witness)
    if axiom == "reflexive":
        return not g(w[0], w[0])
    if axiom == "non_trivial":
        return not s(full, 0)
    if axiom == "consistent":
        x, y = w
        return (x == full or y == 0) and not g(x, y)
    if axiom == "complete":
        return not g(*w) and not g(w[1], w[0])
    if axiom in ("COM", "CPOM"):
        basic = basic_from_relation(rel)
        a, b = w
        if axiom == "COM":
            return _lifted_pair(basic, a, b) and not s(a, b)
        if a & b:
            return False
        if reading == "verdict":
            return (not _lifted_pair(basic, b, a)) != g(a, b)
        return _lifted_pair(basic, a, b) != s(a, b)
    if axiom == "COMP":
        from omconf.induce import rank

        a, b = w
        lifted = a != 0 and (b == 0 or rank(a, partition) < rank(b, partition))
        return lifted and not s(a, b)
    a, b, c = w
    pairwise = not (a & b or a & c or b & c)
    if axiom == "quasi_transitive":
        return s(a, b) and s(b, c) and not s(a, c)
    if axiom == "transitive":
        return g(a, b) and g(b, c) and not g(a, c)
    if axiom == "monotonic":
        return (g(a, b) and not g(a | c, b)) or (g(a, b | c) and not g(a, b))
    if axiom == "ADD":
        # B and C play symmetric roles; accept the violation in either orientation
        return a & (b | c) == 0 and (g(b, c) != g(a | b, a | c) or g(c, b) != g(a | c, a | b))
    if axiom == "NEG":
        return pairwise and s(a, b) and s(a, c) and not s(a, b | c)
    if axiom == "CLO":
        return e(a, b) and (s(a, c) or e(a, c)) and not e(a, b | c)
    if axiom == "CCS":
        return pairwise and s(a | c, b) and s(a | b, c) and not s(a, b | c)
    if axiom == "QUAL":
        return s(a | c, b) and s(a | b, c) and not s(a, b | c)
    raise ValueError(f"no replay rule for axiom {axiom!r}")


def replay_verdict(
    verdict: AxiomVerdict,
    rel: EventRelation,
    partition: Optional[Partition] = None,
    reading: str = "verdict",
) -> bool:
    """Replay a failing verdict, resolving composite ids (DEF1, OM) to their clause."""
    axiom = verdict.axiom
    if axiom in ("DEF1", "OM"):
        clause = verdict.detail.split(":", 1)[0]
        return replay(clause, rel, verdict.witness)
    return replay(axiom, rel, verdict.witness, partition, reading)


AXIOM_CHECKS = {
    "DEF1": check_def1,
    "ADD": check_preadditivity,
    "NEG": check_NEG,
    "CLO": check_CLO,
    "CCS": check_CCS,
    "QUAL": check_QUAL,
    "OM": check_OM,
    "COM": check_COM,
    "CPOM": check_CPOM,
}
