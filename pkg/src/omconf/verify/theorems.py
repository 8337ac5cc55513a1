"""Brute-force checks of the characterization results at small sizes.

Exhaustive modes are proofs for the sizes they cover; sampled modes are
seeded smoke tests. Every report records which one it ran.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from omconf.axioms import (
    AxiomVerdict,
    check_CLO,
    check_COM,
    check_COM_P,
    check_CPOM,
    check_NEG,
    check_complete,
    check_confidence,
    check_def1,
    check_preadditivity,
    check_transitive,
    classify,
)
from omconf.construct import (
    RepresentationError,
    StateWeakOrder,
    _big_stepped_weights,
    big_stepped_from_order,
    check_big_stepped,
    lexico_scale,
    possibility_from_prob,
    represent_big_stepped,
)
from omconf.core import (
    BasicRelation,
    BasicRelationError,
    EventRelation,
    Partition,
    PossibilityDistribution,
    ProbabilityDistribution,
    StateSpace,
)
from omconf.induce import (
    basic_from_relation,
    induce_discrimax,
    induce_leximax,
    induce_necessity,
    induce_possibility,
    induce_probability,
    simply_generate,
)
from omconf.verify.enumerate import (
    default_space,
    enumerate_state_orders,
    event_order_levels,
    ordered_set_partitions,
    partition_levels,
)
from omconf.verify.report import TheoremReport
from omconf.verify.sampling import random_big_stepped, rng_for
from omconf.verify.search import om_completions, pin_relation

CONFIDENCE_CLAUSES = ("reflexive", "non_trivial", "consistent", "quasi_transitive", "monotonic")


# ------------------------------------------------------------- records


def rel_record(rel: EventRelation) -> dict:
    return {"states": list(rel.space.names), "geq": rel.rows()}


def dist_record(p: ProbabilityDistribution) -> dict:
    return {"states": list(p.space.names), "weights": [str(w) for w in p.weights]}


def pi_record(pi: PossibilityDistribution) -> dict:
    return {"states": list(pi.space.names), "levels": list(pi.levels)}


def pair_record(rel: EventRelation, a: int, b: int) -> list[str]:
    return [rel.space.format(a), rel.space.format(b)]


def _first_pair(mask: np.ndarray) -> Optional[tuple[int, int]]:
    hits = np.flatnonzero(mask)
    if not hits.size:
        return None
    return divmod(int(hits[0]), mask.shape[1])


def _disagreement(left: EventRelation, right: EventRelation) -> Optional[tuple[int, int]]:
    return _first_pair(left.geq != right.geq)


# ------------------------------------------------------------- corpora


def possibility_corpus(n: int) -> Iterator[PossibilityDistribution]:
    """Every possibility ordering on ``n`` states, with and without a bottom class of impossible states."""
    space = default_space(n)
    for blocks in ordered_set_partitions(n):
        levels = partition_levels(blocks, n)
        yield PossibilityDistribution(space, levels)
        if len(blocks) > 1:
            yield PossibilityDistribution(space, tuple(v - 1 for v in levels))


@dataclass(frozen=True)
class CorpusEntry:
    rel: EventRelation
    verdicts: dict

    def ok(self, *names: str) -> bool:
        return all(self.verdicts[name].passed for name in names)

    @property
    def confidence(self) -> bool:
        return self.ok(*CONFIDENCE_CLAUSES)


@dataclass(frozen=True)
class CorpusScan:
    n: int
    instances: int
    filtered_out: int
    entries: tuple[CorpusEntry, ...]


def _inclusion_edges(n: int) -> list[tuple[int, int]]:
    size = 1 << n
    return [(e, e | 1 << i) for e in range(size) for i in range(n) if not e >> i & 1]


@lru_cache(maxsize=2)
def scan_event_corpus(n: int = 3) -> CorpusScan:
    """Check every weak order on the events of an ``n``-state space.

    Weak orders where ``S > {}`` fails, ``S`` is not on top, ``{}`` is not at
    the bottom, or a superset falls below a subset cannot be confidence
    relations (reflexivity and monotonicity give ``A <= B => B >= A``), so
    they are counted but not run through the full checkers.
    """
    space = default_space(n)
    full = space.full
    edges = _inclusion_edges(n)
    entries = []
    instances = 0
    for levels in event_order_levels(n):
        instances += 1
        top = max(levels)
        if levels[full] != top or levels[0] != 1 or top == 1:
            continue
        if any(levels[b] < levels[a] for a, b in edges):
            continue
        rel = EventRelation.from_scores(space, levels)
        verdicts = dict(check_confidence(rel))
        verdicts["ADD"] = check_preadditivity(rel)
        verdicts["NEG"] = check_NEG(rel)
        verdicts["CLO"] = check_CLO(rel)
        try:
            verdicts["COM"] = check_COM(rel)
        except BasicRelationError as err:
            verdicts["COM"] = AxiomVerdict("COM", False, (0,), str(err))
        entries.append(CorpusEntry(rel, verdicts))
    return CorpusScan(n, instances, instances - len(entries), tuple(entries))


# ------------------------------------------------------------- Theorem 1


def singleton_pattern(levels: tuple[int, ...]) -> str:
    """Shape of the singleton order, e.g. ``s>s~s>0~s`` (0 is the empty event)."""
    live = sorted((v for v in levels if v > 0), reverse=True)
    parts = []
    for i, v in enumerate(live):
        if i:
            parts.append("~" if v == live[i - 1] else ">")
        parts.append("s")
    text = "".join(parts) + ">0"
    return text + "~s" * sum(1 for v in levels if v == 0)


def clo_shape_ok(levels: tuple[int, ...]) -> bool:
    """Non-null singletons strictly ordered, all others tied with the empty event."""
    live = [v for v in levels if v > 0]
    return len(set(live)) == len(live)


def neg_shape_ok(levels: tuple[int, ...]) -> bool:
    """Strict chain of non-null singletons except possibly among the last three."""
    live = sorted((v for v in levels if v > 0), reverse=True)
    return all(live[i] > live[i + 1] for i in range(len(live) - 3))


def _disjoint_clo_taxonomy(scan: CorpusScan) -> dict:
    """Informational: the CLO shape under the reading restricted to pairwise-disjoint triples."""
    taxonomy: dict[str, int] = {}
    off_shape = 0
    for entry in scan.entries:
        if entry.confidence and entry.ok("ADD") and check_CLO(entry.rel, disjoint_only=True).passed:
            levels = entry.rel.singleton_levels()
            pattern = singleton_pattern(levels)
            taxonomy[pattern] = taxonomy.get(pattern, 0) + 1
            off_shape += not clo_shape_ok(levels)
    return {"taxonomy": dict(sorted(taxonomy.items())), "off_shape": off_shape}


def verify_theorem_1(n: int = 3, mode: str = "exhaustive", samples: int = 200, seed: int = 0) -> TheoremReport:
    start = time.perf_counter()
    taxonomy: dict[str, dict[str, int]] = {"CLO": {}, "NEG": {}}
    if mode == "exhaustive":
        if n != 3:
            raise ValueError("exhaustive Theorem 1 scan runs at n = 3")
        scan = scan_event_corpus(n)
        report = TheoremReport(
            "1", f"all {scan.instances} weak orders on the events of {n} states", mode
        )
        report.instances = scan.instances
        candidates = (
            (entry.rel, entry.ok("CLO"), entry.ok("NEG"))
            for entry in scan.entries
            if entry.confidence and entry.ok("ADD")
        )
        report.details["prefiltered"] = scan.filtered_out
        report.details["disjoint_CLO_reading"] = _disjoint_clo_taxonomy(scan)
    else:
        space = default_space(n)
        report = TheoremReport("1", f"{samples} random comparative probabilities on {n} states", mode, seed=seed)
        rng = rng_for(seed, "theorem1", n)

        def sampled():
            for _ in range(samples):
                weights = [rng.randint(0, 4) for _ in range(n)]
                if not any(weights):
                    weights[0] = 1
                rel = induce_probability(ProbabilityDistribution.from_weights(space, weights))
                yield rel, check_CLO(rel).passed, check_NEG(rel).passed

        candidates = sampled()
        report.instances = samples

    comparative = 0
    for rel, clo, neg in candidates:
        comparative += 1
        levels = rel.singleton_levels()
        pattern = singleton_pattern(levels)
        if clo:
            taxonomy["CLO"][pattern] = taxonomy["CLO"].get(pattern, 0) + 1
            if not clo_shape_ok(levels):
                report.add_counterexample({"check": "CLO shape", "relation": rel_record(rel), "pattern": pattern})
        if neg:
            taxonomy["NEG"][pattern] = taxonomy["NEG"].get(pattern, 0) + 1
            if not neg_shape_ok(levels):
                report.add_counterexample({"check": "NEG shape", "relation": rel_record(rel), "pattern": pattern})
    report.details["comparative_probabilities"] = comparative
    report.details["taxonomy"] = {k: dict(sorted(v.items())) for k, v in taxonomy.items()}

    s3 = default_space(3)
    uniform = induce_probability(ProbabilityDistribution.from_weights(s3, [1, 1, 1]))
    verdict = check_CLO(uniform)
    report.add_control(
        "uniform probability fails CLO",
        not verdict.passed,
        witness=None if verdict.passed else list(verdict.witness),
    )
    report.add_control("CLO shape rejects tied singletons", not clo_shape_ok((1, 1, 1)))
    report.add_control("NEG shape rejects a tie above the last three", not neg_shape_ok((4, 4, 3, 2, 1)))
    report.elapsed = time.perf_counter() - start
    return report.finish()


# ------------------------------------------------------------- Theorem 2


def verify_theorem_2(
    n: int = 4, samples: int = 500, seed: int = 0, sample_sizes: tuple[int, ...] = (5, 6)
) -> TheoremReport:
    """Leximax on confidence vectors versus big-stepped probability.

    Converse: every state order up to ``n`` states through the canonical
    big-stepped construction. Forward: the constructed distributions plus
    ``samples`` random big-stepped distributions per size in ``sample_sizes``.
    """
    start = time.perf_counter()
    report = TheoremReport(
        "2",
        f"all state orders for n <= {n} (exhaustive); {samples} random big-stepped "
        f"distributions for each n in {list(sample_sizes)} (sampled)",
        "mixed",
        seed=seed,
    )
    disagreeing_pairs = 0
    for k in range(1, n + 1):
        for order in enumerate_state_orders(k):
            p = big_stepped_from_order(order)
            rel = induce_probability(p)
            report.instances += 2
            for label, other in (
                ("converse", induce_leximax(order.as_possibility())),
                ("forward", induce_leximax(p)),
            ):
                diff = rel.geq != other.geq
                if diff.any():
                    disagreeing_pairs += int(diff.sum())
                    a, b = _first_pair(diff)
                    report.add_counterexample(
                        {"check": label, "order": order.render(), "distribution": dist_record(p),
                         "pair": pair_record(rel, a, b)}
                    )
    for k in sample_sizes:
        space = default_space(k)
        rng = rng_for(seed, "theorem2", k)
        for _ in range(samples):
            p = random_big_stepped(rng, space)
            report.instances += 1
            if not check_big_stepped(p).passed:
                report.add_counterexample({"check": "generator", "distribution": dist_record(p)})
                continue
            rel, lex = induce_probability(p), induce_leximax(p)
            diff = rel.geq != lex.geq
            if diff.any():
                disagreeing_pairs += int(diff.sum())
                a, b = _first_pair(diff)
                report.add_counterexample(
                    {"check": "forward", "distribution": dist_record(p), "pair": pair_record(rel, a, b)}
                )
    report.details["disagreeing_pairs"] = disagreeing_pairs

    s3 = default_space(3)
    control = ProbabilityDistribution(s3, (Fraction(1, 2), Fraction(3, 10), Fraction(1, 5)))
    hit = _disagreement(induce_probability(control), induce_leximax(control))
    report.add_control(
        "non-big-stepped p=(1/2,3/10,1/5) disagrees with leximax",
        hit is not None,
        pair=None if hit is None else list(hit),
    )
    report.elapsed = time.perf_counter() - start
    return report.finish()


# ------------------------------------------------------------- Theorem 3


def complete_basic_relations(n: int) -> Iterator[BasicRelation]:
    """Complete quasi-transitive basic relations on ``n`` states (bottom last).

    Pairs of states take one of three verdicts, a state versus bottom is
    either strictly above or tied; candidates breaking quasi-transitivity are
    dropped.
    """
    space = default_space(n)
    state_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for code in range(3 ** len(state_pairs)):
        g = np.eye(n + 1, dtype=bool)
        for i, j in state_pairs:
            code, r = divmod(code, 3)
            g[i, j] = r != 2
            g[j, i] = r != 0
        g[:n, n] = True
        for mask in range(1 << n):
            gg = g.copy()
            for i in range(n):
                gg[n, i] = bool(mask >> i & 1)
            basic = BasicRelation(space, gg)
            if basic.violation() is None:
                yield basic


def consistent_with(rel: EventRelation, basic: BasicRelation) -> bool:
    """The restriction of ``rel`` to singletons and the empty event is ``basic``."""
    n = rel.space.n
    points = [1 << i for i in range(n)] + [0]
    return bool(np.array_equal(rel.geq[np.ix_(points, points)], basic.geq))


def order_basic_relations(n: int) -> Iterator[BasicRelation]:
    """Basic relations of every state weak order on ``n`` states, with and without a null class."""
    for pi in possibility_corpus(n):
        yield BasicRelation.from_levels(pi.space, pi.levels)


def null_state_above_state(basic: BasicRelation) -> bool:
    """Some state tied with bottom is strictly above another state.

    No monotonic relation restricts to such a basic relation: ``{} >= {s}``
    forces ``{t} >= {s}`` for every state ``t``.
    """
    n = basic.space.n
    tied = basic.geq[n, :n]
    return bool((tied[:, None] & basic.strict_matrix[:n, :n]).any())


def basic_record(basic: BasicRelation) -> dict:
    return {"states": list(basic.space.names), "geq": ["".join("1" if v else "0" for v in row) for row in basic.geq]}


def verify_theorem_3(
    n: int = 4, unique_n: int = 3, basics: str = "quasi", experimental: bool = False, seed: int = 0
) -> TheoremReport:
    """Simple generation versus consistent OM-relations for complete basic relations.

    ``basics="orders"`` ranges over the basic relations of state weak orders;
    ``basics="quasi"`` over every complete quasi-transitive basic relation
    with a state above bottom, including intransitive indifference;
    ``basics="realizable"`` drops from those the ones no monotonic relation
    restricts to (a state tied with bottom above another state).
    """
    from omconf.axioms import check_OM

    labels = {
        "orders": "state weak orders",
        "quasi": "complete quasi-transitive basic relations",
        "realizable": "complete quasi-transitive basic relations with null states at the bottom",
    }
    if basics not in labels:
        raise ValueError(f"unknown basic-relation scope {basics!r}")
    start = time.perf_counter()
    label = labels[basics]
    report = TheoremReport(
        "3",
        f"{label} with a state above bottom, n <= {n} (generation); "
        f"backtracking over complete monotonic relations for n <= {unique_n} (uniqueness)",
        "exhaustive",
    )
    generated = unique_checked = degenerate = excluded = 0
    causes: dict[str, int] = {}
    for k in range(1, n + 1):
        source = order_basic_relations(k) if basics == "orders" else complete_basic_relations(k)
        for basic in source:
            if not basic.has_positive_state():
                degenerate += 1
                continue
            unrealizable = null_state_above_state(basic)
            if unrealizable and basics == "realizable":
                excluded += 1
                continue
            cause = "null state above a state" if unrealizable else "intransitive indifference"
            rel = simply_generate(basic)
            generated += 1
            report.instances += 1
            om = check_OM(rel)
            if not om.passed or not consistent_with(rel, basic):
                causes[cause] = causes.get(cause, 0) + 1
                report.add_counterexample(
                    {"check": "simply generated is a consistent OM-relation", "basic": basic_record(basic),
                     "cause": cause, "relation": rel_record(rel), "verdict": om.to_dict()}
                )
            if k <= unique_n:
                found, _ = om_completions(basic)
                confirmed = [r for r in found if check_OM(r).passed and consistent_with(r, basic)]
                unique_checked += 1
                report.instances += 1
                if len(confirmed) != 1 or confirmed[0] != rel:
                    report.add_counterexample(
                        {"check": "unique consistent OM-relation", "basic": basic_record(basic),
                         "cause": cause, "found": len(confirmed)}
                    )
    report.details["basic_relations_generated"] = generated
    report.details["uniqueness_searches"] = unique_checked
    report.details["skipped_all_states_tied_with_bottom"] = degenerate
    report.details["counterexamples_by_cause"] = dict(sorted(causes.items()))
    if basics == "realizable":
        report.details["excluded_null_state_above_state"] = excluded
    if experimental:
        report.details["experimental_incomplete_basics"] = explore_incomplete_basics(seed=seed)

    b3 = BasicRelation.from_levels(default_space(3), (3, 2, 1))
    loose, _ = om_completions(b3, om_clauses=False)
    report.add_control(
        "without NEG/CLO pruning several completions exist", len(loose) > 1, completions=len(loose)
    )
    report.elapsed = time.perf_counter() - start
    return report.finish()


def explore_incomplete_basics(n: int = 3, samples: int = 20, seed: int = 0) -> dict:
    """Experimental: is the simply generated relation the least refined complete OM-relation?

    Random incomplete basic relations are made by breaking ties between
    states of a random complete one. The complete relations consistent with
    it (incomparable states become tied) are enumerated, and the strict part
    of the simply generated relation is tested for inclusion in each strict
    part. The result is informational only and never fails a report.
    """
    from omconf.axioms import check_OM
    from omconf.induce import lifted_strict
    from omconf.verify.sampling import random_basic_relation

    space = default_space(n)
    rng = rng_for(seed, "incomplete-basic", n)
    tried = held = 0
    found_total = 0
    failures = []
    while tried < samples:
        basic = random_basic_relation(rng, space)
        g = basic.geq.copy()
        ties = [(i, j) for i in range(n) for j in range(i + 1, n) if g[i, j] and g[j, i]]
        if not ties:
            continue
        for i, j in ties:
            if rng.random() < 0.5:
                g[i, j] = g[j, i] = False
        if np.array_equal(g, basic.geq):
            i, j = ties[0]
            g[i, j] = g[j, i] = False
        incomplete = BasicRelation(space, g)
        tried += 1
        lifted = lifted_strict(incomplete)
        completions, _ = om_completions(BasicRelation(space, basic.geq | ~(g | g.T)))
        completions = [r for r in completions if check_OM(r).passed]
        found_total += len(completions)
        if all(not (lifted & ~r.strict_matrix).any() for r in completions):
            held += 1
        else:
            failures.append(basic_record(incomplete))
    return {"samples": tried, "held": held, "consistent_om_relations": found_total,
            "not_least_refined": failures[:5]}


# ------------------------------------------------------------- Theorem 4


def verify_theorem_4(n: int = 4, corpus_n: int = 3) -> TheoremReport:
    from omconf.axioms import check_OM

    start = time.perf_counter()
    scan = scan_event_corpus(corpus_n)
    report = TheoremReport(
        "4",
        f"all possibility orderings for n <= {n}; all {scan.instances} event weak orders at n = {corpus_n}",
        "exhaustive",
    )
    for k in range(1, n + 1):
        for pi in possibility_corpus(k):
            rel = induce_possibility(pi)
            report.instances += 1
            for verdict in (check_def1(rel), check_complete(rel), check_transitive(rel), check_OM(rel)):
                if not verdict.passed:
                    report.add_counterexample(
                        {"check": "possibility is a complete transitive OM-relation",
                         "distribution": pi_record(pi), "verdict": verdict.to_dict()}
                    )
    induced = {induce_possibility(pi) for pi in possibility_corpus(corpus_n)}
    qualifying = set()
    report.instances += scan.instances
    for entry in scan.entries:
        if not (entry.confidence and entry.ok("NEG", "CLO")):
            continue
        qualifying.add(entry.rel)
        levels = entry.rel.singleton_levels()
        pi = PossibilityDistribution(entry.rel.space, levels)
        if induce_possibility(pi) != entry.rel:
            report.add_counterexample(
                {"check": "OM weak order is possibility-representable", "relation": rel_record(entry.rel)}
            )
    report.details["qualifying_event_weak_orders"] = len(qualifying)
    report.details["possibility_induced_relations"] = len(induced)
    if qualifying != induced:
        report.add_counterexample(
            {"check": "cross-count", "qualifying": len(qualifying), "induced": len(induced)}
        )

    s3 = default_space(3)
    uniform = induce_probability(ProbabilityDistribution.from_weights(s3, [1, 1, 1]))
    clo = check_CLO(uniform)
    report.add_control(
        "complete transitive relation failing CLO is not possibility-representable",
        not clo.passed and uniform not in induced,
        witness=None if clo.passed else list(clo.witness),
    )
    report.elapsed = time.perf_counter() - start
    return report.finish()


# ------------------------------------------------------------- Theorem 5


def verify_theorem_5(n: int = 4) -> TheoremReport:
    start = time.perf_counter()
    report = TheoremReport(
        "5",
        f"all possibility orderings for n <= {n} (discrimax axioms); "
        f"all state orders for n <= {n} (propagation from CPOM + ADD)",
        "exhaustive",
    )
    readings_supported = {"verdict": True, "strict": True, "literal": True}
    literal_witness = None
    for k in range(1, n + 1):
        for pi in possibility_corpus(k):
            rel = induce_discrimax(pi)
            report.instances += 1
            checks = [check_def1(rel), check_preadditivity(rel), check_complete(rel),
                      check_CPOM(rel, "verdict")]
            if rel.singleton_levels() is None:
                checks.append(AxiomVerdict("singleton_weak_order", False, (0,)))
            for verdict in checks:
                if not verdict.passed:
                    report.add_counterexample(
                        {"check": "discrimax satisfies the axioms", "distribution": pi_record(pi),
                         "verdict": verdict.to_dict()}
                    )
            if not check_CPOM(rel, "strict").passed:
                readings_supported["strict"] = False
            hit = _literal_cpom_violation(rel)
            if hit is not None:
                readings_supported["literal"] = False
                if literal_witness is None:
                    literal_witness = {"distribution": pi_record(pi), "pair": pair_record(rel, *hit)}

    free_total = 0
    for k in range(1, n + 1):
        for order in enumerate_state_orders(k):
            basic = BasicRelation.from_levels(order.space, order.levels)
            target = induce_discrimax(order.as_possibility())
            for reading in ("verdict", "strict"):
                pinned = pin_relation(basic, reading)
                report.instances += 1
                free_total += pinned.free_pairs
                mismatch = pinned.known & (pinned.geq != target.geq)
                if pinned.conflicts or pinned.free_pairs or mismatch.any():
                    readings_supported[reading] = False
                    report.add_counterexample(
                        {"check": "CPOM + ADD pin the discrimax relation", "order": order.render(),
                         "reading": reading, "conflicts": pinned.conflicts,
                         "free_pairs": pinned.free_pairs, "mismatches": int(mismatch.sum())}
                    )
    report.details["free_pairs"] = free_total
    report.details["cpom_readings_supported"] = readings_supported
    report.details["literal_reading_witness"] = literal_witness

    s3 = default_space(3)
    uniform_pi = PossibilityDistribution(s3, (1, 1, 1))
    disc = induce_discrimax(uniform_pi)
    idx = np.arange(8)
    superset = ((idx[:, None] & idx[None, :]) == idx[None, :]) & (idx[:, None] != idx[None, :])
    report.details["uniform_strict_is_proper_superset"] = bool(np.array_equal(disc.strict_matrix, superset))
    if not report.details["uniform_strict_is_proper_superset"]:
        report.add_counterexample({"check": "uniform discrimax strict part is proper inclusion"})

    uniform_p = induce_probability(ProbabilityDistribution.from_weights(s3, [1, 1, 1]))
    cpom = check_CPOM(uniform_p)
    report.add_control(
        "uniform probability (preadditive, complete) fails CPOM",
        not cpom.passed,
        witness=None if cpom.passed else list(cpom.witness),
    )
    report.elapsed = time.perf_counter() - start
    return report.finish()


def _literal_cpom_violation(rel: EventRelation) -> Optional[tuple[int, int]]:
    """Mixed-symbol reading: on disjoint pairs, strict lifted verdict iff ``A >= B``."""
    from omconf.induce import lifted_strict

    lifted = lifted_strict(basic_from_relation(rel))
    idx = np.arange(rel.space.size)
    disjoint = (idx[:, None] & idx[None, :]) == 0
    disjoint[0, 0] = False  # the empty pair is a mismatch by definition and says nothing
    return _first_pair(disjoint & (lifted != rel.geq))


# ------------------------------------------------------------- Theorem 6


def verify_theorem_6(
    n: int = 3, mode: str = "exhaustive", samples: int = 50, seed: int = 0,
    sample_sizes: tuple[int, ...] = (4, 5, 6),
) -> TheoremReport:
    start = time.perf_counter()
    if mode == "exhaustive":
        if n != 3:
            raise ValueError("exhaustive Theorem 6 scan runs at n = 3")
        scan = scan_event_corpus(n)
        report = TheoremReport("6", f"all {scan.instances} weak orders on the events of {n} states", mode)
        report.instances = scan.instances
        represented = 0
        for entry in scan.entries:
            if not (entry.confidence and entry.ok("ADD", "COM")):
                continue
            try:
                p = represent_big_stepped(entry.rel)
            except RepresentationError as err:
                report.add_counterexample(
                    {"check": "representable", "relation": rel_record(entry.rel), "error": str(err)}
                )
                continue
            if induce_probability(p) != entry.rel or not check_big_stepped(p).passed:
                report.add_counterexample({"check": "representation", "relation": rel_record(entry.rel)})
            represented += 1
        report.details["represented"] = represented
        report.details["prefiltered"] = scan.filtered_out
    else:
        report = TheoremReport(
            "6", f"{samples} random big-stepped distributions for each n in {list(sample_sizes)}", mode, seed=seed
        )
        for k in sample_sizes:
            space = default_space(k)
            rng = rng_for(seed, "theorem6", k)
            for _ in range(samples):
                p = random_big_stepped(rng, space)
                rel = induce_probability(p)
                report.instances += 1
                for verdict in (check_def1(rel), check_complete(rel), check_transitive(rel),
                                check_preadditivity(rel), check_COM(rel)):
                    if not verdict.passed:
                        report.add_counterexample(
                            {"check": "big-stepped relation satisfies the axioms",
                             "distribution": dist_record(p), "verdict": verdict.to_dict()}
                        )

    s3 = default_space(3)
    control_p = ProbabilityDistribution(s3, (Fraction(2, 5), Fraction(3, 10), Fraction(3, 10)))
    control = induce_probability(control_p)
    com = check_COM(control)
    try:
        represent_big_stepped(control)
        refused = False
    except RepresentationError:
        refused = True
    levels = control.singleton_levels()
    rng = rng_for(seed, "theorem6-control")
    rivals = [ProbabilityDistribution.from_weights(s3, _big_stepped_weights(levels))]
    rivals += [_random_big_stepped_with_levels(rng, s3, levels) for _ in range(20)]
    distinct = all(induce_probability(q) != control for q in rivals)
    report.add_control(
        "p=(2/5,3/10,3/10) fails COM and has no big-stepped representation with its singleton order",
        (not com.passed) and refused and distinct,
        witness=None if com.passed else list(com.witness),
        rivals_checked=len(rivals),
    )
    report.elapsed = time.perf_counter() - start
    return report.finish()


def _random_big_stepped_with_levels(rng, space: StateSpace, levels) -> ProbabilityDistribution:
    values = {0: 0}
    below = 0
    for level in sorted({v for v in levels if v > 0}):
        v = below + rng.randint(1, below + 3)
        values[level] = v
        below += v * list(levels).count(level)
    return ProbabilityDistribution.from_weights(space, [values[v] for v in levels])


# ------------------------------------------------------------- propositions


def _prop1_violation(rel: EventRelation) -> Optional[tuple[str, tuple[int, ...]]]:
    g = rel.geq
    s = rel.strict_matrix
    size = rel.space.size
    idx = np.arange(size)
    subset = (idx[:, None] & ~idx[None, :]) == 0  # [A, B]: A <= B
    hit = _first_pair(subset & ~g.T)
    if hit:
        return "A <= B but not B >= A", hit
    union = idx[:, None] | idx[None, :]
    for a in range(size):
        grow = s[a][:, None] & ~s[union[a][None, :], idx[:, None]]
        shrink = s[a][union] & ~s[a][:, None]
        bad = np.flatnonzero(grow | shrink)
        if bad.size:
            b, c = divmod(int(bad[0]), size)
            return "strict monotonicity", (a, b, c)
    return None


def verify_props(n: int = 4, samples: int = 100, seed: int = 0, lexico_n: int = 6) -> TheoremReport:
    start = time.perf_counter()
    report = TheoremReport(
        "props",
        f"all possibility orderings for n <= {n}; lexicographic structures on every ordered "
        f"partition for n <= {n} and {samples} sampled partitions for n in ({n + 1}..{lexico_n})",
        "mixed",
        seed=seed,
    )
    counts = {key: 0 for key in ("prop1", "prop2", "prop3", "prop4", "prop5", "prop6", "family", "COM_P")}
    drowning = 0
    drowning_example = None

    def fail(check: str, **record) -> None:
        report.add_counterexample({"check": check, **record})

    for k in range(1, n + 1):
        for pi in possibility_corpus(k):
            poss, nec, disc = induce_possibility(pi), induce_necessity(pi), induce_discrimax(pi)
            p = ProbabilityDistribution.from_weights(pi.space, _big_stepped_weights(pi.levels))
            prob = induce_probability(p)
            for rel in (poss, nec, disc, prob):
                if check_def1(rel).passed:
                    counts["prop1"] += 1
                    bad = _prop1_violation(rel)
                    if bad:
                        fail("prop1", relation=rel_record(rel), detail=bad[0], witness=list(bad[1]))
                    counts["prop6"] += 1
                    try:
                        basic_from_relation(rel)
                    except BasicRelationError as err:
                        fail("prop6", relation=rel_record(rel), error=str(err))
            counts["prop2"] += 1
            for verdict in (check_NEG(disc), check_CLO(disc, disjoint_only=True)):
                if not verdict.passed:
                    fail("prop2", distribution=pi_record(pi), verdict=verdict.to_dict())
            counts["prop3"] += 1
            s_disc = disc.strict_matrix
            for label, other in (("possibility", poss), ("necessity", nec)):
                hit = _first_pair(other.strict_matrix & ~s_disc)
                if hit:
                    fail("prop3", distribution=pi_record(pi), refines=label, pair=list(hit))
            idx = np.arange(pi.space.size)
            disjoint = (idx[:, None] & idx[None, :]) == 0
            hit = _first_pair(disjoint & (disc.geq != poss.geq))
            if hit:
                fail("prop3", distribution=pi_record(pi), detail="disjoint pairs", pair=list(hit))
            strict_only = s_disc & poss.equiv_matrix
            drowning += int(strict_only.sum())
            if drowning_example is None and strict_only.any():
                a, b = _first_pair(strict_only)
                drowning_example = {"distribution": pi_record(pi), "pair": pair_record(disc, a, b)}
            counts["prop4"] += 1
            hit = _first_pair(s_disc & ~prob.strict_matrix)
            if hit:
                fail("prop4", distribution=dist_record(p), pair=list(hit))
            counts["prop5"] += 1
            _check_prop5(p, fail)
            if min(pi.levels) > 0:
                rng = rng_for(seed, "family", pi.levels)
                blocks = StateWeakOrder(pi.space, pi.normalized().levels).classes
                part = Partition(pi.space, tuple(blocks))
                for _ in range(3):
                    q = lexico_scale(part, [rng.randint(1, 5) for _ in range(pi.space.n)])
                    counts["family"] += 1
                    hit = _first_pair(s_disc & ~induce_probability(q).strict_matrix)
                    if hit:
                        fail("family", distribution=dist_record(q), pair=list(hit))

    rng = rng_for(seed, "prop5")
    for k in range(2, lexico_n + 1):
        space = default_space(k)
        for _ in range(max(1, samples // 5)):
            counts["prop5"] += 1
            _check_prop5(random_big_stepped(rng, space), fail)

    for k in range(1, lexico_n + 1):
        space = default_space(k)
        partitions = list(ordered_set_partitions(k))
        rng = rng_for(seed, "lexico", k)
        if k > n:
            partitions = [partitions[rng.randrange(len(partitions))] for _ in range(samples)]
        for blocks in partitions:
            part = Partition(space, blocks)
            weights = [rng.randint(1, 5) for _ in range(k)]
            p = lexico_scale(part, weights)
            rel = induce_probability(p)
            counts["COM_P"] += 1
            verdict = check_COM_P(rel, part)
            if not verdict.passed:
                fail("COM_P", distribution=dist_record(p), verdict=verdict.to_dict())
            masses = [sum((p.weights[i] for i in range(k) if b >> i & 1), Fraction(0)) for b in blocks]
            block_space = default_space(len(blocks))
            if not check_big_stepped(ProbabilityDistribution(block_space, tuple(masses))).passed:
                fail("lexicographic block masses big-stepped", distribution=dist_record(p))
            if k <= 5:
                for v in (check_def1(rel), check_preadditivity(rel), check_transitive(rel)):
                    if not v.passed:
                        fail("lexicographic is a comparative probability", distribution=dist_record(p),
                             verdict=v.to_dict())

    report.instances = sum(counts.values())
    report.details["checks"] = counts
    report.details["drowning_pairs"] = drowning
    report.details["drowning_example"] = drowning_example
    report.add_control("discrimax strictly refines possibility somewhere", drowning > 0)

    s3 = default_space(3)
    non_bs = ProbabilityDistribution(s3, (Fraction(1, 2), Fraction(3, 10), Fraction(1, 5)))
    hit = _first_pair(
        induce_discrimax(PossibilityDistribution(s3, (3, 2, 1))).strict_matrix
        & ~induce_probability(non_bs).strict_matrix
    )
    report.add_control("non-big-stepped p breaks the discrimax refinement", hit is not None,
                       pair=None if hit is None else list(hit))
    two_blocks = Partition(s3, (0b001, 0b110))
    verdict = check_COM_P(induce_probability(ProbabilityDistribution.from_weights(s3, [1, 1, 1])), two_blocks)
    report.add_control("uniform probability fails COM_P for a two-block partition", not verdict.passed,
                       witness=None if verdict.passed else list(verdict.witness))
    report.elapsed = time.perf_counter() - start
    return report.finish()


def _check_prop5(p: ProbabilityDistribution, fail) -> None:
    pi = possibility_from_prob(p)
    w, lv = p.weights, pi.levels
    n = p.space.n
    if any((w[i] >= w[j]) != (lv[i] >= lv[j]) for i in range(n) for j in range(n)):
        fail("prop5 ordinal equivalence", distribution=dist_record(p))
    hit = _first_pair(induce_possibility(pi).strict_matrix & ~induce_probability(p).strict_matrix)
    if hit:
        fail("prop5", distribution=dist_record(p), pair=list(hit))


THEOREMS = {
    "1": verify_theorem_1,
    "2": verify_theorem_2,
    "3": verify_theorem_3,
    "4": verify_theorem_4,
    "5": verify_theorem_5,
    "6": verify_theorem_6,
    "props": verify_props,
}


def replay_counterexample(record: dict) -> Optional[bool]:
    """Feed a recorded axiom failure back through the checkers.

    ``None`` when the record carries no relation/verdict pair (counts, shape
    mismatches); otherwise whether the witness still violates its axiom.
    """
    from omconf.axioms import replay_verdict

    if "relation" not in record or "verdict" not in record:
        return None
    rel_data, v = record["relation"], record["verdict"]
    space = StateSpace(rel_data["states"])
    geq = np.array([[c == "1" for c in row] for row in rel_data["geq"]], dtype=bool)
    verdict = AxiomVerdict(v["axiom"], v["pass"], tuple(v["witness"]) if v["witness"] else None, v["detail"])
    return not verdict.passed and replay_verdict(verdict, EventRelation(space, geq))
