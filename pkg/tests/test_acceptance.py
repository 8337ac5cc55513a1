"""Acceptance criteria, one test each, at the stated tolerances and time bounds.

Each test records a one-line PASS/FAIL verdict; the lines are printed at the
end of the pytest run (and directly when this file is run as a script).
"""

import itertools
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import oracles
from omconf.axioms import (
    check_CLO,
    check_COM_P,
    check_CPOM,
    check_OM,
    check_complete,
    check_def1,
    check_preadditivity,
    check_transitive,
    replay_verdict,
)
from omconf.cli import main, parse_distribution, parse_relation, render_distribution, render_relation
from omconf.construct import big_stepped_from_order
from omconf.core import ProbabilityDistribution, StateSpace
from omconf.induce import (
    induce_discrimax,
    induce_necessity,
    induce_possibility,
    induce_probability,
)
from omconf.verify.enumerate import (
    enumerate_state_orders,
    event_order_levels,
    fubini,
    ordered_set_partitions,
)
from omconf.verify.sampling import random_distribution, rng_for
from omconf.verify import theorems

RESULTS: list[str] = []
FIXTURES = Path(__file__).parent / "fixtures"


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    RESULTS.append(line)
    print(line)


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


# ------------------------------------------------------------- 1


def axiom_profile_matrix():
    space = StateSpace("abcd")
    problems = []
    clo_fails_for_necessity = 0
    intransitive_discrimax = 0
    add_fails_single_level = None
    rng = rng_for(0, "acceptance-profile")
    replayed = 0
    for order in enumerate_state_orders(4):
        pi = order.as_possibility()
        poss, nec, disc = induce_possibility(pi), induce_necessity(pi), induce_discrimax(pi)
        for name, verdict in (("possibility DEF1", check_def1(poss)), ("possibility OM", check_OM(poss)),
                              ("possibility complete", check_complete(poss)),
                              ("possibility transitive", check_transitive(poss)),
                              ("necessity DEF1", check_def1(nec)), ("discrimax DEF1", check_def1(disc)),
                              ("discrimax ADD", check_preadditivity(disc)), ("discrimax CPOM", check_CPOM(disc)),
                              ("discrimax complete", check_complete(disc))):
            if not verdict.passed:
                problems.append(f"{name} fails for {order.render()}")
        add = check_preadditivity(poss)
        if max(order.levels) >= 2:
            if add.passed:
                problems.append(f"possibility ADD passes for {order.render()}")
            else:
                a, b, c = add.witness
                # drowning: B and C discriminated, A|B and A|C are not
                drowned = poss.strict(b, c) or poss.strict(c, b)
                if not (drowned and poss.equiv(a | b, a | c) and replay_verdict(add, poss)):
                    problems.append(f"possibility ADD witness is not a drowning triple for {order.render()}")
                replayed += 1
        else:
            add_fails_single_level = not add.passed
        clo = check_CLO(nec)
        if not clo.passed:
            clo_fails_for_necessity += 1
            if not replay_verdict(clo, nec):
                problems.append(f"necessity CLO witness does not replay for {order.render()}")
            replayed += 1
        trans = check_transitive(disc)
        if not trans.passed:
            intransitive_discrimax += 1
            if not replay_verdict(trans, disc):
                problems.append(f"discrimax transitivity witness does not replay for {order.render()}")
            replayed += 1
        for p in (big_stepped_from_order(order), random_distribution(rng, space)):
            prob = induce_probability(p)
            for name, verdict in (("DEF1", check_def1(prob)), ("ADD", check_preadditivity(prob)),
                                  ("complete", check_complete(prob)), ("transitive", check_transitive(prob))):
                if not verdict.passed:
                    problems.append(f"probability {name} fails for {p.weights}")
    if clo_fails_for_necessity == 0:
        problems.append("necessity never fails CLO")
    if intransitive_discrimax == 0:
        problems.append("discrimax indifference never intransitive")
    return problems, clo_fails_for_necessity, intransitive_discrimax, add_fails_single_level, replayed


def test_criterion_1_axiom_profile_matrix():
    (problems, clo_fail, intrans, single, replayed), elapsed = timed(axiom_profile_matrix)
    ok = not problems and elapsed < 10
    record(1, "axiom-profile matrix over all 75 orders at n=4", ok,
           f"{len(problems)} profile violations; necessity fails CLO for {clo_fail}/75; "
           f"discrimax ~ intransitive for {intrans}/75; single-level possibility ADD fails: {single}; "
           f"{replayed} witnesses replayed; {elapsed:.1f}s (< 10s)")
    assert not problems, problems[:5]
    assert elapsed < 10


# ------------------------------------------------------------- 2


def test_criterion_2_leximax_big_stepped():
    report, elapsed = timed(theorems.verify_theorem_2, n=4, samples=500, sample_sizes=(5, 6))
    sampled = 500 * 2
    control = report.controls[0]
    ok = report.passed and report.details["disagreeing_pairs"] == 0 and sampled >= 1000 \
        and control["caught"] and elapsed < 60
    record(2, "leximax vs big-stepped probability, both directions, n <= 6", ok,
           f"{report.details['disagreeing_pairs']} disagreeing pairs over {report.instances} checks "
           f"({sampled} sampled at n=5,6); control p=(1/2,3/10,1/5) disagrees on "
           f"{control.get('pair')}: {control['caught']}; {elapsed:.1f}s (< 60s)")
    assert ok


# ------------------------------------------------------------- 3 and 4


def big_stepped_relation_oracle() -> set:
    """Distinct relations of big-stepped distributions at n=3, via the pure-Python oracle."""
    out = set()
    for levels in itertools.product(range(0, 4), repeat=3):
        if not any(levels):
            continue
        values, below = {0: 0}, 0
        for level in sorted({v for v in levels if v}):
            values[level] = below + 1
            below += (below + 1) * levels.count(level)
        out.add(tuple(sorted(oracles.probability_geq([values[v] for v in levels]).items())))
    return out


def probability_relation_oracle() -> set:
    out = set()
    for weights in itertools.product(range(0, 13), repeat=3):
        if any(weights):
            out.add(tuple(sorted(oracles.probability_geq(weights).items())))
    return out


def test_criterion_3_big_stepped_representation_exhaustive():
    theorems.scan_event_corpus.cache_clear()
    report, elapsed = timed(theorems.verify_theorem_6, n=3, mode="exhaustive")
    expected = len(big_stepped_relation_oracle())
    control = report.controls[0]
    ok = (report.passed and report.instances == 545835 and not report.counterexamples
          and report.details["represented"] == expected and control["caught"] and elapsed < 300)
    record(3, "Def1 + ADD + COM relations are big-stepped representable (n=3 exhaustive)", ok,
           f"instances: {report.instances}, counterexamples: {len(report.counterexamples)}; "
           f"{report.details['represented']} represented (oracle {expected}); "
           f"COM-failing control excluded: {control['caught']}; {elapsed:.1f}s incl. corpus scan (< 300s)")
    assert ok


def test_criterion_4_singleton_structure_exhaustive():
    report, elapsed = timed(theorems.verify_theorem_1, n=3, mode="exhaustive")
    expected = len(probability_relation_oracle())
    ok = (report.passed and report.instances == 545835 and "taxonomy" in report.details
          and report.details["comparative_probabilities"] == expected and elapsed < 300)
    record(4, "singleton structure under CLO / NEG (n=3 exhaustive)", ok,
           f"instances: {report.instances}, counterexamples: {len(report.counterexamples)}; "
           f"{report.details['comparative_probabilities']} comparative probabilities (oracle {expected}); "
           f"taxonomy {report.details['taxonomy']}; {elapsed:.1f}s (< 300s)")
    assert ok


# ------------------------------------------------------------- 5


def test_criterion_5_generation_and_possibility_characterization():
    start = time.perf_counter()
    generation = theorems.verify_theorem_3(n=4, unique_n=3, basics="orders")
    uniqueness = theorems.verify_theorem_3(n=3, unique_n=3, basics="realizable")
    poss = theorems.verify_theorem_4(n=4, corpus_n=3)
    elapsed = time.perf_counter() - start
    d = poss.details
    ok = (generation.passed and uniqueness.passed and poss.passed
          and d["qualifying_event_weak_orders"] == d["possibility_induced_relations"] == 25 and elapsed < 120)
    record(5, "simple generation, uniqueness at n=3, possibility characterization", ok,
           f"generation over state orders n<=4: {generation.details['basic_relations_generated']} basics, "
           f"{len(generation.counterexamples)} counterexamples; uniqueness at n=3: "
           f"{uniqueness.details['uniqueness_searches']} complete basics, exactly one each: {uniqueness.passed} "
           f"({uniqueness.details['excluded_null_state_above_state']} basics with a null state above a state "
           f"admit no monotonic relation and are excluded); cross-count {d['qualifying_event_weak_orders']} "
           f"qualifying vs {d['possibility_induced_relations']} induced; {elapsed:.1f}s (< 120s)")
    assert ok


# ------------------------------------------------------------- 6


def test_criterion_6_discrimax_constructive_converse():
    report, elapsed = timed(theorems.verify_theorem_5, n=4)
    ok = report.passed and report.details["free_pairs"] == 0 and not report.counterexamples and elapsed < 30
    record(6, "CPOM + ADD pin the discrimax relation for all orders n <= 4", ok,
           f"free pairs: {report.details['free_pairs']}, mismatches/conflicts: {len(report.counterexamples)}; "
           f"readings {report.details['cpom_readings_supported']}; {elapsed:.1f}s (< 30s)")
    assert ok


# ------------------------------------------------------------- 7


def test_criterion_7_propositions_and_lexicographic():
    report, elapsed = timed(theorems.verify_props, n=4, samples=100, seed=0, lexico_n=6)
    ok = report.passed and report.details["drowning_pairs"] > 0 and elapsed < 60
    record(7, "propositions + COM_P suite (n <= 4, lexicographic up to n=6)", ok,
           f"violations: {len(report.counterexamples)} over {report.instances} checks; drowning pairs "
           f"{report.details['drowning_pairs']} (e.g. {report.details['drowning_example']['pair']}); "
           f"{elapsed:.1f}s (< 60s)")
    assert ok


# ------------------------------------------------------------- 8


def test_criterion_8_determinism_witnesses_counts():
    runs = [
        lambda: theorems.verify_theorem_2(samples=100, seed=3),
        lambda: theorems.verify_theorem_3(n=4, basics="quasi"),
        lambda: theorems.verify_theorem_5(n=4),
        lambda: theorems.verify_props(samples=30, seed=3),
        lambda: theorems.verify_theorem_6(mode="sampled", samples=30, seed=3),
        lambda: theorems.verify_theorem_1(n=4, mode="sampled", samples=50, seed=3),
    ]
    identical = True
    witnesses = replayed = 0
    for run in runs:
        first, second = run(), run()
        identical &= first.to_json() == second.to_json()
        for record_ in first.counterexamples:
            outcome = theorems.replay_counterexample(record_)
            if outcome is not None:
                witnesses += 1
                replayed += outcome
    theorems.scan_event_corpus.cache_clear()
    corpus_again = theorems.verify_theorem_6().to_json()
    identical &= corpus_again == theorems.verify_theorem_6().to_json()
    counts = (sum(1 for _ in ordered_set_partitions(3)), sum(1 for _ in ordered_set_partitions(4)),
              sum(1 for _ in event_order_levels(3)))
    ok = identical and witnesses > 0 and replayed == witnesses and counts == (13, 75, 545835) \
        and (fubini(3), fubini(4), fubini(8)) == counts
    record(8, "determinism, witness replay, enumerator counts", ok,
           f"byte-identical reruns: {identical}; {replayed}/{witnesses} emitted witnesses replay; "
           f"counts {counts} vs expected (13, 75, 545835)")
    assert ok


# ------------------------------------------------------------- 9


def test_criterion_9_cli_contract(tmp_path, capsys):
    failures = []
    for name in ("poss321.dist", "prob_nonbs.dist", "lexico.dist", "full.dist"):
        dist = parse_distribution((FIXTURES / name).read_text())
        if parse_distribution(render_distribution(dist)) != dist:
            failures.append(f"round trip {name}")
    rel_path = tmp_path / "r.json"
    if main(["induce", "--dist", str(FIXTURES / "poss321.dist"), "--kind", "possibility",
             "--out", str(rel_path)]) != 0:
        failures.append("induce exit code")
    rel = parse_relation(rel_path.read_text())
    if parse_relation(render_relation(rel)) != rel:
        failures.append("relation round trip")
    capsys.readouterr()

    code = main(["check", "--rel", str(rel_path), "--axiom", "ADD"])
    out = capsys.readouterr().out
    if code != 1 or "witness ({a}, {}, {b})" not in out:
        failures.append(f"check ADD: exit {code}, output {out!r}")

    code = main(["construct", "big-stepped", "--order", "a > b = c > d"])
    out = capsys.readouterr().out
    weights = parse_distribution(out).prob.weights
    if code != 0 or weights != tuple(Fraction(x, 11) for x in (6, 2, 2, 1)):
        failures.append(f"construct big-stepped: exit {code}, {weights}")

    code = main(["verify", "--theorem", "6", "--n", "3", "--mode", "exhaustive"])
    out = capsys.readouterr().out
    if code != 0 or "instances: 545835, counterexamples: 0" not in out:
        failures.append(f"verify theorem 6: exit {code}")

    code = main(["check", "--dist", str(FIXTURES / "bad_weights.dist"), "--kind", "probability"])
    err = capsys.readouterr().err
    if code != 2 or "WEIGHTS_NOT_NORMALIZED" not in err:
        failures.append(f"parse error exit {code}")
    with pytest.raises(SystemExit) as usage:
        main(["verify"])
    capsys.readouterr()
    if usage.value.code != 2:
        failures.append("usage exit code")

    record(9, "CLI round trips, exit codes and documented examples", not failures,
           f"{len(failures)} failures {failures}; exit codes 0/1/2 observed as documented")
    assert not failures


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
