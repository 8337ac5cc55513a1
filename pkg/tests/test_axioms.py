from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import level_lists, space_of, weight_lists
from omconf.axioms import (
    AXIOM_CHECKS,
    check_CCS,
    check_CLO,
    check_COM,
    check_COM_P,
    check_CPOM,
    check_NEG,
    check_OM,
    check_QUAL,
    check_complete,
    check_confidence,
    check_def1,
    check_monotonic,
    check_preadditivity,
    check_quasi_transitive,
    check_transitive,
    classify,
    replay,
    replay_verdict,
)
from omconf.core import (
    BasicRelationError,
    EventRelation,
    Partition,
    PossibilityDistribution,
    ProbabilityDistribution,
)
from omconf.induce import (
    induce_discrimax,
    induce_necessity,
    induce_possibility,
    induce_probability,
)

TRIPLE_CHECKS = {
    "quasi_transitive": check_quasi_transitive,
    "transitive": check_transitive,
    "monotonic": check_monotonic,
    "ADD": check_preadditivity,
    "NEG": check_NEG,
    "CLO": check_CLO,
    "CCS": check_CCS,
    "QUAL": check_QUAL,
}


@st.composite
def random_relations(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    size = 1 << n
    bits = draw(st.lists(st.booleans(), min_size=size * size, max_size=size * size))
    geq = np.array(bits, dtype=bool).reshape(size, size) | np.eye(size, dtype=bool)
    return EventRelation(space_of(n), geq)


@st.composite
def induced_relations(draw):
    if draw(st.booleans()):
        levels = draw(level_lists())
        pi = PossibilityDistribution(space_of(len(levels)), levels)
        maker = draw(st.sampled_from([induce_possibility, induce_necessity, induce_discrimax]))
        return maker(pi)
    weights = draw(weight_lists())
    return induce_probability(ProbabilityDistribution.from_weights(space_of(len(weights)), weights))


@pytest.mark.parametrize("axiom", sorted(TRIPLE_CHECKS))
@given(rel=st.one_of(random_relations(), induced_relations()))
def test_witness_is_the_oracle_minimum(axiom, rel):
    verdict = TRIPLE_CHECKS[axiom](rel)
    expected = oracles.first_violation(rel, axiom)
    assert verdict.passed == (expected is None)
    if expected is not None:
        assert verdict.witness == expected
        assert replay(axiom, rel, verdict.witness)


@given(st.one_of(random_relations(), induced_relations()))
def test_confidence_matches_oracle(rel):
    assert check_def1(rel).passed == oracles.is_confidence(rel)
    assert check_complete(rel).passed == oracles.is_complete(rel)


@given(st.one_of(random_relations(), induced_relations()))
def test_every_failing_verdict_replays(rel):
    for name, check in AXIOM_CHECKS.items():
        try:
            verdict = check(rel)
        except BasicRelationError:
            continue
        assert (verdict.witness is None) == verdict.passed
        if not verdict.passed:
            assert replay_verdict(verdict, rel), (name, verdict)


def test_drowning_triple_for_possibility(s3):
    rel = induce_possibility(PossibilityDistribution(s3, (3, 2, 1)))
    verdict = check_preadditivity(rel)
    assert verdict.witness == (1, 0, 2)
    a, b, c = s3.mask("a"), s3.mask("b"), s3.mask("c")
    assert replay("ADD", rel, (a, b, c))


def test_neg_fails_for_non_big_stepped(s3):
    p = ProbabilityDistribution(s3, (Fraction(1, 2), Fraction(3, 10), Fraction(1, 5)))
    verdict = check_NEG(induce_probability(p))
    assert verdict.witness == (1, 2, 4)


def test_clo_fails_for_necessity(s3):
    rel = induce_necessity(PossibilityDistribution(s3, (2, 2, 1)))
    assert check_CLO(rel).witness == (0, 1, 2)


def test_com_and_cpom_examples(s3):
    rel = induce_probability(ProbabilityDistribution(s3, (Fraction(2, 5), Fraction(3, 10), Fraction(3, 10))))
    assert check_COM(rel).witness == (1, 6)
    uniform = induce_probability(ProbabilityDistribution.from_weights(s3, [1, 1, 1]))
    assert check_CPOM(uniform).witness == (1, 6)
    assert not check_CPOM(uniform, "strict").passed
    disc = induce_discrimax(PossibilityDistribution(s3, (2, 2, 1)))
    assert check_CPOM(disc).passed and check_CPOM(disc, "strict").passed


def test_com_p(s3):
    uniform = induce_probability(ProbabilityDistribution.from_weights(s3, [1, 1, 1]))
    assert check_COM_P(uniform, Partition(s3, (7,))).passed
    verdict = check_COM_P(uniform, Partition(s3, (1, 6)))
    assert not verdict.passed and replay_verdict(verdict, uniform, Partition(s3, (1, 6)))


def test_om_and_classification(s3):
    poss = classify(induce_possibility(PossibilityDistribution(s3, (3, 2, 1))))
    assert poss.comparative_possibility and poss.OM_relation and not poss.preadditive
    disc = classify(induce_discrimax(PossibilityDistribution(s3, (2, 2, 1))))
    assert disc.preadditive and disc.CPOM and disc.complete and not disc.transitive
    prob = classify(induce_probability(ProbabilityDistribution.from_weights(s3, [4, 2, 1])))
    assert prob.comparative_probability and prob.big_stepped_representable
    # with CLO over all triples, ({a}, {a}, {b}) breaks it even for big-stepped p
    verdict = check_OM(induce_probability(ProbabilityDistribution.from_weights(s3, [4, 2, 1])))
    assert verdict.witness == (1, 1, 2) and verdict.detail.startswith("CLO")


def test_confidence_clauses_named(s3):
    geq = np.ones((8, 8), dtype=bool)  # everything tied: S ~ {}
    verdicts = check_confidence(EventRelation(s3, geq))
    assert not verdicts["non_trivial"].passed
    assert all(v.passed for k, v in verdicts.items() if k != "non_trivial")
    assert check_def1(EventRelation(s3, geq)).detail.startswith("non_trivial")


def test_com_raises_on_bad_basic(s3):
    scores = [1, 0, 2, 2, 2, 2, 2, 3]
    with pytest.raises(BasicRelationError):
        check_COM(EventRelation.from_scores(s3, scores))
    info = classify(EventRelation.from_scores(s3, scores))
    assert not info.COM and not info.confidence_relation
