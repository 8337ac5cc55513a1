import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import level_lists, space_of, weight_lists
from omconf.cli import (
    DistributionFile,
    InputError,
    main,
    parse_distribution,
    parse_relation,
    render_distribution,
    render_relation,
)
from omconf.core import Partition, PossibilityDistribution, ProbabilityDistribution
from omconf.induce import induce_discrimax

FIXTURES = Path(__file__).parent / "fixtures"


def fixture(name: str) -> str:
    return str(FIXTURES / name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    dist = parse_distribution("states a b c\nposs a=3 b=2 c=1")
    assert dist.poss.levels == (3, 2, 1)
    with pytest.raises(InputError) as err:
        parse_distribution("states a b\nprob a=1/2 b=1/3")
    assert err.value.code == "WEIGHTS_NOT_NORMALIZED" and "5/6" in str(err.value) and "1/6" in str(err.value)
    with pytest.raises(InputError) as err:
        parse_distribution("states a b\nposs a=1 c=1")
    assert err.value.code == "UNKNOWN_STATE" and "c=1" in str(err.value) and err.value.line == 2


@pytest.mark.parametrize(
    "name, code",
    [
        ("bad_weights.dist", "WEIGHTS_NOT_NORMALIZED"),
        ("bad_state.dist", "UNKNOWN_STATE"),
        ("bad_partition.dist", "BAD_PARTITION"),
        ("bad_duplicate.dist", "DUPLICATE_ASSIGNMENT"),
        ("bad_parse.dist", "PARSE_ERROR"),
    ],
)
def test_error_codes_and_exit_2(capsys, name, code):
    with pytest.raises(InputError) as err:
        parse_distribution(Path(fixture(name)).read_text(), name)
    assert err.value.code == code and err.value.line == 2
    exit_code, _, stderr = run(capsys, "classify", "--dist", fixture(name), "--kind", "probability")
    assert exit_code == 2 and code in stderr and ":2:" in stderr


@pytest.mark.parametrize("name", ["poss321.dist", "prob_nonbs.dist", "lexico.dist", "full.dist"])
def test_fixture_round_trip(name):
    dist = parse_distribution(Path(fixture(name)).read_text())
    assert parse_distribution(render_distribution(dist)) == dist


@given(level_lists(max_n=4), weight_lists(max_n=4))
def test_distribution_round_trip(levels, weights):
    n = min(len(levels), len(weights))
    space = space_of(n)
    levels = levels[:n] if any(levels[:n]) else [1] * n
    weights = weights[:n] if any(weights[:n]) else [1] * n
    dist = DistributionFile(
        space,
        PossibilityDistribution(space, levels),
        ProbabilityDistribution.from_weights(space, weights),
        Partition(space, tuple(1 << i for i in range(n))),
    )
    assert parse_distribution(render_distribution(dist)) == dist


@given(level_lists(max_n=4))
def test_relation_round_trip(levels):
    rel = induce_discrimax(PossibilityDistribution(space_of(len(levels)), levels))
    assert parse_relation(render_relation(rel)) == rel


@pytest.mark.parametrize(
    "text",
    ['{"n": 1, "states": ["a"], "geq": ["11", "1"]}', '{"n": 2, "states": ["a"], "geq": []}',
     '{"n": 1, "states": ["a"], "geq": ["12", "01"]}', "{not json"],
)
def test_bad_relation_files(text):
    with pytest.raises(InputError):
        parse_relation(text)


def test_check_add_on_possibility(capsys, tmp_path):
    rel = tmp_path / "r.json"
    assert run(capsys, "induce", "--dist", fixture("poss321.dist"), "--kind", "possibility", "--out", str(rel))[0] == 0
    code, out, _ = run(capsys, "check", "--rel", str(rel), "--axiom", "ADD")
    assert code == 1
    assert "witness ({a}, {}, {b})" in out


def test_construct_big_stepped(capsys):
    code, out, _ = run(capsys, "construct", "big-stepped", "--order", "a > b = c > d")
    assert code == 0
    assert out == "states a b c d\nprob a=6/11 b=2/11 c=2/11 d=1/11\n"
    assert parse_distribution(out).prob.weights == tuple(Fraction(x, 11) for x in (6, 2, 2, 1))


def test_verify_theorem_6_exhaustive(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "6", "--n", "3", "--mode", "exhaustive")
    assert code == 0
    assert "instances: 545835, counterexamples: 0" in out


def test_verify_report_is_deterministic(capsys, tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        assert run(capsys, "verify", "--theorem", "2", "--samples", "50", "--seed", "5",
                   "--format", "report", "--out", str(path))[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    report = json.loads(outs[0])
    assert {"command", "inputs", "verdicts", "witnesses", "seed", "elapsed"} <= report.keys()
    assert report["seed"] == 5 and report["elapsed"] is None


def test_verify_counterexample_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "3", "--n", "4")
    assert code == 1 and "FAIL" in out
    assert run(capsys, "verify", "--theorem", "3", "--basics", "orders")[0] == 0


def test_compare_and_classify(capsys):
    code, out, _ = run(capsys, "compare", "--dist", fixture("poss321.dist"), "--kind", "discrimax",
                       "--a", "a,b", "--b", "a,c")
    assert code == 0 and out.startswith("{a,b} > {a,c}")
    code, out, _ = run(capsys, "compare", "--dist", fixture("poss321.dist"), "--kind", "possibility",
                       "--a", "a,b", "--b", "a,c")
    assert "EQUIVALENT" in out
    code, out, _ = run(capsys, "compare", "--dist", fixture("poss321.dist"), "--kind", "possibility",
                       "--a", "", "--b", "c")
    assert out.startswith("{} < {c}")
    code, out, _ = run(capsys, "classify", "--dist", fixture("full.dist"), "--kind", "probability",
                       "--format", "report")
    report = json.loads(out)
    assert code == 0 and report["classification"]["big_stepped_representable"] is True
    assert report["classification"]["COM_P"] is True


def test_check_all_with_partition(capsys):
    code, out, _ = run(capsys, "check", "--dist", fixture("lexico.dist"), "--kind", "lexicographic")
    assert code == 1  # lexicographic probabilities still break NEG/CLO
    assert "COMP: pass" in out
    assert run(capsys, "check", "--dist", fixture("lexico.dist"), "--kind", "lexicographic",
               "--axiom", "COMP")[0] == 0


def test_construct_other_targets(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "lexicographic", "--dist", fixture("lexico.dist"))
    assert code == 0
    assert parse_distribution(out).prob.weights == (Fraction(4, 7), Fraction(2, 7), Fraction(1, 7))
    code, out, _ = run(capsys, "construct", "possibility", "--dist", fixture("full.dist"))
    assert parse_distribution(out).poss.levels == (3, 2, 2, 1)
    rel = tmp_path / "r.json"
    run(capsys, "induce", "--dist", fixture("prob_nonbs.dist"), "--kind", "probability", "--out", str(rel))
    code, _, err = run(capsys, "construct", "represent", "--rel", str(rel))
    assert code == 1 and "PRECONDITION_FAILED" in err
    run(capsys, "induce", "--dist", fixture("full.dist"), "--kind", "probability", "--out", str(rel))
    code, out, _ = run(capsys, "construct", "represent", "--rel", str(rel))
    assert code == 0 and parse_distribution(out).prob.weights == tuple(Fraction(x, 11) for x in (6, 2, 2, 1))


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["check", "--axiom", "ADD"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["verify", "--theorem", "9"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["check", "--dist", fixture("poss321.dist"), "--kind", "possibility", "--axiom", "COMP"])
    assert err.value.code == 2


def test_size_limit_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("OMCONF_MAX_N", "2")
    code, _, err = run(capsys, "induce", "--dist", fixture("poss321.dist"), "--kind", "possibility")
    assert code == 2 and "SIZE_LIMIT" in err


@given(st.sampled_from(["possibility", "necessity", "discrimax", "leximax", "lifted"]))
def test_induce_kinds_from_poss(kind):
    dist = parse_distribution(Path(fixture("poss321.dist")).read_text())
    from omconf.cli import induce_from

    assert induce_from(dist, kind).space.n == 3
