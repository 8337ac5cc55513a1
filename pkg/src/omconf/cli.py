"""Command-line front end.

Exit codes: 0 success / every check passed, 1 an axiom failed or a
counterexample was found, 2 usage, parse or size-limit error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from omconf.axioms import (
    AXIOM_CHECKS,
    AxiomVerdict,
    _basic_failure,
    check_COM_P,
    classify,
)
from omconf.construct import (
    RepresentationError,
    StateWeakOrder,
    big_stepped_from_order,
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
    SizeLimitError,
    StateSpace,
    relation_query,
)
from omconf.induce import (
    INDUCERS,
    basic_from_relation,
    induce_lexicographic,
    simply_generate,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
KINDS = ("possibility", "necessity", "probability", "discrimax", "leximax", "lifted", "lexicographic")
AXIOMS = ("DEF1", "ADD", "NEG", "CLO", "CCS", "QUAL", "OM", "COM", "CPOM", "COMP", "ALL")
THEOREM_CHOICES = ("1", "2", "3", "4", "5", "6", "props")


class InputError(ValueError):
    """Malformed input file; ``code`` is one of the documented error codes."""

    def __init__(self, code: str, message: str, line: Optional[int] = None, path: str = "<input>"):
        self.code = code
        self.line = line
        self.path = path
        self.message = message
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {code}: {message}")


# ------------------------------------------------------------- distribution files


@dataclass(frozen=True)
class DistributionFile:
    space: StateSpace
    poss: Optional[PossibilityDistribution] = None
    prob: Optional[ProbabilityDistribution] = None
    partition: Optional[Partition] = None


_FRACTION = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_distribution(text: str, path: str = "<input>") -> DistributionFile:
    space: Optional[StateSpace] = None
    poss: Optional[dict[str, int]] = None
    prob: Optional[dict[str, Fraction]] = None
    blocks: Optional[list[list[str]]] = None
    prob_line = poss_line = 0

    def fail(code: str, message: str, line: int) -> InputError:
        return InputError(code, message, line, path)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        tokens = rest.split()
        if keyword == "states":
            if space is not None:
                raise fail("DUPLICATE_ASSIGNMENT", "states declared twice", lineno)
            if not tokens:
                raise fail("PARSE_ERROR", "no states declared", lineno)
            if len(set(tokens)) != len(tokens):
                raise fail("DUPLICATE_ASSIGNMENT", "state declared twice", lineno)
            try:
                space = StateSpace(tokens)
            except SizeLimitError:
                raise
            except ValueError as err:
                raise fail("PARSE_ERROR", str(err), lineno) from None
            continue
        if keyword not in ("poss", "prob", "partition"):
            raise fail("PARSE_ERROR", f"unknown keyword {keyword!r}", lineno)
        if space is None:
            raise fail("PARSE_ERROR", f"{keyword} before states", lineno)
        if keyword == "partition":
            if blocks is not None:
                raise fail("DUPLICATE_ASSIGNMENT", "partition given twice", lineno)
            blocks = [re.split(r"[\s,]+", part.strip()) if part.strip() else [] for part in rest.split("|")]
            for block in blocks:
                for name in block:
                    if name not in space.names:
                        raise fail("UNKNOWN_STATE", f"unknown state {name!r}", lineno)
            continue
        values: dict = {}
        for token in tokens:
            name, eq, value = token.partition("=")
            if not eq:
                raise fail("PARSE_ERROR", f"expected name=value, got {token!r}", lineno)
            if name not in space.names:
                raise fail("UNKNOWN_STATE", f"unknown state {name!r} at token {token!r}", lineno)
            if name in values:
                raise fail("DUPLICATE_ASSIGNMENT", f"state {name!r} assigned twice", lineno)
            if keyword == "poss":
                if not value.isdigit():
                    raise fail("PARSE_ERROR", f"level must be a non-negative integer, got {value!r}", lineno)
                values[name] = int(value)
            else:
                m = _FRACTION.match(value)
                if not m or (m.group(2) is not None and int(m.group(2)) == 0):
                    raise fail("PARSE_ERROR", f"weight must be <int>/<int>, got {value!r}", lineno)
                values[name] = Fraction(int(m.group(1)), int(m.group(2) or 1))
        missing = [name for name in space.names if name not in values]
        if missing:
            raise fail("PARSE_ERROR", f"{keyword} misses state(s) {', '.join(missing)}", lineno)
        if keyword == "poss":
            if poss is not None:
                raise fail("DUPLICATE_ASSIGNMENT", "poss given twice", lineno)
            poss, poss_line = values, lineno
        else:
            if prob is not None:
                raise fail("DUPLICATE_ASSIGNMENT", "prob given twice", lineno)
            prob, prob_line = values, lineno

    if space is None:
        raise InputError("PARSE_ERROR", "no states line", None, path)
    out_poss = out_prob = out_partition = None
    if poss is not None:
        if not any(poss.values()):
            raise fail("PARSE_ERROR", "all possibility levels are 0", poss_line)
        out_poss = PossibilityDistribution.from_mapping(space, poss)
    if prob is not None:
        total = sum(prob.values(), Fraction(0))
        if total != 1:
            raise fail("WEIGHTS_NOT_NORMALIZED", f"weights sum to {total}, deficit {1 - total}", prob_line)
        out_prob = ProbabilityDistribution(space, tuple(prob[name] for name in space.names))
    if blocks is not None:
        try:
            out_partition = Partition.from_names(space, blocks)
        except ValueError as err:
            line = next(i for i, raw in enumerate(text.splitlines(), 1) if raw.strip().startswith("partition"))
            raise fail("BAD_PARTITION", str(err), line) from None
    return DistributionFile(space, out_poss, out_prob, out_partition)


def render_distribution(dist: DistributionFile) -> str:
    names = dist.space.names
    lines = ["states " + " ".join(names)]
    if dist.poss is not None:
        lines.append("poss " + " ".join(f"{s}={v}" for s, v in zip(names, dist.poss.levels)))
    if dist.prob is not None:
        lines.append(
            "prob " + " ".join(f"{s}={w.numerator}/{w.denominator}" for s, w in zip(names, dist.prob.weights))
        )
    if dist.partition is not None:
        lines.append(
            "partition " + " | ".join(" ".join(dist.space.members(b)) for b in dist.partition.blocks)
        )
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------- relation files


def render_relation(rel: EventRelation) -> str:
    return json.dumps({"n": rel.space.n, "states": list(rel.space.names), "geq": rel.rows()}, indent=2) + "\n"


def parse_relation(text: str, path: str = "<input>") -> EventRelation:
    import numpy as np

    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError("PARSE_ERROR", err.msg, err.lineno, path) from None
    if not isinstance(data, dict) or not {"n", "states", "geq"} <= data.keys():
        raise InputError("PARSE_ERROR", "relation file needs fields n, states, geq", None, path)
    n, states, rows = data["n"], data["states"], data["geq"]
    if not isinstance(n, int) or not isinstance(states, list) or len(states) != n:
        raise InputError("PARSE_ERROR", f"n = {n!r} does not match {len(states)} states", None, path)
    if len(set(states)) != len(states):
        raise InputError("DUPLICATE_ASSIGNMENT", "state declared twice", None, path)
    space = StateSpace(states)
    size = 1 << n
    if not isinstance(rows, list) or len(rows) != size:
        raise InputError("PARSE_ERROR", f"expected {size} rows, got {len(rows)}", None, path)
    for i, row in enumerate(rows):
        if not isinstance(row, str) or len(row) != size or set(row) - {"0", "1"}:
            raise InputError("PARSE_ERROR", f"row {i} must be {size} characters of 0/1", None, path)
    geq = np.array([[c == "1" for c in row] for row in rows], dtype=bool).reshape(size, size)
    return EventRelation(space, geq)


# ------------------------------------------------------------- helpers


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise InputError("PARSE_ERROR", err.strerror or str(err), None, path) from None


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_dist(args) -> Optional[DistributionFile]:
    return parse_distribution(_read(args.dist), args.dist) if args.dist else None


def _need(value, what: str, path: str):
    if value is None:
        raise InputError("PARSE_ERROR", f"missing {what} line", None, path)
    return value


def induce_from(dist: DistributionFile, kind: str, path: str = "<input>") -> EventRelation:
    if kind in ("possibility", "necessity", "discrimax"):
        return INDUCERS[kind](_need(dist.poss, "poss", path))
    if kind == "probability":
        return INDUCERS[kind](_need(dist.prob, "prob", path))
    if kind == "leximax":
        return INDUCERS[kind](dist.prob if dist.prob is not None else _need(dist.poss, "poss or prob", path))
    if kind == "lifted":
        pi = _need(dist.poss, "poss", path)
        return simply_generate(BasicRelation.from_levels(dist.space, pi.levels))
    if kind == "lexicographic":
        return induce_lexicographic(_need(dist.partition, "partition", path), _block_weights(dist))[1]
    raise ValueError(f"unknown kind {kind!r}")


def _block_weights(dist: DistributionFile) -> list[Fraction]:
    # relative in-block weights come from the prob line when present
    if dist.prob is None:
        return [Fraction(1)] * dist.space.n
    if any(w <= 0 for w in dist.prob.weights):
        raise InputError("PARSE_ERROR", "in-block weights must be positive")
    return list(dist.prob.weights)


def _load_relation(args, dist: Optional[DistributionFile]) -> EventRelation:
    if args.rel:
        rel = parse_relation(_read(args.rel), args.rel)
        if args.kind == "lifted":
            rel = simply_generate(basic_from_relation(rel))
        return rel
    if dist is None:
        raise UsageError("give --rel PATH or --dist PATH with --kind")
    if not args.kind:
        raise UsageError("--dist needs --kind")
    return induce_from(dist, args.kind, args.dist)


class UsageError(ValueError):
    pass


def _witness_names(rel: EventRelation, verdict: AxiomVerdict) -> Optional[list[str]]:
    if verdict.witness is None:
        return None
    return [rel.space.format(w) for w in verdict.witness]


def _envelope(command: str, inputs: dict, verdicts: list[dict], witnesses: list, seed=None,
              elapsed: Optional[float] = None, **extra) -> dict:
    out = {"command": command, "inputs": inputs, "verdicts": verdicts, "witnesses": witnesses,
           "elapsed": None if elapsed is None else round(elapsed, 3)}
    if seed is not None:
        out["seed"] = seed
    out.update(extra)
    return out


def _emit(args, report: dict, text_lines: Sequence[str]) -> None:
    if args.format == "report":
        _write(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        _write(args.out, "\n".join(text_lines) + "\n")


def _inputs(args, *names: str) -> dict:
    return {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}


def _elapsed(args, start: float) -> Optional[float]:
    return time.perf_counter() - start if args.timing else None


# ------------------------------------------------------------- commands


def cmd_induce(args) -> int:
    dist = _load_dist(args)
    if dist is None:
        raise UsageError("induce needs --dist")
    _write(args.out, render_relation(induce_from(dist, args.kind, args.dist)))
    return EXIT_OK


def _run_axiom(name: str, rel: EventRelation, partition: Optional[Partition], reading: str) -> AxiomVerdict:
    try:
        if name == "COMP":
            if partition is None:
                raise UsageError("COMP needs a partition line in --dist")
            return check_COM_P(rel, partition)
        if name == "CPOM":
            return AXIOM_CHECKS[name](rel, reading)
        return AXIOM_CHECKS[name](rel)
    except BasicRelationError as err:
        return _basic_failure(name, rel, err)


def cmd_check(args) -> int:
    start = time.perf_counter()
    dist = _load_dist(args)
    rel = _load_relation(args, dist)
    partition = dist.partition if dist is not None else None
    if args.axiom == "ALL":
        names = [a for a in AXIOMS if a != "ALL" and (a != "COMP" or partition is not None)]
    else:
        names = [args.axiom]
    verdicts = [_run_axiom(name, rel, partition, args.cpom_reading) for name in names]
    report = _envelope(
        "check", _inputs(args, "rel", "dist", "kind", "axiom", "cpom_reading"),
        [v.to_dict() for v in verdicts],
        [{"axiom": v.axiom, "events": _witness_names(rel, v)} for v in verdicts if not v.passed],
        elapsed=_elapsed(args, start),
    )
    _emit(args, report, [v.describe(rel) for v in verdicts])
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_FAIL


def cmd_classify(args) -> int:
    start = time.perf_counter()
    dist = _load_dist(args)
    rel = _load_relation(args, dist)
    partition = dist.partition if dist is not None else None
    info = classify(rel, partition, args.cpom_reading)
    flags = info.flags()
    verdicts = [v.to_dict() for _, v in sorted(info.verdicts.items())]
    report = _envelope(
        "classify", _inputs(args, "rel", "dist", "kind", "cpom_reading"), verdicts,
        [{"axiom": v.axiom, "events": _witness_names(rel, v)}
         for _, v in sorted(info.verdicts.items()) if not v.passed],
        elapsed=_elapsed(args, start), classification=flags,
    )
    lines = [f"{name}: {'-' if value is None else 'yes' if value else 'no'}" for name, value in flags.items()]
    _emit(args, report, lines)
    return EXIT_OK


def cmd_compare(args) -> int:
    start = time.perf_counter()
    dist = _load_dist(args)
    rel = _load_relation(args, dist)
    events = []
    for text in (args.a, args.b):
        names = [x.strip() for x in text.split(",") if x.strip()]
        for name in names:
            if name not in rel.space.names:
                raise InputError("UNKNOWN_STATE", f"unknown state {name!r}", None, "--a/--b")
        events.append(rel.space.mask(names))
    verdict = relation_query(rel, events[0], events[1])
    a, b = (rel.space.format(e) for e in events)
    report = _envelope(
        "compare", _inputs(args, "rel", "dist", "kind", "a", "b"),
        [{"a": a, "b": b, "verdict": verdict.name, "symbol": verdict.value}], [],
        elapsed=_elapsed(args, start),
    )
    _emit(args, report, [f"{a} {verdict.value} {b}  ({verdict.name})"])
    return EXIT_OK


def cmd_construct(args) -> int:
    what = args.what
    if what == "big-stepped":
        if not args.order:
            raise UsageError("construct big-stepped needs --order")
        try:
            order = StateWeakOrder.parse(args.order)
        except ValueError as err:
            raise InputError("PARSE_ERROR", str(err), None, "--order") from None
        p = big_stepped_from_order(order)
        _write(args.out, render_distribution(DistributionFile(order.space, prob=p)))
        return EXIT_OK
    if what == "represent":
        dist = _load_dist(args)
        rel = _load_relation(args, dist)
        try:
            p = represent_big_stepped(rel)
        except RepresentationError as err:
            verdict = err.verdict
            sys.stderr.write(f"{err}\n")
            if verdict is not None:
                sys.stderr.write(verdict.describe(rel) + "\n")
            return EXIT_FAIL
        _write(args.out, render_distribution(DistributionFile(rel.space, prob=p)))
        return EXIT_OK
    dist = _load_dist(args)
    if dist is None:
        raise UsageError(f"construct {what} needs --dist")
    if what == "possibility":
        pi = possibility_from_prob(_need(dist.prob, "prob", args.dist))
        _write(args.out, render_distribution(DistributionFile(dist.space, poss=pi)))
        return EXIT_OK
    partition = _need(dist.partition, "partition", args.dist)
    p = lexico_scale(partition, _block_weights(dist))
    _write(args.out, render_distribution(DistributionFile(dist.space, prob=p, partition=partition)))
    return EXIT_OK


def cmd_verify(args) -> int:
    from omconf.verify import theorems

    start = time.perf_counter()
    theorem = args.theorem
    kwargs: dict = {}
    if args.n is not None:
        kwargs["n"] = args.n
    if theorem in ("1", "6"):
        kwargs["mode"] = args.mode
        kwargs["seed"] = args.seed
        if args.samples:
            kwargs["samples"] = args.samples
        if theorem == "6" and args.mode == "sampled" and args.n is not None:
            kwargs["sample_sizes"] = (kwargs.pop("n"),)
    elif theorem in ("2", "props"):
        kwargs["seed"] = args.seed
        if args.samples:
            kwargs["samples"] = args.samples
    elif theorem == "3":
        kwargs["basics"] = args.basics
        kwargs["experimental"] = args.experimental
        kwargs["seed"] = args.seed
    elif theorem == "4" and args.n is not None:
        kwargs["corpus_n"] = min(args.n, 3)
    report = theorems.THEOREMS[theorem](**kwargs)
    body = report.to_dict(include_timing=args.timing)
    envelope = _envelope(
        "verify", _inputs(args, "theorem", "n", "mode", "samples", "basics"),
        [{"theorem": report.theorem, "pass": report.passed, "instances": report.instances,
          "counterexamples": len(report.counterexamples)}],
        body["counterexamples"], seed=report.seed, elapsed=_elapsed(args, start), report=body,
    )
    lines = [report.summary(), f"search space: {report.search_space}"]
    for control in report.controls:
        lines.append(f"control: {control['name']}: {'caught' if control['caught'] else 'MISSED'}")
    for key, value in sorted(report.details.items()):
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    for record in body["counterexamples"][:5]:
        lines.append("counterexample: " + json.dumps(record, sort_keys=True))
    _emit(args, envelope, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


# ------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omconf", description="Ordinal confidence relations on finite events.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, source: bool = True) -> None:
        if source:
            p.add_argument("--dist", metavar="PATH", help="distribution file")
            p.add_argument("--rel", metavar="PATH", help="relation file")
            p.add_argument("--kind", choices=KINDS, help="how to induce a relation from --dist")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        p.add_argument("--format", choices=("text", "report"), default="text")
        p.add_argument("--timing", action="store_true", help="include elapsed seconds in reports")

    p = sub.add_parser("induce", help="build an event relation from a distribution")
    p.add_argument("--dist", metavar="PATH", required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("check", help="check one axiom or all of them")
    common(p)
    p.add_argument("--axiom", choices=AXIOMS, default="ALL")
    p.add_argument("--cpom-reading", choices=("verdict", "strict"), default="verdict")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="report which families a relation belongs to")
    common(p)
    p.add_argument("--cpom-reading", choices=("verdict", "strict"), default="verdict")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("compare", help="compare two events")
    common(p)
    p.add_argument("--a", required=True, help="comma-separated state names (empty for the empty event)")
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("construct", help="build a distribution")
    p.add_argument("what", choices=("big-stepped", "possibility", "lexicographic", "represent"))
    p.add_argument("--order", help='state order such as "a > b = c > d"')
    p.add_argument("--dist", metavar="PATH")
    p.add_argument("--rel", metavar="PATH")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run a theorem check")
    common(p, source=False)
    p.add_argument("--theorem", choices=THEOREM_CHOICES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive",
                   help="used by theorems 1 and 6; the others record their own split")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--basics", choices=("orders", "realizable", "quasi"), default="quasi",
                   help="theorem 3: basic relations of state orders, those some monotonic relation "
                        "restricts to, or all complete quasi-transitive ones")
    p.add_argument("--experimental", action="store_true",
                   help="theorem 3: add the informational check on incomplete basic relations")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        parser.error(str(err))
    except InputError as err:
        sys.stderr.write(f"omconf: error: {err}\n")
    except SizeLimitError as err:
        sys.stderr.write(f"omconf: error: SIZE_LIMIT: {err}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
