"""Theorem harness reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass
class TheoremReport:
    theorem: str
    search_space: str
    mode: str
    instances: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    seed: Optional[int] = None
    elapsed: Optional[float] = None
    details: dict[str, Any] = field(default_factory=dict)
    controls: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def add_counterexample(self, record: dict) -> None:
        self.counterexamples.append(record)

    def add_control(self, name: str, caught: bool, **evidence: Any) -> None:
        """Record a negative control; an uncaught control counts as a counterexample."""
        entry = {"name": name, "caught": bool(caught), **evidence}
        self.controls.append(entry)
        if not caught:
            self.add_counterexample({"check": "negative_control_not_caught", "control": name})

    def finish(self) -> "TheoremReport":
        self.counterexamples.sort(key=lambda c: json.dumps(c, sort_keys=True))
        return self

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "search_space": self.search_space,
            "mode": self.mode,
            "instances": self.instances,
            "counterexamples": self.counterexamples,
            "pass": self.passed,
            "seed": self.seed,
            "details": self.details,
            "controls": self.controls,
        }
        if include_timing:
            out["elapsed"] = self.elapsed
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"theorem {self.theorem} [{self.mode}] {status}: "
            f"instances: {self.instances}, counterexamples: {len(self.counterexamples)}"
        )
