"""Report values shared by the checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds-up-to-bound"
FAILS = "fails"


@dataclass
class PropertyReport:
    property: str
    verdict: str
    instances_checked: int = 0
    counterexample: Any = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json(self) -> dict:
        out = {"property": self.property, "verdict": self.verdict,
               "instances_checked": self.instances_checked}
        if self.counterexample is not None:
            ce = self.counterexample
            out["counterexample"] = ce.to_json() if hasattr(ce, "to_json") else ce
        if self.details:
            out["details"] = self.details
        return out
