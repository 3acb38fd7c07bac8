"""Exception types shared by the whole package."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence


class PreconditionError(ValueError):
    """An input violates the documented hypothesis of an operation."""


class BudgetExhausted(RuntimeError):
    """A bounded search hit its node cap before finishing."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: search budget of {budget} nodes exhausted")
        self.what = what
        self.budget = budget


@dataclass(frozen=True)
class CounterexampleReport:
    """Evidence that a lemma conclusion failed on some input.

    ``kind`` is ``"P6"`` (an induced path, listed in path order), ``"K2t"``
    (the two hub vertices first, then the independent side) or
    ``"assertion"`` (a conclusion failed and no forbidden subgraph was found,
    which indicates a bug rather than a non-free input).
    """

    kind: str
    vertices: tuple[int, ...]
    lemma: str
    detail: str = ""
    extra: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "vertices": list(self.vertices), "lemma": self.lemma}
        if self.detail:
            d["detail"] = self.detail
        if self.extra:
            d["extra"] = self.extra
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class Counterexample(Exception):
    """Raised in assert-mode when a lemma conclusion does not hold."""

    def __init__(self, report: CounterexampleReport):
        super().__init__(f"lemma {report.lemma}: {report.kind} {list(report.vertices)} {report.detail}".rstrip())
        self.report = report


def p6_report(path: Sequence[int], lemma: str, detail: str = "") -> Counterexample:
    """Report an induced path; longer paths keep their full vertex list in ``extra``."""
    extra = {"path": list(path)} if len(path) > 6 else {}
    return Counterexample(CounterexampleReport("P6", tuple(path[:6]), lemma, detail, extra))


def k2t_report(pair: Sequence[int], side: Sequence[int], lemma: str, detail: str = "") -> Counterexample:
    return Counterexample(CounterexampleReport("K2t", tuple(pair) + tuple(side), lemma, detail))
