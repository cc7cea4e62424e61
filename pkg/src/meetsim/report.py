from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Report:
    """Verdict of a checker: which clause failed and on what.

    ``witness`` always uses element names, never indices.
    """

    verdict: bool
    clause: str | None = None
    witness: Any = None
    message: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "clause": self.clause, "witness": _jsonable(self.witness)}
        if self.message:
            d["message"] = self.message
        for k, v in self.extra.items():
            d[k] = _jsonable(v)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def passed(**extra) -> Report:
    return Report(True, extra=extra)


def failed(clause, witness=None, message="", **extra) -> Report:
    return Report(False, clause, witness, message, extra)


def _jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x
