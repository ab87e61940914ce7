from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .exactnum import format_rational


@dataclass
class CheckReport:
    """Outcome of an identity check: ok iff no failure was recorded."""

    name: str
    checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    sections: dict[str, "CheckReport"] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures and all(s.ok for s in self.sections.values())

    def __bool__(self) -> bool:
        return self.ok

    def add_residual(self, identity: str, residual: np.ndarray, index_names=None, **context) -> None:
        """Record every nonzero entry of ``residual`` (axis 0 = output coordinate)."""
        res = np.asarray(residual, dtype=object)
        self.checked += int(res.size) if res.ndim else 1
        if res.ndim == 0:
            if res[()] != 0:
                self.failures.append({"identity": identity, **context, "residual": format_rational(res[()])})
            return
        # group by input tuple: axes 1.. are inputs, axis 0 output coordinate
        if res.ndim == 1:
            if any(x != 0 for x in res):
                self.failures.append(
                    {"identity": identity, **context, "residual": [format_rational(x) for x in res]}
                )
            return
        moved = np.moveaxis(res, 0, -1)
        for idx in np.ndindex(moved.shape[:-1]):
            vec = moved[idx]
            if any(x != 0 for x in vec):
                entry = {"identity": identity, **context, "inputs": list(idx)}
                entry["residual"] = [format_rational(x) for x in vec]
                self.failures.append(entry)

    def add_section(self, key: str, report: "CheckReport") -> None:
        self.sections[key] = report

    def failure_count(self) -> int:
        return len(self.failures) + sum(s.failure_count() for s in self.sections.values())

    def first_failure(self) -> dict[str, Any] | None:
        if self.failures:
            return self.failures[0]
        for s in self.sections.values():
            f = s.first_failure()
            if f is not None:
                return f
        return None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "ok": self.ok, "checked": self.checked, "failures": self.failures}
        if self.sections:
            out["sections"] = {k: v.to_json() for k, v in self.sections.items()}
        return out
