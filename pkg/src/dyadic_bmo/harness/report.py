"""Serializable experiment records."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field


def _clean(x):
    """JSON-safe copy: numpy scalars to Python numbers, non-finite floats to strings."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        x = x.item()
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


@dataclass
class ExperimentReport:
    """Outcome of one suite run.

    ``records`` holds one flat dict per sample; ``aggregates`` holds summary
    statistics; ``residuals`` maps each identity to its largest absolute
    residual.  ``runtime_seconds`` and ``timestamp`` are volatile and are
    left out of the canonical JSON when timing is disabled.
    """

    suite: str
    config: dict
    records: list[dict] = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    passed: bool | None = None
    runtime_seconds: float | None = None
    timestamp: str | None = None

    def note_residual(self, name: str, value: float):
        value = float(value)
        self.residuals[name] = max(self.residuals.get(name, 0.0), value)

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "config": self.config,
            "records": self.records,
            "aggregates": self.aggregates,
            "residuals": self.residuals,
            "passed": self.passed,
        }
        if include_timing:
            d["runtime_seconds"] = self.runtime_seconds
            d["timestamp"] = self.timestamp
        return _clean(d)

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        """One row per sample record; columns are the sorted union of record keys."""
        columns = sorted({k for r in self.records for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["suite", *columns], lineterminator="\n")
        writer.writeheader()
        for r in self.records:
            writer.writerow({"suite": self.suite, **_clean(r)})
        return buf.getvalue()

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentReport:
        return cls(
            suite=d["suite"],
            config=d["config"],
            records=list(d.get("records", [])),
            aggregates=dict(d.get("aggregates", {})),
            residuals=dict(d.get("residuals", {})),
            passed=d.get("passed"),
            runtime_seconds=d.get("runtime_seconds"),
            timestamp=d.get("timestamp"),
        )
