"""Outcome record for a single statistical or numerical verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class TestReport:
    """Result of one check: a statistic compared against a threshold.

    Two conventions exist, recorded in ``details["convention"]``:

    * ``"distance"`` -- passes iff ``statistic <= threshold``;
    * ``"p-value"``  -- passes iff ``statistic >= threshold`` (the
      statistic is a p-value, the threshold a significance level).
    """

    __test__ = False  # not a pytest class, despite the name

    name: str
    statistic: float
    threshold: float
    passed: bool
    n_samples: int
    seed: int
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        convention = self.details.get("convention", "distance")
        if convention == "distance":
            expected = self.statistic <= self.threshold
        elif convention == "p-value":
            expected = self.statistic >= self.threshold
        else:
            raise ValueError(f"unknown report convention {convention!r}")
        if bool(self.passed) != bool(expected):
            raise ValueError(
                f"inconsistent report: statistic={self.statistic}, "
                f"threshold={self.threshold}, passed={self.passed} "
                f"under convention {convention!r}"
            )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statistic": self.statistic,
            "threshold": self.threshold,
            "pass": self.passed,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "details": self.details,
        }

    def to_json(self) -> str:
        """JSON with stable key order, reproducible byte for byte."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ": "), indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> "TestReport":
        return cls(
            name=d["name"],
            statistic=d["statistic"],
            threshold=d["threshold"],
            passed=d["pass"],
            n_samples=d["n_samples"],
            seed=d["seed"],
            details=dict(d.get("details", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "TestReport":
        return cls.from_dict(json.loads(text))

    def to_tap(self, number: int = 1) -> str:
        """One-line TAP record, e.g. ``ok 3 - idt[fbm] stat=... thr=...``."""
        status = "ok" if self.passed else "not ok"
        return (
            f"{status} {number} - {self.name} "
            f"statistic={self.statistic:.6g} threshold={self.threshold:.6g} "
            f"n={self.n_samples}"
        )

    @staticmethod
    def from_distance(name, statistic, threshold, n_samples, seed, details=None) -> "TestReport":
        details = dict(details or {})
        details["convention"] = "distance"
        return TestReport(
            name=name,
            statistic=float(statistic),
            threshold=float(threshold),
            passed=bool(statistic <= threshold),
            n_samples=int(n_samples),
            seed=int(seed),
            details=details,
        )

    @staticmethod
    def from_pvalue(name, p_value, level, n_samples, seed, details=None) -> "TestReport":
        details = dict(details or {})
        details["convention"] = "p-value"
        return TestReport(
            name=name,
            statistic=float(p_value),
            threshold=float(level),
            passed=bool(p_value >= level),
            n_samples=int(n_samples),
            seed=int(seed),
            details=details,
        )
