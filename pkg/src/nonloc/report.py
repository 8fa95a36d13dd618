"""Report records: stable, machine-readable results for the CLI surface."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__ as _pkg_version


def _round_floats(obj, sig: int = 15):
    if isinstance(obj, float):
        return float(f"{obj:.{sig}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v, sig) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v, sig) for v in obj]
    return obj


@dataclass
class ReportRecord:
    """One analysis run: named checks plus free-form values.

    ``checks`` entries are dicts with name/computed/expected/tol/passed;
    the record passes when every check does.
    """

    target: str
    seed: int | None = None
    tolerance: float | None = None
    checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def add_check(self, name, computed, expected, tol) -> bool:
        ok = bool(abs(computed - expected) <= tol)
        self.checks.append(
            {
                "name": name,
                "computed": float(computed),
                "expected": float(expected),
                "tol": float(tol),
                "passed": ok,
            }
        )
        return ok

    def add_bound_check(self, name, computed, bound, direction: str = ">") -> bool:
        ok = bool(computed > bound) if direction == ">" else bool(computed < bound)
        self.checks.append(
            {
                "name": name,
                "computed": float(computed),
                "bound": float(bound),
                "direction": direction,
                "passed": ok,
            }
        )
        return ok

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        return _round_floats(
            {
                "target": self.target,
                "passed": self.passed,
                "provenance": {
                    "version": _pkg_version,
                    "seed": self.seed,
                    "tolerance": self.tolerance,
                },
                "checks": self.checks,
                "values": self.values,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            status = "pass" if c["passed"] else "FAIL"
            if "expected" in c:
                lines.append(
                    f"[{status}] {c['name']}: computed={c['computed']:.12g} "
                    f"expected={c['expected']:.12g} tol={c['tol']:.1e}"
                )
            else:
                lines.append(
                    f"[{status}] {c['name']}: computed={c['computed']:.12g} "
                    f"{c['direction']} {c['bound']:.12g}"
                )
        return lines
