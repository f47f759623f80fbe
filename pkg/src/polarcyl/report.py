"""Machine-readable run reports shared by the CLI commands."""

from __future__ import annotations

import csv
import io
import json
import platform
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from . import __version__
from .intersect import Check

SCHEMA = "polarcyl-report/1"


@dataclass
class Report:
    command: str
    args: dict
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    seed: Optional[int] = None

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def summary(self) -> dict:
        passed = sum(c.passed for c in self.checks)
        return {"total": len(self.checks), "passed": passed, "failed": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 2

    def to_dict(self, meta: bool = True) -> dict:
        d = {
            "schema": SCHEMA,
            "command": self.command,
            "args": self.args,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary,
            "data": self.data,
        }
        if self.seed is not None:
            d["seed"] = self.seed
        if meta:
            d["meta"] = {
                "version": __version__,
                "python": platform.python_version(),
                "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            }
        return d

    def to_json(self, meta: bool = True) -> str:
        return json.dumps(self.to_dict(meta), indent=2, sort_keys=True)

    def checks_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "locator", "expected", "computed", "pass"])
        for c in self.checks:
            d = c.to_dict()
            w.writerow([d["id"], d["locator"], _flat(d["expected"]), _flat(d["computed"]), d["pass"]])
        return buf.getvalue()

    def pretty_checks(self) -> str:
        lines = []
        for c in self.checks:
            d = c.to_dict()
            mark = "PASS" if d["pass"] else "FAIL"
            lines.append(f"{mark}  {d['id']}  [{d['locator']}]  expected={_flat(d['expected'])}  computed={_flat(d['computed'])}")
        s = self.summary
        lines.append(f"{s['passed']}/{s['total']} checks passed")
        return "\n".join(lines)


def _flat(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    return str(v)
