"""Verification-report records and their text/JSON/CSV renderings.

Reports are deterministic for a fixed configuration apart from the
timestamp and per-check wall-clock fields.  Big integers are rendered as
decimal strings and rationals as "numerator/denominator" strings, so every
format round-trips losslessly.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction


def fmt_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(fmt_value(v) for v in x) + "]"
    return str(x)


@dataclass
class CheckRecord:
    name: str
    anchor: str
    expected: str
    computed: str
    status: str
    seconds: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    command: str
    version: str
    config: dict
    generated_at: str = ""
    checks: list = field(default_factory=list)
    table: list | None = None
    table_name: str = "rows"

    def __post_init__(self):
        if not self.generated_at:
            self.generated_at = datetime.now(timezone.utc).isoformat()

    @property
    def status(self) -> str:
        return "pass" if all(c.passed for c in self.checks) else "fail"

    def add_check(self, name: str, anchor: str, expected, computed, ok: bool, seconds: float):
        self.checks.append(
            CheckRecord(
                name=name,
                anchor=anchor,
                expected=fmt_value(expected),
                computed=fmt_value(computed),
                status="pass" if ok else "fail",
                seconds=round(seconds, 6),
            )
        )

    def check(self, name: str, anchor: str, expected, computed, ok: bool | None = None):
        """Timed context manager form: computed is a callable."""
        t0 = time.perf_counter()
        value = computed() if callable(computed) else computed
        passed = (value == expected) if ok is None else ok
        self.add_check(name, anchor, expected, value, passed, time.perf_counter() - t0)
        return value

    def to_json_obj(self) -> dict:
        obj = {
            "command": self.command,
            "version": self.version,
            "generated_at": self.generated_at,
            "config": {k: fmt_value(v) if not isinstance(v, (str, int, bool, type(None))) else v
                       for k, v in self.config.items()},
            "status": self.status,
            "checks": [
                {
                    "name": c.name,
                    "anchor": c.anchor,
                    "expected": c.expected,
                    "computed": c.computed,
                    "status": c.status,
                    "seconds": c.seconds,
                }
                for c in self.checks
            ],
        }
        if self.table is not None:
            obj[self.table_name] = [
                {k: fmt_value(v) for k, v in row.items()} for row in self.table
            ]
        return obj

    def render_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=False) + "\n"

    def render_csv(self) -> str:
        buf = io.StringIO()
        if self.table is not None:
            writer = csv.DictWriter(buf, fieldnames=list(self.table[0].keys()))
            writer.writeheader()
            for row in self.table:
                writer.writerow({k: fmt_value(v) for k, v in row.items()})
        else:
            writer = csv.writer(buf)
            writer.writerow(["name", "anchor", "expected", "computed", "status", "seconds"])
            for c in self.checks:
                writer.writerow([c.name, c.anchor, c.expected, c.computed, c.status, c.seconds])
        return buf.getvalue()

    def render_text(self) -> str:
        lines = [
            f"{self.command}  (stlab {self.version})",
            f"generated: {self.generated_at}",
            "config: " + ", ".join(f"{k}={fmt_value(v)}" for k, v in self.config.items() if v is not None),
            "",
        ]
        if self.checks:
            width = max(len(c.name) for c in self.checks)
            for c in self.checks:
                lines.append(
                    f"  [{c.status.upper():4}] {c.name:<{width}}  expected={c.expected}"
                    f"  computed={c.computed}  ({c.seconds:.3f}s)"
                )
            lines.append("")
        if self.table is not None:
            cols = list(self.table[0].keys())
            rendered = [[fmt_value(row[c]) for c in cols] for row in self.table]
            widths = [max(len(c), *(len(r[i]) for r in rendered)) for i, c in enumerate(cols)]
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for r in rendered:
                lines.append("  " + "  ".join(v.ljust(w) for v, w in zip(r, widths)))
            lines.append("")
        lines.append(f"overall: {self.status.upper()}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.render_json()
        if fmt == "csv":
            return self.render_csv()
        return self.render_text()
