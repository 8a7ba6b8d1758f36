"""Verification reports: the unit of output for every CLI command."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = 1


def _plain(v: Any) -> Any:
    """Tuples and sets become lists and numpy scalars become ints, so JSON round-trips."""
    if isinstance(v, (set, frozenset)):
        return sorted(_plain(x) for x in v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if hasattr(v, "item"):
        return v.item()
    return v


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any

    def __post_init__(self):
        self.expected = _plain(self.expected)
        self.actual = _plain(self.actual)

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "pass": self.passed}


@dataclass
class Table:
    title: str
    columns: list[str]
    rows: list[list]

    def __post_init__(self):
        self.rows = _plain(self.rows)

    def to_dict(self) -> dict:
        return {"title": self.title, "columns": list(self.columns), "rows": self.rows}


@dataclass
class VerificationReport:
    command: str
    params: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    tables: list[Table] = field(default_factory=list)
    elapsed_ms: int = 0

    def check(self, name: str, expected, actual) -> Check:
        c = Check(name, expected, actual)
        self.checks.append(c)
        return c

    def table(self, title: str, columns, rows) -> Table:
        t = Table(title, list(columns), [list(r) for r in rows])
        self.tables.append(t)
        return t

    def extend(self, other: VerificationReport, prefix: str) -> None:
        for c in other.checks:
            self.checks.append(Check(f"{prefix}: {c.name}", c.expected, c.actual))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "params": _plain(self.params),
            "checks": [c.to_dict() for c in self.checks],
            "tables": [t.to_dict() for t in self.tables],
            "elapsed_ms": int(self.elapsed_ms),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        r = cls(d["command"], dict(d["params"]), elapsed_ms=int(d["elapsed_ms"]))
        for c in d["checks"]:
            chk = r.check(c["name"], c["expected"], c["actual"])
            if chk.passed != c["pass"]:
                raise ValueError(f"check {c['name']!r}: stored pass flag disagrees with values")
        for t in d["tables"]:
            r.table(t["title"], t["columns"], t["rows"])
        return r

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        """All tables flattened into one CSV; the first column names the table."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for t in self.tables:
            w.writerow(["table", *t.columns])
            for row in t.rows:
                w.writerow([t.title, *(json.dumps(v) if isinstance(v, list) else v for v in row)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.command}  " + " ".join(f"{k}={v}" for k, v in self.params.items())]
        for t in self.tables:
            lines.append("")
            lines.append(t.title)
            cells = [list(map(str, t.columns))] + [[_cell(v) for v in r] for r in t.rows]
            widths = [max(len(r[i]) for r in cells) for i in range(len(t.columns))]
            for j, r in enumerate(cells):
                lines.append("  " + "  ".join(s.rjust(w) for s, w in zip(r, widths)))
                if j == 0:
                    lines.append("  " + "  ".join("-" * w for w in widths))
        if self.checks:
            lines.append("")
            for c in self.checks:
                flag = "PASS" if c.passed else "FAIL"
                lines.append(f"  [{flag}] {c.name}: expected {_cell(c.expected)}, actual {_cell(c.actual)}")
        ok = sum(c.passed for c in self.checks)
        summary = f"{ok}/{len(self.checks)} checks passed" if self.checks else "no checks"
        lines.append("")
        lines.append(summary + (f" in {self.elapsed_ms} ms" if self.elapsed_ms else ""))
        return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_cell(x) for x in v) + ")"
    return str(v)
