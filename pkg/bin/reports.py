"""
Check and report records, and their three renderings: JSON, a text table, and console verdicts.

A `Check` is one named assertion with a status of "green", "red" or "skipped"; a red check carries a
witness (the counterexample, or the first coefficient that broke a property) so a rerun with the same seed
can be pointed straight at it, and a skipped check carries the reason it did not run. A `Report` groups
the checks of one case (a suite applied to one base, algebra and order). A report is green iff every one
of its checks is; a skipped check never counts as passing.

Rendering is a pure function of the reports and the run header: reports are ordered by case key and
JSON keys are sorted, so two runs of the same config and seed are byte-identical. The header states
every value the run used, in `key=value` tokens, so a report produced with a changed parameter is
visibly different rather than silently comparable.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, cast

import pandas as pd
from rich.console import Console
from tabulate import tabulate

GREEN = "green"
RED = "red"
SKIPPED = "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    witness: str | None = None
    detail: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def of(cls, name: str, ok: bool, witness: Any = None, **detail: Any) -> Check:
        """Green when `ok`; the witness is kept only on a red check."""
        if ok:
            return cls(name, GREEN, None, detail)
        return cls(name, RED, None if witness is None else str(witness), detail)

    @classmethod
    def skipped(cls, name: str, reason: Any) -> Check:
        return cls(name, SKIPPED, str(reason))

    @property
    def green(self) -> bool:
        return self.status == GREEN

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status, "witness": self.witness}
        if self.detail:
            out["detail"] = {key: _plain(value) for key, value in self.detail.items()}
        return out


@dataclass(frozen=True)
class Report:
    case: str
    checks: tuple[Check, ...]
    notes: tuple[str, ...] = ()

    @property
    def green(self) -> bool:
        return all(check.green for check in self.checks)

    @property
    def red_checks(self) -> list[Check]:
        return [check for check in self.checks if check.status == RED]

    @property
    def skipped(self) -> bool:
        return any(check.status == SKIPPED for check in self.checks)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"case": self.case, "checks": [check.to_dict() for check in self.checks]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def report(case: str, checks: Iterable[Check], notes: Iterable[str] = ()) -> Report:
    return Report(case, tuple(checks), tuple(notes))


def _plain(value: Any) -> Any:
    """JSON-safe copies of detail values: tuples to lists, exotic numbers and objects to strings."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value if value == value and abs(value) != float("inf") else str(value)
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


def ordered(reports: Iterable[Report]) -> list[Report]:
    return sorted(reports, key=lambda r: r.case)


def all_green(reports: Iterable[Report]) -> bool:
    return all(r.green for r in reports)


# ── rendering ────────────────────────────────────────────────────────────────


def header_line(header: Mapping[str, Any]) -> str:
    """`# jetspace: key=value …` for every header key; bools as on/off, numbers with :g."""

    def token(key: str, value: Any) -> str:
        if isinstance(value, bool):  # before the number check: a bool IS an int in Python
            return f"{key}={'on' if value else 'off'}"
        if isinstance(value, (int, float)):
            return f"{key}={value:g}"
        if isinstance(value, (list, tuple)):
            return f"{key}={','.join(str(v) for v in value)}"
        return f"{key}={value}"

    return "# jetspace: " + " ".join(token(key, value) for key, value in header.items())


def render_json(reports: Sequence[Report], header: Mapping[str, Any]) -> str:
    document = {
        "header": _plain(dict(header)),
        "green": all_green(reports),
        "reports": [r.to_dict() for r in ordered(reports)],
    }
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def table(rows: Sequence[Mapping[str, Any]]) -> str:
    """A github table of `rows`, columns in first-row key order."""
    df = pd.DataFrame(list(rows))
    return tabulate(cast(Any, df), headers="keys", showindex=False, tablefmt="github", disable_numparse=True)


def render_text(reports: Sequence[Report], header: Mapping[str, Any]) -> str:
    sections = [header_line(header)]
    for r in ordered(reports):
        rows = [{"check": c.name, "status": c.status, "witness": c.witness or ""} for c in r.checks]
        lines = [r.case, table(rows)]
        lines.extend(f"note: {note}" for note in r.notes)
        sections.append("\n".join(lines))
    return "\n\n".join(sections) + "\n"


def render(reports: Sequence[Report], header: Mapping[str, Any], fmt: str) -> str:
    if fmt == "json":
        return render_json(reports, header)
    if fmt == "text":
        return render_text(reports, header)
    raise ValueError(f"unknown report format {fmt!r}")


def print_verdicts(reports: Sequence[Report], console: Console | None = None) -> None:
    """One ✓/✗/– line per check; red and skipped checks get their witness indented underneath."""
    console = console or Console(stderr=True)
    for r in ordered(reports):
        for check in r.checks:
            name = f"{r.case}: {check.name}"
            if check.green:
                console.print(f"✓ {name}", style="green", markup=False)
                continue
            if check.status == SKIPPED:
                console.print(f"– {name} (skipped)", style="yellow", markup=False)
                console.print(f"    {check.witness}", style="yellow", markup=False)
                continue
            console.print(f"✗ {name}", style="bold red", markup=False)
            for line in (check.witness or "").splitlines():
                console.print(f"    {line}", style="red", markup=False)
