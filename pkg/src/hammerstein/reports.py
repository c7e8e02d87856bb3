"""Condition reports: verdict plus every intermediate constant, serializable
as deterministic ``key = value`` text."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

PASS = "pass"
FAIL = "fail"
NOT_CHECKABLE = "not-checkable"


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of one hypothesis check.

    ``constants`` holds every number that entered the verdict (functional
    values, envelope extrema, suprema of kernel integrals, margins), keyed by
    stable names so reports are machine-diffable.
    """

    condition_id: str
    verdict: str
    constants: dict[str, float] = field(default_factory=dict)
    settings: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_lines(self) -> list[str]:
        lines = [f"condition = {self.condition_id}", f"verdict = {self.verdict}"]
        for key in sorted(self.constants):
            lines.append(f"{key} = {format_value(self.constants[key])}")
        for key in sorted(self.settings):
            lines.append(f"settings.{key} = {format_value(self.settings[key])}")
        for note in self.notes:
            lines.append(f"note = {note}")
        return lines


def merge_reports(condition_id: str, parts: Mapping[str, ConditionReport],
                  settings: dict | None = None) -> ConditionReport:
    """Combine labelled sub-reports; passes only if every part passes."""
    constants: dict[str, float] = {}
    notes: list[str] = []
    verdict = PASS
    for label, part in parts.items():
        for key, value in part.constants.items():
            constants[f"{label}.{key}"] = value
        notes.extend(f"{label}: {n}" for n in part.notes)
        if part.verdict == FAIL:
            verdict = FAIL
        elif part.verdict == NOT_CHECKABLE and verdict == PASS:
            verdict = NOT_CHECKABLE
    return ConditionReport(
        condition_id=condition_id,
        verdict=verdict,
        constants=constants,
        settings=settings or {},
        notes=tuple(notes),
    )
