"""Three-valued check reports."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

VIOLATED = "VIOLATED"
CONSISTENT = "CONSISTENT"
INCONCLUSIVE = "INCONCLUSIVE"

EXIT_CODES = {CONSISTENT: 0, VIOLATED: 1, INCONCLUSIVE: 2}


@dataclass
class CheckReport:
    """Outcome of a finite check.

    VIOLATED carries a witness that replays on its own; CONSISTENT carries
    the radius the search ran under (None for closed finite inputs).
    """

    check: str
    status: str
    witness: dict | None = None
    verified_radius: int | None = None
    witness_radius: int | None = None
    statistics: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    subreports: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == CONSISTENT

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        out = {"check": self.check, "status": self.status, "verifiedRadius": self.verified_radius,
               "witnessRadius": self.witness_radius, "statistics": self.statistics}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = list(self.notes)
        if self.subreports:
            out["subreports"] = [r.to_json() for r in self.subreports]
        return out

    def text(self, indent: str = "") -> str:
        radius = "" if self.verified_radius is None else f" (radius {self.verified_radius}" + \
            ("" if self.witness_radius is None else f", witness radius {self.witness_radius}") + ")"
        lines = [f"{indent}{self.check}: {self.status}{radius}"]
        for k, v in self.statistics.items():
            lines.append(f"{indent}  {k}: {v}")
        for n in self.notes:
            lines.append(f"{indent}  note: {n}")
        if self.witness is not None:
            lines.append(f"{indent}  witness: {json.dumps(self.witness, sort_keys=True, default=str)}")
        for r in self.subreports:
            lines.append(r.text(indent + "  "))
        return "\n".join(lines)

    def __str__(self):
        return self.text()


def combine(check: str, reports: list, notes: list | None = None) -> CheckReport:
    """VIOLATED if any part is, else INCONCLUSIVE if any part is, else CONSISTENT."""
    statuses = {r.status for r in reports}
    if VIOLATED in statuses:
        status = VIOLATED
    elif INCONCLUSIVE in statuses:
        status = INCONCLUSIVE
    else:
        status = CONSISTENT
    return CheckReport(check, status, subreports=list(reports), notes=list(notes or []))
