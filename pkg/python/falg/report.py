"""falg — Command reports: deterministic text and a mirrored JSON document.

Text layout:

    # <command> <spec-file-name>
    <table lines>
    <identity>: <residual>
    PASS (<n> identities)  |  FAIL (<k> of <n> identities nonzero)

The summary line appears whenever the command checks identities.
"""

import json
from dataclasses import dataclass, field
from typing import List, Optional

from geometry.checks import CheckReport, Residual

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2


@dataclass(frozen=True)
class ReportEntry:
    identity: str
    residual: str
    zero: bool


@dataclass
class Report:
    command: str
    spec: str = ""
    table: List[str] = field(default_factory=list)
    entries: List[ReportEntry] = field(default_factory=list)
    checks: bool = True
    header: bool = True

    def add(self, residual: Residual, prefix: str = ""):
        label = f"{prefix}{residual.label}"
        self.entries.append(ReportEntry(label, residual.render(), residual.is_zero))

    def add_check(self, check: CheckReport, prefix: str = ""):
        for residual in check.residuals:
            self.add(residual, prefix)

    def add_outcome(self, identity: str, ok: bool, detail: str = ""):
        self.entries.append(ReportEntry(identity, "0" if ok else detail, ok))

    @property
    def passed(self) -> bool:
        return all(e.zero for e in self.entries)

    @property
    def failures(self) -> List[ReportEntry]:
        return [e for e in self.entries if not e.zero]

    @property
    def exit_code(self) -> int:
        return EXIT_PASS if self.passed else EXIT_VIOLATION

    def summary(self) -> Optional[str]:
        if not self.checks:
            return None
        n = len(self.entries)
        if self.passed:
            return f"PASS ({n} identities)"
        return f"FAIL ({len(self.failures)} of {n} identities nonzero)"

    def to_text(self) -> str:
        lines = []
        if self.header:
            lines.append(f"# {self.command} {self.spec}".rstrip())
        lines.extend(self.table)
        lines.extend(f"{e.identity}: {e.residual}" for e in self.entries)
        summary = self.summary()
        if summary:
            lines.append(summary)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "spec": self.spec,
            "passed": self.passed,
            "entries": [{"identity": e.identity, "residual": e.residual, "zero": e.zero} for e in self.entries],
            "table": list(self.table),
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
