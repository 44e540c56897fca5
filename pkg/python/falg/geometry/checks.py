"""falg — Residual reports for identity checks.

A check never raises for a failed identity; it records every residual with a
label and reports the verdict. Residuals are any objects with ``is_zero``
and ``render()`` (Scalars, tensor fields, sections, cotensors).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional

logger = logging.getLogger("falg.checks")


@dataclass(frozen=True)
class Residual:
    label: str
    value: Any

    @property
    def is_zero(self) -> bool:
        return self.value.is_zero

    def render(self) -> str:
        return self.value.render()


@dataclass
class CheckReport:
    name: str
    residuals: List[Residual] = field(default_factory=list)

    def add(self, label: str, value) -> Residual:
        residual = Residual(label, value)
        self.residuals.append(residual)
        if not residual.is_zero:
            logger.warning("%s: %s is nonzero: %s", self.name, label, residual.render())
        return residual

    @property
    def passed(self) -> bool:
        return all(r.is_zero for r in self.residuals)

    @property
    def violations(self) -> List[Residual]:
        return [r for r in self.residuals if not r.is_zero]

    @property
    def first_violation(self) -> Optional[Residual]:
        return next((r for r in self.residuals if not r.is_zero), None)

    def __len__(self):
        return len(self.residuals)
