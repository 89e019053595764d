from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of one exact check; a failure is data, not an exception."""

    name: str
    passed: bool
    detail: str = ""
    precision: int | None = None
    first_mismatch: int | None = None
    data: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" (first mismatch at index {self.first_mismatch})" if self.first_mismatch is not None else ""
        return f"[{status}] {self.name}{extra}: {self.detail}"
