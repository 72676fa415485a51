"""Named-step verification reports shared by the proof replays."""

from __future__ import annotations

import enum
import traceback
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"


@dataclass(frozen=True)
class Step:
    step: str
    claim: str
    status: Status
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status is Status.PASS

    def to_json_obj(self) -> dict[str, Any]:
        obj: dict[str, Any] = {"step": self.step, "claim": self.claim, "status": self.status.value}
        if self.detail:
            obj["detail"] = self.detail
        return obj


@dataclass
class Report:
    """Ordered list of steps; passes only if every step passes."""

    name: str
    steps: list[Step] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    def failures(self) -> list[Step]:
        return [s for s in self.steps if not s.ok]

    def __getitem__(self, step: str) -> Step:
        for s in self.steps:
            if s.step == step:
                return s
        raise KeyError(step)

    def __len__(self) -> int:
        return len(self.steps)

    def add(self, step: str, claim: str, ok: bool, detail: str = "") -> Step:
        s = Step(step, claim, Status.PASS if ok else Status.FAIL, detail)
        self.steps.append(s)
        return s

    def check(self, step: str, claim: str, fn: Callable[[], bool | tuple[bool, str]]) -> Step:
        """Run ``fn``; an exception is recorded as a failure of this step."""
        try:
            out = fn()
        except Exception as exc:  # noqa: BLE001 - a crashing step is a failed step
            last = traceback.format_exception_only(type(exc), exc)[-1].strip()
            return self.add(step, claim, False, f"raised {last}")
        if isinstance(out, tuple):
            return self.add(step, claim, bool(out[0]), out[1])
        return self.add(step, claim, bool(out))

    def extend(self, steps: Iterable[Step]) -> None:
        self.steps.extend(steps)

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "report": self.name,
            "ok": self.ok,
            "passed": sum(s.ok for s in self.steps),
            "total": len(self.steps),
            "steps": [s.to_json_obj() for s in self.steps],
        }

    def to_text(self) -> str:
        lines = [f"{self.name}: {'OK' if self.ok else 'FAILED'} ({sum(s.ok for s in self.steps)}/{len(self.steps)})"]
        for s in self.steps:
            mark = "ok  " if s.ok else "FAIL"
            extra = f"  [{s.detail}]" if s.detail else ""
            lines.append(f"  {mark} {s.step}: {s.claim}{extra}")
        return "\n".join(lines)
