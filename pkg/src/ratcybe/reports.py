"""Pass/fail reports shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List

MAX_WITNESSES = 25


@dataclass
class Report:
    name: str
    ok: bool = True
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    children: List["Report"] = field(default_factory=list)
    violations: int = 0

    @property
    def passed(self) -> bool:
        # children may record failures after being attached
        return self.ok and all(c.passed for c in self.children)

    def __bool__(self):
        return self.passed

    def fail(self, **witness):
        self.ok = False
        self.violations += 1
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def add(self, child: "Report") -> "Report":
        self.children.append(child)
        return child

    def find(self, name: str) -> "Report":
        for c in self.children:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def first_witness(self):
        if self.witnesses:
            return self.witnesses[0]
        for c in self.children:
            w = c.first_witness
            if w is not None:
                return w
        return None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.violations:
            out["violations"] = self.violations
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.details:
            out["details"] = self.details
        if self.children:
            out["checks"] = [c.to_dict() for c in self.children]
        return out

    def lines(self, indent: int = 0) -> List[str]:
        pad = "  " * indent
        tag = "PASS" if self.passed else "FAIL"
        head = f"{pad}{tag} {self.name}"
        if self.violations:
            head += f" ({self.violations} violation{'s' if self.violations != 1 else ''})"
        out = [head]
        for k in sorted(self.details):
            out.append(f"{pad}    {k}: {self.details[k]}")
        for w in self.witnesses[:5]:
            body = ", ".join(f"{k}={v}" for k, v in w.items())
            out.append(f"{pad}    witness: {body}")
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out

    def text(self) -> str:
        return "\n".join(self.lines())
