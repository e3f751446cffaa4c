"""Check reports: one record per violated instance, deterministic order."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Violation:
    check: str
    witness: tuple
    message: str = ""

    def to_json(self):
        return {"check": self.check, "witness": [_plain(w) for w in self.witness],
                "message": self.message}


@dataclass
class Report:
    title: str
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, check: str, witness, message: str = ""):
        if not isinstance(witness, tuple):
            witness = (witness,)
        self.violations.append(Violation(check, witness, message))

    def extend(self, other: "Report"):
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        return self

    def checks_failed(self) -> set:
        return {v.check for v in self.violations}

    def to_json(self):
        return {"title": self.title, "ok": self.ok,
                "violations": [v.to_json() for v in self.violations],
                "notes": list(self.notes)}

    def dumps(self) -> str:
        return dumps(self.to_json())

    @classmethod
    def from_json(cls, d: dict) -> "Report":
        rep = cls(d["title"], notes=list(d.get("notes", [])))
        for v in d.get("violations", []):
            rep.violations.append(Violation(v["check"], tuple(v["witness"]), v.get("message", "")))
        if d.get("ok", rep.ok) != rep.ok:
            raise ValueError("report 'ok' flag disagrees with its violations")
        return rep

    def __str__(self):
        head = f"{self.title}: {'ok' if self.ok else f'{len(self.violations)} violation(s)'}"
        lines = [head]
        for v in self.violations:
            w = ", ".join(str(_plain(x)) for x in v.witness)
            lines.append(f"  [{v.check}] ({w}) {v.message}".rstrip())
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def _plain(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def loads_report(text: str) -> Report:
    return Report.from_json(json.loads(text))


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
