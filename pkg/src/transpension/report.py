from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
WINDOW_NEGATIVE = "window-negative"
FRONTIER = "frontier"
SKIP = "skip"
INFO = "info"

HARD = {FAIL}


@dataclass
class Entry:
    check: str
    status: str
    detail: str = ""
    witness: object = None

    def to_json(self):
        out = {"check": self.check, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        return out


@dataclass
class CheckReport:
    name: str
    entries: list = field(default_factory=list)

    def add(self, check, status, detail="", witness=None):
        self.entries.append(Entry(check, status, detail, witness))
        return self

    def ok(self, check, detail=""):
        return self.add(check, PASS, detail)

    def fail(self, check, detail="", witness=None):
        return self.add(check, FAIL, detail, witness)

    def expect(self, check, condition, detail="", witness=None):
        return self.add(check, PASS if condition else FAIL, detail, None if condition else witness)

    def extend(self, other, prefix=None):
        for e in other.entries:
            name = e.check if prefix is None else f"{prefix}/{e.check}"
            self.entries.append(Entry(name, e.status, e.detail, e.witness))
        return self

    @property
    def passed(self):
        return not any(e.status in HARD for e in self.entries)

    def failures(self):
        return [e for e in self.entries if e.status in HARD]

    def count(self, status):
        return sum(1 for e in self.entries if e.status == status)

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "entries": [e.to_json() for e in self.entries],
        }

    def __str__(self):
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for e in self.entries:
            line = f"  [{e.status}] {e.check}"
            if e.detail:
                line += f": {e.detail}"
            if e.witness is not None:
                line += f" (witness: {jsonable(e.witness)})"
            lines.append(line)
        return "\n".join(lines)


def jsonable(x):
    """Convert nested tuples, frozensets and labels into JSON-safe data."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted((jsonable(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return repr(x)
