"""Itemized pass/fail records produced by every verifier."""

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


def witness_of(obj):
    """JSON-friendly rendering of a matrix, vector, scalar or message."""
    from .linalg import Matrix
    from .scalar import Scalar, scalar_text

    if obj is None:
        return None
    if isinstance(obj, Matrix):
        return [[scalar_text(v) for v in r] for r in obj.rows]
    if isinstance(obj, Scalar):
        return scalar_text(obj)
    if isinstance(obj, (list, tuple)):
        return [witness_of(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): witness_of(v) for k, v in obj.items()}
    if isinstance(obj, (int, bool, float)):
        return obj
    return str(obj)


@dataclass
class Check:
    name: str
    status: str
    witness: object = None

    def to_dict(self):
        return {"name": self.name, "status": self.status, "witness": self.witness}


@dataclass
class Report:
    subject: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name, ok, witness=None):
        """Record a check; a failing check always keeps a witness."""
        if ok:
            self.checks.append(Check(name, PASS, witness_of(witness)))
        else:
            w = witness_of(witness)
            if w is None:
                w = f"{name} does not hold"
            self.checks.append(Check(name, FAIL, w))
        return ok

    def skip(self, name, reason):
        self.checks.append(Check(name, SKIPPED, reason))

    def note(self, text):
        if text not in self.notes:
            self.notes.append(text)

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness))
        for n in other.notes:
            self.note(n)
        return self

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.checks)

    def __bool__(self):
        return self.passed

    def status(self, name):
        for c in self.checks:
            if c.name == name:
                return c.status
        raise KeyError(name)

    def failed_names(self):
        return [c.name for c in self.checks if c.status == FAIL]

    def passed_names(self):
        return [c.name for c in self.checks if c.status == PASS]

    def to_dict(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["subject"],
            [Check(c["name"], c["status"], c.get("witness")) for c in d["checks"]],
            list(d.get("notes", [])),
        )

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_text(self):
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            line = f"  [{c.status}] {c.name}"
            if c.status != PASS and c.witness is not None:
                line += f"  -- {json.dumps(c.witness)}"
            lines.append(line)
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines) + "\n"
