from dataclasses import dataclass, field

import numpy as np


def _plain(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    return x


@dataclass(frozen=True)
class Check:
    """One measured quantity compared against a target.

    ``relation`` is "abs_le" (|measured - target| <= tol), "le"
    (measured <= target + tol) or "flag" (measured truthy).
    """

    name: str
    measured: float
    target: float
    tol: float
    passed: bool
    oracle: str
    relation: str = "abs_le"
    detail: str = ""

    def to_dict(self):
        return _plain({
            "name": self.name,
            "measured": self.measured,
            "target": self.target,
            "tol": self.tol,
            "passed": bool(self.passed),
            "oracle": self.oracle,
            "relation": self.relation,
            "detail": self.detail,
        })

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def deviation_check(name, measured, target, tol, oracle, detail=""):
    measured = float(measured)
    ok = bool(abs(measured - target) <= tol)
    return Check(name, measured, float(target), float(tol), ok, oracle, "abs_le", detail)


def bound_check(name, measured, limit, tol, oracle, detail=""):
    measured = float(measured)
    ok = bool(measured <= limit + tol)
    return Check(name, measured, float(limit), float(tol), ok, oracle, "le", detail)


def flag_check(name, ok, oracle, detail=""):
    return Check(name, float(bool(ok)), 1.0, 0.0, bool(ok), oracle, "flag", detail)


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, check):
        self.checks.append(check)
        return check

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "schema": "matchlet/1",
            "kind": "report",
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "diagnostics": _plain(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            suite=d["suite"],
            checks=[Check.from_dict(c) for c in d["checks"]],
            diagnostics=d.get("diagnostics", {}),
        )

    def summary_lines(self):
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(
                f"  [{mark}] {c.name}: measured={c.measured:.6g} "
                f"target={c.target:.6g} tol={c.tol:.1e} ({c.oracle})"
            )
        return lines
