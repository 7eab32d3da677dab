"""Verification records shared by the identity checkers and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class VerificationRecord:
    suite: str
    params: dict = field(default_factory=dict)
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def count(self, n: int = 1) -> None:
        self.instances += n

    def fail(self, **payload) -> None:
        self.instances += 1
        if len(self.failures) < 50:
            self.failures.append(payload)

    def check(self, ok: bool, **payload) -> bool:
        if ok:
            self.instances += 1
        else:
            self.fail(**payload)
        return ok

    def merge(self, other: "VerificationRecord") -> None:
        self.instances += other.instances
        self.failures.extend(other.failures)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "instances": self.instances,
            "pass": self.passed,
            "failures": [{k: str(v) for k, v in f.items()} for f in self.failures],
        }

    def __str__(self):
        return json.dumps(self.to_json())
