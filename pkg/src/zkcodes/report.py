"""Verification reports and their JSON form."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class VerifyReport:
    identity: str
    params: dict
    verdict: str  # "pass" | "fail" | "skipped"
    evidence: dict = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def payload(self) -> dict:
        """Everything except timing; byte-stable for identical inputs."""
        return {
            "identity": self.identity,
            "params": _clean(self.params),
            "verdict": self.verdict,
            "evidence": _clean(self.evidence),
        }

    def to_json(self, timing: bool = True) -> str:
        out = self.payload()
        out["elapsed_ms"] = round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None
        return json.dumps(out, sort_keys=True)


def fmt_float(x: float) -> str:
    return format(x, ".12g")


def _clean(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, complex):
        return [fmt_float(obj.real), fmt_float(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return str(obj)


class _Clock:
    ms: float = 0.0


@contextmanager
def timed():
    clock = _Clock()
    start = time.perf_counter()
    try:
        yield clock
    finally:
        clock.ms = (time.perf_counter() - start) * 1000.0
