"""Verification report records and their deterministic serialisation.

JSON layout::

    {"config": {...}, "checks": [{"name", "paper_ref", "max_residual",
     "mean_residual", "tolerance", "bound", "samples", "verdict", ...}], "summary": {...}}

``paper_ref`` holds the identity being checked. For ``bound == "upper"`` the
verdict is pass iff ``max_residual < tolerance``; for ``"lower"`` (witness
checks) ``max_residual`` holds the smallest observed magnitude and the verdict
is pass iff it exceeds ``tolerance``. Reals are written with 17 significant
digits, keys in insertion order, UTF-8, LF line endings.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class Check:
    name: str
    paper_ref: str
    residuals: list = field(default_factory=list)
    tolerance: float = 0.0
    bound: str = "upper"
    details: dict = field(default_factory=dict)

    def add(self, value: float):
        self.residuals.append(float(value))

    @property
    def samples(self) -> int:
        return len(self.residuals)

    @property
    def max_residual(self) -> float:
        if not self.residuals:
            return math.nan
        return max(self.residuals) if self.bound == "upper" else min(self.residuals)

    @property
    def mean_residual(self) -> float:
        return float(np.mean(self.residuals)) if self.residuals else math.nan

    @property
    def passed(self) -> bool:
        if not self.residuals:
            return False
        if self.bound == "upper":
            return self.max_residual < self.tolerance
        return self.max_residual > self.tolerance

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "paper_ref": self.paper_ref,
            "max_residual": self.max_residual,
            "mean_residual": self.mean_residual,
            "tolerance": self.tolerance,
            "bound": self.bound,
            "samples": self.samples,
            "verdict": "pass" if self.passed else "fail",
        }
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class Report:
    config: dict
    checks: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def extend(self, checks):
        self.checks.extend(checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        summary = {
            "checks": len(self.checks),
            "passed": sum(c.passed for c in self.checks),
            "failed": [c.name for c in self.checks if not c.passed],
            "verdict": "pass" if self.passed else "fail",
        }
        summary.update(self.summary)
        return {"config": self.config, "checks": [c.to_dict() for c in self.checks], "summary": summary}


def format_real(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_real(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_emit(str(k), indent, level + 1)}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{_emit(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _emit(obj, indent, 0) + "\n"


def write_atomic(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
