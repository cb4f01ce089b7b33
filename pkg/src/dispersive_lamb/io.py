"""CSV profiles and JSON manifests, written atomically."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .periodic import SolutionProfile

__all__ = ["profile_csv_text", "write_profile_csv", "write_json", "read_json", "atomic_write_text"]


def _fmt(value: float) -> str:
    # locale-independent, 17 significant digits round-trips binary64 exactly
    return format(float(value), ".17g")


def profile_csv_text(profile: SolutionProfile) -> str:
    lines = ["x,u"]
    lines.extend(f"{_fmt(x)},{_fmt(u)}" for x, u in zip(profile.x, profile.u))
    return "\n".join(lines) + "\n"


def atomic_write_text(path, text: str) -> Path:
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
    return path


def write_profile_csv(path, profile: SolutionProfile) -> Path:
    return atomic_write_text(path, profile_csv_text(profile))


def json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"


def write_json(path, obj) -> Path:
    return atomic_write_text(path, json_text(obj))


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
