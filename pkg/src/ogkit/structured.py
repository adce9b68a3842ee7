"""The line-oriented structured output format.

Every line is ``key: value`` where ``value`` is one JSON value (string,
number, list or object) on the rest of the line.  The first two lines are
always ``schema: 1`` and ``command: "<name>"``; keys never repeat.
"""

from __future__ import annotations

import json

SCHEMA_VERSION = 1


def dump(command: str, fields: dict) -> str:
    lines = [f"schema: {SCHEMA_VERSION}", f"command: {json.dumps(command)}"]
    for key, value in fields.items():
        if key in ("schema", "command") or not key or ":" in key or " " in key:
            raise ValueError(f"bad structured key {key!r}")
        lines.append(f"{key}: {json.dumps(value, ensure_ascii=False, separators=(', ', ': '))}")
    return "\n".join(lines) + "\n"


def load(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        key, sep, value = line.partition(": ")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        if key in out:
            raise ValueError(f"line {lineno}: repeated key {key!r}")
        out[key] = json.loads(value)
    return out
