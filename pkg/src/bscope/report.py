"""Report envelopes and canonical serialization.

Reports are deterministic: identical configs and tool version produce
byte-identical JSON. Anything time-dependent lives in the ``sidecar``
field, which is excluded from determinism comparisons and from replay
verification.
"""
from __future__ import annotations

import datetime
import json
import os
import tempfile
from pathlib import Path

SCHEMA = "bscope/1"


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def report_envelope(command: str, version: str, config: dict, result: dict) -> dict:
    return {
        "schema": SCHEMA,
        "tool": "bscope",
        "version": version,
        "command": command,
        "config": config,
        "result": result,
        "sidecar": {
            "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
    }


def strip_sidecar(payload: dict) -> dict:
    return {k: v for k, v in payload.items() if k != "sidecar"}


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
