"""Report envelopes, atomic writes, and CSV series emission.

Every run embeds the tool version, the full flag configuration, the seed
and the tolerances in play, so a report is reproducible from its own
contents.  JSON is the canonical format; CSV is emitted only for plot
series.  Writes go through a temp file and rename so readers never see a
partial report.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import tempfile

import numpy as np

from . import __version__
from .errors import GeometryError


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, float) and obj in (float("inf"), float("-inf")):
        return {"inf": obj > 0}
    return obj


def make_envelope(
    command: str,
    config: dict,
    result: dict,
    seed: int | None = None,
    tolerances: dict | None = None,
    h_err: float | None = None,
    timestamp: bool = True,
) -> dict:
    env = {
        "tool": "alexkit",
        "version": __version__,
        "command": command,
        "config": _jsonable(config),
        "result": _jsonable(result),
    }
    if seed is not None:
        env["seed"] = int(seed)
    if tolerances:
        env["tolerances"] = _jsonable(tolerances)
    if h_err is not None:
        env["h_err"] = float(h_err)
    if timestamp:
        env["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    return env


def dump_canonical(obj: dict) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".alexkit-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_report(path: str, envelope: dict) -> None:
    _atomic_write(path, dump_canonical(envelope))


def write_csv(path: str, header: list[str], columns: list[list]) -> None:
    if len(header) != len(columns):
        raise GeometryError("header and column counts differ")
    lengths = {len(c) for c in columns}
    if len(lengths) > 1:
        raise GeometryError("columns must have equal length")
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def extract_series(envelope: dict, name: str) -> tuple[list[str], list[list]]:
    """Pull a named columnar series out of a report for CSV emission."""

    def find(node):
        if isinstance(node, dict):
            if name in node and isinstance(node[name], dict):
                candidate = node[name]
                if candidate and all(isinstance(v, list) for v in candidate.values()):
                    return candidate
            for v in node.values():
                got = find(v)
                if got is not None:
                    return got
        return None

    series = find(envelope)
    if series is None:
        raise GeometryError(f"report contains no columnar series named {name!r}")
    header = sorted(series)
    return header, [series[k] for k in header]


def worker_count() -> int:
    """Worker cap honoring the ALEXKIT_THREADS environment variable."""
    cpus = os.cpu_count() or 1
    raw = os.environ.get("ALEXKIT_THREADS")
    if raw is None:
        return cpus
    try:
        n = int(raw)
    except ValueError:
        return cpus
    return max(1, min(cpus, n))
