"""Plain-text, versioned on-disk tables.

Layout::

    # hookbias <kind> v<version>
    # key=value            (one line per header field)
    # records=<count>
    field<TAB>field...     (one line per record)

A record count mismatch, a bad magic line or a truncated row raises
:class:`CacheCorruptError`; callers drop the file and recompute.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

MAGIC = "# hookbias"
ENV_VAR = "HOOKBIAS_CACHE"


class CacheCorruptError(ValueError):
    pass


def default_cache_dir() -> Path | None:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def write_table(path: str | os.PathLike, kind: str, version: int, header: dict,
                rows: Iterable[Sequence]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [tuple(str(x) for x in r) for r in rows]
    width = {len(r) for r in rows}
    if len(width) > 1:
        raise ValueError("rows must all have the same number of fields")
    lines = [f"{MAGIC} {kind} v{version}"]
    for k, v in header.items():
        if "=" in str(k) or "\n" in str(v):
            raise ValueError(f"bad header field {k!r}")
        lines.append(f"# {k}={v}")
    lines.append(f"# records={len(rows)}")
    lines.extend("\t".join(r) for r in rows)
    # write-then-rename so an interrupted run never leaves a half file behind
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_table(path: str | os.PathLike, kind: str, version: int) -> tuple[dict, list[tuple[str, ...]]]:
    path = Path(path)
    try:
        text = path.read_text()
    except UnicodeDecodeError as exc:
        raise CacheCorruptError(f"{path}: not text") from exc
    lines = text.splitlines()
    if not lines or lines[0] != f"{MAGIC} {kind} v{version}":
        raise CacheCorruptError(f"{path}: bad magic line")
    header: dict[str, str] = {}
    i = 1
    while i < len(lines) and lines[i].startswith("# "):
        key, sep, value = lines[i][2:].partition("=")
        if not sep:
            raise CacheCorruptError(f"{path}: bad header line {lines[i]!r}")
        header[key] = value
        i += 1
    if "records" not in header:
        raise CacheCorruptError(f"{path}: missing record count")
    rows = [tuple(line.split("\t")) for line in lines[i:]]
    try:
        expected = int(header.pop("records"))
    except ValueError as exc:
        raise CacheCorruptError(f"{path}: bad record count") from exc
    if len(rows) != expected:
        raise CacheCorruptError(f"{path}: expected {expected} records, found {len(rows)}")
    if len({len(r) for r in rows}) > 1:
        raise CacheCorruptError(f"{path}: ragged rows")
    return header, rows
