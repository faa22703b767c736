"""Plain-text readers and writers for hyperedge, edge, and signed-edge
lists.

Lines starting with '#' form a metadata header ("# key value"); data
lines are space-separated zero-based ids, LF-terminated.  Writers go
through a temp file and rename, so a failed run leaves no partial file.
"""
from __future__ import annotations

import os

import numpy as np

FORMAT_HYPEREDGES = "hyperedges"
FORMAT_EDGES = "edges"
FORMAT_SIGNED = "signed"

_WIDTH = {FORMAT_HYPEREDGES: 3, FORMAT_EDGES: 2, FORMAT_SIGNED: 3}


def _atomic_write(path: str, lines) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    try:
        with open(tmp, "w") as fh:
            fh.writelines(lines)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(kind: str, meta: dict | None):
    yield f"# hyperkron {kind}\n"
    for key, val in (meta or {}).items():
        yield f"# {key} {val}\n"


def write_table(path: str, kind: str, rows: np.ndarray, meta: dict | None = None) -> None:
    """Write integer rows under a '# key value' metadata header."""
    if kind not in _WIDTH:
        raise ValueError(f"unknown file kind {kind!r}")
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, _WIDTH[kind])

    def lines():
        yield from _header(kind, meta)
        for row in rows:
            yield " ".join(str(int(x)) for x in row) + "\n"

    _atomic_write(path, lines())


def read_table(path: str, kind: str | None = None) -> tuple[np.ndarray, dict[str, str]]:
    """Read a data file back into (rows, metadata).

    The first header line names the file kind; `kind` enforces it when
    given.  Malformed lines raise with the file name and line number.
    """
    meta: dict[str, str] = {}
    found_kind = None
    rows = []
    width = _WIDTH.get(kind) if kind else None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].strip().split(None, 1)
                if not parts:
                    continue
                if parts[0] == "hyperkron" and found_kind is None:
                    found_kind = parts[1].strip() if len(parts) > 1 else ""
                elif len(parts) == 2:
                    meta[parts[0]] = parts[1]
                continue
            fields = line.split()
            if width is None:
                width = len(fields)
                if width not in (2, 3):
                    raise ValueError(
                        f"{path}:{lineno}: expected 2 or 3 columns, got {width}")
            if len(fields) != width:
                raise ValueError(
                    f"{path}:{lineno}: expected {width} columns, got {len(fields)}")
            try:
                rows.append([int(f) for f in fields])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-integer field") from None
    if kind is not None and found_kind is not None and found_kind != kind:
        raise ValueError(f"{path}: file is {found_kind!r}, expected {kind!r}")
    if width is None:
        width = _WIDTH.get(kind or found_kind or "", 0)
    arr = (np.array(rows, dtype=np.int64)
           if rows else np.empty((0, width), dtype=np.int64))
    if found_kind is not None:
        meta.setdefault("format", found_kind)
    return arr, meta


def write_hyperedges(path: str, triples: np.ndarray, meta: dict | None = None) -> None:
    write_table(path, FORMAT_HYPEREDGES, triples, meta)


def write_edges(path: str, pairs: np.ndarray, meta: dict | None = None) -> None:
    write_table(path, FORMAT_EDGES, pairs, meta)


def write_signed(path: str, pairs: np.ndarray, signs: np.ndarray, meta: dict | None = None) -> None:
    rows = np.column_stack((np.asarray(pairs, dtype=np.int64),
                            np.asarray(signs, dtype=np.int64)))
    write_table(path, FORMAT_SIGNED, rows, meta)


def read_hyperedges(path: str):
    return read_table(path, FORMAT_HYPEREDGES)


def read_edges(path: str):
    return read_table(path, FORMAT_EDGES)


def read_signed(path: str):
    rows, meta = read_table(path, FORMAT_SIGNED)
    if rows.size and not np.all(np.isin(rows[:, 2], (-1, 1))):
        raise ValueError(f"{path}: signs must be +1 or -1")
    return rows[:, :2], rows[:, 2].astype(np.int8), meta


def write_keyvalues(path: str, pairs: dict) -> None:
    """Machine-readable 'key value' lines (stats output)."""
    _atomic_write(path, (f"{k} {v}\n" for k, v in pairs.items()))
