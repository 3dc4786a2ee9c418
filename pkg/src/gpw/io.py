"""Edge-list and signal file formats, JSON report output."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .errors import GPWError
from .graph import Graph, build_graph


class InputFormatError(GPWError):
    """Malformed input file; the message carries the line number."""


def parse_edge_list(text: str) -> list[tuple[int, int]]:
    """Two whitespace-separated nonnegative integers per line; ``#`` lines ignored."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected two vertex ids, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputFormatError(f"line {lineno}: vertex ids must be integers, got {line!r}") from None
        if u < 0 or v < 0:
            raise InputFormatError(f"line {lineno}: vertex ids must be nonnegative")
        edges.append((u, v))
    if not edges:
        raise InputFormatError("edge list contains no edges")
    return edges


def read_edge_list(path, allow_disconnected: bool = False) -> Graph:
    return build_graph(parse_edge_list(Path(path).read_text()), allow_disconnected=allow_disconnected)


def format_edge_list(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def read_signal(path, vertex_count: int) -> np.ndarray:
    """CSV with header ``vertex,re[,im]``; every vertex must appear once."""
    with open(path, newline="") as fh:
        return parse_signal(fh.read(), vertex_count)


def parse_signal(text: str, vertex_count: int) -> np.ndarray:
    reader = csv.reader(io.StringIO(text))
    header = [h.strip() for h in next(reader, [])]
    if header not in (["vertex", "re"], ["vertex", "re", "im"]):
        raise InputFormatError(f"line 1: expected header 'vertex,re[,im]', got {','.join(header)!r}")
    f = np.full(vertex_count, np.nan, dtype=complex)
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InputFormatError(f"line {lineno}: expected {len(header)} fields")
        try:
            v = int(row[0])
            val = float(row[1]) + (1j * float(row[2]) if len(row) == 3 else 0.0)
        except ValueError:
            raise InputFormatError(f"line {lineno}: could not parse {row!r}") from None
        if not 0 <= v < vertex_count:
            raise InputFormatError(f"line {lineno}: vertex {v} out of range")
        f[v] = val
    missing = np.flatnonzero(np.isnan(f.real))
    if missing.size:
        raise InputFormatError(f"signal has no value for vertex {missing[0]}")
    return f


def read_samples(path) -> dict[int, complex]:
    """Sample CSV ``vertex,re[,im]`` covering a subset of the vertices."""
    reader = csv.reader(io.StringIO(Path(path).read_text()))
    next(reader, None)
    values = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            values[int(row[0])] = float(row[1]) + (1j * float(row[2]) if len(row) > 2 else 0.0)
        except (ValueError, IndexError):
            raise InputFormatError(f"line {lineno}: could not parse {row!r}") from None
    return values


def format_signal(f) -> str:
    f = np.asarray(f, dtype=complex)
    lines = ["vertex,re,im"] + [f"{v},{float(x.real)!r},{float(x.imag)!r}" for v, x in enumerate(f)]
    return "\n".join(lines) + "\n"


def _default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(report) -> str:
    """Deterministic JSON (sorted keys)."""
    return json.dumps(report, sort_keys=True, indent=2, default=_default) + "\n"
