"""CSV exchange formats and full-precision JSON report serialization.

All numbers are written as 17-significant-digit decimals, which
round-trips IEEE doubles exactly.
"""
from __future__ import annotations

import csv
import io as _io
from pathlib import Path

import numpy as np

from .errors import DomainError
from .transform import SampledFunction, SpectralSamples

__all__ = [
    "fmt17",
    "dumps_json17",
    "write_json17",
    "read_sampled_csv",
    "write_sampled_csv",
    "write_spectral_csv",
]


def fmt17(x: float) -> str:
    return format(float(x), ".17g")


def _encode(obj, out: list[str], indent: int) -> None:
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f'{pad}  "{k}": ')
            _encode(v, out, indent + 2)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _encode(v, out, indent + 2)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(fmt17(obj))
    elif isinstance(obj, complex):
        _encode([obj.real, obj.imag], out, indent)
    elif obj is None:
        out.append("null")
    elif isinstance(obj, str):
        out.append(
            '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
        )
    else:
        raise DomainError(f"cannot serialize {type(obj).__name__}")


def dumps_json17(obj) -> str:
    """JSON text with every float rendered to 17 significant digits."""
    out: list[str] = []
    _encode(obj, out, 0)
    out.append("\n")
    return "".join(out)


def write_json17(obj, path) -> None:
    Path(path).write_text(dumps_json17(obj), encoding="utf-8")


def read_sampled_csv(path) -> SampledFunction:
    """Read a sampled function: header row, then columns x, re[, im]."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 3:
        raise DomainError(f"{path}: need a header row and at least 2 samples")
    ncol = len(rows[0])
    if ncol not in (2, 3):
        raise DomainError(f"{path}: expected 2 or 3 columns, got {ncol}")
    xs, vals = [], []
    for row in rows[1:]:
        if not row:
            continue
        xs.append(float(row[0]))
        vals.append(float(row[1]) + 1j * (float(row[2]) if ncol == 3 else 0.0))
    grid = np.asarray(xs)
    values = np.asarray(vals)
    return SampledFunction(grid, values, (float(grid[0]), float(grid[-1])))


def _write_columns(path, header: list[str], cols: list[np.ndarray]) -> None:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*cols):
        writer.writerow([fmt17(v) for v in row])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def write_sampled_csv(path, sf: SampledFunction) -> None:
    _write_columns(
        path, ["x", "re", "im"], [sf.grid, sf.values.real, sf.values.imag]
    )


def write_spectral_csv(path, ss: SpectralSamples) -> None:
    _write_columns(
        path, ["lambda", "re", "im"], [ss.lambdas, ss.values.real, ss.values.imag]
    )
