"""Deterministic text serialization helpers.

JSON and CSV writers with fixed-format floating-point output so that identical
inputs always produce byte-identical files: floats are printed with 17
significant digits in JSON (lossless round-trip for IEEE doubles) and 9
significant digits in CSV summaries.  No timestamps, hostnames, or other
environment-dependent data are ever written into data files.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

JSON_SIG_DIGITS = 17
CSV_SIG_DIGITS = 9


def format_float(value: float, sig_digits: int = JSON_SIG_DIGITS) -> str:
    """Render a finite float with a fixed number of significant digits.

    Raises
    ------
    ValueError
        If ``value`` is NaN or infinite; data files must stay loadable by
        strict JSON parsers, which reject non-finite literals.
    """
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {value!r} cannot be serialized")
    return f"{value:.{sig_digits}g}"


def _normalize(obj: Any) -> Any:
    """Convert numpy containers/scalars to plain Python equivalents."""
    if isinstance(obj, np.ndarray):
        return [_normalize(x) for x in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(x) for x in obj]
    return obj


def _render(obj: Any, sig: int, indent: int, level: int, out: list[str]) -> None:
    pad = " " * (indent * level)
    inner = " " * (indent * (level + 1))
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, val) in enumerate(obj.items()):
            out.append(f"{inner}{json.dumps(str(key))}: ")
            _render(val, sig, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        # Flat numeric lists are rendered on one line; nested ones per element.
        if all(isinstance(x, (int, float, bool)) or x is None for x in obj):
            parts = []
            for x in obj:
                if isinstance(x, bool):
                    parts.append("true" if x else "false")
                elif isinstance(x, float):
                    parts.append(format_float(x, sig))
                elif isinstance(x, int):
                    parts.append(str(x))
                else:
                    parts.append("null")
            out.append("[" + ", ".join(parts) + "]")
        else:
            out.append("[\n")
            for i, val in enumerate(obj):
                out.append(inner)
                _render(val, sig, indent, level + 1, out)
                out.append(",\n" if i < len(obj) - 1 else "\n")
            out.append(pad + "]")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, float):
        out.append(format_float(obj, sig))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif obj is None:
        out.append("null")
    else:
        raise TypeError(f"cannot serialize object of type {type(obj).__name__}")


def dumps_json(obj: Any, sig_digits: int = JSON_SIG_DIGITS, indent: int = 2) -> str:
    """Serialize ``obj`` to a deterministic JSON string."""
    out: list[str] = []
    _render(_normalize(obj), sig_digits, indent, 0, out)
    return "".join(out)


def write_json(obj: Any, path: str | Path, sig_digits: int = JSON_SIG_DIGITS) -> Path:
    """Write ``obj`` as JSON to ``path`` and return the path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_json(obj, sig_digits=sig_digits) + "\n", encoding="utf-8")
    return path


def read_json(path: str | Path) -> Any:
    """Load a JSON file written by :func:`write_json` (or any strict JSON)."""
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _format_cell(value: Any, sig: int) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value), sig)
    return str(value)


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    sig_digits: int = CSV_SIG_DIGITS,
) -> Path:
    """Write a deterministic CSV table (comma-separated, ``\\n`` line ends)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(str(h) for h in header)]
    for row in rows:
        lines.append(",".join(_format_cell(v, sig_digits) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def read_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Read a numeric CSV written by :func:`write_csv`.

    Returns
    -------
    header : list of str
    data : ndarray of shape (n_rows, n_cols), dtype float
    """
    text = Path(path).read_text(encoding="utf-8").strip().split("\n")
    header = text[0].split(",")
    data = np.array([[float(x) for x in line.split(",")] for line in text[1:]])
    return header, data
