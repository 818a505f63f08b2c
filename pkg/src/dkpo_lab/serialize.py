"""Deterministic CSV/JSON output.

Numbers are written with a fixed number of significant digits (default 12,
overridable through ``DKPO_PRECISION``). Files are UTF-8 with LF endings.
"""
import csv
import enum
import io
import json
import math
import os

from dkpo_lab import __version__

FORMAT_VERSION = 1
HEADER = f"# dkpo-lab v{__version__} fmt={FORMAT_VERSION}"


def precision():
    raw = os.environ.get("DKPO_PRECISION")
    if raw is None or raw == "":
        return 12
    p = int(raw)
    if not 1 <= p <= 17:
        raise ValueError(f"DKPO_PRECISION must be in 1..17, got {p}")
    return p


def fmt(value, digits=None):
    if value is None:
        return ""
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{digits or precision()}g}"
    return str(value)


def rounded(obj, digits=None):
    """Recursively round floats to the serialisation precision (JSON payloads)."""
    digits = digits or precision()
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {str(k): rounded(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v, digits) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return rounded(obj.item(), digits)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def csv_text(columns, rows):
    buf = io.StringIO()
    buf.write(HEADER + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def json_text(payload):
    body = {"format": HEADER.lstrip("# "), **payload}
    return json.dumps(rounded(body), sort_keys=True, indent=2) + "\n"


def read_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.reader(lines)
    columns = next(reader)
    return columns, [row for row in reader]


def emit(text, out=None):
    """Write to ``out`` (path) or stdout."""
    if out is None or out == "-":
        import sys
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
