"""Deterministic JSON-style report writer.

The byte-for-byte reproducibility contract needs full control over number
formatting and key order, which the stdlib encoder does not give (it
formats floats with repr and follows insertion order). Rules here: object
keys sorted, floats printed with 17 significant digits so parsing returns
the identical double, complex values emitted as [re, im] pairs (or a bare
number when the imaginary part is zero), non-finite floats as the tokens
the stdlib parser accepts. Output parses with json.loads.
"""

from __future__ import annotations

import json
import numbers

import numpy as np

__all__ = ["dumps", "write_path"]

_INDENT = "  "


def _float_token(x: float) -> str:
    if x != x:
        return "NaN"
    if x == float("inf"):
        return "Infinity"
    if x == float("-inf"):
        return "-Infinity"
    return "%.17g" % x


def _scalar_token(obj):
    """Token for a leaf value, or None if obj is a container."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float_token(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        if c.imag == 0:
            return _float_token(c.real)
        return f"[{_float_token(c.real)}, {_float_token(c.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, numbers.Number):
        raise TypeError(f"unsupported numeric type {type(obj)!r}")
    return None


def _render(obj, depth: int) -> str:
    token = _scalar_token(obj)
    if token is not None:
        return token
    pad = _INDENT * (depth + 1)
    close = _INDENT * depth
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = sorted(((str(k), v) for k, v in obj.items()), key=lambda kv: kv[0])
        body = ",\n".join(
            f"{pad}{json.dumps(k, ensure_ascii=True)}: {_render(v, depth + 1)}"
            for k, v in items
        )
        return "{\n" + body + "\n" + close + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        tokens = [_scalar_token(v) for v in seq]
        if all(t is not None for t in tokens):
            return "[" + ", ".join(tokens) + "]"
        body = ",\n".join(f"{pad}{_render(v, depth + 1)}" for v in seq)
        return "[\n" + body + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps(obj) -> str:
    return _render(obj, 0) + "\n"


def write_path(path, obj) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(obj))
