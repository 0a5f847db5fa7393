"""Reading and writing state and channel files.

A state file is a JSON document holding a 4x4 array; each entry is either
a real number or a two-element [re, im] pair. A channel file is a JSON
object with either {"builtin": name, "param": x} or {"kraus": [...]}
where each Kraus operator is a 2x2 array in the same entry syntax.
Channel specs given on a command line may also be inline strings such as
"identity", "zero_plus", or "depolarizing(0.25)".
"""
from __future__ import annotations

import json
import re

import numpy as np

from .channels import KrausChannel, builtin_channel, kraus
from .errors import ParseError


def _entry_to_complex(entry) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(entry)
    if (
        isinstance(entry, (list, tuple))
        and len(entry) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
    ):
        return complex(entry[0], entry[1])
    raise ParseError(f"matrix entry must be a number or [re, im] pair, got {entry!r}")


def _parse_matrix(rows, size: int) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != size:
        raise ParseError(f"expected a {size}x{size} array, got {type(rows).__name__} of length {len(rows) if isinstance(rows, list) else 'n/a'}")
    out = np.zeros((size, size), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise ParseError(f"row {i} must have {size} entries")
        for j, entry in enumerate(row):
            out[i, j] = _entry_to_complex(entry)
    return out


def parse_matrix_entries(rows, size: int = 4) -> np.ndarray:
    """Entry-syntax rows (floats or [re, im] pairs) to a complex array."""
    return _parse_matrix(rows, size)


def parse_state_text(text: str) -> np.ndarray:
    """Parse state-file contents into a raw (unvalidated) 4x4 complex array."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"state file is not valid JSON: {exc}") from exc
    return _parse_matrix(doc, 4)


def read_state_file(path: str) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read state file {path!r}: {exc}") from exc
    return parse_state_text(text)


def _entry_from_complex(value: complex) -> object:
    if value.imag == 0.0:
        return value.real
    return [value.real, value.imag]


def matrix_to_entries(mat: np.ndarray) -> list:
    return [[_entry_from_complex(complex(v)) for v in row] for row in np.asarray(mat)]


def write_state_file(path: str, mat: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_entries(mat), fh, indent=1)
        fh.write("\n")


_INLINE_SPEC = re.compile(r"^\s*([a-zA-Z_][a-zA-Z0-9_]*)\s*(?:\(\s*([-+0-9.eE]+)\s*\))?\s*$")


def parse_channel_spec(spec: str) -> KrausChannel:
    """Resolve an inline channel spec string, e.g. "identity" or "dephasing(0.3)"."""
    m = _INLINE_SPEC.match(spec)
    if m is None:
        raise ParseError(f"cannot parse channel spec {spec!r}")
    name, param = m.group(1), m.group(2)
    if param is not None:
        try:
            param = float(param)
        except ValueError as exc:
            raise ParseError(f"bad channel parameter in {spec!r}") from exc
    return builtin_channel(name, param)


def parse_channel_document(doc) -> KrausChannel:
    if not isinstance(doc, dict):
        raise ParseError("channel file must hold a JSON object")
    if ("builtin" in doc) == ("kraus" in doc):
        raise ParseError("channel file needs exactly one of 'builtin' or 'kraus'")
    if "builtin" in doc:
        name = doc["builtin"]
        if not isinstance(name, str):
            raise ParseError("'builtin' must be a channel name string")
        param = doc.get("param")
        if param is not None and not isinstance(param, (int, float)):
            raise ParseError("'param' must be a number")
        return builtin_channel(name, None if param is None else float(param))
    ops = doc["kraus"]
    if not isinstance(ops, list) or not ops:
        raise ParseError("'kraus' must be a non-empty list of 2x2 matrices")
    return kraus(*[_parse_matrix(op, 2) for op in ops])


def read_channel_file(path: str) -> KrausChannel:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read channel file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"channel file is not valid JSON: {exc}") from exc
    return parse_channel_document(doc)


def resolve_channel(spec: str) -> KrausChannel:
    """Inline name first; if the string names an existing file, parse that."""
    import os

    if os.path.exists(spec):
        return read_channel_file(spec)
    return parse_channel_spec(spec)
