"""JSON system and solution files.

A system file looks like::

    {
      "kind": "cyclic",
      "order": 10,
      "mode": "rational",
      "bands": {"d": [...], "a": [...], "A": [...], "C": [...],
                "b": [...], "B": [...], "D": [...]},
      "rhs": [...]
    }

Values are JSON numbers or ``"p/q"`` strings.  Rational files are written
with ``"p/q"`` strings throughout; float64 files with shortest round-trip
decimals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Sequence

from .bands import BAND_NAMES, CyclicHeptaBands, HeptaBands
from .errors import ParseError
from .scalar import Mode, coerce, format_rational

__all__ = ["SystemFile", "load", "save", "load_solution", "dumps_value", "parse_value"]

FILE_MODES = ("f64", "rational")


@dataclass
class SystemFile:
    kind: str
    order: int
    bands: Dict[str, list]
    rhs: list
    mode: str = "f64"

    def to_bands(self, mode: Mode = None):
        mode = Mode(mode or self.mode)
        cls = CyclicHeptaBands if self.kind == "cyclic" else HeptaBands
        return cls(**{name: [coerce(v, mode) for v in self.bands[name]] for name in BAND_NAMES})

    def rhs_as(self, mode: Mode = None) -> list:
        mode = Mode(mode or self.mode)
        return [coerce(v, mode) for v in self.rhs]

    @classmethod
    def from_bands(cls, bands, rhs: Sequence, mode: str = None) -> "SystemFile":
        kind = "cyclic" if isinstance(bands, CyclicHeptaBands) else "hepta"
        mode = mode or ("f64" if bands.mode is Mode.F64 else "rational")
        return cls(
            kind=kind,
            order=bands.order,
            bands={name: [coerce(v, mode) for v in getattr(bands, name)] for name in BAND_NAMES},
            rhs=[coerce(v, mode) for v in rhs],
            mode=mode,
        )


def parse_value(raw, mode: str, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, float, str)):
        raise ParseError(f"{where}: expected a number or 'p/q' string, got {raw!r}")
    if isinstance(raw, str):
        try:
            value = Fraction(raw.strip())
        except ZeroDivisionError:
            raise ParseError(f"{where}: zero denominator in {raw!r}") from None
        except ValueError:
            raise ParseError(f"{where}: cannot parse {raw!r} as a rational") from None
    elif isinstance(raw, float):
        # the decimal as written, not its binary expansion
        value = Fraction(repr(raw)) if mode == "rational" else raw
    else:
        value = raw
    return float(value) if mode == "f64" else Fraction(value)


def dumps_value(v):
    if isinstance(v, float):
        return v
    if isinstance(v, int):
        return format_rational(Fraction(v))
    if isinstance(v, Fraction):
        return format_rational(v)
    raise TypeError(f"cannot serialize {v!r}")


def _read_json(path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load(path) -> SystemFile:
    """Read and validate a system file."""
    data = _read_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    for key in ("kind", "order", "bands", "rhs"):
        if key not in data:
            raise ParseError(f"{path}: missing field {key!r}")
    kind = data["kind"]
    if kind not in ("cyclic", "hepta"):
        raise ParseError(f"{path}: field 'kind' must be 'cyclic' or 'hepta', got {kind!r}")
    order = data["order"]
    if isinstance(order, bool) or not isinstance(order, int):
        raise ParseError(f"{path}: field 'order' must be an integer")
    mode = data.get("mode", "f64")
    if mode not in FILE_MODES:
        raise ParseError(f"{path}: field 'mode' must be one of {FILE_MODES}, got {mode!r}")
    raw_bands = data["bands"]
    if not isinstance(raw_bands, dict):
        raise ParseError(f"{path}: field 'bands' must be an object")
    bands = {}
    for name in BAND_NAMES:
        if name not in raw_bands:
            raise ParseError(f"{path}: missing band {name!r}")
        seq = raw_bands[name]
        if not isinstance(seq, list):
            raise ParseError(f"{path}: bands.{name} must be an array")
        bands[name] = [parse_value(v, mode, f"{path}: bands.{name}[{k}]") for k, v in enumerate(seq)]
    unknown = set(raw_bands) - set(BAND_NAMES)
    if unknown:
        raise ParseError(f"{path}: unknown bands {sorted(unknown)}")
    rhs = data["rhs"]
    if not isinstance(rhs, list):
        raise ParseError(f"{path}: field 'rhs' must be an array")
    if len(rhs) != order:
        raise ParseError(f"{path}: rhs has length {len(rhs)}, expected order {order}")
    if len(bands["d"]) != order:
        raise ParseError(f"{path}: bands.d has length {len(bands['d'])}, expected order {order}")
    sf = SystemFile(
        kind=kind,
        order=order,
        bands=bands,
        rhs=[parse_value(v, mode, f"{path}: rhs[{k}]") for k, v in enumerate(rhs)],
        mode=mode,
    )
    sf.to_bands()  # BadBandLength / OrderTooSmall / UnsupportedCornerEntry
    return sf


def _dumps(data, indent=0):
    # objects are indented, arrays of scalars stay on one line
    if isinstance(data, dict):
        pad = "  " * (indent + 1)
        items = [f"{pad}{json.dumps(k)}: {_dumps(v, indent + 1)}" for k, v in data.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    return json.dumps(data)


def save(path, obj, **meta) -> None:
    """Write a :class:`SystemFile`, or a solution vector with optional metadata."""
    if isinstance(obj, SystemFile):
        data = {
            "kind": obj.kind,
            "order": obj.order,
            "mode": obj.mode,
            "bands": {name: [dumps_value(v) for v in obj.bands[name]] for name in BAND_NAMES},
            "rhs": [dumps_value(v) for v in obj.rhs],
        }
    else:
        data = {"x": [dumps_value(v) for v in obj]}
        data.update({k: dumps_value(v) if isinstance(v, (Fraction, float)) else v for k, v in meta.items()})
    text = _dumps(data) + "\n"
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text, encoding="utf-8")


def load_solution(path) -> List:
    """Read a solution written by :func:`save` (or a bare JSON array)."""
    data = _read_json(path)
    if isinstance(data, dict):
        if "x" not in data:
            raise ParseError(f"{path}: missing field 'x'")
        data = data["x"]
    if not isinstance(data, list):
        raise ParseError(f"{path}: solution must be an array")
    out = []
    for k, v in enumerate(data):
        mode = "f64" if isinstance(v, float) else "rational"
        out.append(parse_value(v, mode, f"{path}: x[{k}]"))
    return out
