"""CSV and JSON emission for experiment records.

Every record type is a flat dataclass; the CSV header is the field list,
floats are printed with 12 significant digits, integers in exact decimal,
rationals as exact "p/q" strings.  JSON output is an array of objects with
the same field names, and re-parsing it yields records whose re-emission is
byte-identical.
"""
from __future__ import annotations

import dataclasses
import io
import json
import typing
from fractions import Fraction
from typing import Optional, Sequence, Type


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (tuple, list)):
        return ";".join(_format_cell(v) for v in value)
    return str(value)


def _check_homogeneous(records: Sequence, record_type: Optional[Type]) -> Type:
    if record_type is None:
        if not records:
            raise ValueError("empty record list needs an explicit record type")
        record_type = type(records[0])
    for r in records:
        if type(r) is not record_type:
            raise TypeError(
                f"heterogeneous record list: {type(r).__name__} vs {record_type.__name__}"
            )
    if not dataclasses.is_dataclass(record_type):
        raise TypeError(f"{record_type.__name__} is not a record dataclass")
    return record_type


def records_to_csv(records: Sequence, record_type: Optional[Type] = None) -> str:
    record_type = _check_homogeneous(records, record_type)
    names = [f.name for f in dataclasses.fields(record_type)]
    out = io.StringIO()
    out.write(",".join(names) + "\n")
    for r in records:
        out.write(",".join(_format_cell(getattr(r, n)) for n in names) + "\n")
    return out.getvalue()


def _json_value(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (tuple, list)):
        return [_json_value(v) for v in value]
    return str(value)


def records_to_json(records: Sequence, record_type: Optional[Type] = None) -> str:
    record_type = _check_homogeneous(records, record_type)
    names = [f.name for f in dataclasses.fields(record_type)]
    rows = [{n: _json_value(getattr(r, n)) for n in names} for r in records]
    return json.dumps(rows, indent=2)


def _coerce(value, annotation):
    origin = typing.get_origin(annotation)
    if origin is typing.Union:
        args = [a for a in typing.get_args(annotation) if a is not type(None)]
        if value is None:
            return None
        return _coerce(value, args[0])
    if annotation is float:
        return float(value)
    if annotation is int:
        return int(value)
    if annotation is bool:
        return bool(value)
    if annotation is Fraction:
        return Fraction(value)
    if origin is tuple:
        inner = typing.get_args(annotation)[0]
        return tuple(_coerce(v, inner) for v in value)
    return value


def records_from_json(text: str, record_type: Type) -> list:
    """Rebuild records from JSON emitted by records_to_json."""
    hints = typing.get_type_hints(record_type)
    out = []
    for row in json.loads(text):
        kwargs = {name: _coerce(value, hints[name]) for name, value in row.items()}
        out.append(record_type(**kwargs))
    return out
