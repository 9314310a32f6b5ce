"""JSON file formats, schema validation and deterministic serialisation."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from .algebra import GroupoidFunction
from .constructions import Cocycle, FiniteGroupAction
from .dynamics import EndoPair
from .errors import GroupoidError
from .groupoid import FiniteGroupoid
from .kgraph import TwoGraphPresentation
from .report import label
from .zs import MatchedPair

_LABEL = {"type": "string", "minLength": 1}
_LABELS = {"type": "array", "items": _LABEL}
_TRIPLE = {"type": "array", "items": _LABEL, "minItems": 3, "maxItems": 3}
_LABEL_MAP = {"type": "object", "additionalProperties": _LABEL}

GROUPOID_SCHEMA = {
    "type": "object",
    "required": ["elements", "inverse", "compose"],
    "properties": {
        "elements": {**_LABELS, "minItems": 1},
        "inverse": _LABEL_MAP,
        "compose": {"type": "array", "items": _TRIPLE},
    },
}

MATCHED_PAIR_SCHEMA = {
    "type": "object",
    "required": ["g", "h", "unit_map", "action", "restriction"],
    "properties": {
        "g": GROUPOID_SCHEMA,
        "h": GROUPOID_SCHEMA,
        "unit_map": _LABEL_MAP,
        "action": {"type": "array", "items": _TRIPLE},
        "restriction": {"type": "array", "items": _TRIPLE},
    },
}

FUNCTION_SCHEMA = {
    "type": "object",
    "required": ["groupoid", "coeffs"],
    "properties": {
        "groupoid": {"anyOf": [_LABEL, GROUPOID_SCHEMA]},
        "coeffs": {
            "type": "object",
            "additionalProperties": {
                "type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2,
            },
        },
    },
}

ACTION_SCHEMA = {
    "type": "object",
    "required": ["group", "carrier", "act"],
    "properties": {"group": GROUPOID_SCHEMA, "carrier": _LABELS, "act": {"type": "array", "items": _TRIPLE}},
}

COCYCLE_SCHEMA = {
    "type": "object",
    "required": ["groupoid", "group", "map"],
    "properties": {"groupoid": GROUPOID_SCHEMA, "group": GROUPOID_SCHEMA, "map": _LABEL_MAP},
}

ENDO_SCHEMA = {
    "type": "object",
    "required": ["carrier", "s", "t"],
    "properties": {"carrier": {**_LABELS, "minItems": 1}, "s": _LABEL_MAP, "t": _LABEL_MAP},
}

_QUAD = {"type": "array", "items": _LABEL, "minItems": 4, "maxItems": 4}
TWO_GRAPH_SCHEMA = {
    "type": "object",
    "required": ["vertices", "blue", "red", "squares"],
    "properties": {
        "vertices": _LABELS,
        "blue": {"type": "array", "items": _TRIPLE},
        "red": {"type": "array", "items": _TRIPLE},
        "squares": {"type": "array", "items": _QUAD},
    },
}

SUBSET_SCHEMA = _LABELS

SCHEMAS = {
    "groupoid": GROUPOID_SCHEMA,
    "matched_pair": MATCHED_PAIR_SCHEMA,
    "function": FUNCTION_SCHEMA,
    "action": ACTION_SCHEMA,
    "cocycle": COCYCLE_SCHEMA,
    "endo": ENDO_SCHEMA,
    "two_graph": TWO_GRAPH_SCHEMA,
    "subset": SUBSET_SCHEMA,
}


class InputError(GroupoidError):
    """Unreadable file or a document that does not match its schema.

    ``path`` is the file, ``key`` the JSON path of the first offending entry.
    """

    def __init__(self, message: str, path: str = "", key: str = ""):
        super().__init__(message)
        self.path = path
        self.key = key


def _json_path(parts) -> str:
    return "/" + "/".join(str(p) for p in parts) if parts else "/"


def check_schema(doc: Any, kind: str, path: str = "<input>") -> None:
    """Raise :class:`InputError` naming the first offending key (document order)."""
    validator = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errors = sorted(validator.iter_errors(doc), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        err = errors[0]
        key = _json_path(err.absolute_path)
        raise InputError(f"{path}: schema violation at {key}: {err.message}", path, key)


def read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror or exc})", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}", str(path)) from None


def load(path, kind: str) -> Any:
    doc = read_json(path)
    check_schema(doc, kind, str(path))
    return doc


def load_groupoid(path) -> FiniteGroupoid:
    return FiniteGroupoid.from_dict(load(path, "groupoid"), name=Path(path).stem)


def load_matched_pair(path) -> MatchedPair:
    return MatchedPair.from_dict(load(path, "matched_pair"), name=Path(path).stem)


def load_function(path) -> GroupoidFunction:
    doc = load(path, "function")
    ref = doc["groupoid"]
    if isinstance(ref, str):
        base = load_groupoid(Path(path).parent / ref)
    else:
        base = FiniteGroupoid.from_dict(ref)
    for key in doc["coeffs"]:
        if key not in base:
            raise InputError(f"{path}: schema violation at /coeffs/{key}: not an element", str(path), f"/coeffs/{key}")
    return GroupoidFunction(base, {k: complex(re, im) for k, (re, im) in doc["coeffs"].items()})


def load_action(path) -> FiniteGroupAction:
    doc = load(path, "action")
    group = FiniteGroupoid.from_dict(doc["group"])
    return FiniteGroupAction(group, tuple(doc["carrier"]), {(g, x): y for g, x, y in doc["act"]})


def load_cocycle(path) -> Cocycle:
    return Cocycle.from_dict(load(path, "cocycle"))


def load_endo(path) -> EndoPair:
    return EndoPair.from_dict(load(path, "endo"))


def load_two_graph(path) -> TwoGraphPresentation:
    return TwoGraphPresentation.from_dict(load(path, "two_graph"))


def load_subset(path) -> list:
    return list(load(path, "subset"))


def action_to_dict(action: FiniteGroupAction) -> dict:
    return {
        "group": action.group.to_dict(),
        "carrier": [label(x) for x in action.carrier],
        "act": [[label(g), label(x), label(action.act[(g, x)])] for g in action.group for x in action.carrier],
    }


def round_sig(x: float, digits: int = 12) -> float:
    if not math.isfinite(x) or x == 0:
        return x
    return float(f"{x:.{digits}g}")


def normalise(value: Any, digits: int = 12) -> Any:
    """Round floats to ``digits`` significant digits throughout a JSON-like value."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return round_sig(value, digits)
    if isinstance(value, complex):
        return [round_sig(value.real, digits), round_sig(value.imag, digits)]
    if isinstance(value, dict):
        return {str(k): normalise(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalise(v, digits) for v in value]
    return str(value)


def dumps(doc: Any, indent: int | None = 2) -> str:
    """Deterministic JSON: insertion key order, fixed separators, 12 significant digits."""
    return json.dumps(normalise(doc), indent=indent, ensure_ascii=False, allow_nan=False)


def write_json(path, doc: Any) -> None:
    Path(path).write_text(dumps(doc) + "\n", encoding="utf-8")
