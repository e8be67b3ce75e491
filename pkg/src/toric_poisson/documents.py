"""JSON polytope documents, bundled examples, and exact/float output formatting."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .polytope import LatticePolytope, PolytopeError, from_h_rep, from_vertices

RATIONAL = {"oneOf": [{"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"}, {"type": "integer"}]}

SCHEMA = {
    "type": "object",
    "required": ["name", "dim", "representation"],
    "properties": {
        "name": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "representation": {"enum": ["h-rep", "v-rep"]},
        "normals": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "offsets": {"type": "array", "items": RATIONAL},
        "vertices": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        "options": {
            "type": "object",
            "properties": {"h": RATIONAL, "pi-sigma-kappa-factor": {"type": "boolean"}},
            "additionalProperties": False,
        },
    },
    "allOf": [
        {
            "if": {"properties": {"representation": {"const": "h-rep"}}},
            "then": {"required": ["normals", "offsets"]},
        },
        {
            "if": {"properties": {"representation": {"const": "v-rep"}}},
            "then": {"required": ["vertices"]},
        },
    ],
}

BUNDLED = ("cp1", "cp2", "cp2-centered", "cp3", "square", "hirzebruch-1", "hirzebruch-2")


class DocumentError(ValueError):
    """A document that cannot be read; ``location`` says where."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True)
class PolytopeDocument:
    name: str
    dim: int
    polytope: LatticePolytope
    h: Fraction = Fraction(1)
    kappa_factor: bool = False


def parse_rational(value, location: str = "$") -> Fraction:
    try:
        return Fraction(str(value).replace(" ", ""))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"not an exact rational: {value!r}", location) from exc


def _check_lengths(rows, dim: int, key: str) -> None:
    for i, row in enumerate(rows):
        if len(row) != dim:
            raise DocumentError(f"expected {dim} entries, found {len(row)}", f"$.{key}[{i}]")


def parse_document(data: dict) -> PolytopeDocument:
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise DocumentError(exc.message, exc.json_path) from exc
    dim = data["dim"]
    options = data.get("options", {})
    h = parse_rational(options.get("h", "1"), "$.options.h")
    if h <= 0:
        raise DocumentError("h must be positive", "$.options.h")
    try:
        if data["representation"] == "h-rep":
            _check_lengths(data["normals"], dim, "normals")
            if len(data["offsets"]) != len(data["normals"]):
                raise DocumentError("one offset per normal is required", "$.offsets")
            offsets = [parse_rational(x, f"$.offsets[{i}]") for i, x in enumerate(data["offsets"])]
            polytope = from_h_rep(data["normals"], offsets, name=data["name"])
        else:
            _check_lengths(data["vertices"], dim, "vertices")
            vertices = [
                [parse_rational(x, f"$.vertices[{i}][{j}]") for j, x in enumerate(row)]
                for i, row in enumerate(data["vertices"])
            ]
            polytope = from_vertices(vertices, name=data["name"])
    except PolytopeError as exc:
        raise DocumentError(str(exc), "$.representation") from exc
    return PolytopeDocument(data["name"], dim, polytope, h, bool(options.get("pi-sigma-kappa-factor", False)))


def loads_document(text: str) -> PolytopeDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return parse_document(data)


def bundled_path(name: str):
    return resources.files("toric_poisson").joinpath("data", f"{name}.json")


def load_document(source: str | Path) -> PolytopeDocument:
    """Read a document from a path, or by bundled name (``cp2``, ``square``, ...)."""
    path = Path(source)
    if path.exists():
        return loads_document(path.read_text())
    if str(source) in BUNDLED:
        return loads_document(bundled_path(str(source)).read_text())
    raise DocumentError(f"no such file or bundled document: {source}", str(source))


def polytope_to_document(p: LatticePolytope, h=1, kappa_factor: bool = False) -> dict:
    return {
        "name": p.name,
        "dim": p.dim,
        "representation": "h-rep",
        "normals": [list(u) for u in p.normals],
        "offsets": [str(x) for x in p.offsets],
        "options": {"h": str(Fraction(h)), "pi-sigma-kappa-factor": kappa_factor},
    }


# Output formatting: rationals as exact strings, floats with 17 significant digits.

def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    return format(x, ".17g")


def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return format_float(x)
    return str(x)


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return to_json(obj.tolist(), indent, _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(to_json(v, indent, _level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + to_json(v, indent, _level + 1) for v in obj) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_scalar(x) for x in row])
    return buf.getvalue()
