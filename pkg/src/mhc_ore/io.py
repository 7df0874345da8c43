"""JSON input documents: schema validation and construction of the structures.

A document describes one experiment (loop, grading rank, Ore data, optional
star and iso sections, windows and suites).  A *pack* bundles several
documents, each with the laws it is expected to fail.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from . import kernel as K
from .algebra import FunctionAlgebra
from .iso import BaseIso
from .kernel import Const, Fn, PowerRule, TableRule
from .laws import Poly
from .loop import Loop, cyclic_loop, moufang_double, permutation_group, validate_loop
from .ore import Character, Derivation, OreData
from .scalar import as_scalar, parse_scalar

__all__ = [
    "SCHEMA",
    "SUITES",
    "InputError",
    "Experiment",
    "validate",
    "load",
    "load_path",
    "build",
    "fixture_names",
    "load_fixture",
]

SUITES = ("loop", "mhc", "coassoc", "ore-conditions", "extension", "derived", "star", "iso")


class InputError(ValueError):
    """Schema violation or inconsistent input; ``path`` is a JSON pointer."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
        self.message = message


_scalar = {"oneOf": [{"type": "string"}, {"type": "integer"}]}
_point = {
    "type": "object",
    "required": ["grade", "elem"],
    "properties": {"grade": {"type": "array", "items": {"type": "integer"}}, "elem": {"type": "string"}},
    "additionalProperties": False,
}
_term = {
    "type": "object",
    "required": ["grade", "elem"],
    "properties": {"grade": _point["properties"]["grade"], "elem": {"type": "string"}, "coeff": _scalar},
    "additionalProperties": False,
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": {
        "scalar": _scalar,
        "point": _point,
        "element": {"type": "array", "items": _term},
        "multiplier": {
            "oneOf": [
                {"type": "object", "required": ["element"], "properties": {"element": {"$ref": "#/$defs/element"}},
                 "additionalProperties": False},
                {"type": "object", "required": ["power"],
                 "properties": {"power": {"type": "array", "items": {"$ref": "#/$defs/scalar"}}},
                 "additionalProperties": False},
                {"type": "object", "required": ["table"],
                 "properties": {"table": {"$ref": "#/$defs/element"}, "default": {"$ref": "#/$defs/scalar"}},
                 "additionalProperties": False},
                {"type": "object", "required": ["const"], "properties": {"const": {"$ref": "#/$defs/scalar"}},
                 "additionalProperties": False},
                {"type": "object", "required": ["sum"],
                 "properties": {"sum": {"type": "array", "minItems": 1, "items": {"$ref": "#/$defs/multiplier"}}},
                 "additionalProperties": False},
                {"type": "object", "required": ["scale", "of"],
                 "properties": {"scale": {"$ref": "#/$defs/scalar"}, "of": {"$ref": "#/$defs/multiplier"}},
                 "additionalProperties": False},
            ]
        },
        "loop": {
            "oneOf": [
                {"type": "object", "required": ["builtin"],
                 "properties": {"builtin": {"type": "string"}, "name": {"type": "string"}},
                 "additionalProperties": False},
                {"type": "object", "required": ["elements", "table"],
                 "properties": {
                     "name": {"type": "string"},
                     "elements": {"type": "array", "minItems": 1, "items": {"type": "string"}},
                     "table": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
                 },
                 "additionalProperties": False},
            ]
        },
        "ore": {
            "type": "object",
            "required": ["character", "r"],
            "properties": {
                "character": {
                    "oneOf": [
                        {"type": "object", "required": ["point"], "properties": {"point": {"$ref": "#/$defs/point"}},
                         "additionalProperties": False},
                        {"type": "object", "required": ["functional"],
                         "properties": {"functional": {"$ref": "#/$defs/element"}}, "additionalProperties": False},
                    ]
                },
                "r": {"$ref": "#/$defs/multiplier"},
                "delta": {
                    "oneOf": [
                        {"const": "zero"},
                        {"type": "object", "required": ["twisted"],
                         "properties": {"twisted": {"$ref": "#/$defs/multiplier"}}, "additionalProperties": False},
                        {"type": "object", "required": ["table"],
                         "properties": {"table": {"type": "array", "items": {
                             "type": "object", "required": ["point", "image"],
                             "properties": {"point": {"$ref": "#/$defs/point"}, "image": {"$ref": "#/$defs/element"}},
                             "additionalProperties": False}}},
                         "additionalProperties": False},
                    ]
                },
                "antipode_y": {"$ref": "#/$defs/multiplier"},
            },
            "additionalProperties": False,
        },
        "document": {
            "type": "object",
            "required": ["loop", "grading_rank", "ore"],
            "properties": {
                "name": {"type": "string"},
                "description": {"type": "string"},
                "field": {"const": "Q(i)"},
                "loop": {"$ref": "#/$defs/loop"},
                "grading_rank": {"type": "integer", "minimum": 0},
                "ore": {"$ref": "#/$defs/ore"},
                "star": {"type": "object", "required": ["enabled"], "properties": {"enabled": {"type": "boolean"}},
                         "additionalProperties": False},
                "iso": {
                    "type": "object",
                    "required": ["loop_map", "d_prime", "target"],
                    "properties": {
                        "loop_map": {"type": "object", "additionalProperties": {"type": "string"}},
                        "d_prime": {"oneOf": [{"const": "zero"}, {"$ref": "#/$defs/multiplier"}]},
                        "target": {
                            "type": "object",
                            "required": ["loop", "ore"],
                            "properties": {"loop": {"$ref": "#/$defs/loop"}, "ore": {"$ref": "#/$defs/ore"}},
                            "additionalProperties": False,
                        },
                    },
                    "additionalProperties": False,
                },
                "windows": {
                    "type": "object",
                    "properties": {"radius": {"type": "integer", "minimum": 0},
                                   "maxdeg": {"type": "integer", "minimum": 0}},
                    "additionalProperties": False,
                },
                "suites": {"type": "array", "minItems": 1, "items": {"enum": list(SUITES)}},
            },
            "additionalProperties": False,
        },
        "pack": {
            "type": "object",
            "required": ["pack"],
            "properties": {
                "name": {"type": "string"},
                "description": {"type": "string"},
                "pack": {"type": "array", "minItems": 1, "items": {
                    "type": "object",
                    "required": ["name", "expect", "document"],
                    "properties": {
                        "name": {"type": "string"},
                        "expect": {"type": "object", "required": ["suite", "laws"],
                                   "properties": {"suite": {"enum": list(SUITES)},
                                                  "laws": {"type": "array", "minItems": 1,
                                                           "items": {"type": "string"}}},
                                   "additionalProperties": False},
                        "document": {"$ref": "#/$defs/document"},
                    },
                    "additionalProperties": False,
                }},
            },
            "additionalProperties": False,
        },
    },
    "if": {"type": "object", "required": ["pack"]},
    "then": {"$ref": "#/$defs/pack"},
    "else": {"$ref": "#/$defs/document"},
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _pointer(parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def validate(doc) -> None:
    """Raise :class:`InputError` for the deepest schema violation."""
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: (len(e.absolute_path), _pointer(e.absolute_path)))
    if not errors:
        return
    err = jsonschema.exceptions.best_match(errors)
    # descend into oneOf branches for a more specific message
    while err.context:
        err = jsonschema.exceptions.best_match(err.context)
    raise InputError(_pointer(err.absolute_path), err.message)


# -- construction ---------------------------------------------------------------


@dataclass
class Experiment:
    name: str
    A: FunctionAlgebra
    ore: OreData
    antipode_y: Fn | None = None
    star: bool = False
    phi: BaseIso | None = None
    target: OreData | None = None
    target_antipode_y: Fn | None = None
    d_prime: Fn | None = None
    radius: int = 2
    maxdeg: int = 3
    suites: list = field(default_factory=lambda: list(SUITES))


BUILTIN_LOOPS = {
    "C2": lambda: cyclic_loop(2),
    "C3": lambda: cyclic_loop(3),
    "S3": permutation_group,
    "M12": lambda: moufang_double(permutation_group()),
}


def _loop(node: dict, path: str) -> Loop:
    try:
        if "builtin" in node:
            if node["builtin"] not in BUILTIN_LOOPS:
                raise InputError(path + "/builtin", f"unknown builtin loop {node['builtin']!r}")
            return BUILTIN_LOOPS[node["builtin"]]()
        return validate_loop(node["elements"], node["table"])
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(path, str(exc)) from None


def _scalar_of(v, path):
    try:
        return parse_scalar(v) if isinstance(v, str) else as_scalar(v)
    except ValueError as exc:
        raise InputError(path, str(exc)) from None


def _point_of(A: FunctionAlgebra, node: dict, path: str):
    try:
        return A.space.point(node["grade"], node["elem"])
    except ValueError as exc:
        raise InputError(path, str(exc)) from None


def _element(A, terms, path) -> K.Finite:
    pairs = []
    for i, t in enumerate(terms):
        x = _point_of(A, t, f"{path}/{i}")
        pairs.append((x, _scalar_of(t.get("coeff", "1"), f"{path}/{i}/coeff")))
    return K.element(pairs)


def _multiplier(A: FunctionAlgebra, node: dict, path: str) -> Fn:
    if "element" in node:
        return _element(A, node["element"], path + "/element")
    if "power" in node:
        lam = [_scalar_of(v, f"{path}/power/{i}") for i, v in enumerate(node["power"])]
        if len(lam) != A.rank:
            raise InputError(path + "/power", f"expected {A.rank} bases, got {len(lam)}")
        try:
            return PowerRule(lam)
        except ValueError as exc:
            raise InputError(path + "/power", str(exc)) from None
    if "table" in node:
        entries = {}
        for i, t in enumerate(node["table"]):
            entries[_point_of(A, t, f"{path}/table/{i}")] = _scalar_of(t.get("coeff", "1"), f"{path}/table/{i}/coeff")
        return TableRule(entries, _scalar_of(node.get("default", "1"), path + "/default"))
    if "const" in node:
        return Const(1, _scalar_of(node["const"], path + "/const"))
    if "sum" in node:
        return K.add(*[_multiplier(A, s, f"{path}/sum/{i}") for i, s in enumerate(node["sum"])])
    return K.scale(_scalar_of(node["scale"], path + "/scale"), _multiplier(A, node["of"], path + "/of"))


def _ore(A: FunctionAlgebra, node: dict, path: str):
    ch = node["character"]
    if "point" in ch:
        chi = Character.at(_point_of(A, ch["point"], path + "/character/point"))
    else:
        f = _element(A, ch["functional"], path + "/character/functional")
        chi = Character.functional({x: c for (x,), c in f.data.items()})
    r = _multiplier(A, node["r"], path + "/r")
    d = node.get("delta", "zero")
    if d == "zero":
        delta = Derivation.zero()
    elif "twisted" in d:
        delta = Derivation.twisted(_multiplier(A, d["twisted"], path + "/delta/twisted"))
    else:
        table = {}
        for i, t in enumerate(d["table"]):
            table[_point_of(A, t["point"], f"{path}/delta/table/{i}/point")] = _element(
                A, t["image"], f"{path}/delta/table/{i}/image")
        delta = Derivation.from_table(table)
    sy = _multiplier(A, node["antipode_y"], path + "/antipode_y") if "antipode_y" in node else None
    return OreData(A, chi, r, delta), sy


def build(doc: dict, name: str = "input") -> Experiment:
    """Validate a single document and construct its experiment."""
    validate(doc)
    if "pack" in doc:
        raise InputError("/pack", "a pack holds several documents; build each one separately")
    rank = doc["grading_rank"]
    A = FunctionAlgebra(_loop(doc["loop"], "/loop"), rank)
    D, sy = _ore(A, doc["ore"], "/ore")
    win = doc.get("windows", {})
    ex = Experiment(
        name=doc.get("name", name),
        A=A,
        ore=D,
        antipode_y=sy,
        star=doc.get("star", {}).get("enabled", False),
        radius=win.get("radius", 2),
        maxdeg=win.get("maxdeg", 3),
        suites=list(doc.get("suites", SUITES)),
    )
    if "iso" in doc:
        iso = doc["iso"]
        A2 = FunctionAlgebra(_loop(iso["target"]["loop"], "/iso/target/loop"), rank)
        ex.target, ex.target_antipode_y = _ore(A2, iso["target"]["ore"], "/iso/target/ore")
        try:
            ex.phi = BaseIso.from_names(A, A2, iso["loop_map"])
        except ValueError as exc:
            raise InputError("/iso/loop_map", str(exc)) from None
        dp = iso["d_prime"]
        ex.d_prime = K.zero(1) if dp == "zero" else _multiplier(A2, dp, "/iso/d_prime")
    return ex


def load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("/", f"invalid JSON: {exc.msg} (line {exc.lineno})") from None


def load_path(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return load(fh.read())
    except OSError as exc:
        raise InputError("/", f"cannot read {path}: {exc.strerror}") from None


def fixture_names() -> list:
    root = resources.files("mhc_ore") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    path = resources.files("mhc_ore") / "fixtures" / f"{name}.json"
    if not path.is_file():
        raise KeyError(name)
    return load(path.read_text(encoding="utf-8"))


def antipode_poly(sy: Fn | None) -> Poly | None:
    """S(y) = M y for an override multiplier M."""
    return None if sy is None else Poly(1, {(1,): sy})
