"""JSON document format.

Every file holds one object::

    {"format_version": 1, "kind": "<kind>", "data": {...}}

Rational scalars are strings ``"p/q"`` or ``"p"`` (integers are accepted on
input); vertex ids are strings; decomposition data use plain integers.
Serialization sorts keys and writes scalars in lowest terms, so equal
documents give identical bytes.  The JSON Schema lives in :data:`SCHEMA`
and is dumped by ``skeleton-kit schema``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

import jsonschema

from . import errors
from .bundles import validate_metrization
from .complex import WeightedComplex, validate_complex
from .curves import Cocycle, CurveSkeleton, build_skeleton
from .decomp import DecompGraph, DecompositionDatum, build_graph, make_datum
from .functions import SimpleFunction
from .linalg import Matrix, to_fraction
from .morphisms import SkeletonMorphism, validate_morphism

FORMAT_VERSION = 1

KINDS = (
    "complex",
    "function",
    "bundle",
    "morphism",
    "skeleton",
    "cocycle",
    "germ_family",
    "curvature",
    "datum",
    "bounds",
)

_RAT = {"type": ["string", "integer"], "pattern": r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$"}
_ID = {"type": "string", "minLength": 1}
_IDS = {"type": "array", "items": _ID, "minItems": 1}
_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}
_VEC = {"type": "array", "items": _RAT}
_MAT = {"type": "array", "items": _VEC}
_VALUES = {"type": "object", "additionalProperties": _RAT}


def _obj(required: dict, optional: dict | None = None) -> dict:
    props = dict(required)
    props.update(optional or {})
    return {"type": "object", "properties": props, "required": sorted(required), "additionalProperties": False}


_VERTEX = _obj({"id": _ID, "mult": _POS})
_COMPLEX = _obj(
    {
        "vertices": {"type": "array", "items": _VERTEX, "minItems": 1},
        "faces": {
            "type": "array",
            "items": _obj(
                {"vertices": _IDS},
                {"dim": _NAT, "classes": {"type": "object", "additionalProperties": _VEC}, "test_curves": _MAT},
            ),
        },
    },
    {"restrictions": {"type": "array", "items": _obj({"from": _IDS, "to": _IDS, "matrix": _MAT})}},
)
_GERMS = {"type": "object", "additionalProperties": _VALUES}
_LABEL = {"type": "array", "prefixItems": [_NAT, _POS], "items": False, "minItems": 2}

_PAYLOADS = {
    "complex": _COMPLEX,
    "function": _obj({"values": _VALUES}),
    "bundle": _obj({"complex": _COMPLEX, "germs": _GERMS}),
    "morphism": _obj(
        {
            "source": _COMPLEX,
            "target": _COMPLEX,
            "matrix": {"type": "array", "items": {"type": "array", "items": _NAT}},
        },
        {
            "face_images": {"type": "array", "items": _obj({"face": _IDS, "image": _IDS})},
            "class_pullbacks": {"type": "array", "items": _obj({"face": _IDS, "matrix": _MAT})},
        },
    ),
    "skeleton": _obj(
        {
            "vertices": {"type": "array", "items": _VERTEX, "minItems": 1},
            "edges": {"type": "array", "items": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2}},
        }
    ),
    "cocycle": _obj(
        {
            "pairs": {
                "type": "array",
                "items": _obj(
                    {
                        "edge": {"type": "array", "items": _ID, "minItems": 2, "maxItems": 2},
                        "values": {"type": "array", "items": _RAT, "minItems": 2, "maxItems": 2},
                    }
                ),
            }
        }
    ),
    "germ_family": _obj({"germs": _GERMS}),
    "curvature": _obj({"classes": {"type": "object", "additionalProperties": _VEC}}),
    "datum": _obj(
        {
            "components": {"type": "array", "items": _NAT},
            "N": {"type": "array", "items": _NAT},
            "g": {"type": "array", "items": {"type": "array", "items": _NAT}},
            "n": {"type": "array", "items": {"type": "array", "items": _NAT}},
        },
        {"edges": {"type": "array", "items": _obj({"a": _LABEL, "b": _LABEL, "count": _POS})}},
    ),
    "bounds": _obj({"components": {"type": "array", "items": _NAT}, "bounds": {"type": "array", "items": _NAT}}),
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "skeleton-kit document",
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"enum": list(KINDS)},
        "data": {"type": "object"},
    },
    "required": ["data", "format_version", "kind"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"kind": {"const": k}}, "required": ["kind"]}, "then": {"properties": {"data": s}}}
        for k, s in _PAYLOADS.items()
    ],
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


@dataclass(frozen=True)
class Bounds:
    components: tuple
    bounds: tuple


@dataclass(frozen=True)
class Document:
    kind: str
    value: Any


# scalars


def rat(x: Fraction) -> str:
    return str(Fraction(x))


def _vec(v) -> list[str]:
    return [rat(x) for x in v]


def _mat(m: Matrix) -> list[list[str]]:
    return [_vec(r) for r in m.rows]


# encoding


def _complex_data(cx: WeightedComplex) -> dict:
    faces = []
    for f in cx.faces:
        sp = cx.spaces[f]
        faces.append(
            {
                "vertices": list(cx.ordered(f)),
                "dim": sp.dim,
                "classes": {v: _vec(c) for v, c in sp.classes.items()},
                "test_curves": [_vec(t) for t in sp.test_curves],
            }
        )
    restr = []
    for (i, j), m in cx.restrictions.items():
        if len(j) == len(i) + 1 and m.shape[0] and m.shape[1]:
            restr.append({"from": list(cx.ordered(i)), "to": list(cx.ordered(j)), "matrix": _mat(m)})
    return {
        "vertices": [{"id": v, "mult": cx.mult[v]} for v in cx.vertices],
        "faces": faces,
        "restrictions": restr,
    }


def _germs_data(germs: Mapping) -> dict:
    out = {}
    for v, g in germs.items():
        vals = g if isinstance(g, Mapping) else g.values
        out[v] = {u: rat(x) for u, x in vals.items()}
    return out


def datum_data(d: DecompositionDatum) -> dict:
    return {
        "components": list(d.components),
        "N": list(d.N),
        "g": [list(r) for r in d.g],
        "n": [list(r) for r in d.n],
        "edges": [{"a": list(a), "b": list(b), "count": c} for (a, b), c in d.edges.items()],
    }


def to_data(doc: Document) -> dict:
    v = doc.value
    if doc.kind == "complex":
        return _complex_data(v)
    if doc.kind == "function":
        return {"values": {k: rat(x) for k, x in v.values.items()}}
    if doc.kind == "bundle":
        return {"complex": _complex_data(v.complex), "germs": _germs_data(v.germs)}
    if doc.kind == "morphism":
        src = v.source
        return {
            "source": _complex_data(src),
            "target": _complex_data(v.target),
            "matrix": v.dense_rows(),
            "face_images": [
                {"face": list(src.ordered(f)), "image": list(v.target.ordered(v.face_images[f]))} for f in src.faces
            ],
            "class_pullbacks": [
                {"face": list(src.ordered(f)), "matrix": _mat(m)}
                for f, m in v.class_pullbacks.items()
                if m.shape[0] and m.shape[1]
            ],
        }
    if doc.kind == "skeleton":
        return {
            "vertices": [{"id": u, "mult": v.mult[u]} for u in v.vertices],
            "edges": [list(e) for e in v.edges],
        }
    if doc.kind == "cocycle":
        return {"pairs": [{"edge": list(e), "values": _vec(p)} for e, p in v.pairs.items()]}
    if doc.kind == "germ_family":
        return {"germs": _germs_data(v)}
    if doc.kind == "curvature":
        return {"classes": {k: _vec(c) for k, c in v.items()}}
    if doc.kind == "datum":
        return datum_data(v)
    if doc.kind == "bounds":
        return {"components": list(v.components), "bounds": list(v.bounds)}
    raise errors.ValidationError(f"unknown document kind {doc.kind!r}")


def serialize(doc: Document) -> str:
    body = {"format_version": FORMAT_VERSION, "kind": doc.kind, "data": to_data(doc)}
    return json.dumps(body, sort_keys=True, indent=2) + "\n"


def record(datum: DecompositionDatum) -> str:
    """One-line record for enumeration streams."""
    return json.dumps(datum_data(datum), sort_keys=True, separators=(",", ":"))


# decoding


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _schema_error(err: jsonschema.ValidationError) -> errors.SchemaError:
    parts = list(err.absolute_path)
    if err.validator == "additionalProperties" and isinstance(err.instance, dict):
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(k for k in err.instance if k not in allowed)
        if extra:
            return errors.SchemaError(_path(parts + [extra[0]]), "unknown field")
    if err.validator == "required" and isinstance(err.instance, dict):
        missing = sorted(k for k in err.validator_value if k not in err.instance)
        if missing:
            return errors.SchemaError(_path(parts + [missing[0]]), "missing field")
    return errors.SchemaError(_path(parts), err.message)


def check_schema(obj) -> None:
    # pick the deepest error so the reported path names the real culprit
    errs = list(_VALIDATOR.iter_errors(obj))
    if not errs:
        return
    leaves = []
    for e in errs:
        leaves.extend(_leaf_errors(e))
    best = max(leaves, key=lambda e: (len(e.absolute_path), e.validator != "if"))
    raise _schema_error(best)


def _leaf_errors(err):
    if err.context:
        for sub in err.context:
            yield from _leaf_errors(sub)
    else:
        yield err


def _frac(x) -> Fraction:
    return to_fraction(x)


def _complex_from(data: Mapping) -> WeightedComplex:
    faces, spaces = [], {}
    for f in data["faces"]:
        key = tuple(f["vertices"])
        if len(set(key)) != len(key):
            raise errors.ValidationError(f"face {list(key)} repeats a vertex")
        faces.append(key)
        if "dim" in f or "classes" in f or "test_curves" in f:
            spaces[key] = {
                "dim": f.get("dim", 0),
                "classes": {v: [_frac(x) for x in c] for v, c in f.get("classes", {}).items()},
                "test_curves": [[_frac(x) for x in t] for t in f.get("test_curves", [])],
            }
    restr = {}
    for r in data.get("restrictions", []):
        key = (frozenset(r["from"]), frozenset(r["to"]))
        if key in restr:
            raise errors.ValidationError(f"duplicate restriction {r['from']} -> {r['to']}")
        restr[key] = [[_frac(x) for x in row] for row in r["matrix"]]
    seen = set()
    for key in faces:
        if frozenset(key) in seen:
            raise errors.ValidationError(f"duplicate face {list(key)}")
        seen.add(frozenset(key))
    return validate_complex([(v["id"], v["mult"]) for v in data["vertices"]], faces, spaces, restr)


def _germs_from(data: Mapping) -> dict:
    return {v: {u: _frac(x) for u, x in vals.items()} for v, vals in data.items()}


def _morphism_from(data: Mapping) -> SkeletonMorphism:
    src, tgt = _complex_from(data["source"]), _complex_from(data["target"])
    betas = {}
    for entry in data.get("class_pullbacks", []):
        f = src.face(entry["face"])
        if f in betas:
            raise errors.ValidationError(f"duplicate class pullback for {entry['face']}")
        betas[f] = [[_frac(x) for x in row] for row in entry["matrix"]]
    images = {}
    for entry in data.get("face_images", []):
        images[src.face(entry["face"])] = frozenset(entry["image"])
    return validate_morphism(src, tgt, data["matrix"], betas, images)


def _datum_from(data: Mapping) -> DecompositionDatum:
    edges = [(tuple(e["a"]), tuple(e["b"]), e["count"]) for e in data.get("edges", [])]
    return make_datum(data["components"], data["N"], data["g"], data["n"], edges)


def from_data(kind: str, data: Mapping) -> Document:
    if kind == "complex":
        value = _complex_from(data)
    elif kind == "function":
        value = SimpleFunction.of(data["values"])
    elif kind == "bundle":
        value = validate_metrization(_complex_from(data["complex"]), _germs_from(data["germs"]))
    elif kind == "morphism":
        value = _morphism_from(data)
    elif kind == "skeleton":
        value = build_skeleton([(v["id"], v["mult"]) for v in data["vertices"]], data["edges"])
    elif kind == "cocycle":
        pairs = {}
        for p in data["pairs"]:
            e = tuple(p["edge"])
            if e in pairs:
                raise errors.ValidationError(f"duplicate cocycle edge {list(e)}")
            pairs[e] = p["values"]
        value = Cocycle.of(pairs)
    elif kind == "germ_family":
        value = _germs_from(data["germs"])
    elif kind == "curvature":
        value = {v: tuple(_frac(x) for x in c) for v, c in data["classes"].items()}
    elif kind == "datum":
        value = _datum_from(data)
    elif kind == "bounds":
        if len(data["components"]) != len(data["bounds"]):
            raise errors.DimensionMismatch("bounds must have one entry per component")
        if len(set(data["components"])) != len(data["components"]):
            raise errors.ValidationError("duplicate component id")
        value = Bounds(tuple(data["components"]), tuple(data["bounds"]))
    else:  # unreachable after schema validation
        raise errors.SchemaError("$.kind", f"unknown kind {kind!r}")
    return Document(kind, value)


def parse(text: str) -> Document:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise errors.DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    check_schema(obj)
    return from_data(obj["kind"], obj["data"])


def load(path, kind: str | None = None) -> Document:
    with open(path, encoding="utf-8") as fh:
        doc = parse(fh.read())
    if kind is not None and doc.kind != kind:
        raise errors.SchemaError("$.kind", f"expected a {kind!r} document, got {doc.kind!r}")
    return doc


def dump(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))


# DOT


def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_skeleton_dot(skel: CurveSkeleton, cocycle: Cocycle | None = None) -> str:
    lines = ["graph skeleton {"]
    for v in skel.vertices:
        lines.append(f"  {_q(v)} [label={_q(f'{v}:{skel.mult[v]}')}];")
    for e in skel.edges:
        attr = ""
        if cocycle is not None:
            a, b = cocycle.pairs[e]
            attr = f" [label={_q(f'({rat(a)},{rat(b)})')}]"
        lines.append(f"  {_q(e[0])} -- {_q(e[1])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _label(v) -> str:
    return f"({v[0]},{v[1]})"


def render_graph_dot(graph: DecompGraph, genus: Mapping | None = None) -> str:
    """Each parallel edge is drawn separately and labelled with the pair's multiplicity."""
    lines = ["graph decomposition {"]
    for v in graph.vertices:
        g = genus.get(v, 0) if genus is not None else 0
        lines.append(f"  {_q(_label(v))} [label={_q(f'{_label(v)}:{g}')}];")
    for a, b, m in graph.edges:
        for _ in range(m):
            lines.append(f"  {_q(_label(a))} -- {_q(_label(b))} [label={_q(m)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_datum_dot(datum: DecompositionDatum) -> str:
    return render_graph_dot(build_graph(datum), {v: datum.genus(v) for v in datum.vertices()})
