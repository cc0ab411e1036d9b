"""Model persistence and graph export.

Models persist as UTF-8 JSON documents with the top-level keys `meta`,
`competencies`, `components`, `relation_types`, `edges`, `layers`. Loading
is strict by default: unknown keys, at the top level or inside an entity,
are parse errors unless lax mode is requested. Serialization is canonical
(fixed key order, stable float text) so saved files and API responses are
byte-stable.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

from .errors import ParameterError, ParseError, UnknownEntityError
from .model import (
    CbmModel,
    Competency,
    Component,
    Edge,
    Layer,
    LayerEntity,
    ModelMeta,
    RelationType,
)

MODEL_KEYS = ("meta", "competencies", "components", "relation_types", "edges", "layers")

_META_KEYS = {"name", "revision"}
_COMPETENCY_KEYS = {"id", "name", "display_order"}
_COMPONENT_KEYS = {
    "id", "name", "description", "processes", "competency_id",
    "accountability", "view_values", "tags",
}
_RELATION_TYPE_KEYS = {"name", "directed", "default_weight"}
_EDGE_KEYS = {"source", "target", "relation_type", "weight"}
_LAYER_KEYS = {"kind", "entities", "intra_layer_edges"}
_ENTITY_KEYS = {"id", "name", "component_id"}


def _check_keys(obj: dict, allowed: set, where: str, strict: bool) -> None:
    if not strict:
        return
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"unknown key {sorted(unknown)[0]!r} in {where}")


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"missing required key {key!r} in {where}")
    return obj[key]


def _edge_from(obj: dict, where: str, strict: bool) -> Edge:
    _check_keys(obj, _EDGE_KEYS, where, strict)
    return Edge(
        source=str(_require(obj, "source", where)),
        target=str(_require(obj, "target", where)),
        relation_type=str(_require(obj, "relation_type", where)),
        weight=float(obj.get("weight", 1.0)),
    )


def from_dict(data: dict, strict: bool = True) -> CbmModel:
    """Build a model from parsed JSON data."""
    if not isinstance(data, dict):
        raise ParseError("model document must be a JSON object")
    if strict:
        unknown = set(data) - set(MODEL_KEYS)
        if unknown:
            raise ParseError(f"unknown top-level key {sorted(unknown)[0]!r}")

    meta_obj = data.get("meta", {})
    _check_keys(meta_obj, _META_KEYS, "meta", strict)
    meta = ModelMeta(
        name=str(meta_obj.get("name", "untitled")),
        revision=int(meta_obj.get("revision", 1)),
    )

    competencies = []
    for obj in data.get("competencies", []):
        where = f"competency {obj.get('id', '?')!r}"
        _check_keys(obj, _COMPETENCY_KEYS, where, strict)
        competencies.append(Competency(
            id=str(_require(obj, "id", "competency")),
            name=str(obj.get("name", "")),
            display_order=int(obj.get("display_order", 0)),
        ))

    components = []
    for obj in data.get("components", []):
        where = f"component {obj.get('id', '?')!r}"
        _check_keys(obj, _COMPONENT_KEYS, where, strict)
        components.append(Component(
            id=str(_require(obj, "id", "component")),
            name=str(obj.get("name", "")),
            description=str(obj.get("description", "")),
            processes=tuple(str(p) for p in obj.get("processes", [])),
            competency_id=str(obj.get("competency_id", "")),
            accountability=str(obj.get("accountability", "Execute")),
            view_values={str(k): float(v) for k, v in obj.get("view_values", {}).items()},
            tags=tuple(str(t) for t in obj.get("tags", [])),
        ))

    relation_types = []
    for obj in data.get("relation_types", []):
        where = f"relation type {obj.get('name', '?')!r}"
        _check_keys(obj, _RELATION_TYPE_KEYS, where, strict)
        relation_types.append(RelationType(
            name=str(_require(obj, "name", "relation type")),
            directed=bool(obj.get("directed", False)),
            default_weight=float(obj.get("default_weight", 1.0)),
        ))

    edges = tuple(
        _edge_from(obj, f"edge #{i}", strict) for i, obj in enumerate(data.get("edges", []))
    )

    layers = []
    for obj in data.get("layers", []):
        kind = str(_require(obj, "kind", "layer"))
        _check_keys(obj, _LAYER_KEYS, f"layer {kind!r}", strict)
        entities = []
        for ent in obj.get("entities", []):
            where = f"layer {kind!r} entity {ent.get('id', '?')!r}"
            _check_keys(ent, _ENTITY_KEYS, where, strict)
            entities.append(LayerEntity(
                id=str(_require(ent, "id", where)),
                name=str(ent.get("name", "")),
                component_id=str(ent.get("component_id", "")),
            ))
        layer_edges = tuple(
            _edge_from(e, f"layer {kind!r} edge #{i}", strict)
            for i, e in enumerate(obj.get("intra_layer_edges", []))
        )
        layers.append(Layer(kind=kind, entities=tuple(entities), intra_layer_edges=layer_edges))

    return CbmModel(
        meta=meta,
        competencies=tuple(competencies),
        components=tuple(components),
        relation_types=tuple(relation_types),
        edges=edges,
        layers=tuple(layers),
    )


def to_dict(model: CbmModel) -> dict:
    """Canonical JSON-ready form of a model; the inverse of :func:`from_dict`."""
    return {
        "meta": {"name": model.meta.name, "revision": model.meta.revision},
        "competencies": [
            {"id": c.id, "name": c.name, "display_order": c.display_order}
            for c in model.competencies
        ],
        "components": [
            {
                "id": c.id,
                "name": c.name,
                "description": c.description,
                "processes": list(c.processes),
                "competency_id": c.competency_id,
                "accountability": c.accountability,
                "view_values": dict(sorted(c.view_values.items())),
                "tags": list(c.tags),
            }
            for c in model.components
        ],
        "relation_types": [
            {"name": rt.name, "directed": rt.directed, "default_weight": rt.default_weight}
            for rt in model.relation_types
        ],
        "edges": [_edge_dict(e) for e in model.edges],
        "layers": [
            {
                "kind": layer.kind,
                "entities": [
                    {"id": ent.id, "name": ent.name, "component_id": ent.component_id}
                    for ent in layer.entities
                ],
                "intra_layer_edges": [_edge_dict(e) for e in layer.intra_layer_edges],
            }
            for layer in model.layers
        ],
    }


def _edge_dict(e: Edge) -> dict:
    return {
        "source": e.source,
        "target": e.target,
        "relation_type": e.relation_type,
        "weight": e.weight,
    }


def loads(text: str, strict: bool = True) -> CbmModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, line=err.lineno, column=err.colno) from err
    return from_dict(data, strict=strict)


def dumps(model: CbmModel) -> str:
    return json.dumps(to_dict(model), indent=2, ensure_ascii=False) + "\n"


def load(path: str | Path, strict: bool = True) -> CbmModel:
    return loads(Path(path).read_text("utf-8"), strict=strict)


def save(model: CbmModel, path: str | Path) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_graph(
    model: CbmModel,
    edge_types: set[str] | None = None,
    fmt: str = "dot",
) -> str:
    """Render the filtered component graph as a DOT document or an edge CSV.

    Output is deterministic: nodes sort by id, edges by (source, target,
    type). DOT edges carry the relation type as label and the weight as an
    attribute; undirected relation types are drawn without arrowheads.
    """
    known = {rt.name for rt in model.relation_types}
    if edge_types is not None:
        unknown = set(edge_types) - known
        if unknown:
            raise UnknownEntityError(f"unknown relation types: {sorted(unknown)}")
    directed_types = {rt.name for rt in model.relation_types if rt.directed}
    selected = known if edge_types is None else set(edge_types)
    edges = sorted(
        (e for e in model.edges if e.relation_type in selected),
        key=lambda e: (e.source, e.target, e.relation_type),
    )

    if fmt == "dot":
        lines = ["digraph cbm {"]
        for component in sorted(model.components, key=lambda c: c.id):
            lines.append(f"  {_dot_quote(component.id)} [label={_dot_quote(component.name)}];")
        for e in edges:
            attrs = f"label={_dot_quote(e.relation_type)}, weight={e.weight!r}"
            if e.relation_type not in directed_types:
                attrs += ", dir=none"
            lines.append(f"  {_dot_quote(e.source)} -> {_dot_quote(e.target)} [{attrs}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    if fmt == "csv-edges":
        buffer = _io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["source", "target", "relation_type", "weight", "directed"])
        for e in edges:
            writer.writerow([
                e.source, e.target, e.relation_type, repr(e.weight),
                str(e.relation_type in directed_types).lower(),
            ])
        return buffer.getvalue()

    raise ParameterError(f"unknown export format {fmt!r}, expected 'dot' or 'csv-edges'")
