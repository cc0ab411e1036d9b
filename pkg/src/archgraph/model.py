"""Component business map domain model.

Components are arranged on a competency x accountability grid and connected
by typed, weighted relations. Models are immutable values: every mutation
returns a new model with the revision counter bumped, so snapshots can be
analyzed concurrently while a single writer applies edits.

``build_graph`` and ``layer_graph`` turn a model into a :class:`WeightedGraph`,
the numeric adjacency view consumed by the analytics modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .errors import ModelError, UnknownEntityError

ACCOUNTABILITY_LEVELS = ("Direct", "Control", "Execute")
LAYER_KINDS = ("People", "Resources", "Data")


@dataclass(frozen=True)
class Component:
    """A business component: a bundle of data, processes, people and systems."""

    id: str
    name: str = ""
    description: str = ""
    processes: tuple[str, ...] = ()
    competency_id: str = ""
    accountability: str = "Execute"
    view_values: dict[str, float] = field(default_factory=dict)
    tags: tuple[str, ...] = ()


@dataclass(frozen=True)
class Competency:
    """A grid column: a large business area grouping components."""

    id: str
    name: str = ""
    display_order: int = 0


@dataclass(frozen=True)
class RelationType:
    """A named edge category, optionally directed, with a default weight."""

    name: str
    directed: bool = False
    default_weight: float = 1.0


@dataclass(frozen=True)
class Edge:
    """A weighted relation between two components (or two layer entities)."""

    source: str
    target: str
    relation_type: str
    weight: float = 1.0


@dataclass(frozen=True)
class LayerEntity:
    """A sub-entity (person, resource, data asset) owned by a component."""

    id: str
    name: str = ""
    component_id: str = ""


@dataclass(frozen=True)
class Layer:
    """A sub-entity layer of one kind with its intra-layer edges."""

    kind: str
    entities: tuple[LayerEntity, ...] = ()
    intra_layer_edges: tuple[Edge, ...] = ()


@dataclass(frozen=True)
class ModelMeta:
    name: str = "untitled"
    revision: int = 1


@dataclass(frozen=True)
class CbmModel:
    """The persistent unit: components, relations, layers, metadata."""

    meta: ModelMeta = field(default_factory=ModelMeta)
    competencies: tuple[Competency, ...] = ()
    components: tuple[Component, ...] = ()
    relation_types: tuple[RelationType, ...] = ()
    edges: tuple[Edge, ...] = ()
    layers: tuple[Layer, ...] = ()

    def component(self, component_id: str) -> Component | None:
        for c in self.components:
            if c.id == component_id:
                return c
        return None

    def competency(self, competency_id: str) -> Competency | None:
        for c in self.competencies:
            if c.id == competency_id:
                return c
        return None

    def relation_type(self, name: str) -> RelationType | None:
        for rt in self.relation_types:
            if rt.name == name:
                return rt
        return None

    def layer(self, kind: str) -> Layer | None:
        for layer in self.layers:
            if layer.kind == kind:
                return layer
        return None

    @property
    def component_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Numeric adjacency view of a model under an edge-type filter.

    ``node_ids`` fixes the matrix indices. The adjacency holds nonnegative
    finite weights with a zero diagonal; when ``directed`` is false the
    matrix is symmetric.
    """

    node_ids: tuple[str, ...]
    adjacency: np.ndarray
    directed: bool = False

    @cached_property
    def index(self) -> dict[str, int]:
        return {node: i for i, node in enumerate(self.node_ids)}

    @property
    def n(self) -> int:
        return len(self.node_ids)


@dataclass(frozen=True)
class Violation:
    """One broken invariant: the offending entity and the rule it breaks."""

    entity: str
    rule: str
    detail: str = ""


def new_model(name: str = "untitled") -> CbmModel:
    return CbmModel(meta=ModelMeta(name=name, revision=1))


def _bump(model: CbmModel, **changes) -> CbmModel:
    meta = replace(model.meta, revision=model.meta.revision + 1)
    return replace(model, meta=meta, **changes)


def validate(model: CbmModel) -> list[Violation]:
    """Check every referential and field invariant; violations are data, not errors."""
    out: list[Violation] = []

    if model.meta.revision < 1:
        out.append(Violation("meta", "invalid revision", f"revision {model.meta.revision} < 1"))

    seen_competencies: set[str] = set()
    for comp in model.competencies:
        if comp.id in seen_competencies:
            out.append(Violation(comp.id, "duplicate competency id"))
        seen_competencies.add(comp.id)

    seen_types: set[str] = set()
    for rt in model.relation_types:
        if rt.name in seen_types:
            out.append(Violation(rt.name, "duplicate relation type"))
        seen_types.add(rt.name)
        if not rt.default_weight > 0:
            out.append(Violation(rt.name, "non-positive default weight", f"default_weight={rt.default_weight}"))

    component_ids: set[str] = set()
    for c in model.components:
        if c.id in component_ids:
            out.append(Violation(c.id, "duplicate component id"))
        component_ids.add(c.id)
        if c.competency_id and c.competency_id not in seen_competencies:
            out.append(Violation(c.id, "unknown competency", f"competency_id={c.competency_id!r}"))
        if c.accountability not in ACCOUNTABILITY_LEVELS:
            out.append(Violation(c.id, "invalid accountability", f"accountability={c.accountability!r}"))
        for view, value in c.view_values.items():
            if not math.isfinite(value):
                out.append(Violation(c.id, "non-finite view value", f"{view}={value}"))

    out.extend(_validate_edges(model.edges, component_ids, seen_types, owner="model"))

    seen_kinds: set[str] = set()
    for layer in model.layers:
        if layer.kind not in LAYER_KINDS:
            out.append(Violation(layer.kind, "invalid layer kind"))
        if layer.kind in seen_kinds:
            out.append(Violation(layer.kind, "duplicate layer"))
        seen_kinds.add(layer.kind)
        entity_ids: set[str] = set()
        for ent in layer.entities:
            if ent.id in entity_ids:
                out.append(Violation(ent.id, "duplicate layer entity id", f"layer={layer.kind}"))
            entity_ids.add(ent.id)
            if ent.component_id not in component_ids:
                out.append(Violation(ent.id, "unknown layer component", f"component_id={ent.component_id!r}"))
        out.extend(_validate_edges(layer.intra_layer_edges, entity_ids, seen_types, owner=f"layer {layer.kind}"))

    return out


def _validate_edges(edges, endpoint_ids, type_names, owner):
    out = []
    for e in edges:
        label = f"{e.source}->{e.target}"
        if e.source not in endpoint_ids:
            out.append(Violation(label, "dangling edge source", f"{owner}: {e.source!r}"))
        if e.target not in endpoint_ids:
            out.append(Violation(label, "dangling edge target", f"{owner}: {e.target!r}"))
        if e.source == e.target:
            out.append(Violation(label, "self-loop", owner))
        if e.relation_type not in type_names:
            out.append(Violation(label, "unknown relation type", f"{owner}: {e.relation_type!r}"))
        if not e.weight > 0:
            out.append(Violation(label, "non-positive weight", f"{owner}: weight={e.weight}"))
    return out


def _check_component_fields(model: CbmModel, component: Component) -> None:
    if not component.id:
        raise ModelError("component id must be non-empty")
    if component.accountability not in ACCOUNTABILITY_LEVELS:
        raise ModelError(
            f"invalid accountability {component.accountability!r}, "
            f"expected one of {ACCOUNTABILITY_LEVELS}"
        )
    if component.competency_id and model.competency(component.competency_id) is None:
        raise UnknownEntityError(f"unknown competency: competency_id={component.competency_id!r}")
    for view, value in component.view_values.items():
        if not math.isfinite(value):
            raise ModelError(f"view value {view!r} must be finite, got {value}")


def upsert_component(model: CbmModel, component: Component) -> CbmModel:
    """Insert the component, or replace the existing one with the same id."""
    _check_component_fields(model, component)
    components = list(model.components)
    for i, existing in enumerate(components):
        if existing.id == component.id:
            components[i] = component
            break
    else:
        components.append(component)
    return _bump(model, components=tuple(components))


def remove_component(model: CbmModel, component_id: str) -> CbmModel:
    """Remove a component together with its incident edges and layer entities."""
    if model.component(component_id) is None:
        raise UnknownEntityError(f"unknown component: {component_id!r}")
    components = tuple(c for c in model.components if c.id != component_id)
    edges = tuple(e for e in model.edges if component_id not in (e.source, e.target))
    layers = []
    for layer in model.layers:
        removed = {ent.id for ent in layer.entities if ent.component_id == component_id}
        layers.append(replace(
            layer,
            entities=tuple(ent for ent in layer.entities if ent.id not in removed),
            intra_layer_edges=tuple(
                e for e in layer.intra_layer_edges
                if e.source not in removed and e.target not in removed
            ),
        ))
    return _bump(model, components=components, edges=edges, layers=tuple(layers))


def connect(
    model: CbmModel,
    source: str,
    target: str,
    relation_type: str,
    weight: float | None = None,
) -> CbmModel:
    """Add an edge; an existing (source, target, type) edge is replaced."""
    if source == target:
        raise ModelError(f"self-loop: {source!r} cannot relate to itself")
    if model.component(source) is None:
        raise UnknownEntityError(f"unknown component: {source!r}")
    if model.component(target) is None:
        raise UnknownEntityError(f"unknown component: {target!r}")
    rt = model.relation_type(relation_type)
    if rt is None:
        raise UnknownEntityError(f"unknown relation type: {relation_type!r}")
    if weight is None:
        weight = rt.default_weight
    if not weight > 0:
        raise ModelError(f"edge weight must be positive, got {weight}")
    edge = Edge(source=source, target=target, relation_type=relation_type, weight=weight)
    edges = [
        e for e in model.edges
        if (e.source, e.target, e.relation_type) != (source, target, relation_type)
    ]
    edges.append(edge)
    return _bump(model, edges=tuple(edges))


def disconnect(model: CbmModel, source: str, target: str, relation_type: str) -> CbmModel:
    """Remove the edge identified by its (source, target, type) triple."""
    key = (source, target, relation_type)
    edges = tuple(e for e in model.edges if (e.source, e.target, e.relation_type) != key)
    if len(edges) == len(model.edges):
        raise UnknownEntityError(f"no edge {source!r} -> {target!r} of type {relation_type!r}")
    return _bump(model, edges=edges)


def add_competency(model: CbmModel, competency: Competency) -> CbmModel:
    if model.competency(competency.id) is not None:
        raise ModelError(f"duplicate competency id: {competency.id!r}")
    return _bump(model, competencies=model.competencies + (competency,))


def add_relation_type(model: CbmModel, relation_type: RelationType) -> CbmModel:
    if model.relation_type(relation_type.name) is not None:
        raise ModelError(f"duplicate relation type: {relation_type.name!r}")
    if not relation_type.default_weight > 0:
        raise ModelError(f"default weight must be positive, got {relation_type.default_weight}")
    return _bump(model, relation_types=model.relation_types + (relation_type,))


def set_layer(model: CbmModel, layer: Layer) -> CbmModel:
    """Insert or replace the layer of the given kind."""
    if layer.kind not in LAYER_KINDS:
        raise ModelError(f"invalid layer kind {layer.kind!r}, expected one of {LAYER_KINDS}")
    layers = tuple(l for l in model.layers if l.kind != layer.kind) + (layer,)
    return _bump(model, layers=layers)


def _accumulate(adjacency, index, edges, types_by_name, selected):
    for e in edges:
        if e.relation_type not in selected:
            continue
        if e.source == e.target:
            raise ModelError(f"self-loop on {e.source!r}")
        i, j = index[e.source], index[e.target]
        adjacency[i, j] += e.weight
        if not types_by_name[e.relation_type].directed:
            adjacency[j, i] += e.weight


def build_graph(
    model: CbmModel,
    edge_types: set[str] | None = None,
    symmetrize: bool = False,
) -> WeightedGraph:
    """Project the model onto a weighted adjacency matrix.

    Every component becomes a node, isolated ones included. Only edges whose
    relation type is in ``edge_types`` (all types when None) contribute;
    parallel edges of different types merge additively. ``symmetrize``
    replaces A with (A + A^T) / 2 and marks the result undirected.
    """
    types_by_name = {rt.name: rt for rt in model.relation_types}
    if edge_types is None:
        selected = set(types_by_name)
    else:
        unknown = set(edge_types) - set(types_by_name)
        if unknown:
            raise UnknownEntityError(f"unknown relation types: {sorted(unknown)}")
        selected = set(edge_types)

    node_ids = model.component_ids
    index = {node: i for i, node in enumerate(node_ids)}
    adjacency = np.zeros((len(node_ids), len(node_ids)))
    _accumulate(adjacency, index, model.edges, types_by_name, selected)

    directed = any(types_by_name[name].directed for name in selected)
    if symmetrize:
        adjacency = (adjacency + adjacency.T) / 2
        directed = False
    return WeightedGraph(node_ids=node_ids, adjacency=adjacency, directed=directed)


def layer_graph(model: CbmModel, kind: str, projection: bool = False) -> WeightedGraph:
    """Graph over one layer's entities, or its projection onto components.

    Without projection the nodes are the layer entities joined by the layer's
    own edges. With projection the nodes are the components and weight (i, j)
    counts the entity pairs, one owned by each, joined by an intra-layer edge.
    """
    layer = model.layer(kind)
    if layer is None:
        raise UnknownEntityError(f"model has no {kind!r} layer")

    if not projection:
        types_by_name = {rt.name: rt for rt in model.relation_types}
        node_ids = tuple(ent.id for ent in layer.entities)
        index = {node: i for i, node in enumerate(node_ids)}
        adjacency = np.zeros((len(node_ids), len(node_ids)))
        _accumulate(adjacency, index, layer.intra_layer_edges, types_by_name,
                    set(types_by_name))
        directed = any(
            types_by_name[e.relation_type].directed for e in layer.intra_layer_edges
        )
        return WeightedGraph(node_ids=node_ids, adjacency=adjacency, directed=directed)

    owner = {ent.id: ent.component_id for ent in layer.entities}
    node_ids = model.component_ids
    index = {node: i for i, node in enumerate(node_ids)}
    adjacency = np.zeros((len(node_ids), len(node_ids)))
    joined_pairs = {
        frozenset((e.source, e.target))
        for e in layer.intra_layer_edges
        if e.source != e.target
    }
    for pair in joined_pairs:
        u, v = tuple(pair)
        i, j = index[owner[u]], index[owner[v]]
        if i == j:
            continue
        adjacency[i, j] += 1
        adjacency[j, i] += 1
    return WeightedGraph(node_ids=node_ids, adjacency=adjacency, directed=False)


def symmetrized(g: WeightedGraph) -> WeightedGraph:
    """Return the undirected view (A + A^T) / 2 of a graph."""
    if not g.directed:
        return g
    return WeightedGraph(
        node_ids=g.node_ids,
        adjacency=(g.adjacency + g.adjacency.T) / 2,
        directed=False,
    )
