"""Graph analytics workbench for component business models.

The package models an enterprise as a typed, weighted component graph and
derives data-driven insights from it: centrality-based importance, community
structure, multi-layer views, and impact diffusion through graph kernels,
fed either by internal what-if seeds or by external news feeds.
"""

from .model import (
    ACCOUNTABILITY_LEVELS,
    LAYER_KINDS,
    CbmModel,
    Competency,
    Component,
    Edge,
    Layer,
    LayerEntity,
    ModelMeta,
    RelationType,
    Violation,
    WeightedGraph,
    add_competency,
    add_relation_type,
    build_graph,
    connect,
    disconnect,
    layer_graph,
    new_model,
    remove_component,
    set_layer,
    symmetrized,
    upsert_component,
    validate,
)

__all__ = [
    "ACCOUNTABILITY_LEVELS",
    "LAYER_KINDS",
    "CbmModel",
    "Competency",
    "Component",
    "Edge",
    "Layer",
    "LayerEntity",
    "ModelMeta",
    "RelationType",
    "Violation",
    "WeightedGraph",
    "add_competency",
    "add_relation_type",
    "build_graph",
    "connect",
    "disconnect",
    "layer_graph",
    "new_model",
    "remove_component",
    "set_layer",
    "symmetrized",
    "upsert_component",
    "validate",
]

__version__ = "0.1.0"
