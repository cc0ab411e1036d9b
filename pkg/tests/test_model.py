import numpy as np
import pytest

from archgraph.errors import ModelError, UnknownEntityError
from archgraph.model import (
    Component,
    Edge,
    Layer,
    LayerEntity,
    build_graph,
    connect,
    disconnect,
    layer_graph,
    new_model,
    remove_component,
    symmetrized,
    upsert_component,
    validate,
)

from conftest import build_sample_model, graph_of


class TestValidate:
    def test_empty_model_is_valid(self):
        assert validate(new_model()) == []

    def test_sample_model_is_valid(self, sample_model):
        assert validate(sample_model) == []

    def test_dangling_edge_target(self, sample_model):
        broken = sample_model.__class__(
            meta=sample_model.meta,
            competencies=sample_model.competencies,
            components=sample_model.components,
            relation_types=sample_model.relation_types,
            edges=sample_model.edges + (Edge("planning", "ghost", "peers", 1.0),),
            layers=sample_model.layers,
        )
        rules = {v.rule for v in validate(broken)}
        assert "dangling edge target" in rules

    def test_zero_weight_edge(self, sample_model):
        broken = sample_model.__class__(
            meta=sample_model.meta,
            competencies=sample_model.competencies,
            components=sample_model.components,
            relation_types=sample_model.relation_types,
            edges=sample_model.edges + (Edge("planning", "payments", "peers", 0.0),),
            layers=sample_model.layers,
        )
        rules = {v.rule for v in validate(broken)}
        assert "non-positive weight" in rules

    def test_violation_names_entity(self, sample_model):
        broken = upsert_component(sample_model, Component(id="odd", accountability="Execute"))
        broken = broken.__class__(
            meta=broken.meta,
            competencies=broken.competencies,
            components=tuple(
                c if c.id != "odd" else Component(id="odd", accountability="Whatever")
                for c in broken.components
            ),
            relation_types=broken.relation_types,
            edges=broken.edges,
            layers=broken.layers,
        )
        violations = validate(broken)
        assert any(v.entity == "odd" and v.rule == "invalid accountability" for v in violations)


class TestMutations:
    def test_upsert_into_empty_model(self):
        m = new_model()
        out = upsert_component(m, Component(id="a"))
        assert len(out.components) == 1
        assert out.meta.revision == m.meta.revision + 1

    def test_upsert_replaces_by_id(self, sample_model):
        out = upsert_component(sample_model, Component(
            id="planning", name="Renamed", competency_id="fin", accountability="Control",
        ))
        assert len(out.components) == len(sample_model.components)
        assert out.component("planning").name == "Renamed"

    def test_upsert_unknown_competency(self, sample_model):
        with pytest.raises(UnknownEntityError, match="unknown competency"):
            upsert_component(sample_model, Component(id="x", competency_id="X"))

    def test_upsert_bad_accountability(self, sample_model):
        with pytest.raises(ModelError, match="accountability"):
            upsert_component(sample_model, Component(id="x", accountability="Boss"))

    def test_remove_cascades_edges(self, sample_model):
        out = remove_component(sample_model, "payments")
        assert out.component("payments") is None
        assert all("payments" not in (e.source, e.target) for e in out.edges)
        assert len(out.edges) == len(sample_model.edges) - 2

    def test_remove_cascades_layer_entities(self, sample_model):
        out = remove_component(sample_model, "payments")
        layer = out.layer("People")
        assert all(ent.component_id != "payments" for ent in layer.entities)
        assert all("carol" not in (e.source, e.target) for e in layer.intra_layer_edges)
        assert validate(out) == []

    def test_remove_unknown(self, sample_model):
        with pytest.raises(UnknownEntityError):
            remove_component(sample_model, "ghost")

    def test_connect_uses_default_weight(self, sample_model):
        out = connect(sample_model, "planning", "payments", "peers")
        edge = [e for e in out.edges if e.source == "planning" and e.target == "payments"][0]
        assert edge.weight == 1.0

    def test_connect_self_loop(self, sample_model):
        with pytest.raises(ModelError, match="self-loop"):
            connect(sample_model, "planning", "planning", "governs")

    def test_connect_unknown_type(self, sample_model):
        with pytest.raises(UnknownEntityError, match="relation type"):
            connect(sample_model, "planning", "payments", "mystery")

    def test_connect_replaces_duplicate_triple(self, sample_model):
        once = connect(sample_model, "planning", "payments", "governs", 2.5)
        twice = connect(once, "planning", "payments", "governs", 2.5)
        matches = [
            e for e in twice.edges
            if (e.source, e.target, e.relation_type) == ("planning", "payments", "governs")
        ]
        assert len(matches) == 1
        assert matches[0].weight == 2.5

    def test_disconnect(self, sample_model):
        out = disconnect(sample_model, "planning", "logistics", "governs")
        assert len(out.edges) == len(sample_model.edges) - 1
        with pytest.raises(UnknownEntityError):
            disconnect(out, "planning", "logistics", "governs")

    def test_every_mutation_bumps_revision(self, sample_model):
        rev = sample_model.meta.revision
        m = connect(sample_model, "planning", "payments", "peers")
        assert m.meta.revision == rev + 1
        m = remove_component(m, "treasury")
        assert m.meta.revision == rev + 2


class TestBuildGraph:
    def test_single_undirected_edge(self):
        m = build_sample_model()
        m = connect(m, "planning", "treasury", "peers", 3.0)
        g = build_graph(m, {"peers"})
        i, j = g.index["planning"], g.index["treasury"]
        assert g.adjacency[i, j] == 3.0
        assert g.adjacency[j, i] == 3.0

    def test_directed_edge_one_way(self, sample_model):
        g = build_graph(sample_model, {"governs"})
        i, j = g.index["planning"], g.index["logistics"]
        assert g.adjacency[i, j] == 2.0
        assert g.adjacency[j, i] == 0.0
        assert g.directed

    def test_symmetrize_halves(self, sample_model):
        g = build_graph(sample_model, {"governs"}, symmetrize=True)
        i, j = g.index["planning"], g.index["logistics"]
        assert g.adjacency[i, j] == 1.0
        assert g.adjacency[j, i] == 1.0
        assert not g.directed

    def test_all_components_are_nodes(self, sample_model):
        for flt in (None, {"peers"}, {"governs"}):
            g = build_graph(sample_model, flt)
            assert g.node_ids == sample_model.component_ids

    def test_unknown_filter(self, sample_model):
        with pytest.raises(UnknownEntityError):
            build_graph(sample_model, {"nope"})

    def test_symmetrized_graph_properties(self, sample_model):
        g = build_graph(sample_model, symmetrize=True)
        assert np.array_equal(g.adjacency, g.adjacency.T)
        assert np.all(np.diag(g.adjacency) == 0)

    def test_filter_is_monotone(self, sample_model):
        full = build_graph(sample_model).adjacency
        for flt in ({"peers"}, {"governs"}, set()):
            sub = build_graph(sample_model, flt).adjacency
            assert np.all(sub <= full + 1e-15)

    def test_parallel_types_merge_additively(self, sample_model):
        m = connect(sample_model, "logistics", "payments", "governs", 2.0)
        g = build_graph(m)
        i, j = g.index["logistics"], g.index["payments"]
        # peers edge (3.0, both ways) plus directed governs edge (2.0, one way)
        assert g.adjacency[i, j] == 5.0
        assert g.adjacency[j, i] == 3.0


class TestLayerGraph:
    def test_projection_counts_pairs(self, sample_model):
        g = layer_graph(sample_model, "People", projection=True)
        i, j = g.index["planning"], g.index["logistics"]
        assert g.adjacency[i, j] == 1.0

    def test_projection_two_pairs(self, sample_model):
        layer = sample_model.layer("People")
        extended = Layer(
            kind="People",
            entities=layer.entities + (LayerEntity("dan", "Dan", "logistics"),),
            intra_layer_edges=layer.intra_layer_edges + (Edge("alice", "dan", "peers", 1.0),),
        )
        from archgraph.model import set_layer
        m = set_layer(sample_model, extended)
        g = layer_graph(m, "People", projection=True)
        i, j = g.index["planning"], g.index["logistics"]
        # alice-bob and alice-dan are two distinct cross pairs
        assert g.adjacency[i, j] == 2.0

    def test_entity_graph(self, sample_model):
        g = layer_graph(sample_model, "People", projection=False)
        assert g.node_ids == ("alice", "bob", "carol")
        assert g.adjacency[g.index["alice"], g.index["bob"]] == 1.0

    def test_empty_layer(self, sample_model):
        from archgraph.model import set_layer
        m = set_layer(sample_model, Layer(kind="Data"))
        g = layer_graph(m, "Data", projection=False)
        assert g.n == 0

    def test_missing_layer(self, sample_model):
        with pytest.raises(UnknownEntityError):
            layer_graph(sample_model, "Resources")


def test_symmetrized_preserves_total_mass():
    g = graph_of([(0, 1, 2.0), (1, 2, 4.0)], directed=True)
    s = symmetrized(g)
    assert s.adjacency.sum() == g.adjacency.sum()
    assert np.array_equal(s.adjacency, s.adjacency.T)
