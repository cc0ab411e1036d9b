import numpy as np
import pytest

from archgraph.model import (
    Competency,
    Component,
    Edge,
    Layer,
    LayerEntity,
    RelationType,
    WeightedGraph,
    add_competency,
    add_relation_type,
    connect,
    new_model,
    set_layer,
    upsert_component,
)


def build_sample_model():
    """A small but complete model: 2 competencies, 4 components, 2 relation
    types (one directed), 3 edges, and a People layer."""
    m = new_model("acme")
    m = add_competency(m, Competency("ops", "Operations", 0))
    m = add_competency(m, Competency("fin", "Finance", 1))
    m = add_relation_type(m, RelationType("peers", directed=False, default_weight=1.0))
    m = add_relation_type(m, RelationType("governs", directed=True, default_weight=2.0))
    m = upsert_component(m, Component(
        id="planning", name="Network Planning",
        description="Plans the distribution network and carrier capacity",
        processes=("capacity planning", "route design"),
        competency_id="ops", accountability="Direct",
        view_values={"strategic": 0.9},
    ))
    m = upsert_component(m, Component(
        id="logistics", name="Logistics Execution",
        description="Moves freight through warehouses and carriers",
        processes=("dispatch", "warehouse operations"),
        competency_id="ops", accountability="Execute",
    ))
    m = upsert_component(m, Component(
        id="treasury", name="Treasury Control",
        description="Controls liquidity, funding and interest rate exposure",
        processes=("cash management",),
        competency_id="fin", accountability="Control",
    ))
    m = upsert_component(m, Component(
        id="payments", name="Payment Processing",
        description="Executes payment instructions and settlement",
        processes=("clearing", "settlement"),
        competency_id="fin", accountability="Execute",
    ))
    m = connect(m, "planning", "logistics", "governs")
    m = connect(m, "logistics", "payments", "peers", 3.0)
    m = connect(m, "treasury", "payments", "governs", 2.5)
    m = set_layer(m, Layer(
        kind="People",
        entities=(
            LayerEntity("alice", "Alice", "planning"),
            LayerEntity("bob", "Bob", "logistics"),
            LayerEntity("carol", "Carol", "payments"),
        ),
        intra_layer_edges=(
            Edge("alice", "bob", "peers", 1.0),
            Edge("bob", "carol", "peers", 1.0),
        ),
    ))
    return m


@pytest.fixture
def sample_model():
    return build_sample_model()


_WORDS = (
    "ledger", "freight", "routing", "billing", "claims", "audit", "pricing",
    "catalog", "orders", "returns", "risk", "funding", "network", "support",
)


def random_model(rng):
    """A random valid model for round-trip and service tests."""
    from archgraph.model import CbmModel, ModelMeta

    n_competencies = int(rng.integers(1, 4))
    competencies = tuple(
        Competency(id=f"comp{i}", name=_WORDS[i], display_order=int(rng.integers(0, 5)))
        for i in range(n_competencies)
    )
    n_types = int(rng.integers(1, 4))
    relation_types = tuple(
        RelationType(
            name=f"rel{i}",
            directed=bool(rng.random() < 0.5),
            default_weight=float(rng.uniform(0.5, 3.0)),
        )
        for i in range(n_types)
    )
    n_components = int(rng.integers(1, 9))
    components = tuple(
        Component(
            id=f"c{i}",
            name=str(rng.choice(_WORDS)),
            description=" ".join(rng.choice(_WORDS, size=3)),
            processes=tuple(rng.choice(_WORDS, size=int(rng.integers(0, 3)))),
            competency_id=f"comp{int(rng.integers(0, n_competencies))}",
            accountability=("Direct", "Control", "Execute")[int(rng.integers(0, 3))],
            view_values={"strategic": float(rng.uniform(0, 1))} if rng.random() < 0.5 else {},
        )
        for i in range(n_components)
    )
    triples = set()
    edges = []
    for _ in range(int(rng.integers(0, n_components * 2))):
        i, j = rng.integers(0, n_components, size=2)
        if i == j:
            continue
        triple = (f"c{i}", f"c{j}", f"rel{int(rng.integers(0, n_types))}")
        if triple in triples:
            continue
        triples.add(triple)
        edges.append(Edge(*triple, weight=float(rng.uniform(0.1, 5.0))))
    layers = ()
    if rng.random() < 0.5 and n_components >= 2:
        entities = tuple(
            LayerEntity(id=f"p{i}", name=f"Person {i}",
                        component_id=f"c{int(rng.integers(0, n_components))}")
            for i in range(int(rng.integers(1, 5)))
        )
        layer_edges = []
        seen = set()
        for _ in range(int(rng.integers(0, 4))):
            a, b = rng.integers(0, len(entities), size=2)
            key = (f"p{a}", f"p{b}", "rel0")
            if a == b or key in seen:
                continue
            seen.add(key)
            layer_edges.append(Edge(*key, weight=float(rng.uniform(0.1, 2.0))))
        layers = (Layer(kind="People", entities=entities,
                        intra_layer_edges=tuple(layer_edges)),)
    return CbmModel(
        meta=ModelMeta(name=f"random-{int(rng.integers(0, 10**6))}",
                       revision=int(rng.integers(1, 50))),
        competencies=competencies,
        components=components,
        relation_types=relation_types,
        edges=tuple(edges),
        layers=layers,
    )


def graph_of(edges, n=None, directed=False):
    """Tiny literal-graph helper: edges as (i, j, w) index triples."""
    if n is None:
        n = max(max(i, j) for i, j, _ in edges) + 1
    A = np.zeros((n, n))
    for i, j, w in edges:
        A[i, j] = w
        if not directed:
            A[j, i] = w
    names = tuple("abcdefghijklmnop"[:n])
    return WeightedGraph(node_ids=names, adjacency=A, directed=directed)


@pytest.fixture
def k2():
    return graph_of([(0, 1, 1.0)])


@pytest.fixture
def path3():
    return graph_of([(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture
def triangle():
    return graph_of([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])


@pytest.fixture
def two_triangles():
    return graph_of([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
                     (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)])


@pytest.fixture
def barbell():
    return graph_of([(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
                     (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0), (2, 3, 1.0)])
