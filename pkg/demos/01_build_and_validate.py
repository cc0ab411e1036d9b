"""Build a component business map from scratch, validate it, save it.

FreightWorks is a fictional logistics firm. Its map has four competencies
(columns) and the three accountability bands (rows); components connect
through three relation types: `governs` (directed), `peers` (undirected)
and `data-flow` (directed).

Run:  python3 demos/01_build_and_validate.py
"""

from pathlib import Path

from archgraph import (
    Competency,
    Component,
    Edge,
    Layer,
    LayerEntity,
    RelationType,
    add_competency,
    add_relation_type,
    connect,
    new_model,
    set_layer,
    upsert_component,
    validate,
)
from archgraph.io import save

DATA = Path(__file__).parent / "data"

model = new_model("freightworks")

for order, (cid, name) in enumerate([
    ("network", "Network Strategy"),
    ("operations", "Transport Operations"),
    ("customer", "Customer & Commercial"),
    ("finance", "Finance & Risk"),
]):
    model = add_competency(model, Competency(cid, name, order))

model = add_relation_type(model, RelationType("governs", directed=True, default_weight=2.0))
model = add_relation_type(model, RelationType("peers", directed=False, default_weight=1.0))
model = add_relation_type(model, RelationType("data-flow", directed=True, default_weight=1.5))

COMPONENTS = [
    # id, name, competency, accountability, description, processes
    ("market-strategy", "Market Strategy", "network", "Direct",
     "Sets the freight market strategy and corridor priorities",
     ["corridor selection", "alliance strategy"]),
    ("network-design", "Network Design", "network", "Control",
     "Designs the hub network, routes and carrier capacity",
     ["route design", "capacity planning"]),
    ("linehaul-ops", "Linehaul Operations", "network", "Execute",
     "Runs scheduled linehaul trucking between hubs",
     ["trunk scheduling", "carrier dispatch"]),
    ("ops-planning", "Operations Planning", "operations", "Direct",
     "Plans operations volumes, staffing and peak seasons",
     ["volume forecasting", "peak planning"]),
    ("dispatch-control", "Dispatch Control", "operations", "Control",
     "Controls daily dispatching and exception handling across depots",
     ["dispatch control", "exception handling"]),
    ("warehouse-ops", "Warehouse Operations", "operations", "Execute",
     "Operates warehouses, crossdocks and sorting lines",
     ["sorting", "crossdock operations"]),
    ("last-mile", "Last Mile Delivery", "operations", "Execute",
     "Delivers parcels the final leg to customers",
     ["tour planning", "proof of delivery"]),
    ("commercial-strategy", "Commercial Strategy", "customer", "Direct",
     "Owns pricing strategy and key account direction",
     ["pricing strategy", "account planning"]),
    ("service-management", "Service Management", "customer", "Control",
     "Controls service levels, claims and customer escalations",
     ["claims handling", "sla monitoring"]),
    ("order-desk", "Order Desk", "customer", "Execute",
     "Books transport orders and quotes spot shipments",
     ["order capture", "spot quoting"]),
    ("finance-policy", "Finance Policy", "finance", "Direct",
     "Sets funding policy, risk appetite and investment gates",
     ["investment gating", "risk appetite"]),
    ("treasury", "Treasury", "finance", "Control",
     "Controls liquidity, funding and currency exposure",
     ["cash management", "hedging"]),
    ("billing", "Billing & Settlement", "finance", "Execute",
     "Bills customers and settles carrier invoices",
     ["invoicing", "carrier settlement"]),
]

for cid, name, competency, level, description, processes in COMPONENTS:
    model = upsert_component(model, Component(
        id=cid, name=name, description=description, processes=tuple(processes),
        competency_id=competency, accountability=level,
        view_values={"strategic": 0.8 if level == "Direct" else 0.4},
    ))

GOVERNS = [
    ("market-strategy", "network-design"),
    ("network-design", "linehaul-ops"),
    ("ops-planning", "dispatch-control"),
    ("dispatch-control", "warehouse-ops"),
    ("dispatch-control", "last-mile"),
    ("commercial-strategy", "service-management"),
    ("service-management", "order-desk"),
    ("finance-policy", "treasury"),
    ("treasury", "billing"),
]
PEERS = [
    ("market-strategy", "commercial-strategy", 1.0),
    ("network-design", "ops-planning", 2.0),
    ("linehaul-ops", "warehouse-ops", 3.0),
    ("warehouse-ops", "last-mile", 2.0),
    ("service-management", "dispatch-control", 1.5),
]
DATA_FLOW = [
    ("order-desk", "dispatch-control", 2.5),
    ("order-desk", "billing", 2.0),
    ("dispatch-control", "linehaul-ops", 2.0),
    ("billing", "treasury", 1.5),
    ("service-management", "billing", 1.0),
]

for src, dst in GOVERNS:
    model = connect(model, src, dst, "governs")
for src, dst, w in PEERS:
    model = connect(model, src, dst, "peers", w)
for src, dst, w in DATA_FLOW:
    model = connect(model, src, dst, "data-flow", w)

model = set_layer(model, Layer(
    kind="People",
    entities=(
        LayerEntity("maria", "Maria (network lead)", "network-design"),
        LayerEntity("jon", "Jon (ops planner)", "ops-planning"),
        LayerEntity("petra", "Petra (dispatch chief)", "dispatch-control"),
        LayerEntity("sam", "Sam (warehouse shift lead)", "warehouse-ops"),
        LayerEntity("ines", "Ines (treasury analyst)", "treasury"),
    ),
    intra_layer_edges=(
        Edge("maria", "jon", "peers", 2.0),
        Edge("jon", "petra", "peers", 2.0),
        Edge("petra", "sam", "peers", 3.0),
        Edge("jon", "ines", "peers", 1.0),
    ),
))

violations = validate(model)
print(f"model '{model.meta.name}': {len(model.components)} components, "
      f"{len(model.edges)} edges, revision {model.meta.revision}")
print(f"violations: {violations if violations else 'none'}")

# A quick textual rendering of the grid: columns are competencies in display
# order, rows the three accountability bands.
print("\ngrid view:")
bands = ("Direct", "Control", "Execute")
columns = sorted(model.competencies, key=lambda c: c.display_order)
for band in bands:
    cells = []
    for competency in columns:
        members = [c.name for c in model.components
                   if c.competency_id == competency.id and c.accountability == band]
        cells.append(", ".join(members) or "-")
    print(f"  {band:8s} | " + " | ".join(cells))

DATA.mkdir(exist_ok=True)
out = DATA / "freightworks.json"
save(model, out)
print(f"\nsaved to {out}")
