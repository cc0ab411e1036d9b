"""What-if impact diffusion: shock one component, watch it spread.

The regularized Laplacian kernel (I + alpha*L)^-1 turns the graph into an
inference matrix whose row i says how strongly a shock at component i is
felt everywhere else. alpha dials the reach and must stay below the inverse
spectral radius of L; the other kernels trade reach differently.

Run 01_build_and_validate.py first.
"""

from pathlib import Path

from archgraph.diffusion import (
    exp_kernel,
    laplacian,
    lexp_kernel,
    propagate,
    rl_kernel,
    rwr_kernel,
)
from archgraph.io import load
from archgraph.model import build_graph, symmetrized

model = load(Path(__file__).parent / "data" / "freightworks.json")
g = symmetrized(build_graph(model))
bundle = laplacian(g)

print(f"spectral radius rho(L) = {bundle.spectral_radius:.4f}")
print(f"admissible range: 0 < alpha < {bundle.alpha_max:.4f}")

SEED = {"warehouse-ops": 1.0}
print(f"\nseed: {SEED} (say, a fire drill shuts a sorting line)")

for fraction in (0.1, 0.5, 0.9):
    alpha = fraction * bundle.alpha_max
    vector = propagate(rl_kernel(bundle, alpha), SEED)
    reach = [f"{node} {vector.scores[node]:.3f}" for node in vector.ranking[:4]]
    print(f"  rl alpha = {fraction:.0%} of bound -> " + ", ".join(reach))
print("  larger alpha keeps less impact at the source and pushes more outward")

print("\nsame seed through the other kernels (top 4):")
alpha = 0.5 * bundle.alpha_max
kernels = {
    "rwr c=0.3 (directed walk)": rwr_kernel(build_graph(model), 0.3),
    "exp alpha=0.2": exp_kernel(g, 0.2, row_normalize=True),
    "lexp alpha=0.5": lexp_kernel(bundle, 0.5),
}
for name, kernel in kernels.items():
    vector = propagate(kernel, SEED)
    reach = [f"{node} {vector.scores[node]:.3f}" for node in vector.ranking[:4]]
    print(f"  {name:28s} " + ", ".join(reach))

print("\ntwo simultaneous shocks, different intensities:")
vector = propagate(rl_kernel(bundle, alpha), {"treasury": 2.0, "last-mile": 0.5})
for node in vector.ranking[:6]:
    print(f"  {node:20s} {vector.scores[node]:.3f}")
print("  scores are linear in the intensities, rankings are scale-invariant")
