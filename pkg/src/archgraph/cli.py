"""Command-line interface: validate, analyze, communities, diffuse, impact,
export and serve. The model file argument falls back to the ARCHGRAPH_MODEL
environment variable."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import analytics, community, feed, io
from .diffusion import KernelKind, propagate
from .errors import ArchgraphError
from .model import CbmModel, build_graph, symmetrized, validate
from .store import ModelStore


def _add_model_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "model", nargs="?", default=os.environ.get("ARCHGRAPH_MODEL"),
        help="model file (defaults to $ARCHGRAPH_MODEL)",
    )


def _load_model(args) -> CbmModel:
    if not args.model:
        raise ArchgraphError("no model file given and ARCHGRAPH_MODEL is not set")
    return io.load(args.model, strict=not getattr(args, "lax", False))


def _edge_types(args) -> set[str] | None:
    if not getattr(args, "edge_types", None):
        return None
    return {t.strip() for t in args.edge_types.split(",") if t.strip()}


def _print_table(rows: list[tuple], header: tuple) -> None:
    widths = [
        max(len(str(row[i])) for row in [header, *rows])
        for i in range(len(header))
    ]
    for row in [header, *rows]:
        print("  ".join(str(cell).ljust(widths[i]) for i, cell in enumerate(row)))


def _emit_scores(rows: list[tuple], header: tuple, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps([dict(zip(header, row)) for row in rows], indent=2))
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        _print_table(rows, header)


def cmd_validate(args) -> int:
    model = _load_model(args)
    violations = validate(model)
    if not violations:
        print(f"OK: {len(model.components)} components, {len(model.edges)} edges, "
              f"revision {model.meta.revision}")
        return 0
    for v in violations:
        print(f"{v.entity}: {v.rule}" + (f" ({v.detail})" if v.detail else ""))
    return 1


def cmd_analyze(args) -> int:
    model = _load_model(args)
    g = build_graph(model, _edge_types(args))
    mode = analytics.DistanceMode(args.distance)
    metric = args.metric
    if metric == "degree":
        result = analytics.degree_centrality(g, weighted=args.weighted)
    elif metric == "closeness":
        result = analytics.closeness_centrality(g, mode)
    elif metric == "betweenness":
        result = analytics.betweenness_centrality(g, mode, normalized=args.normalized)
    elif metric == "edge-betweenness":
        result = analytics.edge_betweenness(g, mode, normalized=args.normalized)
    elif metric == "eigenvector":
        result = analytics.eigenvector_centrality(symmetrized(g))
    else:
        result = analytics.pagerank(g, damping=args.damping)

    if metric == "edge-betweenness":
        rows = [(s, t, v) for (s, t), v in sorted(
            result.scores.items(), key=lambda kv: (-kv[1], kv[0])
        )]
        _emit_scores(rows, ("source", "target", "score"), args.format)
    else:
        rows = sorted(result.scores.items(), key=lambda kv: (-kv[1], kv[0]))
        _emit_scores(rows, ("component", "score"), args.format)

    if metric == "degree" and args.format == "table":
        hist = analytics.degree_histogram(result)
        print()
        print(f"degree histogram: {hist.counts}")
        print(f"structure: {hist.classification} "
              f"(mean {hist.mean_degree:.3g} of max {hist.max_possible_degree:.3g})")
    return 0


def cmd_communities(args) -> int:
    model = _load_model(args)
    g = symmetrized(build_graph(model, _edge_types(args)))
    if args.method == "gn":
        partition = community.girvan_newman(g, k=None if args.auto else args.k)
    else:
        partition = community.label_propagation(g, seed=args.seed)
    print(f"{partition.community_count} communities, modularity {partition.modularity:.4f}")
    for cid, members in enumerate(partition.communities()):
        print(f"\ncommunity {cid}:")
        for node in members:
            c = model.component(node)
            competency = model.competency(c.competency_id) if c else None
            competency_name = competency.name if competency else "-"
            print(f"  {node}  {c.name if c else ''}  "
                  f"[{competency_name} / {c.accountability if c else '?'}]")
    return 0


def _parse_seeds(pairs: list[str]) -> dict[str, float]:
    seeds = {}
    for pair in pairs:
        node, _, raw = pair.partition("=")
        seeds[node] = float(raw) if raw else 1.0
    return seeds


def cmd_diffuse(args) -> int:
    model = _load_model(args)
    store = ModelStore(model)
    kind = KernelKind(args.kernel)
    edge_types = _edge_types(args)
    bundle = store.bundle(edge_types)
    params: dict = {}
    if kind is KernelKind.RANDOM_WALK_RESTART:
        params["restart"] = args.restart if args.restart is not None else 0.5
        print(f"kernel rwr, restart={params['restart']}")
    else:
        alpha = args.alpha
        if alpha is None and kind is KernelKind.REGULARIZED_LAPLACIAN:
            alpha = 0.5 * bundle.alpha_max  # midway through the valid range
        if alpha is None:
            alpha = 1.0
        params["alpha"] = alpha
        bound = f" (valid range 0 < alpha < {bundle.alpha_max:.6g})" \
            if kind is KernelKind.REGULARIZED_LAPLACIAN else ""
        print(f"kernel {kind.value}, alpha={alpha:.6g}{bound}")
    kernel = store.kernel(kind, edge_types, **params)
    vector = propagate(kernel, _parse_seeds(args.seed))
    rows = [(node, vector.scores[node]) for node in vector.ranking[: args.top]]
    _print_table(rows, ("component", "impact"))
    return 0


def cmd_impact(args) -> int:
    model = _load_model(args)
    stopwords = feed.load_stopwords(args.stopwords)
    lexicon = feed.load_lexicon(args.lexicon)
    items: list[feed.FeedItem] = []
    for source in feed.read_feed_config(args.feeds):
        items.extend(feed.ingest(source))
    signals = feed.score_items(model, items, top_tags=args.tags,
                               stopwords=stopwords, lexicon=lexicon)
    print(f"{len(items)} items -> {len(signals)} signals")
    rows = [
        (s.component_id, s.item_id, f"{s.relevance:.3f}", s.sentiment, f"{s.importance:.3f}")
        for s in signals[: args.top]
    ]
    _print_table(rows, ("component", "item", "relevance", "sentiment", "importance"))

    if args.diffuse:
        seeds = feed.to_seeds(signals)
        if not seeds:
            print("\nno nonzero seeds; skipping diffusion")
            return 0
        store = ModelStore(model)
        kind = KernelKind(args.diffuse)
        if kind is KernelKind.RANDOM_WALK_RESTART:
            kernel = store.kernel(kind, restart=args.restart or 0.5)
        else:
            alpha = args.alpha if args.alpha is not None else 0.5 * store.bundle().alpha_max
            kernel = store.kernel(kind, alpha=alpha)
        vector = propagate(kernel, seeds)
        print(f"\ndiffused external impact ({kind.value}):")
        _print_table(
            [(n, vector.scores[n]) for n in vector.ranking[: args.top]],
            ("component", "impact"),
        )
    return 0


def cmd_export(args) -> int:
    model = _load_model(args)
    sys.stdout.write(io.export_graph(model, _edge_types(args), fmt=args.format))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    model = _load_model(args)
    store = ModelStore(model, path=args.model, caching=not args.no_cache)
    uvicorn.run(create_app(store), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="archgraph",
                                     description="Graph analytics workbench for component business models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check model invariants")
    _add_model_argument(p)
    p.add_argument("--lax", action="store_true", help="ignore unknown keys when loading")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="centrality analytics")
    _add_model_argument(p)
    p.add_argument("--metric", required=True,
                   choices=["degree", "closeness", "betweenness", "edge-betweenness",
                            "eigenvector", "pagerank"])
    p.add_argument("--edge-types", help="comma-separated relation type filter")
    p.add_argument("--distance", default="hop", choices=["hop", "inverse-weight"])
    p.add_argument("--format", default="table", choices=["table", "csv", "json"])
    p.add_argument("--weighted", action="store_true", help="weighted degree variant")
    p.add_argument("--normalized", action="store_true", help="normalized betweenness")
    p.add_argument("--damping", type=float, default=0.85)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("communities", help="community detection")
    _add_model_argument(p)
    p.add_argument("--method", default="gn", choices=["gn", "lpa"])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, help="target community count (girvan-newman)")
    group.add_argument("--auto", action="store_true", help="stop at maximum modularity")
    p.add_argument("--seed", type=int, default=0, help="label propagation sweep seed")
    p.add_argument("--edge-types")
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("diffuse", help="seeded impact diffusion")
    _add_model_argument(p)
    p.add_argument("--kernel", default="rl", choices=[k.value for k in KernelKind])
    p.add_argument("--alpha", type=float, help="kernel parameter (default 0.5 * alpha_max for rl)")
    p.add_argument("--restart", type=float, help="restart probability for rwr")
    p.add_argument("--seed", action="append", required=True, metavar="ID=INTENSITY",
                   help="seed component (repeatable)")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--edge-types")
    p.set_defaults(func=cmd_diffuse)

    p = sub.add_parser("impact", help="external feed impact pipeline")
    _add_model_argument(p)
    p.add_argument("--feeds", required=True, help="feed list file, one source per line")
    p.add_argument("--lexicon", help="sentiment lexicon path (token<TAB>polarity)")
    p.add_argument("--stopwords", help="stopword list path")
    p.add_argument("--tags", type=int, default=8, help="feature tags per component")
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--diffuse", choices=[k.value for k in KernelKind],
                   help="diffuse the aggregated seeds through this kernel")
    p.add_argument("--alpha", type=float)
    p.add_argument("--restart", type=float)
    p.set_defaults(func=cmd_impact)

    p = sub.add_parser("export", help="export the graph document")
    _add_model_argument(p)
    p.add_argument("--format", default="dot", choices=["dot", "csv-edges"])
    p.add_argument("--edge-types")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="run the HTTP API")
    _add_model_argument(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ArchgraphError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
