"""HTTP API binding the store, analytics, diffusion and feed pipeline.

All endpoints live under ``/api/v1`` and carry the model revision they were
computed against, so clients can detect stale reads after a mutation.
Mutations accept the caller's last-seen revision and answer 409 when it no
longer matches (optimistic concurrency). Long diffusion runs can be started
asynchronously and tracked through the jobs endpoint.
"""

from __future__ import annotations

import math
from dataclasses import asdict, replace

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import analytics, community, feed, io, model as model_ops
from .diffusion import KernelKind, propagate
from .errors import (
    ArchgraphError,
    ConvergenceError,
    DegenerateSpectrumError,
    ModelError,
    ParameterError,
    ParseError,
    RevisionConflictError,
    UnknownEntityError,
)
from .store import JobRunner, ModelStore

_METRICS = {
    "degree", "closeness", "betweenness", "edge-betweenness", "eigenvector", "pagerank",
}


def _types_param(types: str | None) -> set[str] | None:
    if types is None or types == "":
        return None
    return {t.strip() for t in types.split(",") if t.strip()}


def _distance(value: str) -> analytics.DistanceMode:
    try:
        return analytics.DistanceMode(value)
    except ValueError:
        raise ParameterError(f"unknown distance mode {value!r}") from None


def _finite_or_none(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _impact_payload(vector, revision: int, alpha_max: float, top: int | None) -> dict:
    payload = {
        "revision": revision,
        "kernel": vector.kind.value,
        "parameters": vector.parameters,
        "alpha_max": _finite_or_none(alpha_max),
        "seeds": vector.seeds,
        "scores": vector.scores,
        "ranking": list(vector.ranking),
    }
    if top is not None:
        payload["top"] = [[node, score] for node, score in vector.top(top)]
    return payload


def create_app(store: ModelStore, runner: JobRunner | None = None) -> FastAPI:
    app = FastAPI(title="archgraph", docs_url=None, redoc_url=None)
    runner = runner if runner is not None else JobRunner()

    def error_response(status: int, err: Exception, **extra):
        return JSONResponse(status_code=status, content={"error": str(err), **extra})

    @app.exception_handler(RevisionConflictError)
    async def conflict_handler(request: Request, err: RevisionConflictError):
        return error_response(409, err, revision=err.current)

    @app.exception_handler(UnknownEntityError)
    async def unknown_handler(request: Request, err: UnknownEntityError):
        return error_response(404, err)

    @app.exception_handler(ArchgraphError)
    async def bad_request_handler(request: Request, err: ArchgraphError):
        if isinstance(err, (ConvergenceError, DegenerateSpectrumError)):
            return error_response(422, err)
        return error_response(400, err)

    # -- model document ----------------------------------------------------

    @app.get("/api/v1/model")
    def get_model():
        return io.to_dict(store.model)

    @app.put("/api/v1/model")
    def put_model(payload: dict = Body(...), lax: bool = False):
        parsed = io.from_dict(payload, strict=not lax)
        violations = model_ops.validate(parsed)
        if violations:
            return JSONResponse(status_code=400, content={
                "error": "model has invariant violations",
                "violations": [asdict(v) for v in violations],
            })

        def apply(current):
            meta = replace(parsed.meta, revision=current.meta.revision + 1)
            return replace(parsed, meta=meta)

        updated = store.mutate(apply, expected_revision=parsed.meta.revision)
        return io.to_dict(updated)

    # -- components and edges ----------------------------------------------

    def _component_from_payload(payload: dict) -> model_ops.Component:
        probe = dict(payload)
        probe.setdefault("id", "?")
        return io.from_dict({"components": [probe]}, strict=True).components[0]

    @app.post("/api/v1/components")
    def post_component(payload: dict = Body(...), expected_revision: int | None = None):
        component = _component_from_payload(payload)
        updated = store.mutate(
            lambda m: model_ops.upsert_component(m, component),
            expected_revision=expected_revision,
        )
        return {"revision": updated.meta.revision, "component": payload}

    @app.patch("/api/v1/components/{component_id}")
    def patch_component(
        component_id: str, payload: dict = Body(...), expected_revision: int | None = None
    ):
        def apply(current):
            existing = current.component(component_id)
            if existing is None:
                raise UnknownEntityError(f"unknown component: {component_id!r}")
            merged = {**io.to_dict(current)["components"][
                current.component_ids.index(component_id)
            ], **payload, "id": component_id}
            return model_ops.upsert_component(current, _component_from_payload(merged))

        updated = store.mutate(apply, expected_revision=expected_revision)
        return {"revision": updated.meta.revision}

    @app.delete("/api/v1/components/{component_id}")
    def delete_component(component_id: str, expected_revision: int | None = None):
        updated = store.mutate(
            lambda m: model_ops.remove_component(m, component_id),
            expected_revision=expected_revision,
        )
        return {"revision": updated.meta.revision}

    @app.post("/api/v1/edges")
    def post_edge(payload: dict = Body(...), expected_revision: int | None = None):
        updated = store.mutate(
            lambda m: model_ops.connect(
                m,
                payload["source"],
                payload["target"],
                payload["relation_type"],
                payload.get("weight"),
            ),
            expected_revision=expected_revision,
        )
        return {"revision": updated.meta.revision}

    @app.delete("/api/v1/edges/{source}/{target}/{relation_type}")
    def delete_edge(
        source: str, target: str, relation_type: str, expected_revision: int | None = None
    ):
        updated = store.mutate(
            lambda m: model_ops.disconnect(m, source, target, relation_type),
            expected_revision=expected_revision,
        )
        return {"revision": updated.meta.revision}

    # -- graph and analytics -----------------------------------------------

    @app.get("/api/v1/graph")
    def get_graph(types: str | None = None, symmetrize: bool = False):
        snapshot = store.model
        g = store.graph(_types_param(types), symmetrize, model=snapshot)
        bundle = store.bundle(_types_param(types), model=snapshot)
        return {
            "revision": snapshot.meta.revision,
            "node_ids": list(g.node_ids),
            "adjacency": [list(map(float, row)) for row in g.adjacency],
            "directed": g.directed,
            "alpha_max": _finite_or_none(bundle.alpha_max),
        }

    @app.get("/api/v1/analytics/degree-histogram")
    def get_degree_histogram(types: str | None = None, weighted: bool = False):
        snapshot = store.model
        g = store.graph(_types_param(types), model=snapshot)
        hist = analytics.degree_histogram(analytics.degree_centrality(g, weighted=weighted))
        return {
            "revision": snapshot.meta.revision,
            "histogram": {str(k): v for k, v in hist.counts.items()},
            "classification": hist.classification,
            "mean_degree": hist.mean_degree,
            "max_possible_degree": hist.max_possible_degree,
        }

    @app.get("/api/v1/analytics/{metric}")
    def get_analytics(
        metric: str,
        types: str | None = None,
        distance: str = "hop",
        weighted: bool = False,
        normalized: bool = False,
        damping: float = 0.85,
    ):
        if metric not in _METRICS:
            raise ParameterError(f"unknown metric {metric!r}, expected one of {sorted(_METRICS)}")
        snapshot = store.model
        g = store.graph(_types_param(types), model=snapshot)
        mode = _distance(distance)
        if metric == "degree":
            result = analytics.degree_centrality(g, weighted=weighted)
        elif metric == "closeness":
            result = analytics.closeness_centrality(g, mode)
        elif metric == "betweenness":
            result = analytics.betweenness_centrality(g, mode, normalized=normalized)
        elif metric == "edge-betweenness":
            result = analytics.edge_betweenness(g, mode, normalized=normalized)
        elif metric == "eigenvector":
            result = analytics.eigenvector_centrality(model_ops.symmetrized(g))
        else:
            result = analytics.pagerank(g, damping=damping)
        if metric == "edge-betweenness":
            scores = [
                {"source": s, "target": t, "score": v} for (s, t), v in result.scores.items()
            ]
        else:
            scores = result.scores
        return {
            "revision": snapshot.meta.revision,
            "metric": metric,
            "parameters": result.parameters,
            "scores": scores,
        }

    @app.get("/api/v1/communities")
    def get_communities(method: str = "gn", k: int | None = None, seed: int = 0,
                        types: str | None = None):
        snapshot = store.model
        g = model_ops.symmetrized(store.graph(_types_param(types), model=snapshot))
        if method == "gn":
            partition = community.girvan_newman(g, k=k)
        elif method == "lpa":
            partition = community.label_propagation(g, seed=seed)
        else:
            raise ParameterError(f"unknown method {method!r}, expected 'gn' or 'lpa'")
        groups = []
        for cid, members in enumerate(partition.communities()):
            groups.append({
                "id": cid,
                "members": [_member_info(snapshot, node) for node in members],
            })
        return {
            "revision": snapshot.meta.revision,
            "method": method,
            "community_count": partition.community_count,
            "modularity": partition.modularity,
            "communities": groups,
        }

    def _member_info(snapshot, node_id: str) -> dict:
        component = snapshot.component(node_id)
        competency = snapshot.competency(component.competency_id) if component else None
        return {
            "id": node_id,
            "name": component.name if component else "",
            "competency_id": component.competency_id if component else "",
            "competency_name": competency.name if competency else "",
            "accountability": component.accountability if component else "",
        }

    # -- diffusion -----------------------------------------------------------

    def _run_diffusion(snapshot, payload: dict, should_cancel=lambda: False) -> dict:
        kind = KernelKind(payload.get("kernel", "rl"))
        types = payload.get("types")
        edge_types = set(types) if types else None
        params: dict = {}
        if kind is KernelKind.RANDOM_WALK_RESTART:
            if "restart" not in payload:
                raise ParameterError("rwr kernel needs a 'restart' probability")
            params["restart"] = float(payload["restart"])
        else:
            bundle = store.bundle(edge_types, model=snapshot)
            alpha = payload.get("alpha")
            if alpha is None:
                raise ParameterError(
                    f"kernel {kind.value!r} needs 'alpha' "
                    f"(0 < alpha < {bundle.alpha_max} for 'rl')"
                )
            params["alpha"] = float(alpha)
            if kind is KernelKind.EXPONENTIAL_DIFFUSION and "row_normalize" in payload:
                params["row_normalize"] = bool(payload["row_normalize"])
        kernel = store.kernel(kind, edge_types, model=snapshot, **params)
        if should_cancel():
            return None  # the job runner marks the job cancelled
        seeds = payload.get("seeds") or {}
        vector = propagate(kernel, {str(k): float(v) for k, v in seeds.items()})
        alpha_max = store.bundle(edge_types, model=snapshot).alpha_max
        top = payload.get("top")
        return _impact_payload(
            vector, snapshot.meta.revision, alpha_max, int(top) if top is not None else None
        )

    @app.post("/api/v1/diffusion")
    def post_diffusion(payload: dict = Body(...)):
        snapshot = store.model
        if payload.get("run_async"):
            job_id = runner.submit(
                lambda should_cancel: _run_diffusion(snapshot, payload, should_cancel)
            )
            return JSONResponse(
                status_code=202,
                content={"job_id": job_id, "revision": snapshot.meta.revision},
            )
        return _run_diffusion(snapshot, payload)

    @app.get("/api/v1/jobs/{job_id}")
    def get_job(job_id: str):
        job = runner.get(job_id)
        out = {"id": job.id, "status": job.status}
        if job.status == "done":
            out["result"] = job.result
        if job.error is not None:
            out["error"] = job.error
        return out

    @app.delete("/api/v1/jobs/{job_id}")
    def cancel_job(job_id: str):
        job = runner.cancel(job_id)
        return {"id": job.id, "status": job.status}

    # -- external impact pipeline --------------------------------------------

    @app.get("/api/v1/impact/signals")
    def get_signals():
        signals, revision = store.signals
        return {
            "revision": store.revision,
            "computed_at_revision": revision,
            "signals": [asdict(s) for s in signals],
        }

    @app.post("/api/v1/impact/refresh")
    def refresh_signals(payload: dict = Body(...)):
        snapshot = store.model
        sources = payload.get("feeds") or []
        stopwords = feed.load_stopwords(payload.get("stopwords"))
        lexicon = feed.load_lexicon(payload.get("lexicon"))
        items: list[feed.FeedItem] = []
        for source in sources:
            items.extend(feed.ingest(source))
        signals = feed.score_items(
            snapshot, items,
            top_tags=int(payload.get("top_tags", 8)),
            stopwords=stopwords,
            lexicon=lexicon,
        )
        store.set_signals(signals, snapshot.meta.revision)
        if payload.get("update_tags"):
            tagsets = [
                feed.extract_tags(snapshot, c.id, int(payload.get("top_tags", 8)), stopwords)
                for c in snapshot.components
            ]
            store.mutate(lambda m: feed.apply_tags(m, tagsets))
        return {
            "revision": store.revision,
            "computed_at_revision": snapshot.meta.revision,
            "signals": [asdict(s) for s in signals],
            "items_ingested": len(items),
        }

    # -- export ----------------------------------------------------------------

    @app.get("/api/v1/export")
    def export(format: str = "dot", types: str | None = None):
        snapshot = store.model
        document = io.export_graph(snapshot, _types_param(types), fmt=format)
        return PlainTextResponse(document, headers={"X-Model-Revision": str(snapshot.meta.revision)})

    return app
