"""Single-writer model store with snapshot reads and revision-keyed caches.

Mutations serialize through one lock and bump the revision; readers always
work on an immutable snapshot. Graphs, Laplacian bundles and kernels are
cached per revision, so any response computed with caching enabled is
identical to one computed cold.
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import io
from .diffusion import (
    KernelKind,
    KernelMatrix,
    LaplacianBundle,
    exp_kernel,
    laplacian,
    lexp_kernel,
    rl_kernel,
    rwr_kernel,
)
from .errors import RevisionConflictError, UnknownEntityError
from .feed import ImpactSignal
from .model import CbmModel, WeightedGraph, build_graph, symmetrized


def _normalize_types(edge_types) -> tuple[str, ...] | None:
    if edge_types is None:
        return None
    return tuple(sorted(set(edge_types)))


class ModelStore:
    """Holds the current model; one writer, any number of snapshot readers."""

    def __init__(self, model: CbmModel, path: str | Path | None = None, caching: bool = True):
        self._lock = threading.Lock()
        self._model = model
        self._path = Path(path) if path is not None else None
        self.caching = caching
        self._graphs: dict = {}
        self._bundles: dict = {}
        self._kernels: dict = {}
        self._signals: list[ImpactSignal] = []
        self._signals_revision: int | None = None

    @property
    def model(self) -> CbmModel:
        return self._model

    @property
    def revision(self) -> int:
        return self._model.meta.revision

    def mutate(
        self,
        fn: Callable[[CbmModel], CbmModel],
        expected_revision: int | None = None,
    ) -> CbmModel:
        """Apply a model -> model function under the writer lock.

        ``expected_revision``, when given, must match the current revision or
        the mutation is rejected with a conflict.
        """
        with self._lock:
            if expected_revision is not None and expected_revision != self._model.meta.revision:
                raise RevisionConflictError(expected_revision, self._model.meta.revision)
            new_model = fn(self._model)
            self._model = new_model
            self._graphs.clear()
            self._bundles.clear()
            self._kernels.clear()
            if self._path is not None:
                io.save(new_model, self._path)
            return new_model

    def _cached(self, cache: dict, revision: int, key, build: Callable[[], Any]):
        if not self.caching:
            return build()
        full_key = (revision, key)
        if full_key not in cache:
            cache[full_key] = build()
        return cache[full_key]

    def graph(
        self,
        edge_types=None,
        symmetrize: bool = False,
        model: CbmModel | None = None,
    ) -> WeightedGraph:
        """Filtered graph of the given snapshot (current model by default)."""
        model = self._model if model is None else model
        key = (_normalize_types(edge_types), symmetrize)
        return self._cached(
            self._graphs, model.meta.revision, key,
            lambda: build_graph(model, set(edge_types) if edge_types else None, symmetrize),
        )

    def bundle(self, edge_types=None, model: CbmModel | None = None) -> LaplacianBundle:
        """Laplacian of the symmetrized filtered graph."""
        model = self._model if model is None else model
        key = _normalize_types(edge_types)
        return self._cached(
            self._bundles, model.meta.revision, key,
            lambda: laplacian(symmetrized(self.graph(edge_types, model=model))),
        )

    def kernel(
        self,
        kind: KernelKind,
        edge_types=None,
        model: CbmModel | None = None,
        **params,
    ) -> KernelMatrix:
        model = self._model if model is None else model
        kind = KernelKind(kind)
        key = (kind, _normalize_types(edge_types), tuple(sorted(params.items())))
        return self._cached(
            self._kernels, model.meta.revision, key,
            lambda: self._build_kernel(kind, edge_types, params, model),
        )

    def _build_kernel(self, kind: KernelKind, edge_types, params, model: CbmModel) -> KernelMatrix:
        if kind is KernelKind.REGULARIZED_LAPLACIAN:
            return rl_kernel(self.bundle(edge_types, model=model), params["alpha"])
        if kind is KernelKind.LAPLACIAN_EXPONENTIAL:
            return lexp_kernel(self.bundle(edge_types, model=model), params["alpha"])
        if kind is KernelKind.EXPONENTIAL_DIFFUSION:
            return exp_kernel(
                symmetrized(self.graph(edge_types, model=model)),
                params["alpha"],
                row_normalize=params.get("row_normalize", False),
            )
        return rwr_kernel(self.graph(edge_types, model=model), params["restart"])

    def set_signals(self, signals: list[ImpactSignal], revision: int) -> None:
        with self._lock:
            self._signals = list(signals)
            self._signals_revision = revision

    @property
    def signals(self) -> tuple[list[ImpactSignal], int | None]:
        return list(self._signals), self._signals_revision


@dataclass
class Job:
    id: str
    status: str = "pending"  # pending | running | done | failed | cancelled
    result: Any = None
    error: str | None = None
    cancel_event: threading.Event = field(default_factory=threading.Event)


class JobRunner:
    """Small thread-pool runner for long analytics with cooperative cancel."""

    def __init__(self, workers: int = 2):
        self._executor = ThreadPoolExecutor(max_workers=workers)
        self._jobs: dict[str, Job] = {}
        self._lock = threading.Lock()

    def submit(self, fn: Callable[[Callable[[], bool]], Any]) -> str:
        """Run ``fn(should_cancel)`` in the background; returns the job id."""
        job = Job(id=uuid.uuid4().hex)
        with self._lock:
            self._jobs[job.id] = job

        def run():
            if job.cancel_event.is_set():
                job.status = "cancelled"
                return
            job.status = "running"
            try:
                result = fn(job.cancel_event.is_set)
            except Exception as err:  # surfaced through the status endpoint
                job.status = "failed"
                job.error = str(err)
                return
            job.status = "cancelled" if job.cancel_event.is_set() else "done"
            if job.status == "done":
                job.result = result

        self._executor.submit(run)
        return job.id

    def get(self, job_id: str) -> Job:
        with self._lock:
            if job_id not in self._jobs:
                raise UnknownEntityError(f"unknown job: {job_id!r}")
            return self._jobs[job_id]

    def cancel(self, job_id: str) -> Job:
        job = self.get(job_id)
        job.cancel_event.set()
        if job.status == "pending":
            job.status = "cancelled"
        return job
