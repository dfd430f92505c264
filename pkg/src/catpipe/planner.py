"""Pipeline planning and execution over a registry.

Search runs on descriptors only. Every morphism costs one step; among the
shortest pipelines the one with the greatest id sequence (compared
lexicographically, element by element) wins, so the result is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

from .document import Document, DocumentDescriptor, check_format, check_layer
from .errors import NoPlan, SignatureViolation
from .morphism import Kind, Pipeline, apply, compose_all
from .registry import Registry

DEFAULT_MAX_STEPS = 8


@dataclass(frozen=True)
class PlanRequest:
    source: DocumentDescriptor
    target: DocumentDescriptor
    max_steps: int = DEFAULT_MAX_STEPS

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


def _edges(reg, d):
    for m in reg:
        if m.kind is not Kind.IDENTITY and m.accepts(d):
            yield m.id, m.output(d)


def shortest_paths(reg: Registry, source: DocumentDescriptor, max_steps=DEFAULT_MAX_STEPS):
    """Best pipeline (as a tuple of ids) to every descriptor within ``max_steps``.

    Layer by layer: a descriptor first reached at depth k keeps the greatest
    id sequence among all its depth-k paths. Prefixes of shortest paths are
    shortest paths, so extending each predecessor's best sequence suffices.
    """
    best = {source: ()}
    layer = [source]
    for _ in range(max_steps):
        candidates = {}
        for d in layer:
            for mid, out in _edges(reg, d):
                if out in best:
                    continue
                path = best[d] + (mid,)
                if out not in candidates or path > candidates[out]:
                    candidates[out] = path
        if not candidates:
            break
        best.update(candidates)
        layer = list(candidates)
    return best


def _validate(reg, d):
    check_format(d.format)
    if d.format not in reg.formats:
        raise ValueError(f"format {d.format!r} is not registered")
    for kind in d.layers:
        check_layer(kind)
        if kind not in reg.layers:
            raise ValueError(f"layer {kind!r} is not registered")


def plan(reg: Registry, req: PlanRequest) -> Pipeline:
    _validate(reg, req.source)
    _validate(reg, req.target)
    if req.source == req.target:
        return Pipeline(())
    best = shortest_paths(reg, req.source, req.max_steps)
    if req.target not in best:
        raise NoPlan(req.source, req.target, req.max_steps, frozenset(best))
    return Pipeline(best[req.target])


def pipeline_morphism(reg: Registry, pipeline: Pipeline):
    """The composite morphism a non-empty pipeline stands for."""
    return compose_all([reg[i] for i in pipeline], reg.universe())


def run(reg: Registry, pipeline: Pipeline, doc: Document) -> Document:
    steps = [reg[i] for i in pipeline]
    for index, m in enumerate(steps):
        try:
            doc = apply(m, doc)
        except SignatureViolation as e:
            if e.step is not None:
                raise
            raise SignatureViolation(m.id, e.descriptor, index, e.detail) from None
    return doc
