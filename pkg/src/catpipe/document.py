"""Documents, the objects of the category.

A document is the triple (content, format, annotations). Planning works one
level up, on :class:`DocumentDescriptor`, which keeps only the format and the
set of annotation layers present.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    SpanOutOfBounds,
    UnknownFormat,
    UnknownLayer,
    UnsupportedInitialFormat,
)

PLAIN, TAB, KAF, TCF = "plain", "tab", "kaf", "tcf"

# Universes are append-only; manifests may register extra names.
FORMATS: list[str] = [PLAIN, TAB, KAF, TCF]
LAYERS: list[str] = ["token", "sentence", "pos", "lemma", "role"]

INITIAL_FORMATS = frozenset({PLAIN, KAF, TCF})


def register_format(name: str) -> str:
    if not name or not isinstance(name, str):
        raise UnknownFormat(f"invalid format name {name!r}")
    if name not in FORMATS:
        FORMATS.append(name)
    return name


def register_layer(kind: str) -> str:
    if not kind or not isinstance(kind, str):
        raise UnknownLayer(f"invalid layer kind {kind!r}")
    if kind not in LAYERS:
        LAYERS.append(kind)
    return kind


def check_format(name):
    if name not in FORMATS:
        raise UnknownFormat(f"unregistered format {name!r}")
    return name


def check_layer(kind):
    if kind not in LAYERS:
        raise UnknownLayer(f"unregistered annotation layer {kind!r}")
    return kind


@dataclass(frozen=True)
class Span:
    offset: int
    length: int

    def __post_init__(self):
        if self.offset < 0:
            raise SpanOutOfBounds(f"negative offset {self.offset}")
        if self.length < 1:
            raise SpanOutOfBounds(f"span length must be >= 1, got {self.length}")

    @property
    def end(self):
        return self.offset + self.length


@dataclass(frozen=True)
class Annotation:
    layer: str
    target_id: str
    value: str
    span: Span | None = None


class AnnotationSet(Mapping):
    """Immutable map from layer kind to an ordered tuple of annotations.

    A layer key is present only when it has at least one annotation, so the
    empty set is simply the map with no keys. Order inside a layer matters
    for equality; key order does not.
    """

    __slots__ = ("_layers",)

    def __init__(self, layers=None):
        items = {}
        for kind, annotations in dict(layers or {}).items():
            check_layer(kind)
            annotations = tuple(annotations)
            if not annotations:
                continue
            seen = set()
            for a in annotations:
                if not isinstance(a, Annotation):
                    raise TypeError(f"expected Annotation, got {type(a).__name__}")
                if a.layer != kind:
                    raise ValueError(f"annotation of layer {a.layer!r} filed under {kind!r}")
                if a.target_id in seen:
                    raise ValueError(f"duplicate target id {a.target_id!r} in layer {kind!r}")
                seen.add(a.target_id)
            items[kind] = annotations
        self._layers = dict(sorted(items.items()))

    @classmethod
    def from_annotations(cls, annotations):
        grouped = {}
        for a in annotations:
            grouped.setdefault(a.layer, []).append(a)
        return cls(grouped)

    def __getitem__(self, kind):
        return self._layers[kind]

    def __iter__(self):
        return iter(self._layers)

    def __len__(self):
        return len(self._layers)

    def __hash__(self):
        return hash(tuple(self._layers.items()))

    def __repr__(self):
        inner = ", ".join(f"{k}: {len(v)}" for k, v in self._layers.items())
        return f"AnnotationSet({{{inner}}})"

    def with_layer(self, kind, annotations):
        layers = dict(self._layers)
        layers[kind] = annotations
        return AnnotationSet(layers)

    def without(self, *kinds):
        return AnnotationSet({k: v for k, v in self._layers.items() if k not in kinds})

    def all(self):
        for annotations in self._layers.values():
            yield from annotations


EMPTY = AnnotationSet()


@dataclass(frozen=True)
class Document:
    content: str
    format: str
    annotations: AnnotationSet = field(default=EMPTY)

    def __post_init__(self):
        if not isinstance(self.content, str):
            raise TypeError("document content must be str")
        check_format(self.format)
        if not isinstance(self.annotations, AnnotationSet):
            object.__setattr__(self, "annotations", AnnotationSet(self.annotations))
        size = len(self.content)
        for a in self.annotations.all():
            if a.span is not None and a.span.end > size:
                raise SpanOutOfBounds(
                    f"{a.layer}/{a.target_id} spans [{a.span.offset}, {a.span.end}) "
                    f"beyond content length {size}"
                )

    def layer(self, kind):
        return self.annotations.get(kind, ())

    @property
    def descriptor(self):
        return descriptor_of(self)


@dataclass(frozen=True)
class DocumentDescriptor:
    """Planning-level type of a document: its format and its layer kinds."""

    format: str
    layers: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.layers, frozenset):
            object.__setattr__(self, "layers", frozenset(self.layers))

    def __lt__(self, other):
        return self._key() < other._key()

    def _key(self):
        return (self.format, sorted(self.layers))

    def __str__(self):
        return f"{self.format}:{'+'.join(sorted(self.layers))}"

    @classmethod
    def parse(cls, text: str) -> DocumentDescriptor:
        """Parse ``format:layer1+layer2``; the layer part may be empty."""
        fmt, sep, rest = text.partition(":")
        if not fmt:
            raise ValueError(f"descriptor {text!r} has no format")
        layers = [x for x in rest.split("+") if x] if sep else []
        for kind in layers:
            check_layer(kind)
        return cls(check_format(fmt), frozenset(layers))


def make_initial(content: str, format: str = PLAIN) -> Document:
    """Build an initial document: the given content, no annotations."""
    check_format(format)
    if format not in INITIAL_FORMATS:
        raise UnsupportedInitialFormat(
            f"initial documents must be one of {sorted(INITIAL_FORMATS)}, got {format!r}"
        )
    return Document(content, format, EMPTY)


def descriptor_of(doc: Document) -> DocumentDescriptor:
    return DocumentDescriptor(doc.format, frozenset(doc.annotations))


def documents_equal(a: Document, b: Document) -> bool:
    return (
        a.content == b.content
        and a.format == b.format
        and a.annotations == b.annotations
    )


def all_descriptors(formats=None, layers=None):
    """Every (format, layer subset) pair over the given universes."""
    formats = list(FORMATS if formats is None else formats)
    layers = sorted(LAYERS if layers is None else layers)
    subsets = [
        frozenset(c) for r in range(len(layers) + 1) for c in combinations(layers, r)
    ]
    return [DocumentDescriptor(f, s) for f in formats for s in subsets]
