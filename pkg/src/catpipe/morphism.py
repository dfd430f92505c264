"""Morphisms between documents: identity, composition, classification, application.

Signatures are checked eagerly when composing; composites keep the list of
their steps and run them one after another when applied.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from .document import Document, DocumentDescriptor, all_descriptors, descriptor_of, documents_equal
from .errors import IncomposableSignatures, PostconditionViolation, SignatureViolation


class Kind(str, enum.Enum):
    IDENTITY = "identity"
    CONVERTER = "converter"
    TOOL = "tool"
    COMPOSITE = "composite"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Signature:
    """Source pattern and target description of a primitive morphism.

    A descriptor matches the source when its format is in ``formats``, it has
    every ``required`` layer, none of the ``produced`` layers (unless the
    morphism ``rewrites`` them), and, if ``allowed`` is set, no layer outside
    ``allowed``. ``target_format=None`` means the format is kept.
    """

    formats: frozenset
    required: frozenset = frozenset()
    allowed: frozenset | None = None
    target_format: str | None = None
    produced: frozenset = frozenset()
    removed: frozenset = frozenset()
    content_preserved: bool = True
    rewrites: bool = False

    def __post_init__(self):
        for name in ("formats", "required", "produced", "removed"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.allowed is not None:
            object.__setattr__(self, "allowed", frozenset(self.allowed))
        if not self.formats:
            raise ValueError("signature needs at least one source format")
        if not self.rewrites and self.required & self.produced:
            raise ValueError("required and produced layers overlap without rewrites=True")

    @property
    def parts(self):
        return (self,)

    def accepts(self, d: DocumentDescriptor, blank: bool = False) -> bool:
        if d.format not in self.formats:
            return False
        if not blank and not self.required <= d.layers:
            return False
        if self.allowed is not None and not d.layers <= self.allowed:
            return False
        return self.rewrites or not (self.produced & d.layers)

    def output(self, d: DocumentDescriptor) -> DocumentDescriptor:
        fmt = d.format if self.target_format is None else self.target_format
        return DocumentDescriptor(fmt, (d.layers - self.removed) | self.produced)

    def preserves_format(self):
        return self.target_format is None or self.formats == {self.target_format}

    def __str__(self):
        src = "|".join(sorted(self.formats))
        if self.required:
            src += "+" + "+".join(sorted(self.required))
        dst = self.target_format or "same"
        if self.produced:
            dst += " +" + "+".join(sorted(self.produced))
        if self.removed:
            dst += " -" + "-".join(sorted(self.removed))
        return f"{src} -> {dst}"


@dataclass(frozen=True)
class ChainSignature:
    """Signature of a composite: the primitive signatures in application order."""

    parts: tuple

    @classmethod
    def of(cls, *signatures):
        parts = []
        for s in signatures:
            parts.extend(s.parts)
        return cls(tuple(parts))

    @property
    def content_preserved(self):
        return all(p.content_preserved for p in self.parts)

    @property
    def formats(self):
        return frozenset(f for p in self.parts[:1] for f in p.formats)

    def accepts(self, d, blank=False):
        for p in self.parts:
            if not p.accepts(d, blank):
                return False
            d = p.output(d)
        return True

    def output(self, d):
        for p in self.parts:
            d = p.output(d)
        return d

    def __str__(self):
        return " ; ".join(f"({p})" for p in self.parts)


@dataclass(frozen=True, eq=False)
class Morphism:
    id: str
    kind: Kind
    signature: Signature | ChainSignature
    transform: Callable[[Document], Document] | None = field(default=None, repr=False)
    steps: tuple = field(default=(), repr=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.steps:
            return
        if self.transform is None:
            raise ValueError(f"{self.id}: primitive morphism needs a transform")
        sig = self.signature
        if self.kind is Kind.CONVERTER:
            if sig.produced or sig.removed or not sig.content_preserved or sig.target_format is None:
                raise ValueError(f"{self.id}: converters only change the format")
        elif self.kind is Kind.TOOL:
            if not sig.preserves_format():
                raise ValueError(f"{self.id}: tools keep the format")
        elif self.kind is Kind.IDENTITY:
            if sig.produced or sig.removed or sig.target_format is not None:
                raise ValueError(f"{self.id}: identities change nothing")

    def accepts(self, d, blank=False):
        return self.signature.accepts(d, blank)

    def output(self, d):
        return self.signature.output(d)

    def kind_at(self, d):
        """Kind of this morphism restricted to inputs of descriptor ``d``.

        A composite whose output keeps ``d``'s format acts as a tool there.
        """
        if self.kind is Kind.COMPOSITE and self.output(d).format == d.format:
            return Kind.TOOL
        return self.kind

    @property
    def primitives(self):
        return self.steps or (self,)

    def __call__(self, doc):
        return apply(self, doc)

    def __repr__(self):
        return f"Morphism({self.id!r}, {self.kind.value}, {self.signature})"


@dataclass(frozen=True)
class Pipeline:
    """Morphism ids applied left to right."""

    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        return " ".join(self.steps)


def identity(descriptor) -> Morphism:
    """The do-nothing morphism on a descriptor, or on every layer set of a format."""
    if isinstance(descriptor, str):
        sig = Signature(formats={descriptor})
        return Morphism(f"id_{descriptor}", Kind.IDENTITY, sig, _identity)
    sig = Signature(
        formats={descriptor.format},
        required=descriptor.layers,
        allowed=descriptor.layers,
    )
    return Morphism(f"id[{descriptor}]", Kind.IDENTITY, sig, _identity)


def _identity(doc):
    return doc


def classify_composite(first: Kind, second: Kind) -> Kind:
    """Kind of ``second`` after ``first``."""
    first, second = Kind(first), Kind(second)
    if first is Kind.IDENTITY:
        return second
    if second is Kind.IDENTITY:
        return first
    if first is second and first is not Kind.COMPOSITE:
        return first
    return Kind.COMPOSITE


def composable(g: Morphism, f: Morphism, universe=None) -> bool:
    for d in universe if universe is not None else all_descriptors():
        if f.accepts(d) and g.accepts(f.output(d)):
            return True
    return False


def compose(g: Morphism, f: Morphism, universe=None) -> Morphism:
    """``g`` after ``f``."""
    if not composable(g, f, universe):
        raise IncomposableSignatures(g, f)
    steps = f.primitives + g.primitives
    return Morphism(
        id="∘".join(s.id for s in reversed(steps)),
        kind=classify_composite(f.kind, g.kind),
        signature=ChainSignature.of(f.signature, g.signature),
        steps=steps,
    )


def compose_all(morphisms, universe=None) -> Morphism:
    """Fold-compose morphisms given in application order."""
    morphisms = list(morphisms)
    if not morphisms:
        raise ValueError("nothing to compose")
    result = morphisms[0]
    for m in morphisms[1:]:
        result = compose(m, result, universe)
    return result


def is_blank(doc: Document) -> bool:
    """True when the content has nothing to annotate (empty or whitespace).

    Word-level layers of a blank document are necessarily empty, hence
    absent, so a blank document counts as carrying any layer a morphism
    requires, and a morphism may leave its produced layers absent on it.
    """
    return not doc.content.strip()


def apply(m: Morphism, doc: Document) -> Document:
    d = descriptor_of(doc)
    if not m.accepts(d, blank=is_blank(doc)):
        raise SignatureViolation(m.id, d, detail=f"expects {m.signature}")
    if m.steps:
        out = doc
        for step in m.steps:
            out = apply(step, out)
    else:
        out = m.transform(doc)
    _check_result(m, doc, d, out)
    return out


def _check_result(m, doc, d, out):
    if not isinstance(out, Document):
        raise PostconditionViolation(m.id, f"returned {type(out).__name__}, not a Document")
    expected = m.output(d)
    got = descriptor_of(out)
    if is_blank(doc) and is_blank(out):
        matches = got.format == expected.format and got.layers <= expected.layers
    else:
        matches = got == expected
    if not matches:
        raise PostconditionViolation(m.id, f"produced {got}, signature promises {expected}")
    if m.signature.content_preserved and out.content != doc.content:
        raise PostconditionViolation(m.id, "content changed but signature preserves it")
    if m.kind is Kind.IDENTITY and not documents_equal(out, doc):
        raise PostconditionViolation(m.id, "identity changed its input")
    if m.kind is Kind.CONVERTER and (out.content != doc.content or out.annotations != doc.annotations):
        raise PostconditionViolation(m.id, "converter changed content or annotations")
    if m.kind is Kind.TOOL and out.format != doc.format:
        raise PostconditionViolation(m.id, "tool changed the format")
