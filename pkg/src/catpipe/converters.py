"""The format converters of the wrapped-tokenizer example.

Input side: ``c_0 = id_kaf``, ``c_1 = id_plain``, ``c_2 = tcf2kaf``,
``c_3 = tcf2plain``. Output side: ``c_4 = kaf2tcf``, ``c_5 = kaf2tab``,
``c_6 = tab2kaf``, ``c_7 = tab2tcf``, ``c_8 = id_tab``, ``c_9 = id_kaf``.
``c_0`` and ``c_9`` are the same morphism and are stored once.
"""
from __future__ import annotations

import functools

from .document import KAF, PLAIN, TAB, TCF, Document
from .errors import NoSuchConverter
from .formats import CAPABILITIES
from .morphism import Kind, Morphism, Signature, apply, identity

ALIASES = {"c_0": "id_kaf", "c_1": "id_plain", "c_8": "id_tab", "c_9": "id_kaf"}


def format_converter(id: str, source: str, target: str) -> Morphism:
    """A converter relabelling ``source`` documents as ``target``.

    It only accepts documents whose layers the target format can carry, so
    nothing is ever silently dropped.
    """

    def transform(doc):
        return Document(doc.content, target, doc.annotations)

    sig = Signature(
        formats={source},
        allowed=CAPABILITIES.get(target),
        target_format=target,
    )
    return Morphism(id, Kind.CONVERTER, sig, transform)


def build_converters(include_kaf2plain: bool = False) -> list[Morphism]:
    converters = [
        identity(PLAIN),
        identity(KAF),
        identity(TAB),
        format_converter("c_2", TCF, KAF),
        format_converter("c_3", TCF, PLAIN),
        format_converter("c_4", KAF, TCF),
        format_converter("c_5", KAF, TAB),
        format_converter("c_6", TAB, KAF),
        format_converter("c_7", TAB, TCF),
    ]
    if include_kaf2plain:
        converters.append(format_converter("c_kaf2plain", KAF, PLAIN))
    return converters


@functools.lru_cache(maxsize=None)
def _default_converters():
    return tuple(build_converters())


def convert(doc: Document, target: str, converters=None) -> Document:
    """Change only the format of ``doc``, using a single registered converter."""
    if target == doc.format:
        return apply(identity(doc.descriptor), doc)
    if converters is None:
        converters = _default_converters()
    d = doc.descriptor
    for c in converters:
        if c.kind is Kind.CONVERTER and c.signature.target_format == target and c.accepts(d):
            return apply(c, doc)
    raise NoSuchConverter(f"{doc.format}2{target}", d, detail="no registered converter")
