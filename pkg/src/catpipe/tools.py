"""Toy NLP tools: two tokenizers, a POS tagger and three lemmatizers.

``t_o`` reads plain or KAF and writes KAF, keeping the content. ``t_p`` reads
plain text and writes a tabbed word list, discarding the original content.
``t_p1`` tags parts of speech from a fixed lexicon. ``t_l1``, ``t_l2`` and
``t_l3`` assign lemmas from a word list, sentence by sentence, and from POS
tags respectively; on the same text all three agree.
"""
from __future__ import annotations

import enum
import functools
import re
from importlib import resources

from .document import KAF, PLAIN, TAB, TCF, Annotation, Document, Span
from .errors import SignatureViolation
from .morphism import Kind, Morphism, Signature, apply

PUNCTUATION = frozenset(".,;:!?\"'()")
SENTENCE_END = frozenset(".!?")
DEFAULT_POS = "N"

# Formats able to carry word-level layers.
WORD_FORMATS = frozenset({TAB, KAF, TCF})


class LemmatizerVariant(str, enum.Enum):
    WORDLIST = "wordlist"
    SENTENTIAL = "sentential"
    POS_BASED = "pos_based"


# -- data --------------------------------------------------------------------

def _data_lines(name):
    text = resources.files("catpipe").joinpath("data", name).read_text(encoding="utf-8")
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ValueError(f"{name}: expected surface<TAB>pos<TAB>lemma, got {line!r}")
        yield fields


@functools.lru_cache(maxsize=None)
def lexicon():
    """surface -> (pos, lemma or None)."""
    return {s: (p, None if l == "_" else l) for s, p, l in _data_lines("lexicon.tsv")}


@functools.lru_cache(maxsize=None)
def suffix_rules():
    """pos -> [(suffix, replacement)], longest suffix first."""
    rules = {}
    for suffix, pos, repl in _data_lines("suffix_rules.tsv"):
        rules.setdefault(pos, []).append((suffix[1:], repl[1:]))
    for pos in rules:
        rules[pos].sort(key=lambda r: -len(r[0]))
    return rules


def _entry(surface):
    lex = lexicon()
    return lex.get(surface) or lex.get(surface.lower())


def pos_of(surface):
    entry = _entry(surface)
    return entry[0] if entry else DEFAULT_POS


def lemma_of(surface, pos):
    entry = _entry(surface)
    if entry and entry[1] is not None:
        return entry[1]
    for suffix, repl in suffix_rules().get(pos, ()):
        if not surface.endswith(suffix):
            continue
        stem = surface[: len(surface) - len(suffix)]
        if len(stem) < 2 or (suffix == "s" and stem.endswith("s")):
            continue
        if pos == "V" and suffix in ("ed", "ing") and _doubled(stem):
            stem = stem[:-1]
        return stem + repl
    return surface


def _doubled(stem):
    return len(stem) > 2 and stem[-1] == stem[-2] and stem[-1].lower() in "bdfgkmnprtv"


# -- tokenization ---------------------------------------------------------------

def tokenize_text(text):
    """Surface strings and spans: whitespace split, edge punctuation peeled off."""
    out = []
    for m in re.finditer(r"\S+", text):
        chunk, start = m.group(), m.start()
        lead = 0
        while lead < len(chunk) and chunk[lead] in PUNCTUATION:
            lead += 1
        trail = len(chunk)
        while trail > lead and chunk[trail - 1] in PUNCTUATION:
            trail -= 1
        for i in range(lead):
            out.append((chunk[i], Span(start + i, 1)))
        if trail > lead:
            out.append((chunk[lead:trail], Span(start + lead, trail - lead)))
        for i in range(trail, len(chunk)):
            out.append((chunk[i], Span(start + i, 1)))
    return out


def _token_layer(pieces):
    return tuple(
        Annotation("token", f"w{i}", surface, span) for i, (surface, span) in enumerate(pieces, 1)
    )


def _tokenize_o(doc):
    tokens = _token_layer(tokenize_text(doc.content))
    return Document(doc.content, KAF, doc.annotations.with_layer("token", tokens))


def _tokenize_p(doc):
    surfaces = [s for s, _ in tokenize_text(doc.content)]
    content = "\n".join(surfaces)
    pieces = []
    pos = 0
    for s in surfaces:
        pieces.append((s, Span(pos, len(s))))
        pos += len(s) + 1
    return Document(content, TAB, doc.annotations.with_layer("token", _token_layer(pieces)))


# -- tagging and lemmatizing -------------------------------------------------------

def _pos_tag(doc):
    tags = tuple(Annotation("pos", t.target_id, pos_of(t.value)) for t in doc.layer("token"))
    return Document(doc.content, doc.format, doc.annotations.with_layer("pos", tags))


def _lemma_layer(pairs):
    return tuple(Annotation("lemma", tid, lemma) for tid, lemma in pairs)


def _with_lemmas(doc, pairs):
    return Document(doc.content, doc.format, doc.annotations.with_layer("lemma", _lemma_layer(pairs)))


def _lemmatize_wordlist(doc):
    # each word on its own, no context
    return _with_lemmas(doc, [(t.target_id, lemma_of(t.value, pos_of(t.value))) for t in doc.layer("token")])


def sentences(tokens):
    """Group tokens into sentences closed by . ! or ?."""
    current = []
    for t in tokens:
        current.append(t)
        if t.value in SENTENCE_END:
            yield current
            current = []
    if current:
        yield current


def _lemmatize_sentential(doc):
    tokens = doc.layer("token")
    offsets = [t.span.offset for t in tokens if t.span is not None]
    if len(offsets) != len(tokens) or offsets != sorted(set(offsets)):
        raise SignatureViolation("t_l2", doc.descriptor, detail="tokens are not in sentence order")
    pairs = []
    for sentence in sentences(tokens):
        for t in sentence:
            pairs.append((t.target_id, lemma_of(t.value, pos_of(t.value))))
    return _with_lemmas(doc, pairs)


def _lemmatize_pos_based(doc):
    tags = {a.target_id: a.value for a in doc.layer("pos")}
    pairs = []
    for t in doc.layer("token"):
        if t.target_id not in tags:
            raise SignatureViolation("t_l3", doc.descriptor, detail=f"token {t.target_id} has no pos")
        pairs.append((t.target_id, lemma_of(t.value, tags[t.target_id])))
    return _with_lemmas(doc, pairs)


# -- morphisms -------------------------------------------------------------------

T_O = Morphism(
    "t_o",
    Kind.COMPOSITE,
    Signature(formats={PLAIN, KAF}, target_format=KAF, produced={"token"}),
    _tokenize_o,
)
T_P = Morphism(
    "t_p",
    Kind.COMPOSITE,
    Signature(formats={PLAIN}, target_format=TAB, produced={"token"}, content_preserved=False),
    _tokenize_p,
)
T_P1 = Morphism(
    "t_p1",
    Kind.TOOL,
    Signature(formats=WORD_FORMATS, required={"token"}, produced={"pos"}),
    _pos_tag,
)
LEMMATIZERS = {
    LemmatizerVariant.WORDLIST: Morphism(
        "t_l1",
        Kind.TOOL,
        Signature(formats=WORD_FORMATS, required={"token"}, produced={"lemma"}),
        _lemmatize_wordlist,
    ),
    LemmatizerVariant.SENTENTIAL: Morphism(
        "t_l2",
        Kind.TOOL,
        Signature(formats=WORD_FORMATS, required={"token"}, produced={"lemma"}),
        _lemmatize_sentential,
    ),
    LemmatizerVariant.POS_BASED: Morphism(
        "t_l3",
        Kind.TOOL,
        Signature(formats=WORD_FORMATS, required={"token", "pos"}, produced={"lemma"}),
        _lemmatize_pos_based,
    ),
}
T_L1, T_L2, T_L3 = LEMMATIZERS.values()


def tokenize_o(doc: Document) -> Document:
    return apply(T_O, doc)


def tokenize_p(doc: Document) -> Document:
    return apply(T_P, doc)


def pos_tag(doc: Document) -> Document:
    return apply(T_P1, doc)


def lemmatize(doc: Document, variant=LemmatizerVariant.WORDLIST) -> Document:
    return apply(LEMMATIZERS[LemmatizerVariant(variant)], doc)
