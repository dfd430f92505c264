"""Byte-exact serialization of documents in the plain, tab, kaf and tcf formats.

Grammars (all UTF-8):

plain
    The raw content. Carries no annotations.

tab
    Header lines ``#key=value`` (``#content=`` holds the content with
    ``\\``, newline, carriage return and tab backslash-escaped), then one row
    per token: ``index<TAB>surface<TAB>pos<TAB>lemma``, 1-based index, ``_``
    for an absent field. Without a ``#content`` header the content is the
    newline-joined surfaces. Token ids are always ``w1 .. wn`` and spans are
    recovered by scanning the content left to right.

kaf
    ``<KAF><raw>CONTENT</raw><text><wf wid=".." offset=".." length="..">SURFACE</wf>...
    </text><terms><term tid="t1" wid=".." lemma=".." pos=".."/>...</terms></KAF>``
    with ``terms`` present only when a pos or lemma layer exists.

tcf
    ``<TCF><text>CONTENT</text><tokens><token ID=".." offset=".." length="..">SURFACE
    </token>...</tokens><POStags><tag tokID="..">POS</tag>...</POStags>
    <lemmas><lemma tokID="..">LEMMA</lemma>...</lemmas></TCF>``, each trailing
    section only when its layer exists.

No whitespace is emitted between elements. Only the five predefined XML
entities are written.
"""
from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from .document import KAF, PLAIN, TAB, TCF, Annotation, AnnotationSet, Document, Span
from .errors import (
    FormatMismatch,
    MalformedInput,
    SpanOutOfBounds,
    UnknownFormat,
    UnrepresentableDocument,
)

WORD_LAYERS = frozenset({"token", "pos", "lemma"})

# Which annotation layers each format can carry.
CAPABILITIES = {
    PLAIN: frozenset(),
    TAB: WORD_LAYERS,
    KAF: WORD_LAYERS,
    TCF: WORD_LAYERS,
}

EXTENSIONS = {
    ".kaf.xml": KAF,
    ".tcf.xml": TCF,
    ".tab": TAB,
    ".txt": PLAIN,
}


@dataclass(frozen=True)
class SerializedDocument:
    data: bytes
    format: str

    def text(self):
        return self.data.decode("utf-8")


def format_for_path(path) -> str:
    name = Path(path).name.lower()
    for ext, fmt in EXTENSIONS.items():
        if name.endswith(ext):
            return fmt
    raise UnknownFormat(f"cannot infer a format from file name {name!r}")


def extension_for(fmt: str) -> str:
    for ext, f in EXTENSIONS.items():
        if f == fmt:
            return ext
    raise UnknownFormat(f"no file extension for format {fmt!r}")


def serialize(doc: Document, format: str | None = None) -> SerializedDocument:
    fmt = doc.format if format is None else format
    if fmt != doc.format:
        raise FormatMismatch(
            f"document is {doc.format!r}, asked to serialize as {fmt!r}; convert it first"
        )
    try:
        writer = _WRITERS[fmt]
    except KeyError:
        raise UnknownFormat(f"no serializer for format {fmt!r}") from None
    extra = set(doc.annotations) - CAPABILITIES[fmt]
    if extra:
        raise UnrepresentableDocument(f"{fmt} cannot carry layers {sorted(extra)}")
    text = writer(doc)
    try:
        data = text.encode("utf-8")
    except UnicodeEncodeError as e:
        raise UnrepresentableDocument(f"not encodable as UTF-8: {e}") from None
    return SerializedDocument(data, fmt)


def parse(source: SerializedDocument | bytes, format: str | None = None) -> Document:
    if isinstance(source, SerializedDocument):
        data, fmt = source.data, source.format if format is None else format
    else:
        data, fmt = source, format
    try:
        reader = _READERS[fmt]
    except KeyError:
        raise UnknownFormat(f"no parser for format {fmt!r}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise MalformedInput(f"input is not valid UTF-8: {e}") from None
    return reader(text, data)


def read_document(path, format: str | None = None) -> Document:
    fmt = format or format_for_path(path)
    return parse(SerializedDocument(Path(path).read_bytes(), fmt))


def write_document(doc: Document, path) -> None:
    Path(path).write_bytes(serialize(doc).data)


# -- shared word-layer checks ------------------------------------------------

def _word_rows(doc: Document, fmt: str):
    """Tokens with their pos and lemma values aligned, or raise.

    pos and lemma layers must annotate exactly the token ids, in token order,
    and carry no spans: that is all the row- and term-based grammars can say.
    """
    tokens = doc.layer("token")
    ids = [t.target_id for t in tokens]
    for t in tokens:
        if t.span is None:
            raise UnrepresentableDocument(f"{fmt}: token {t.target_id!r} has no span")
    columns = {}
    for kind in ("pos", "lemma"):
        layer = doc.layer(kind)
        if not layer:
            continue
        if [a.target_id for a in layer] != ids:
            raise UnrepresentableDocument(
                f"{fmt}: {kind} layer must annotate every token, in token order"
            )
        if any(a.span is not None for a in layer):
            raise UnrepresentableDocument(f"{fmt}: {kind} annotations cannot carry spans")
        columns[kind] = [a.value for a in layer]
    return tokens, columns.get("pos"), columns.get("lemma")


def _build(content, tokens, pos=None, lemma=None, fmt=""):
    """Assemble a Document from parsed pieces, mapping errors to parse errors."""
    layers = {"token": tokens}
    if pos:
        layers["pos"] = [Annotation("pos", tid, v) for tid, v in pos]
    if lemma:
        layers["lemma"] = [Annotation("lemma", tid, v) for tid, v in lemma]
    try:
        annotations = AnnotationSet(layers)
    except ValueError as e:
        raise MalformedInput(f"{fmt}: {e}") from None
    return Document(content, fmt, annotations)


# -- plain -------------------------------------------------------------------

def _write_plain(doc):
    return doc.content


def _read_plain(text, data):
    return Document(text, PLAIN)


# -- tab ---------------------------------------------------------------------

_TAB_ESCAPES = {"\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_TAB_UNESCAPES = {"\\": "\\", "n": "\n", "r": "\r", "t": "\t"}
_TAB_FORBIDDEN = re.compile(r"[\t\n\r]")


def _tab_escape(s):
    return "".join(_TAB_ESCAPES.get(ch, ch) for ch in s)


def _tab_unescape(s):
    out = []
    it = iter(s)
    for ch in it:
        if ch != "\\":
            out.append(ch)
            continue
        nxt = next(it, None)
        if nxt not in _TAB_UNESCAPES:
            raise MalformedInput(f"tab: bad escape sequence \\{nxt or ''} in header")
        out.append(_TAB_UNESCAPES[nxt])
    return "".join(out)


def sequential_spans(content, surfaces):
    """Locate each surface in content, scanning left to right.

    Returns None when some surface cannot be found after its predecessor.
    """
    spans = []
    pos = 0
    for s in surfaces:
        i = content.find(s, pos)
        if i < 0 or not s:
            return None
        spans.append(Span(i, len(s)))
        pos = i + len(s)
    return spans


def _write_tab(doc):
    tokens, pos, lemma = _word_rows(doc, TAB)
    ids = [t.target_id for t in tokens]
    if ids != [f"w{i}" for i in range(1, len(tokens) + 1)]:
        raise UnrepresentableDocument("tab: token ids must be w1..wn in order")
    surfaces = [t.value for t in tokens]
    for value in surfaces + (pos or []) + (lemma or []):
        if not value or _TAB_FORBIDDEN.search(value):
            raise UnrepresentableDocument(f"tab: field {value!r} is empty or holds tab/newline")
    for value in (pos or []) + (lemma or []):
        if value == "_":
            raise UnrepresentableDocument("tab: '_' is reserved for absent fields")
    if sequential_spans(doc.content, surfaces) != [t.span for t in tokens]:
        raise UnrepresentableDocument(
            "tab: token spans are not recoverable by scanning the content"
        )
    lines = [f"#content={_tab_escape(doc.content)}"]
    for i, surface in enumerate(surfaces):
        p = pos[i] if pos else "_"
        l = lemma[i] if lemma else "_"
        lines.append(f"{i + 1}\t{surface}\t{p}\t{l}")
    return "\n".join(lines) + "\n"


def _read_tab(text, data):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    headers = {}
    rows = []
    for n, line in enumerate(lines, 1):
        line = line[:-1] if line.endswith("\r") else line
        if line.startswith("#"):
            if rows:
                raise MalformedInput(f"tab line {n}: header after token rows")
            key, sep, value = line[1:].partition("=")
            if not sep or not key:
                raise MalformedInput(f"tab line {n}: header must be #key=value")
            headers[key] = value
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise MalformedInput(f"tab line {n}: expected 4 tab-separated fields")
        index, surface, pos, lemma = fields
        if index != str(len(rows) + 1):
            raise MalformedInput(f"tab line {n}: expected index {len(rows) + 1}, got {index!r}")
        if not surface:
            raise MalformedInput(f"tab line {n}: empty surface")
        rows.append((surface, pos, lemma))

    surfaces = [r[0] for r in rows]
    if "content" in headers:
        content = _tab_unescape(headers["content"])
    else:
        content = "\n".join(surfaces)
    spans = sequential_spans(content, surfaces)
    if spans is None:
        raise MalformedInput("tab: token surfaces do not occur in the #content header")
    ids = [f"w{i}" for i in range(1, len(rows) + 1)]
    tokens = [Annotation("token", tid, s, sp) for tid, s, sp in zip(ids, surfaces, spans)]
    columns = []
    for col, kind in ((1, "pos"), (2, "lemma")):
        present = [r[col] != "_" for r in rows]
        if any(present) and not all(present):
            raise MalformedInput(f"tab: {kind} column is only partially filled")
        columns.append([(tid, r[col]) for tid, r in zip(ids, rows)] if all(present) and rows else None)
    return _build(content, tokens, columns[0], columns[1], TAB)


# -- XML helpers ---------------------------------------------------------------

_XML_ILLEGAL = re.compile("[^\t\n\x20-\ud7ff\ue000-\ufffd\U00010000-\U0010ffff]")


def _esc(s, attr=False):
    if _XML_ILLEGAL.search(s):
        raise UnrepresentableDocument(f"XML cannot carry {s!r} verbatim")
    if attr and ("\t" in s or "\n" in s):
        raise UnrepresentableDocument(f"XML attribute cannot carry {s!r} verbatim")
    return (
        s.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
        .replace("'", "&apos;")
    )


def _parse_xml(data, fmt):
    if b"<!DOCTYPE" in data or b"<!ENTITY" in data:
        raise MalformedInput(f"{fmt}: DTDs are not allowed")
    try:
        return ET.fromstring(data)
    except ET.ParseError as e:
        raise MalformedInput(f"{fmt}: {e}") from None


def _no_text(el, fmt):
    if el.text and el.text.strip():
        raise MalformedInput(f"{fmt}: stray text inside <{el.tag}>")
    for child in el:
        if child.tail and child.tail.strip():
            raise MalformedInput(f"{fmt}: stray text after <{child.tag}>")


def _leaf(el, fmt):
    if len(el):
        raise MalformedInput(f"{fmt}: <{el.tag}> must not have child elements")
    return el.text or ""


def _attrs(el, names, fmt):
    if set(el.attrib) != set(names):
        raise MalformedInput(
            f"{fmt}: <{el.tag}> needs exactly attributes {sorted(names)}, got {sorted(el.attrib)}"
        )
    return [el.attrib[n] for n in names]


def _int(value, what, fmt):
    if not value.isdigit() or not value.isascii():
        raise MalformedInput(f"{fmt}: {what} {value!r} is not a non-negative integer")
    return int(value)


def _token(el, id_attr, fmt):
    tid, offset, length = _attrs(el, (id_attr, "offset", "length"), fmt)
    offset = _int(offset, "offset", fmt)
    length = _int(length, "length", fmt)
    try:
        span = Span(offset, length)
    except SpanOutOfBounds as e:
        raise MalformedInput(f"{fmt}: token {tid!r}: {e}") from None
    return Annotation("token", tid, _leaf(el, fmt), span)


def _sections(root, order, required, fmt):
    """Map tag -> element, checking the fixed child order of the root."""
    _no_text(root, fmt)
    if root.attrib:
        raise MalformedInput(f"{fmt}: <{root.tag}> takes no attributes")
    found = {}
    pos = 0
    for child in root:
        try:
            idx = order.index(child.tag, pos)
        except ValueError:
            raise MalformedInput(f"{fmt}: unexpected or misplaced element <{child.tag}>") from None
        found[child.tag] = child
        pos = idx + 1
    for tag in required:
        if tag not in found:
            raise MalformedInput(f"{fmt}: missing <{tag}>")
    return found


def _children(el, tag, fmt):
    _no_text(el, fmt)
    if el.attrib:
        raise MalformedInput(f"{fmt}: <{el.tag}> takes no attributes")
    for child in el:
        if child.tag != tag:
            raise MalformedInput(f"{fmt}: unexpected element <{child.tag}> in <{el.tag}>")
    return list(el)


# -- kaf -----------------------------------------------------------------------

def _write_kaf(doc):
    tokens, pos, lemma = _word_rows(doc, KAF)
    out = [f"<KAF><raw>{_esc(doc.content)}</raw><text>"]
    for t in tokens:
        out.append(
            f'<wf wid="{_esc(t.target_id, True)}" offset="{t.span.offset}" '
            f'length="{t.span.length}">{_esc(t.value)}</wf>'
        )
    out.append("</text>")
    if pos or lemma:
        out.append("<terms>")
        for i, t in enumerate(tokens):
            term = f'<term tid="t{i + 1}" wid="{_esc(t.target_id, True)}"'
            if lemma:
                term += f' lemma="{_esc(lemma[i], True)}"'
            if pos:
                term += f' pos="{_esc(pos[i], True)}"'
            out.append(term + "/>")
        out.append("</terms>")
    out.append("</KAF>")
    return "".join(out)


def _read_kaf(text, data):
    root = _parse_xml(data, KAF)
    if root.tag != "KAF":
        raise MalformedInput(f"kaf: root element must be <KAF>, got <{root.tag}>")
    parts = _sections(root, ["raw", "text", "terms"], ["raw", "text"], KAF)
    if parts["raw"].attrib:
        raise MalformedInput("kaf: <raw> takes no attributes")
    content = _leaf(parts["raw"], KAF)
    tokens = [_token(wf, "wid", KAF) for wf in _children(parts["text"], "wf", KAF)]
    pos, lemma = [], []
    if "terms" in parts:
        known = {t.target_id for t in tokens}
        terms = _children(parts["terms"], "term", KAF)
        for term in terms:
            _leaf(term, KAF)
            extra = set(term.attrib) - {"tid", "wid", "lemma", "pos"}
            if extra or "tid" not in term.attrib or "wid" not in term.attrib:
                raise MalformedInput(f"kaf: bad <term> attributes {sorted(term.attrib)}")
            wid = term.attrib["wid"]
            if wid not in known:
                raise MalformedInput(f"kaf: term refers to unknown word {wid!r}")
            if "pos" in term.attrib:
                pos.append((wid, term.attrib["pos"]))
            if "lemma" in term.attrib:
                lemma.append((wid, term.attrib["lemma"]))
        for kind, col in (("pos", pos), ("lemma", lemma)):
            if col and len(col) != len(terms):
                raise MalformedInput(f"kaf: {kind} given on only some terms")
    return _build(content, tokens, pos, lemma, KAF)


# -- tcf -----------------------------------------------------------------------

def _write_tcf(doc):
    tokens, pos, lemma = _word_rows(doc, TCF)
    out = [f"<TCF><text>{_esc(doc.content)}</text>"]
    if tokens:
        out.append("<tokens>")
        for t in tokens:
            out.append(
                f'<token ID="{_esc(t.target_id, True)}" offset="{t.span.offset}" '
                f'length="{t.span.length}">{_esc(t.value)}</token>'
            )
        out.append("</tokens>")
    if pos:
        out.append("<POStags>")
        out.extend(
            f'<tag tokID="{_esc(t.target_id, True)}">{_esc(p)}</tag>' for t, p in zip(tokens, pos)
        )
        out.append("</POStags>")
    if lemma:
        out.append("<lemmas>")
        out.extend(
            f'<lemma tokID="{_esc(t.target_id, True)}">{_esc(l)}</lemma>'
            for t, l in zip(tokens, lemma)
        )
        out.append("</lemmas>")
    out.append("</TCF>")
    return "".join(out)


def _read_tcf(text, data):
    root = _parse_xml(data, TCF)
    if root.tag != "TCF":
        raise MalformedInput(f"tcf: root element must be <TCF>, got <{root.tag}>")
    parts = _sections(root, ["text", "tokens", "POStags", "lemmas"], ["text"], TCF)
    if parts["text"].attrib:
        raise MalformedInput("tcf: <text> takes no attributes")
    content = _leaf(parts["text"], TCF)
    tokens = []
    if "tokens" in parts:
        tokens = [_token(el, "ID", TCF) for el in _children(parts["tokens"], "token", TCF)]
    known = {t.target_id for t in tokens}

    def column(section, tag):
        if section not in parts:
            return []
        col = []
        for el in _children(parts[section], tag, TCF):
            (tid,) = _attrs(el, ("tokID",), TCF)
            if tid not in known:
                raise MalformedInput(f"tcf: <{tag}> refers to unknown token {tid!r}")
            col.append((tid, _leaf(el, TCF)))
        return col

    return _build(content, tokens, column("POStags", "tag"), column("lemmas", "lemma"), TCF)


_WRITERS = {PLAIN: _write_plain, TAB: _write_tab, KAF: _write_kaf, TCF: _write_tcf}
_READERS = {PLAIN: _read_plain, TAB: _read_tab, KAF: _read_kaf, TCF: _read_tcf}
