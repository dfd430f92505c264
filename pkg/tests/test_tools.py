import pytest
from hypothesis import given

from catpipe.converters import convert
from catpipe.document import Annotation, Document, DocumentDescriptor, Span, make_initial
from catpipe.errors import SignatureViolation
from catpipe.morphism import apply
from catpipe.tools import (
    T_L1,
    T_L2,
    T_L3,
    T_P1,
    lemma_of,
    lemmatize,
    pos_of,
    pos_tag,
    tokenize_o,
    tokenize_p,
    tokenize_text,
)

from conftest import LYSA, texts


def _values(doc, layer):
    return [a.value for a in doc.layer(layer)]


def test_tokenize_o_lysa():
    out = tokenize_o(make_initial(LYSA, "plain"))
    assert out.format == "kaf" and out.content == LYSA
    toks = out.layer("token")
    assert [t.target_id for t in toks] == ["w1", "w2", "w3"]
    assert [(t.span.offset, t.span.length) for t in toks] == [(0, 4), (5, 5), (11, 7)]


def test_tokenize_p_rewrites_content():
    out = tokenize_p(make_initial(LYSA, "plain"))
    assert out.descriptor == DocumentDescriptor("tab", {"token"})
    assert out.content == "Lysa\nlikes\noranges"
    assert [(t.span.offset, t.span.length) for t in out.layer("token")] == [(0, 4), (5, 5), (11, 7)]


def test_punctuation_split():
    assert [s for s, _ in tokenize_text('"Hi," she said.')] == ['"', "Hi", ",", '"', "she", "said", "."]
    assert tokenize_text("a ...")[1:] == [(".", Span(2, 1)), (".", Span(3, 1)), (".", Span(4, 1))]


@pytest.mark.parametrize("text", ["", "   ", "\n\t"])
def test_blank_documents(text):
    assert tokenize_o(make_initial(text, "plain")).descriptor == DocumentDescriptor("kaf")
    assert tokenize_p(make_initial(text, "plain")).content == ""


def test_single_token():
    out = tokenize_o(make_initial("Lysa", "plain"))
    assert _values(out, "token") == ["Lysa"]


def test_pos_and_lemmas():
    doc = pos_tag(tokenize_o(make_initial(LYSA, "kaf")))
    assert _values(doc, "pos") == ["N", "V", "N"]
    for variant in ("wordlist", "sentential", "pos_based"):
        assert _values(lemmatize(doc, variant), "lemma") == ["Lysa", "like", "orange"]


@pytest.mark.parametrize(
    "word, pos, lemma",
    [("likes", "V", "like"), ("oranges", "N", "orange"), ("running", "V", "run"),
     ("stopped", "V", "stop"), ("walked", "V", "walk"), ("glass", "N", "glass"),
     ("is", "V", "be"), ("children", "N", "child"), ("as", "N", "as"), ("Dogs", "N", "Dog")],
)
def test_lemma_rules(word, pos, lemma):
    assert lemma_of(word, pos) == lemma


def test_pos_lookup():
    assert pos_of("The") == "DET"
    assert pos_of("SHE") == "PRON"
    assert pos_of("zebra") == "N"
    assert pos_of("!") == "PUNCT"


def test_pos_based_needs_pos():
    with pytest.raises(SignatureViolation):
        lemmatize(tokenize_o(make_initial(LYSA, "kaf")), "pos_based")


def test_pos_based_needs_pos_for_every_token():
    doc = tokenize_o(make_initial(LYSA, "kaf"))
    partial = Document(doc.content, "kaf", doc.annotations.with_layer("pos", [Annotation("pos", "w1", "N")]))
    with pytest.raises(SignatureViolation):
        apply(T_L3, partial)


def test_already_tagged_rejected():
    doc = pos_tag(tokenize_o(make_initial(LYSA, "kaf")))
    with pytest.raises(SignatureViolation):
        pos_tag(doc)
    with pytest.raises(SignatureViolation):
        lemmatize(lemmatize(doc), "wordlist")


def test_tools_need_tokens():
    doc = make_initial(LYSA, "kaf")
    for m in (T_P1, T_L1, T_L2, T_L3):
        with pytest.raises(SignatureViolation):
            apply(m, doc)


def test_sentential_wants_ordered_tokens():
    doc = Document("ab cd", "kaf", {"token": [
        Annotation("token", "w1", "cd", Span(3, 2)),
        Annotation("token", "w2", "ab", Span(0, 2)),
    ]})
    with pytest.raises(SignatureViolation):
        lemmatize(doc, "sentential")


def test_tools_work_in_every_word_format(corpus):
    base = tokenize_o(corpus["lysa_kaf"])
    for fmt in ("kaf", "tcf", "tab"):
        doc = convert(base, fmt) if fmt != "tcf" else convert(base, "tcf")
        out = lemmatize(pos_tag(doc), "pos_based")
        assert out.format == fmt
        assert _values(out, "lemma") == ["Lysa", "like", "orange"]


@given(texts)
def test_spans_cover_surfaces_in_order(text):
    pieces = tokenize_text(text)
    end = 0
    for surface, span in pieces:
        assert text[span.offset:span.end] == surface
        assert span.offset >= end
        end = span.end
    assert "".join(s for s, _ in pieces) == "".join(text.split())


@given(texts)
def test_lemmatizer_routes_commute(text):
    doc = tokenize_o(make_initial(text, "plain"))
    if not doc.layer("token"):
        return
    a = lemmatize(doc, "wordlist").layer("lemma")
    b = lemmatize(doc, "sentential").layer("lemma")
    c = lemmatize(pos_tag(doc), "pos_based").layer("lemma")
    assert a == b == c


def test_lemmatizer_routes_commute_on_corpus(corpus):
    for name, doc in corpus.items():
        if doc.format != "plain":
            continue
        tok = tokenize_o(doc)
        if not tok.layer("token"):
            continue
        routes = [
            apply(T_L1, tok).layer("lemma"),
            apply(T_L2, tok).layer("lemma"),
            apply(T_L3, apply(T_P1, tok)).layer("lemma"),
        ]
        assert routes[0] == routes[1] == routes[2], name
