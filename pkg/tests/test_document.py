import pytest
from hypothesis import given, strategies as st

from catpipe.document import (
    Annotation,
    AnnotationSet,
    Document,
    DocumentDescriptor,
    Span,
    descriptor_of,
    documents_equal,
    make_initial,
)
from catpipe.errors import SpanOutOfBounds, UnknownFormat, UnknownLayer, UnsupportedInitialFormat
from catpipe.tools import pos_tag, tokenize_o

from conftest import LYSA, documents, texts


def test_make_initial_lysa():
    d = make_initial(LYSA, "plain")
    assert d.content == LYSA
    assert d.format == "plain"
    assert dict(d.annotations) == {}


def test_make_initial_empty_content():
    d = make_initial("", "plain")
    assert d.content == "" and len(d.annotations) == 0


def test_make_initial_rejects_tab():
    with pytest.raises(UnsupportedInitialFormat):
        make_initial(LYSA, "tab")


def test_make_initial_rejects_unknown_format():
    with pytest.raises(UnknownFormat):
        make_initial(LYSA, "docx")


@pytest.mark.parametrize("fmt", ["plain", "kaf", "tcf"])
@given(content=texts)
def test_initial_descriptor_is_bare(fmt, content):
    assert descriptor_of(make_initial(content, fmt)) == DocumentDescriptor(fmt, frozenset())


def test_descriptors_of_tokenized_and_tagged():
    tokenized = tokenize_o(make_initial(LYSA, "kaf"))
    assert descriptor_of(tokenized) == DocumentDescriptor("kaf", {"token"})
    assert descriptor_of(pos_tag(tokenized)) == DocumentDescriptor("kaf", {"token", "pos"})


def test_documents_equal_examples():
    d = make_initial(LYSA, "plain")
    assert documents_equal(d, d)
    assert not documents_equal(d, tokenize_o(d))
    assert not documents_equal(make_initial(LYSA, "kaf"), make_initial(LYSA, "tcf"))


@given(documents(), documents(), documents())
def test_documents_equal_is_an_equivalence(a, b, c):
    assert documents_equal(a, a)
    assert documents_equal(a, b) == documents_equal(b, a)
    if documents_equal(a, b) and documents_equal(b, c):
        assert documents_equal(a, c)


@given(documents())
def test_equal_documents_rebuilt_from_parts(d):
    rebuilt = Document(d.content, d.format, {k: list(v) for k, v in d.annotations.items()})
    assert documents_equal(d, rebuilt)


def test_layer_order_matters_key_order_does_not():
    t1 = Annotation("token", "w1", "a", Span(0, 1))
    t2 = Annotation("token", "w2", "b", Span(2, 1))
    p1 = Annotation("pos", "w1", "N")
    a = Document("a b", "kaf", {"token": [t1, t2], "pos": [p1]})
    b = Document("a b", "kaf", {"pos": [p1], "token": [t1, t2]})
    c = Document("a b", "kaf", {"token": [t2, t1], "pos": [p1]})
    assert documents_equal(a, b)
    assert not documents_equal(a, c)


def test_empty_layers_are_absent():
    s = AnnotationSet({"token": [], "pos": []})
    assert len(s) == 0
    assert s == AnnotationSet()


def test_span_must_fit_content():
    with pytest.raises(SpanOutOfBounds):
        Document("abc", "kaf", {"token": [Annotation("token", "w1", "abcd", Span(0, 4))]})
    with pytest.raises(SpanOutOfBounds):
        Span(0, 0)
    with pytest.raises(SpanOutOfBounds):
        Span(-1, 2)


def test_target_ids_unique_within_layer():
    with pytest.raises(ValueError):
        AnnotationSet({"pos": [Annotation("pos", "w1", "N"), Annotation("pos", "w1", "V")]})


def test_unknown_layer_rejected():
    with pytest.raises(UnknownLayer):
        AnnotationSet({"chunk": [Annotation("chunk", "x", "NP")]})


@pytest.mark.parametrize(
    "text, expected",
    [
        ("tcf:", DocumentDescriptor("tcf")),
        ("tcf:token", DocumentDescriptor("tcf", {"token"})),
        ("kaf:token+pos", DocumentDescriptor("kaf", {"pos", "token"})),
        ("plain", DocumentDescriptor("plain")),
    ],
)
def test_descriptor_syntax(text, expected):
    d = DocumentDescriptor.parse(text)
    assert d == expected
    assert DocumentDescriptor.parse(str(d)) == d


@pytest.mark.parametrize("bad", ["", ":token", "xml:", "kaf:chunk"])
def test_descriptor_syntax_errors(bad):
    with pytest.raises(ValueError):
        DocumentDescriptor.parse(bad)


@given(documents())
def test_spans_within_bounds(d):
    for a in d.annotations.all():
        if a.span is not None:
            assert a.span.end <= len(d.content)
