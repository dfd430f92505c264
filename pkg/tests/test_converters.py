import pytest
from hypothesis import given

from catpipe.converters import ALIASES, build_converters, convert
from catpipe.document import documents_equal, make_initial
from catpipe.errors import NoSuchConverter, PostconditionViolation
from catpipe.morphism import Kind, apply, compose
from catpipe.tools import tokenize_o

from conftest import LYSA, documents

PROPER = {"c_2": ("tcf", "kaf"), "c_3": ("tcf", "plain"), "c_4": ("kaf", "tcf"),
          "c_5": ("kaf", "tab"), "c_6": ("tab", "kaf"), "c_7": ("tab", "tcf")}


def test_converter_set():
    conv = build_converters()
    assert len(conv) == 9
    kinds = {m.id: m.kind for m in conv}
    assert {k for k, v in kinds.items() if v is Kind.IDENTITY} == {"id_plain", "id_kaf", "id_tab"}
    assert {k for k, v in kinds.items() if v is Kind.CONVERTER} == set(PROPER)
    for m in conv:
        if m.id in PROPER:
            assert (set(m.signature.formats), m.signature.target_format) == ({PROPER[m.id][0]}, PROPER[m.id][1])


def test_kaf2plain_is_opt_in():
    assert "c_kaf2plain" not in {m.id for m in build_converters()}
    extra = {m.id: m for m in build_converters(include_kaf2plain=True)}
    assert extra["c_kaf2plain"].output(make_initial(LYSA, "kaf").descriptor).format == "plain"


def test_aliases_deduplicated():
    assert ALIASES["c_0"] == ALIASES["c_9"] == "id_kaf"
    assert ALIASES["c_1"] == "id_plain"
    assert ALIASES["c_8"] == "id_tab"


def test_no_plain_to_tab():
    with pytest.raises(NoSuchConverter):
        convert(make_initial(LYSA, "plain"), "tab")


def test_tokens_do_not_fit_in_plain(reg, corpus):
    # c_3 only accepts what plain can carry
    tokenized_tcf = convert(tokenize_o(corpus["lysa_kaf"]), "tcf")
    assert not reg["c_3"].accepts(tokenized_tcf.descriptor)


def test_same_format_is_identity(corpus):
    doc = corpus["lysa_tab_tokens"]
    assert documents_equal(convert(doc, "tab"), doc)


def test_converter_law_on_corpus(reg, corpus):
    checked = 0
    for cid in PROPER:
        c = reg[cid]
        for doc in corpus.values():
            if not c.accepts(doc.descriptor):
                continue
            out = apply(c, doc)
            assert out.content == doc.content
            assert out.annotations == doc.annotations
            assert out.format == PROPER[cid][1]
            checked += 1
    assert checked >= 4


@given(documents(formats=("kaf", "tcf", "tab")))
def test_converter_law_property(doc):
    for c in build_converters():
        if c.kind is Kind.CONVERTER and c.accepts(doc.descriptor):
            out = apply(c, doc)
            assert (out.content, out.annotations) == (doc.content, doc.annotations)


@pytest.mark.parametrize("there, back", [("c_4", "c_2"), ("c_2", "c_4"), ("c_5", "c_6")])
def test_inverse_pairs(reg, corpus, there, back):
    rt = compose(reg[back], reg[there], reg.universe())
    seen = 0
    for doc in corpus.values():
        if rt.accepts(doc.descriptor):
            assert documents_equal(apply(rt, doc), doc)
            seen += 1
    assert seen >= 1


def test_tab_route_back_to_tab(reg, corpus):
    doc = corpus["lysa_tab_tokens"]
    assert documents_equal(apply(reg["c_5"], apply(reg["c_6"], doc)), doc)
    # tab -> tcf -> kaf -> tab
    via_tcf = apply(reg["c_5"], apply(reg["c_2"], apply(reg["c_7"], doc)))
    assert documents_equal(via_tcf, doc)


def test_mutating_converter_rejected():
    from catpipe.converters import format_converter
    from catpipe.morphism import Morphism
    good = format_converter("c_x", "kaf", "tcf")
    bad = Morphism("c_x", Kind.CONVERTER, good.signature,
                   lambda d: good.transform(d).__class__(d.content.lower(), "tcf"))
    with pytest.raises(PostconditionViolation):
        apply(bad, make_initial(LYSA, "kaf"))
