import pytest
from hypothesis import strategies as st

from catpipe import example_registry, make_initial
from catpipe.converters import convert
from catpipe.tools import LemmatizerVariant, lemmatize, pos_tag, tokenize_o

LYSA = "Lysa likes oranges"


@pytest.fixture(scope="session")
def reg():
    return example_registry()


@pytest.fixture(scope="session")
def corpus(reg):
    return reg.corpus


# Text with words, edge punctuation, newlines and some non-ASCII.
texts = st.text(
    alphabet=st.sampled_from(list("abcLysoreingd .,!?'\"()\n\té漢") + ["ü", "ß"]),
    max_size=40,
)


@st.composite
def documents(draw, formats=("plain", "kaf", "tcf", "tab")):
    """Documents reachable from text through tokenizing, tagging, converting."""
    content = draw(texts)
    fmt = draw(st.sampled_from(formats))
    if fmt == "plain":
        return make_initial(content, "plain")
    start = draw(st.sampled_from(["kaf", "tcf"]))
    doc = make_initial(content, start)
    if fmt == "tab" or draw(st.booleans()):
        doc = tokenize_o(convert(doc, "kaf") if start == "tcf" else doc)
        if doc.layer("token"):
            if draw(st.booleans()):
                doc = pos_tag(doc)
            if draw(st.booleans()):
                variant = LemmatizerVariant.POS_BASED if doc.layer("pos") else LemmatizerVariant.WORDLIST
                doc = lemmatize(doc, variant)
    if doc.format != fmt:
        doc = convert(doc, fmt) if (doc.format, fmt) != ("tcf", "tab") else convert(convert(doc, "kaf"), "tab")
    return doc


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
