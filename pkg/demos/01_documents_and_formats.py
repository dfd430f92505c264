"""
Documents and formats
=====================

A document is content, a format and a set of annotation layers. The same
document can be written as plain text, a tab-separated word list, KAF or TCF.
"""

from catpipe import make_initial
from catpipe.converters import convert
from catpipe.formats import parse, serialize
from catpipe.tools import lemmatize, pos_tag, tokenize_o

# a fresh document has no layers yet
doc = make_initial("Lysa likes oranges", "plain")
print(doc.descriptor)

# tokenizing moves it to KAF and adds a token layer with offsets
doc = tokenize_o(doc)
for t in doc.layer("token"):
    print(t.target_id, t.value, t.span.offset, t.span.length)

# tag and lemmatize, then look at each serialization
doc = lemmatize(pos_tag(doc), "pos_based")
print(doc.descriptor)
for fmt in ("kaf", "tcf", "tab"):
    data = serialize(convert(doc, fmt)).data
    print(f"--- {fmt}")
    print(data.decode())

# reading the bytes back gives the same document
again = parse(serialize(convert(doc, "tcf")))
print(again == convert(doc, "tcf"))
