"""
Morphisms and their laws
========================

Tools and converters are morphisms. Composition checks signatures up front,
and the registry can check identity, associativity and kind closure on a
small corpus.
"""

from catpipe import example_registry
from catpipe.document import Document
from catpipe.errors import IncomposableSignatures
from catpipe.morphism import Kind, Morphism, apply, compose
from catpipe.registry import verify_axioms

reg = example_registry()
doc = reg.corpus["lysa_tcf"]

# t_o only reads plain or KAF, so put c_3 (tcf -> plain) in front of it
wrapped = compose(reg["t_o"], reg["c_3"])
print(wrapped, "->", apply(wrapped, doc).descriptor)

# c_6 reads tab, but t_o always writes KAF
try:
    compose(reg["c_6"], reg["t_o"])
except IncomposableSignatures as e:
    print("refused:", e)

# going to KAF and back is the identity on TCF documents
there_and_back = compose(reg["c_4"], reg["c_2"])
print(there_and_back.kind, apply(there_and_back, doc) == doc)

print(verify_axioms(reg).format())

# a converter that touches the content breaks the laws, and gets named
sig = reg["c_4"].signature
shouty = Morphism("c_shout", Kind.CONVERTER, sig, lambda d: Document(d.content.upper(), "tcf", d.annotations))
report = verify_axioms(reg.with_morphism(shouty))
print(report.ok)
print(report.counterexamples[0])
