"""
Objects and hom-sets
====================

Listing what the registered morphisms can reach, and which morphisms connect
each pair of descriptors.
"""

from catpipe import example_registry
from catpipe.registry import ObjectMode, enumerate_objects, flat_hom, hom_sets

reg = example_registry()

print(sorted(flat_hom(reg)))

# keep to documents with at most a token layer
for h in hom_sets(reg):
    if h.target.layers <= {"token"}:
        print(h.source, "->", h.target, list(h.morphisms), [k.value for k in h.kinds])

# objects built step by step: initial documents, converted inputs, tool outputs
for obj in enumerate_objects(reg, ObjectMode.AS_PAPER):
    print(obj)

# everything reachable from plain, KAF and TCF documents
print([o.label for o in enumerate_objects(reg, ObjectMode.REACHABLE)])
