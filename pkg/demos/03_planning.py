"""
Planning pipelines
==================

Given where a document is and where it should end up, the planner finds the
shortest chain of registered morphisms, then runs it.
"""

from catpipe import example_registry
from catpipe.document import DocumentDescriptor
from catpipe.errors import NoPlan
from catpipe.planner import PlanRequest, plan, run

reg = example_registry()
D = DocumentDescriptor.parse

# a TCF document needs tokens, but neither tokenizer reads TCF
pipeline = plan(reg, PlanRequest(D("tcf:"), D("tcf:token")))
print(pipeline)

out = run(reg, pipeline, reg.corpus["lysa_tcf"])
print(out.descriptor, repr(out.content))

# there is no way back to plain text once tokens exist
try:
    plan(reg, PlanRequest(D("tab:token"), D("plain:")))
except NoPlan as e:
    print(e)
    print(sorted(str(d) for d in e.frontier))
