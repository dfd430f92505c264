"""Documents as objects, NLP tools and format converters as morphisms."""
from .converters import build_converters, convert
from .document import (
    Annotation,
    AnnotationSet,
    Document,
    DocumentDescriptor,
    Span,
    descriptor_of,
    documents_equal,
    make_initial,
)
from .errors import *  # noqa: F401,F403
from .formats import SerializedDocument, parse, read_document, serialize, write_document
from .morphism import Kind, Morphism, Pipeline, Signature, apply, classify_composite, compose, identity
from .planner import PlanRequest, plan, run
from .registry import (
    AxiomReport,
    HomSet,
    Registry,
    enumerate_objects,
    example_registry,
    flat_hom,
    hom,
    load_manifest,
    verify_axioms,
)
from .tools import LemmatizerVariant, lemmatize, pos_tag, tokenize_o, tokenize_p

__version__ = "0.1.0"
