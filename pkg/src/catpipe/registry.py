"""The category itself: registered morphisms, hom-sets, objects and law checks.

Manifest schema (JSON object)::

    {
      "formats": ["plain", "tab", "kaf", "tcf"],
      "layers":  ["token", "sentence", "pos", "lemma", "role"],
      "morphisms": [
        {"id": "t_o", "builtin": "t_o"},
        {"id": "wrap", "pipeline": ["c_3", "t_p", "c_7"]}
      ],
      "corpus": {"lysa_plain": "corpus/lysa.txt"}
    }

``builtin`` defaults to ``id``. A ``pipeline`` lists earlier ids in
application order. Corpus paths are relative to the manifest and their
format comes from the file extension.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import converters as _conv
from . import tools as _tools
from .document import (
    FORMATS,
    INITIAL_FORMATS,
    LAYERS,
    DocumentDescriptor,
    all_descriptors,
    descriptor_of,
    documents_equal,
    register_format,
    register_layer,
)
from .errors import (
    CatpipeError,
    DuplicateId,
    EmptyCorpus,
    IncomposableSignatures,
    ManifestParseError,
    UnknownBuiltin,
    UnknownMorphism,
)
from .formats import read_document
from .morphism import Kind, Morphism, apply, is_blank, classify_composite, compose, compose_all, identity

# -- builtins ------------------------------------------------------------------

BUILTINS: dict = {}


def register_builtin(name):
    """Decorator registering a zero-argument factory returning a Morphism."""

    def deco(factory):
        if name in BUILTINS:
            raise DuplicateId(f"builtin {name!r} already registered")
        BUILTINS[name] = factory
        return factory

    return deco


def _install_defaults():
    for m in _conv.build_converters(include_kaf2plain=True):
        BUILTINS[m.id] = (lambda m=m: m)
    BUILTINS["id_tcf"] = lambda: identity("tcf")
    for alias, target in _conv.ALIASES.items():
        BUILTINS[alias] = BUILTINS[target]
    for m in (_tools.T_O, _tools.T_P, _tools.T_P1, _tools.T_L1, _tools.T_L2, _tools.T_L3):
        BUILTINS[m.id] = (lambda m=m: m)


_install_defaults()


def builtin(name) -> Morphism:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise UnknownBuiltin(f"unknown builtin morphism {name!r}") from None


# -- registry ------------------------------------------------------------------

@dataclass(frozen=True)
class Registry:
    morphisms: dict
    formats: tuple
    layers: tuple
    corpus: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "morphisms", dict(self.morphisms))
        object.__setattr__(self, "corpus", dict(self.corpus))
        for m in self.morphisms.values():
            for p in m.signature.parts:
                for f in p.formats | ({p.target_format} - {None}):
                    if f not in self.formats:
                        raise ManifestParseError(f"{m.id} uses unregistered format {f!r}")
                for kind in p.required | p.produced | p.removed:
                    if kind not in self.layers:
                        raise ManifestParseError(f"{m.id} uses unregistered layer {kind!r}")

    @classmethod
    def build(cls, morphisms, formats=None, layers=None, corpus=None):
        table = {}
        for m in morphisms:
            if m.id in table:
                raise DuplicateId(f"duplicate morphism id {m.id!r}")
            table[m.id] = m
        return cls(table, tuple(formats or FORMATS), tuple(layers or LAYERS), corpus or {})

    def __getitem__(self, id):
        try:
            return self.morphisms[id]
        except KeyError:
            raise UnknownMorphism(f"no morphism {id!r} in registry") from None

    def __contains__(self, id):
        return id in self.morphisms

    def __iter__(self):
        return iter(self.morphisms.values())

    def __len__(self):
        return len(self.morphisms)

    @property
    def ids(self):
        return list(self.morphisms)

    def universe(self):
        return all_descriptors(self.formats, self.layers)

    def restrict(self, ids):
        keep = set(ids)
        return Registry(
            {k: m for k, m in self.morphisms.items() if k in keep},
            self.formats,
            self.layers,
            self.corpus,
        )

    def with_morphism(self, m):
        if m.id in self.morphisms:
            raise DuplicateId(f"duplicate morphism id {m.id!r}")
        return Registry({**self.morphisms, m.id: m}, self.formats, self.layers, self.corpus)

    def with_corpus(self, corpus):
        return Registry(self.morphisms, self.formats, self.layers, corpus)

    def compose(self, g, f):
        return compose(g, f, self.universe())


def load_manifest(path) -> Registry:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ManifestParseError(f"{path}: {e}") from None
    return registry_from_manifest(data, path.parent)


def registry_from_manifest(data, base=Path(".")) -> Registry:
    if not isinstance(data, dict):
        raise ManifestParseError("manifest must be a JSON object")
    unknown = set(data) - {"formats", "layers", "morphisms", "corpus"}
    if unknown:
        raise ManifestParseError(f"unknown manifest keys {sorted(unknown)}")
    formats = _string_list(data, "formats")
    layers = _string_list(data, "layers")
    for f in formats:
        register_format(f)
    for kind in layers:
        register_layer(kind)

    entries = data.get("morphisms", [])
    if not isinstance(entries, list):
        raise ManifestParseError("'morphisms' must be a list")
    table = {}
    universe = all_descriptors(formats, layers)
    for entry in entries:
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str) or not entry["id"]:
            raise ManifestParseError(f"morphism entry needs a string 'id': {entry!r}")
        mid = entry["id"]
        if mid in table:
            raise DuplicateId(f"duplicate morphism id {mid!r}")
        if set(entry) - {"id", "builtin", "pipeline"} or ("builtin" in entry and "pipeline" in entry):
            raise ManifestParseError(f"{mid}: use exactly one of 'builtin' or 'pipeline'")
        if "pipeline" in entry:
            steps = entry["pipeline"]
            if not isinstance(steps, list) or not steps or not all(isinstance(s, str) for s in steps):
                raise ManifestParseError(f"{mid}: 'pipeline' must be a non-empty list of ids")
            missing = [s for s in steps if s not in table]
            if missing:
                raise ManifestParseError(f"{mid}: pipeline refers to undefined ids {missing}")
            try:
                m = compose_all([table[s] for s in steps], universe)
            except IncomposableSignatures as e:
                raise ManifestParseError(f"{mid}: {e}") from None
            m = Morphism(mid, m.kind, m.signature, m.transform, m.steps)
        else:
            m = builtin(entry.get("builtin", mid))
            if m.id != mid:
                m = Morphism(mid, m.kind, m.signature, m.transform, m.steps)
        table[mid] = m

    corpus_spec = data.get("corpus", {})
    if not isinstance(corpus_spec, dict):
        raise ManifestParseError("'corpus' must map names to file paths")
    corpus = {}
    for name, rel in corpus_spec.items():
        if not isinstance(rel, str):
            raise ManifestParseError(f"corpus entry {name!r} must be a path")
        try:
            corpus[name] = read_document(Path(base) / rel)
        except OSError as e:
            raise ManifestParseError(f"corpus {name!r}: {e}") from None
        except CatpipeError as e:
            raise ManifestParseError(f"corpus {name!r}: {e}") from None
    return Registry(table, tuple(formats), tuple(layers), corpus)


def _string_list(data, key):
    value = data.get(key)
    if not isinstance(value, list) or not all(isinstance(x, str) and x for x in value):
        raise ManifestParseError(f"'{key}' must be a list of non-empty strings")
    if len(set(value)) != len(value):
        raise ManifestParseError(f"'{key}' has duplicates")
    return value


def example_manifest_path():
    return resources.files("catpipe").joinpath("data", "example-sec9.json")


def example_registry() -> Registry:
    with resources.as_file(example_manifest_path()) as p:
        return load_manifest(p)


# -- hom-sets ------------------------------------------------------------------

@dataclass(frozen=True)
class HomSet:
    source: DocumentDescriptor
    target: DocumentDescriptor
    morphisms: tuple
    kinds: tuple = ()

    def __iter__(self):
        return iter(self.morphisms)

    def __len__(self):
        return len(self.morphisms)


def hom(reg: Registry, src: DocumentDescriptor, dst: DocumentDescriptor) -> HomSet:
    ids, kinds = [], []
    for m in reg:
        if m.accepts(src) and m.output(src) == dst:
            ids.append(m.id)
            kinds.append(m.kind_at(src))
    return HomSet(src, dst, tuple(ids), tuple(kinds))


def hom_sets(reg: Registry) -> list[HomSet]:
    """Every non-empty hom-set over the registry's descriptor universe."""
    out = []
    for src in sorted(reg.universe()):
        targets = {}
        for m in reg:
            if m.accepts(src):
                targets.setdefault(m.output(src), None)
        for dst in sorted(targets):
            out.append(hom(reg, src, dst))
    return out


def flat_hom(reg: Registry) -> list[str]:
    """All morphism ids appearing in some hom-set, in registration order."""
    universe = reg.universe()
    return [m.id for m in reg if any(m.accepts(d) for d in universe)]


# -- objects -------------------------------------------------------------------

class ObjectMode(str, enum.Enum):
    AS_PAPER = "as_paper"
    REACHABLE = "reachable"


@dataclass(frozen=True)
class LabeledObject:
    """An object label and the descriptors it stands for.

    ``descriptors`` is empty when the construction behind the label does not
    type-check against the registered signatures.
    """

    label: str
    descriptors: tuple

    def __str__(self):
        ds = ", ".join(str(d) for d in self.descriptors) or "unrealizable"
        return f"{self.label}\t{ds}"


def _walk(reg, start, ids):
    """Descriptors reached from ``start`` descriptors through ``ids`` in order."""
    out = []
    for d in start:
        for mid in ids:
            m = reg[mid]
            if not m.accepts(d):
                d = None
                break
            d = m.output(d)
        if d is not None and d not in out:
            out.append(d)
    return tuple(sorted(out))


def enumerate_objects(reg: Registry, mode="reachable", initial=None) -> list[LabeledObject]:
    mode = ObjectMode(mode)
    if initial is None:
        initial = [DocumentDescriptor(f) for f in sorted(INITIAL_FORMATS) if f in reg.formats]
    initial = list(initial)
    if mode is ObjectMode.AS_PAPER:
        return _objects_as_paper(reg, initial)

    seen = set(initial)
    frontier = list(initial)
    while frontier:
        nxt = []
        for d in frontier:
            for m in reg:
                if m.accepts(d):
                    out = m.output(d)
                    if out not in seen:
                        seen.add(out)
                        nxt.append(out)
        frontier = nxt
    return [LabeledObject(str(d), (d,)) for d in sorted(seen)]


def _objects_as_paper(reg, initial):
    needed = ["c_2", "c_3", "c_4", "c_5", "c_6", "c_7", "t_o", "t_p"]
    missing = [i for i in needed if i not in reg]
    if missing:
        raise UnknownMorphism(f"as_paper enumeration needs morphisms {missing}")
    objects = [LabeledObject("D^0", tuple(sorted(initial)))]
    for i in ("2", "3"):
        objects.append(LabeledObject(f"D^0_{i}", _walk(reg, initial, [f"c_{i}"])))
    for tool in ("o", "p"):
        for j in ("4", "5", "6", "7"):
            # D^0_l for l in {0, 2, 3}, then the tool, then the output converter
            reached = set()
            for pre in ([], ["c_2"], ["c_3"]):
                reached.update(_walk(reg, initial, pre + [f"t_{tool}", f"c_{j}"]))
            objects.append(LabeledObject(f"D^1_{tool}{j}", tuple(sorted(reached))))
    return objects


# -- law verification ------------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    morphisms: tuple
    document: str
    reason: str

    def __str__(self):
        return f"{' , '.join(self.morphisms)} on {self.document}: {self.reason}"


@dataclass
class CheckTally:
    attempted: int = 0
    passed: int = 0
    counterexamples: list = field(default_factory=list)

    def record(self, ok, morphisms, document, reason=""):
        self.attempted += 1
        if ok:
            self.passed += 1
        else:
            self.counterexamples.append(Counterexample(tuple(morphisms), document, reason))

    def finish(self):
        self.counterexamples.sort(key=lambda c: (c.morphisms, c.document, c.reason))
        return self


@dataclass
class AxiomReport:
    identity_checks: CheckTally
    associativity_checks: CheckTally
    closure_checks: CheckTally

    @property
    def ok(self):
        return not self.counterexamples

    @property
    def counterexamples(self):
        return (
            self.identity_checks.counterexamples
            + self.associativity_checks.counterexamples
            + self.closure_checks.counterexamples
        )

    def format(self):
        lines = []
        for name in ("identity", "associativity", "closure"):
            t = getattr(self, f"{name}_checks")
            lines.append(f"{name}: {t.passed}/{t.attempted} passed")
            lines.extend(f"  counterexample: {c}" for c in t.counterexamples)
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines)


# Expected kind of (second after first), written out pair by pair.
KIND_TABLE = {
    (Kind.IDENTITY, Kind.IDENTITY): Kind.IDENTITY,
    (Kind.IDENTITY, Kind.CONVERTER): Kind.CONVERTER,
    (Kind.IDENTITY, Kind.TOOL): Kind.TOOL,
    (Kind.IDENTITY, Kind.COMPOSITE): Kind.COMPOSITE,
    (Kind.CONVERTER, Kind.IDENTITY): Kind.CONVERTER,
    (Kind.CONVERTER, Kind.CONVERTER): Kind.CONVERTER,
    (Kind.CONVERTER, Kind.TOOL): Kind.COMPOSITE,
    (Kind.CONVERTER, Kind.COMPOSITE): Kind.COMPOSITE,
    (Kind.TOOL, Kind.IDENTITY): Kind.TOOL,
    (Kind.TOOL, Kind.CONVERTER): Kind.COMPOSITE,
    (Kind.TOOL, Kind.TOOL): Kind.TOOL,
    (Kind.TOOL, Kind.COMPOSITE): Kind.COMPOSITE,
    (Kind.COMPOSITE, Kind.IDENTITY): Kind.COMPOSITE,
    (Kind.COMPOSITE, Kind.CONVERTER): Kind.COMPOSITE,
    (Kind.COMPOSITE, Kind.TOOL): Kind.COMPOSITE,
    (Kind.COMPOSITE, Kind.COMPOSITE): Kind.COMPOSITE,
}


def _try(fn):
    try:
        return fn(), None
    except CatpipeError as e:
        return None, f"{type(e).__name__}: {e}"


def verify_axioms(reg: Registry) -> AxiomReport:
    """Check identity, associativity and kind closure on the registry's corpus.

    Every check is extensional: two morphisms are equal when they produce
    equal documents on every corpus document in their domain.
    """
    if not reg.corpus:
        raise EmptyCorpus("law checking needs at least one corpus document")
    corpus = sorted(reg.corpus.items())
    universe = reg.universe()
    morphisms = list(reg)
    ident, assoc, closure = CheckTally(), CheckTally(), CheckTally()

    for m in morphisms:
        for name, doc in corpus:
            src = descriptor_of(doc)
            if not m.accepts(src, blank=is_blank(doc)):
                continue
            out, err = _try(lambda: apply(m, doc))
            if err:
                ident.record(False, [m.id], name, err)
                continue
            dst = m.output(src)
            left, err_l = _try(lambda: apply(compose(m, identity(src), universe), doc))
            right, err_r = _try(lambda: apply(compose(identity(dst), m, universe), doc))
            err = err_l or err_r
            ok = err is None and documents_equal(left, out) and documents_equal(right, out)
            ident.record(ok, [m.id], name, err or "identity composite differs from the morphism")

    for (a, b), expected in KIND_TABLE.items():
        got = classify_composite(a, b)
        closure.record(got is expected, [a.value, b.value], "-", f"classified as {got.value}")

    pairs = {}
    for f, g in itertools.product(morphisms, repeat=2):
        try:
            pairs[f.id, g.id] = compose(g, f, universe)
        except IncomposableSignatures:
            continue
        gf = pairs[f.id, g.id]
        expected = KIND_TABLE[f.kind, g.kind]
        for name, doc in corpus:
            if not gf.accepts(descriptor_of(doc), blank=is_blank(doc)):
                continue
            if gf.kind is not expected:
                closure.record(False, [f.id, g.id], name, f"composite kind {gf.kind.value}, expected {expected.value}")
                continue
            # apply() enforces the kind's law (converter keeps content and
            # annotations, tool keeps format) on the composite
            _, err = _try(lambda: apply(gf, doc))
            closure.record(err is None, [f.id, g.id], name, err or "")

    for (fid, gid), gf in pairs.items():
        for h in morphisms:
            if (gid, h.id) not in pairs:
                continue
            try:
                h_gf = compose(h, gf, universe)
            except IncomposableSignatures:
                continue
            hg_f = compose(pairs[gid, h.id], reg[fid], universe)
            for name, doc in corpus:
                if not h_gf.accepts(descriptor_of(doc), blank=is_blank(doc)):
                    continue
                left, err_l = _try(lambda: apply(h_gf, doc))
                right, err_r = _try(lambda: apply(hg_f, doc))
                err = err_l or err_r
                ok = err is None and documents_equal(left, right)
                assoc.record(ok, [fid, gid, h.id], name, err or "groupings disagree")

    return AxiomReport(ident.finish(), assoc.finish(), closure.finish())
