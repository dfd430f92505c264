"""Exception hierarchy shared by every catpipe module."""


class CatpipeError(Exception):
    pass


# documents

class DocumentError(CatpipeError, ValueError):
    pass


class UnknownFormat(DocumentError):
    pass


class UnknownLayer(DocumentError):
    pass


class UnsupportedInitialFormat(DocumentError):
    pass


class SpanOutOfBounds(DocumentError):
    pass


# serialization

class FormatError(CatpipeError, ValueError):
    pass


class FormatMismatch(FormatError):
    pass


class UnrepresentableDocument(FormatError):
    pass


class MalformedInput(FormatError):
    pass


# morphisms

class MorphismError(CatpipeError):
    pass


class SignatureViolation(MorphismError):
    """A document was handed to a morphism whose source pattern rejects it."""

    def __init__(self, morphism_id, descriptor, step=None, detail=None):
        self.morphism_id = morphism_id
        self.descriptor = descriptor
        self.step = step
        self.detail = detail
        msg = f"{morphism_id} cannot act on {descriptor}"
        if step is not None:
            msg = f"step {step}: {msg}"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)

    def at_step(self, step):
        return type(self)(self.morphism_id, self.descriptor, step, self.detail)


class NoSuchConverter(SignatureViolation):
    pass


class PostconditionViolation(MorphismError):
    """A transform broke its own declared signature. Always a bug."""

    def __init__(self, morphism_id, detail):
        self.morphism_id = morphism_id
        self.detail = detail
        super().__init__(f"{morphism_id}: {detail}")


class IncomposableSignatures(MorphismError):
    def __init__(self, g, f):
        self.g_signature = g.signature
        self.f_signature = f.signature
        self.g_id = g.id
        self.f_id = f.id
        super().__init__(
            f"cannot compose {g.id} after {f.id}: no document leaving "
            f"{f.id} ({f.signature}) is accepted by {g.id} ({g.signature})"
        )


# registry and planning

class RegistryError(CatpipeError):
    pass


class ManifestParseError(RegistryError):
    pass


class UnknownBuiltin(RegistryError):
    pass


class UnknownMorphism(RegistryError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DuplicateId(RegistryError):
    pass


class EmptyCorpus(RegistryError):
    pass


class NoPlan(CatpipeError):
    def __init__(self, source, target, max_steps, frontier):
        self.source = source
        self.target = target
        self.max_steps = max_steps
        self.frontier = frontier
        reached = ", ".join(str(d) for d in sorted(frontier, key=str))
        super().__init__(
            f"no pipeline from {source} to {target} within {max_steps} steps; "
            f"reachable: {reached}"
        )
