"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 no plan, 4 signature
violation, 5 law-check failure.
"""
from __future__ import annotations

import argparse
import sys

from .converters import convert
from .document import DocumentDescriptor
from .errors import CatpipeError, NoPlan, SignatureViolation
from .formats import parse, read_document, serialize, SerializedDocument
from .morphism import Pipeline
from .planner import DEFAULT_MAX_STEPS, PlanRequest, plan, run
from .registry import (
    ObjectMode,
    enumerate_objects,
    example_registry,
    flat_hom,
    hom_sets,
    load_manifest,
    verify_axioms,
)

EXIT_OK, EXIT_USAGE, EXIT_NOPLAN, EXIT_SIGNATURE, EXIT_LAWS = 0, 2, 3, 4, 5


def _registry(args):
    return load_manifest(args.registry) if args.registry else example_registry()


def _descriptor(text):
    try:
        return DocumentDescriptor.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _read(path, fmt=None):
    if path == "-":
        if not fmt:
            raise CatpipeError("reading standard input needs --format")
        return parse(SerializedDocument(sys.stdin.buffer.read(), fmt))
    return read_document(path, fmt)


def _emit(doc, out):
    data = serialize(doc).data
    if out and out != "-":
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_convert(args):
    doc = _read(args.input, args.source)
    _emit(convert(doc, args.target), args.out)


def cmd_plan(args):
    pipeline = plan(_registry(args), PlanRequest(args.from_desc, args.to_desc, args.max_steps))
    for step in pipeline:
        print(step)


def cmd_run(args):
    steps = [s.strip() for s in args.pipeline.split(",") if s.strip()]
    _emit(run(_registry(args), Pipeline(steps), _read(args.input, args.format)), args.out)


def cmd_auto(args):
    reg = _registry(args)
    doc = _read(args.input, args.format)
    pipeline = plan(reg, PlanRequest(doc.descriptor, args.to_desc, args.max_steps))
    print(f"pipeline: {' '.join(pipeline) or '(identity)'}", file=sys.stderr)
    _emit(run(reg, pipeline, doc), args.out)


def cmd_hom(args):
    reg = _registry(args)
    if args.flat:
        for mid in flat_hom(reg):
            print(mid)
        return
    for h in hom_sets(reg):
        print(f"{h.source} -> {h.target}\t{' '.join(h.morphisms)}")


def cmd_objects(args):
    for obj in enumerate_objects(_registry(args), args.mode):
        print(obj if args.mode == ObjectMode.AS_PAPER.value else obj.label)


def cmd_verify_laws(args):
    report = verify_axioms(_registry(args))
    print(report.format())
    return EXIT_OK if report.ok else EXIT_LAWS


def build_parser():
    parser = argparse.ArgumentParser(
        prog="catpipe",
        description="Plan, run and law-check pipelines of NLP tools and format converters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_registry(p):
        p.add_argument("--registry", metavar="MANIFEST", help="JSON manifest (default: the shipped example)")
        return p

    p = sub.add_parser("convert", help="change a document's format")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--from", dest="source", help="input format (default: from extension)")
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)

    p = with_registry(sub.add_parser("plan", help="print the shortest pipeline, one id per line"))
    p.add_argument("--from-desc", type=_descriptor, required=True, metavar="FMT:LAYERS")
    p.add_argument("--to-desc", type=_descriptor, required=True, metavar="FMT:LAYERS")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.set_defaults(func=cmd_plan)

    p = with_registry(sub.add_parser("run", help="apply a pipeline to a document"))
    p.add_argument("--pipeline", required=True, metavar="ID,ID,...")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", help="input format (default: from extension)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_run)

    p = with_registry(sub.add_parser("auto", help="plan from the document's descriptor, then run"))
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", help="input format (default: from extension)")
    p.add_argument("--to-desc", type=_descriptor, required=True, metavar="FMT:LAYERS")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_auto)

    p = with_registry(sub.add_parser("hom", help="list hom-sets"))
    p.add_argument("--flat", action="store_true", help="one id per line, all hom-sets merged")
    p.set_defaults(func=cmd_hom)

    p = with_registry(sub.add_parser("objects", help="list the category's objects"))
    p.add_argument("--mode", choices=[m.value for m in ObjectMode], default=ObjectMode.REACHABLE.value)
    p.set_defaults(func=cmd_objects)

    p = with_registry(sub.add_parser("verify-laws", help="check identity, associativity, closure"))
    p.set_defaults(func=cmd_verify_laws)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        code = args.func(args)
    except NoPlan as e:
        print(f"catpipe: {e}", file=sys.stderr)
        return EXIT_NOPLAN
    except SignatureViolation as e:
        print(f"catpipe: {e}", file=sys.stderr)
        return EXIT_SIGNATURE
    except (CatpipeError, ValueError, OSError) as e:
        print(f"catpipe: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
