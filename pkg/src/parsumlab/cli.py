"""Command line entry point: run suites, validate documents, list checks, export the corpus."""

import argparse
import json
import os
import sys

from .errors import MalformedInput, ParsumlabError
from .suites import FORMATS, PROBE_GROUPS, SUITES, SuiteConfig, run_suite, write_corpus

CORPUS_ENV = "PARSUMLAB_CORPUS"


def _bounds(text):
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bounds must look like a,s,m, got {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"bounds must have three entries a,s,m, got {text!r}")
    return parts


def _groups(text):
    return tuple(g for g in text.split(",") if g)


def resolve_path(path):
    """Paths that do not exist as given are looked up in the corpus directory."""
    if os.path.exists(path):
        return path
    corpus = os.environ.get(CORPUS_ENV)
    if corpus and os.path.exists(os.path.join(corpus, path)):
        return os.path.join(corpus, path)
    raise MalformedInput(f"no such file {path!r}" + (f" (also looked in {corpus})" if corpus else ""))


def build_parser():
    p = argparse.ArgumentParser(prog="parsumlab", description="Finite-scale checks for tame injection-monoid structures.")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a named check suite")
    run.add_argument("suite", help="suite name, or 'all'")
    run.add_argument("--window", type=int)
    run.add_argument("--truncate", type=int)
    run.add_argument("--bounds", type=_bounds)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--format", choices=FORMATS, default="json")
    run.add_argument("--probe-groups", type=_groups, default=PROBE_GROUPS)
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument("--output", help="write the report here instead of stdout")

    val = sub.add_parser("validate", help="validate a JSON document")
    val.add_argument("file")

    sub.add_parser("list", help="list suites and their checks")

    exp = sub.add_parser("export-corpus", help="write the canonical instances as JSON documents")
    exp.add_argument("directory", nargs="?")
    return p


def _run(args, out):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    texts = []
    for name in names:
        cfg = SuiteConfig(name, window=args.window, truncate=args.truncate, bounds=args.bounds, seed=args.seed,
                          probe_groups=args.probe_groups, format=args.format, jobs=args.jobs)
        report = run_suite(cfg)
        ok = ok and report.ok
        texts.append(report.render(args.format))
    text = "\n".join(texts)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        out.write(text + "\n")
    return 0 if ok else 1


def _validate(args, out):
    from .io import validate_document
    with open(resolve_path(args.file)) as fh:
        raw = fh.read()
    ok, counterexample = validate_document(raw)
    out.write(json.dumps({"file": args.file, "valid": ok, "counterexample": counterexample}, indent=2,
                         sort_keys=True, default=repr) + "\n")
    return 0 if ok else 1


def _list(out):
    for name, checks in SUITES.items():
        out.write(f"{name}\n")
        for cid, anchor, _ in checks:
            out.write(f"  {cid}: {anchor}\n")
    return 0


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run(args, out)
        if args.command == "validate":
            return _validate(args, out)
        if args.command == "list":
            return _list(out)
        directory = args.directory or os.environ.get(CORPUS_ENV)
        if not directory:
            raise MalformedInput(f"give a directory or set {CORPUS_ENV}")
        for name in write_corpus(directory):
            out.write(os.path.join(directory, name) + "\n")
        return 0
    except ParsumlabError as exc:
        sys.stderr.write(f"parsumlab: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
