"""Command-line entry point: ``cyclicfci <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 invalid input or failed
verification, 3 inconsistent independence oracle.
"""

import argparse
import json
import sys

from .acyclify import canonical_acyclification, sample_acyclification
from .discovery import BackgroundKnowledge, fci, graph_oracle, pc_meek
from .discovery.background import parse_jci_subset
from .equivalence import GraphFamily, verify_background_soundness, verify_markov_completeness
from .errors import CyclicFCIError, OracleInconsistent
from .identify import all_claims
from .io import dump_dpag, dump_graph, export_dot, load_graph_document, parse_dpag
from .separation import separated

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INCONSISTENT = 0, 1, 2, 3

MAX_NODES = 25


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _split(text):
    if text is None:
        return None
    return [t.strip() for t in text.split(",") if t.strip()]


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(args, discovery=True):
    """Read the input graph; discovery on large universes needs ``--force``."""
    doc = load_graph_document(_read(args.input))
    if discovery and doc.graph.n > MAX_NODES and not args.force:
        raise UsageError(f"graph has {doc.graph.n} nodes (limit {MAX_NODES}); pass --force to run discovery anyway")
    return doc


def _emit_dpag(args, P):
    _write(args.out, dump_dpag(P))
    if args.dot:
        _write(args.dot, export_dot(P))


def _contexts(args, doc):
    names = _split(args.context)
    return tuple(names) if names is not None else doc.context_nodes


def cmd_fci(args):
    doc = _load(args)
    _emit_dpag(args, fci(graph_oracle(doc.graph, args.criterion)).dpag)


def cmd_pc(args):
    doc = _load(args)
    _emit_dpag(args, pc_meek(graph_oracle(doc.graph, args.criterion)).dpag)


def cmd_jci(args):
    doc = _load(args)
    contexts = _contexts(args, doc)
    bk = BackgroundKnowledge.jci(contexts, parse_jci_subset(args.jci))
    _emit_dpag(args, fci(graph_oracle(doc.graph, args.criterion), bk=bk).dpag)


def cmd_identify(args):
    doc = _load(args, discovery=not args.dpag)
    contexts = _contexts(args, doc)
    if args.dpag:
        P = parse_dpag(_read(args.dpag))
    else:
        oracle = graph_oracle(doc.graph, args.criterion)
        if contexts:
            bk = BackgroundKnowledge.jci(contexts, parse_jci_subset(args.jci))
            P = fci(oracle, bk=bk)
        else:
            P = fci(oracle)
    dpag = getattr(P, "dpag", P)
    claims = all_claims(P if not args.dpag else _Attested(P), [dpag.index(c) for c in contexts])
    _write(args.out, json.dumps([c.to_dict(dpag.names) for c in claims], indent=2) + "\n")


class _Attested:
    """A DPAG read from disk, vouched for by the user as a complete discovery output."""

    def __init__(self, dpag):
        self.dpag = dpag


def cmd_equiv(args):
    subset = parse_jci_subset(args.jci) if args.contexts else frozenset({1, 2, 3})
    family = GraphFamily(
        args.n,
        allow_bidirected=not args.no_bidirected,
        acyclic_only=args.acyclic,
        jci_context_count=args.contexts,
        jci_subset=subset,
    )
    if args.check == "completeness":
        report = verify_markov_completeness(family, args.criterion, args.samples, args.seed, args.workers)
    else:
        report = verify_background_soundness(family, args.algorithm, args.criterion, args.samples, args.seed)
    _write(args.out, report.to_json())
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_acyclify(args):
    doc = _load(args, discovery=False)
    if args.seed is None:
        acy = canonical_acyclification(doc.graph)
    else:
        acy = sample_acyclification(doc.graph, args.seed, args.density)
    _write(args.out, dump_graph(acy.graph, [doc.graph.index(c) for c in doc.context_nodes]))


def cmd_oracle(args):
    doc = _load(args, discovery=False)
    given = _split(args.given) or []
    sep = separated(doc.graph, [args.i], [args.j], given, args.criterion)
    _write(args.out, ("separated" if sep else "connected") + "\n")


def build_parser():
    parser = _Parser(prog="cyclicfci", description="Causal discovery and identification for cyclic graphs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def command(name, func, help_text, graph_input=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if graph_input:
            p.add_argument("--in", dest="input", required=True, help="graph JSON document ('-' for stdin)")
            p.add_argument("--force", action="store_true", help=f"allow discovery on graphs above {MAX_NODES} nodes")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--criterion", choices=("sigma", "d"), default="sigma")
        return p

    for name, func, text in (
        ("fci", cmd_fci, "run FCI on the separation oracle of a graph"),
        ("pc", cmd_pc, "run PC with Meek's rules"),
        ("jci", cmd_jci, "run FCI with JCI background knowledge"),
    ):
        p = command(name, func, text)
        p.add_argument("--dot", default=None, help="also write the DPAG as DOT")
        if name == "jci":
            p.add_argument("--jci", default="1,2,3", help="JCI assumptions, comma list from 1,2,3")
            p.add_argument("--context", default=None, help="comma list of context node names")

    p = command("identify", cmd_identify, "list identified causal features")
    p.add_argument("--dpag", default=None, help="DPAG JSON document (default: recompute with FCI)")
    p.add_argument("--context", default=None, help="comma list of context node names")
    p.add_argument("--jci", default="1,2,3")

    p = command("equiv", cmd_equiv, "verify Markov completeness or soundness on a graph family", graph_input=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=None, help="sample this many graphs instead of enumerating")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--check", choices=("completeness", "soundness"), default="completeness")
    p.add_argument("--algorithm", choices=("fci", "fci_jci", "pc_meek"), default="fci")
    p.add_argument("--acyclic", action="store_true", help="acyclic graphs only")
    p.add_argument("--no-bidirected", action="store_true", help="causally sufficient graphs only")
    p.add_argument("--contexts", type=int, default=0, help="number of JCI context nodes")
    p.add_argument("--jci", default="1,2,3")

    p = command("acyclify", cmd_acyclify, "emit the canonical or a sampled acyclification")
    p.add_argument("--seed", type=int, default=None, help="sample with this seed instead of the canonical one")
    p.add_argument("--density", type=float, default=0.0, help="extra bidirected density inside SCCs")

    p = command("oracle", cmd_oracle, "answer one separation query")
    p.add_argument("--i", required=True)
    p.add_argument("--j", required=True)
    p.add_argument("--given", default="", help="comma list of conditioning nodes")
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        code = args.func(args)
        return EXIT_OK if code is None else code
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OracleInconsistent as exc:
        print(f"error: inconsistent oracle: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except CyclicFCIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
