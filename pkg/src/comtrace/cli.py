"""Command-line entry point (``ctk``).

Exit codes: 0 success or "true", 1 "false", 2 usage or input error,
3 projection set not realizable.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional, Sequence

from . import eni, mztrace, oracle
from .alphabet import enumerate_steps, format_alphabet, format_step, load_alphabet, require_step
from .errors import ComtraceError, NotRealizable, ParseError
from .indivisibility import indiv_alphabet, split, step_equiv_classes
from .projection import (
    BOTTOM,
    BOTTOM_ASCII,
    equivalent,
    format_projection_set,
    load_projection_set,
    projection_representation,
)
from .reconstruct import Strategy, foata, minlex, reconstruct
from .stepseq import format_stepseq, format_word, parse_stepseq, parse_word

EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_NOT_REALIZABLE = 0, 1, 2, 3


class Output:
    """Writes either ``key: value`` lines or plain human text."""

    def __init__(self, structured: bool, show_lambda: bool, stream=None):
        self.structured = structured
        self.show_lambda = show_lambda
        self.stream = stream or sys.stdout

    def seq(self, w) -> str:
        return format_stepseq(w, show_lambda=self.show_lambda or self.structured)

    def emit(self, key: str, human: str, value: Optional[str] = None) -> None:
        if self.structured:
            print(f"{key}: {human if value is None else value}", file=self.stream)
        else:
            print(human, file=self.stream)


def _sequences(args, needed: Optional[int] = None) -> list:
    texts = list(args.seq or []) + list(args.sequences or [])
    if not texts:
        texts = [line for line in sys.stdin.read().splitlines() if line.strip()]
    if needed is not None and len(texts) != needed:
        raise ParseError(f"expected {needed} sequence(s), got {len(texts)}")
    return texts


def _parse_all(alphabet, args, needed=None):
    return [parse_stepseq(alphabet, t) for t in _sequences(args, needed)]


# ---- comtrace commands -------------------------------------------------------


def cmd_validate(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    rel = alphabet.relations
    out.emit("actions", " ".join(alphabet.actions))
    index = alphabet.index
    for name in ("dep", "ind", "sin", "ssm", "wdp"):
        pairs = sorted(getattr(rel, name), key=lambda p: (index[p[0]], index[p[1]]))
        if name == "dep":
            pairs = [p for p in pairs if p[0] != p[1]]
        text = " ".join(f"{a}{b}" if alphabet.single_char() else f"{a},{b}" for a, b in pairs)
        out.emit(name, f"{name}: {text}", text)
    out.emit("radical", f"radical: {str(alphabet.is_radical()).lower()}",
             str(alphabet.is_radical()).lower())
    return EXIT_TRUE


def cmd_equiv(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    w, u = _parse_all(alphabet, args, 2)
    if args.oracle:
        same = oracle.oracle_equivalent(alphabet, w, u, cap=args.cap)
    else:
        same = equivalent(alphabet, w, u)
    out.emit("equivalent", "equivalent" if same else "not equivalent", str(same).lower())
    return EXIT_TRUE if same else EXIT_FALSE


def cmd_canon(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    form = foata if args.form == "foata" else minlex
    for w in _parse_all(alphabet, args):
        out.emit(args.form, out.seq(form(alphabet, w)))
    return EXIT_TRUE


def cmd_project(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    (w,) = _parse_all(alphabet, args, 1)
    p = projection_representation(alphabet, w)
    if out.structured:
        for (a, b), symbols in p.entries.items():
            body = " ".join(BOTTOM_ASCII if s == BOTTOM else s for s in symbols)
            print(f"proj {a} {b}: {body}".rstrip(), file=out.stream)
    else:
        out.stream.write(format_projection_set(p))
    return EXIT_TRUE


def cmd_reconstruct(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    p = load_projection_set(alphabet, args.proj)
    hook = None
    if args.trace_stages:
        def hook(stage):
            def names(xs):
                return " ".join(alphabet.sorted_actions(xs))
            cnd = " ".join(f"{a}{b}" if alphabet.single_char() else f"{a},{b}"
                           for a, b in sorted(stage.cnd, key=lambda q: (alphabet.index[q[0]], alphabet.index[q[1]])))
            chosen = format_step(alphabet, stage.chosen) if stage.chosen else "-"
            print(f"stage {stage.index}: cpa={{{names(stage.cpa)}}} cnd={{{cnd}}} "
                  f"imp={{{names(stage.imp)}}} M={{{names(stage.possible)}}} step={chosen}",
                  file=sys.stderr)
    try:
        w = reconstruct(alphabet, p, Strategy(args.strategy), on_stage=hook)
    except NotRealizable as exc:
        out.emit("realizable", "not realizable", "false")
        print(f"ctk: {exc}", file=sys.stderr)
        if exc.stage is not None:
            print(f"ctk: stuck at stage {exc.stage}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    out.emit("result", out.seq(w))
    return EXIT_TRUE


def cmd_split(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    for w in _parse_all(alphabet, args):
        out.emit("split", out.seq(split(alphabet, w)))
    return EXIT_TRUE


def cmd_indiv_steps(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    steps = enumerate_steps(alphabet) if args.all else indiv_alphabet(alphabet)
    for s in steps:
        out.emit("step", format_step(alphabet, s))
    return EXIT_TRUE


def cmd_classes(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    text = args.step.strip()
    if text.startswith("("):
        (step,) = parse_stepseq(alphabet, text).steps
    else:
        names = list(text) if alphabet.single_char() and " " not in text else text.split()
        step = require_step(alphabet, names)
    part = step_equiv_classes(alphabet, step)
    for c in part.classes:
        out.emit("class", "{" + " ".join(alphabet.sorted_actions(c)) + "}")
    return EXIT_TRUE


def cmd_enumerate(args, out: Output) -> int:
    alphabet = load_alphabet(args.alphabet)
    (w,) = _parse_all(alphabet, args, 1)
    for member in oracle.enumerate_class(alphabet, w, cap=args.cap):
        out.emit("member", out.seq(member))
    return EXIT_TRUE


# ---- traces -------------------------------------------------------------------


def cmd_trace(args, out: Output) -> int:
    psi = mztrace.load_concurrent_alphabet(args.alphabet)
    texts = _sequences(args, 2 if args.action == "equiv" else None)
    if args.mode == "word":
        words = [parse_word(psi.actions, t) for t in texts]
        if args.action == "equiv":
            same = mztrace.trace_equivalent(psi, *words)
            out.emit("equivalent", "equivalent" if same else "not equivalent", str(same).lower())
            return EXIT_TRUE if same else EXIT_FALSE
        for word in words:
            if args.action == "canon":
                form = mztrace.trace_foata if args.form == "foata" else mztrace.trace_minlex
                text = format_word(psi.actions, form(psi, word)) or "ε"
                out.emit(args.form, text)
            else:
                for (a, b), sub in mztrace.trace_projections(psi, word).items():
                    out.emit(f"proj {a} {b}", f"proj {a} {b} : {format_word(psi.actions, sub)}".rstrip(),
                             format_word(psi.actions, sub))
        return EXIT_TRUE
    theta = psi.as_comtrace()
    seqs = [parse_stepseq(theta, t) for t in texts]
    if args.action == "equiv":
        same = mztrace.steptrace_equivalent(psi, *seqs)
        out.emit("equivalent", "equivalent" if same else "not equivalent", str(same).lower())
        return EXIT_TRUE if same else EXIT_FALSE
    for w in seqs:
        if args.action == "canon":
            form = mztrace.steptrace_foata if args.form == "foata" else mztrace.steptrace_minlex
            out.emit(args.form, out.seq(form(psi, w)))
        else:
            out.stream.write(format_projection_set(mztrace.steptrace_projections(psi, w)))
    return EXIT_TRUE


# ---- nets ---------------------------------------------------------------------

_GROUP = re.compile(r"\s*\(([^()]*)\)")


def _parse_net_steps(net, text):
    steps, i = [], 0
    text = text.strip()
    if text in ("", "λ"):
        return steps
    single = all(len(t) == 1 for t in net.transitions)
    while i < len(text):
        m = _GROUP.match(text, i)
        if not m:
            raise ParseError("expected '(' ... ')'", i)
        body = m.group(1)
        names = [c for c in body if not c.isspace()] if single else body.split()
        if not names:
            raise ParseError("empty step", i)
        steps.append(frozenset(names))
        i = m.end()
        while i < len(text) and text[i].isspace():
            i += 1
    return steps


def _format_net_steps(net, steps, show_lambda):
    order = {t: i for i, t in enumerate(net.transitions)}
    if not steps:
        return "λ" if show_lambda else ""
    return "".join("(" + " ".join(sorted(s, key=order.__getitem__)) + ")" for s in steps)


def cmd_eni(args, out: Output) -> int:
    net = eni.load_net(args.net)
    if args.action == "derive":
        alphabet = eni.derive_alphabet(net)
        if eni.table_relations(net) != alphabet.relations:
            print("ctk: relations from (sim, ser) disagree with the net table", file=sys.stderr)
            return EXIT_FALSE
        out.stream.write(format_alphabet(alphabet))
        return EXIT_TRUE
    if args.action == "run":
        marking = net.initial_marking
        for text in _sequences(args, 1):
            for step in _parse_net_steps(net, text):
                if not eni.step_enabled(net, marking, step, args.disjoint_postsets):
                    out.emit("enabled", "not enabled: " + _format_net_steps(net, [step], False), "false")
                    return EXIT_FALSE
                marking = eni.fire(net, marking, step, args.disjoint_postsets)
        names = " ".join(p for p in net.places if p in marking)
        out.emit("marking", names)
        return EXIT_TRUE
    runs = eni.enumerate_executions(net, args.max_steps, args.transitions, args.budget,
                                    args.disjoint_postsets)
    if args.final:
        runs = [r for r in runs if any(args.final in s for s in r)]
    for r in runs:
        out.emit("execution", _format_net_steps(net, r, out.show_lambda or out.structured))
    return EXIT_TRUE


# ---- argument parsing -----------------------------------------------------------


def _add_seq_args(p):
    p.add_argument("sequences", nargs="*", metavar="SEQ", help="step sequences (else read from stdin)")
    p.add_argument("--seq", action="append", help="a step sequence; may be repeated")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("structured", "human"), default="human")
    common.add_argument("--show-lambda", action="store_true", help="print λ for the empty sequence")

    alph = argparse.ArgumentParser(add_help=False)
    alph.add_argument("-a", "--alphabet", required=True, help="alphabet file")

    parser = argparse.ArgumentParser(prog="ctk", description="Comtrace toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common, alph], help="check an alphabet and print its relations")

    p = sub.add_parser("equiv", parents=[common, alph], help="decide comtrace equivalence")
    _add_seq_args(p)
    p.add_argument("--oracle", action="store_true", help="use brute-force enumeration")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)

    p = sub.add_parser("canon", parents=[common, alph], help="canonical form")
    _add_seq_args(p)
    p.add_argument("--form", choices=("foata", "lex"), default="foata")

    p = sub.add_parser("project", parents=[common, alph], help="projection representation")
    _add_seq_args(p)

    p = sub.add_parser("reconstruct", parents=[common, alph], help="rebuild a sequence from projections")
    p.add_argument("--proj", required=True, help="projection-set file")
    p.add_argument("--strategy", choices=("foata", "lex"), default="foata")
    p.add_argument("--trace-stages", action="store_true", help="dump per-stage sets to stderr")

    p = sub.add_parser("split", parents=[common, alph], help="split every step into indivisible ones")
    _add_seq_args(p)

    p = sub.add_parser("indiv-steps", parents=[common, alph], help="list indivisible steps")
    p.add_argument("--all", action="store_true", help="list every step instead")

    p = sub.add_parser("classes", parents=[common, alph], help="indivisibility classes of a step")
    p.add_argument("step")

    p = sub.add_parser("enumerate", parents=[common, alph], help="every member of a comtrace")
    _add_seq_args(p)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)

    trace = sub.add_parser("trace", help="Mazurkiewicz and step traces")
    tsub = trace.add_subparsers(dest="action", required=True)
    for action, text in (("equiv", "decide trace equivalence"), ("canon", "canonical form"),
                         ("project", "projections onto dependent pairs")):
        p = tsub.add_parser(action, parents=[common, alph], help=text)
        p.add_argument("--mode", choices=("word", "step"), default="word")
        if action == "canon":
            p.add_argument("--form", choices=("foata", "lex"), default="foata")
        _add_seq_args(p)

    net = sub.add_parser("eni", help="nets with inhibitor arcs")
    nsub = net.add_subparsers(dest="action", required=True)
    netfile = argparse.ArgumentParser(add_help=False)
    netfile.add_argument("--net", required=True, help="net file")
    netfile.add_argument("--disjoint-postsets", action="store_true",
                         help="also require pairwise disjoint output places within a step")
    nsub.add_parser("derive", parents=[common, netfile], help="comtrace alphabet of the net")
    p = nsub.add_parser("run", parents=[common, netfile], help="fire a step sequence")
    _add_seq_args(p)
    p = nsub.add_parser("reach", parents=[common, netfile], help="bounded execution enumeration")
    p.add_argument("--max-steps", type=int, default=3)
    p.add_argument("--transitions", nargs="+", help="only these transitions may fire")
    p.add_argument("--final", help="keep executions that fire this transition")
    p.add_argument("--budget", type=int, default=eni.DEFAULT_BUDGET)
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "equiv": cmd_equiv,
    "canon": cmd_canon,
    "project": cmd_project,
    "reconstruct": cmd_reconstruct,
    "split": cmd_split,
    "indiv-steps": cmd_indiv_steps,
    "classes": cmd_classes,
    "enumerate": cmd_enumerate,
    "trace": cmd_trace,
    "eni": cmd_eni,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_TRUE
    out = Output(args.output == "structured", args.show_lambda)
    try:
        return COMMANDS[args.command](args, out)
    except NotRealizable as exc:
        print(f"ctk: {exc}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    except (ComtraceError, OSError, ValueError) as exc:
        print(f"ctk: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
