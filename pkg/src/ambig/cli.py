"""Command-line interface: one subcommand per analysis.

Exit codes: 0 on success, 1 on domain errors (reported on stderr as
``error: <CODE>: <detail>``), 2 on usage errors.  All output is
deterministic: identical inputs and flags produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .core import LassoWord, Nba, trim_nba
from .degree import decide_degree_exceeds, exact_degree, omega_closure_hash
from .disambiguation import build_split_tree, disambiguate
from .errors import AmbigError, UnknownSymbolError
from .fileformat import (
    format_lasso,
    format_symbols,
    parse_automaton,
    parse_lasso,
    parse_symbols,
    serialize_automaton,
)
from .oracle import (
    Cardinality,
    count_runs,
    lasso_equiv_sample,
    lasso_member,
    random_nba,
)
from .patterns import PatternWitness, classify

FORMAT_HELP = """\
automaton file format (UTF-8, line-based; '#' starts a comment to end of
line, blank lines are ignored):

    nba
    alphabet: <sym> <sym> ...
    states: <id> <id> ...
    initial: <id> ...
    accepting: <id> ...        (may be empty)
    trans:
    <src> <sym> <dst>          (one triple per line until end of file)

Tokens are whitespace-separated; '#' and ':' may not occur inside tokens.

lasso word literals are written  u:v  with u and v either concatenated
single-character symbols or '.'-separated longer symbols, e.g.  ab:b
:aab   req.ack:req .  The prefix u may be empty, the period v may not.
"""


def _read_automaton(path: str) -> Nba:
    try:
        text = Path(path).read_bytes()
    except OSError as exc:
        raise AmbigError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_automaton(text)


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise AmbigError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _check_lasso_symbols(a: Nba, w: LassoWord) -> None:
    unknown = sorted(w.symbols() - set(a.alphabet))
    if unknown:
        raise UnknownSymbolError(
            f"symbol(s) not in the automaton's alphabet: {' '.join(unknown)}"
        )


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _witness_payload(w: PatternWitness | None):
    if w is None:
        return None
    return {
        "kind": w.kind.value,
        "p": w.p,
        "q": w.q,
        "v": format_symbols(w.label),
        "paths": [list(path.states) for path in w.paths],
    }


def _lasso_arg(text: str) -> LassoWord:
    try:
        return parse_lasso(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _word_arg(text: str) -> tuple[str, ...]:
    try:
        return parse_symbols(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _cmd_classify(ns) -> int:
    a = _read_automaton(ns.file)
    if ns.trim_first:
        a = trim_nba(a)
    result = classify(a)
    if ns.json:
        _emit_json(
            {
                "class": result.tag.value,
                "dpa": result.dpa,
                "witness": _witness_payload(result.witness),
            }
        )
        return 0
    print(f"class: {result.tag.value}")
    if result.dpa is not None:
        print(f"dpa: {result.dpa}")
    w = result.witness
    if w is not None:
        at = w.p if w.q is None else f"{w.p},{w.q}"
        print(f"witness: {w.kind.value} at {at} over {format_symbols(w.label)}")
        for i, path in enumerate(w.paths, start=1):
            print(f"  path{i}: {' '.join(path.states)}")
    return 0


def _cmd_degree(ns) -> int:
    a = _read_automaton(ns.file)
    if ns.exceeds is not None:
        result = decide_degree_exceeds(a, ns.exceeds)
        witness = None if result.witness_lasso is None else format_lasso(result.witness_lasso)
        if ns.json:
            _emit_json({"exceeds": result.exceeds, "witness": witness})
        else:
            print(f"exceeds {ns.exceeds}: {'yes' if result.exceeds else 'no'}")
            if witness is not None:
                print(f"witness: {witness}")
        return 0
    result = exact_degree(a, ns.max)
    witness = None if result.witness_lasso is None else format_lasso(result.witness_lasso)
    if ns.json:
        _emit_json({"exact": result.exact, "witness": witness})
    else:
        print(f"exact: {result.exact}")
        if witness is not None:
            print(f"witness: {witness}")
    return 0


def _cmd_disambiguate(ns) -> int:
    a = _read_automaton(ns.file)
    out = disambiguate(a)
    if ns.trim:
        out = trim_nba(out)
    _write_output(serialize_automaton(out), ns.output)
    if ns.stats:
        cap = 3 ** len(a.states)
        print(f"states: {len(out.states)} (cap 3^{len(a.states)} = {cap})")
        print(f"accepting: {len(out.accepting)}")
    return 0


def _cmd_splittree(ns) -> int:
    a = _read_automaton(ns.file)
    word = ns.word
    depth = ns.depth if ns.depth is not None else len(word)
    if depth > len(word):
        raise AmbigError(
            f"depth {depth} exceeds the given word length {len(word)}"
        )
    tree = build_split_tree(a, word[:depth], reduced=ns.reduced)
    for level in tree.levels:
        rendered = " ".join(
            "{" + ",".join(a.sort_states(label)) + "}" for _, label in level
        )
        print(rendered)
    return 0


def _cmd_count(ns) -> int:
    a = _read_automaton(ns.file)
    _check_lasso_symbols(a, ns.lasso)
    result = count_runs(a, ns.lasso)
    if ns.json:
        payload = {"cardinality": result.kind.value}
        if result.kind is Cardinality.FINITE:
            payload["count"] = result.count
        _emit_json(payload)
        return 0
    print(f"cardinality: {result.kind.value}")
    if result.kind is Cardinality.FINITE:
        print(f"count: {result.count}")
    return 0


def _cmd_member(ns) -> int:
    a = _read_automaton(ns.file)
    _check_lasso_symbols(a, ns.lasso)
    verdict = lasso_member(a, ns.lasso)
    if ns.json:
        _emit_json({"member": verdict})
    else:
        print(f"member: {'yes' if verdict else 'no'}")
    return 0


def _cmd_equiv(ns) -> int:
    a = _read_automaton(ns.file_a)
    b = _read_automaton(ns.file_b)
    diff = lasso_equiv_sample(a, b, ns.max_u, ns.max_v)
    if ns.json:
        _emit_json({"difference": None if diff is None else format_lasso(diff)})
        return 0
    if diff is None:
        print(f"no difference on lassos with |u| <= {ns.max_u}, |v| <= {ns.max_v}")
    else:
        print(f"difference: {format_lasso(diff)}")
    return 0


def _cmd_gen(ns) -> int:
    a = random_nba(ns.seed, ns.states, ns.letters, ns.density, ns.accept_frac)
    _write_output(serialize_automaton(a), ns.output)
    return 0


def _cmd_trim(ns) -> int:
    a = _read_automaton(ns.file)
    _write_output(serialize_automaton(trim_nba(a)), ns.output)
    return 0


def _cmd_hash_omega(ns) -> int:
    a = _read_automaton(ns.file)
    out = omega_closure_hash(a, symbol=ns.symbol)
    _write_output(serialize_automaton(out), ns.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ambig",
        description="Ambiguity analysis and disambiguation for Büchi automata.",
        epilog=FORMAT_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"ambig {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("classify", help="place an automaton in the ambiguity hierarchy")
    p.add_argument("file")
    p.add_argument("--trim-first", action="store_true", help="trim before classifying")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("degree", help="decide or compute the exact finite ambiguity degree")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exceeds", type=int, metavar="D",
                      help="decide whether some word has more than D runs")
    mode.add_argument("--exact", action="store_true", help="compute the exact degree")
    p.add_argument("--max", type=int, metavar="M", help="search bound for --exact")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_degree)

    p = sub.add_parser("disambiguate", help="translate into a finitely ambiguous automaton")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--trim", action="store_true", help="trim the result")
    p.add_argument("--stats", action="store_true", help="print state counts")
    p.set_defaults(handler=_cmd_disambiguate)

    p = sub.add_parser("splittree", help="print split-tree levels for a word prefix")
    p.add_argument("file")
    p.add_argument("--word", required=True, type=_word_arg)
    p.add_argument("--depth", type=int, metavar="K")
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(handler=_cmd_splittree)

    p = sub.add_parser("count", help="count accepting runs on a lasso word")
    p.add_argument("file")
    p.add_argument("--lasso", required=True, type=_lasso_arg, metavar="U:V")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("member", help="decide membership of a lasso word")
    p.add_argument("file")
    p.add_argument("--lasso", required=True, type=_lasso_arg, metavar="U:V")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_member)

    p = sub.add_parser("equiv", help="search bounded lassos for a language difference")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--max-u", type=int, default=4, metavar="K")
    p.add_argument("--max-v", type=int, default=4, metavar="K")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_equiv)

    p = sub.add_parser("gen", help="generate a reproducible random automaton")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--states", type=int, default=4)
    p.add_argument("--letters", type=int, default=2)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--accept-frac", type=float, default=0.5)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("trim", help="remove states useless for acceptance")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_trim)

    p = sub.add_parser("hash-omega", help="NFA to Büchi closure over a fresh padding symbol")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument(
        "--symbol",
        default="hash",
        help="padding symbol (default 'hash'; '#' cannot be written in files)",
    )
    p.set_defaults(handler=_cmd_hash_omega)

    return parser


def run_cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command == "degree" and ns.exact and ns.max is None:
            parser.error("--exact requires --max")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.handler(ns)
    except AmbigError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run_cli(sys.argv[1:]))
