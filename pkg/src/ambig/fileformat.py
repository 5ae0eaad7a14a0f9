"""The line-based automaton text format and lasso-word literals.

Automaton files are UTF-8, one declaration per line, ``#`` starts a comment
to end of line and blank lines are ignored::

    nba
    alphabet: a b c
    states: q0 q1
    initial: q0
    accepting: q1
    trans:
    q0 a q1
    q1 b q0

Tokens are whitespace-free and may not contain ``#`` or ``:``.  Lasso-word
literals are written ``u:v`` where each side concatenates single-character
symbols directly (``ab:b``) or joins longer symbols with dots
(``req.ack:req``); ``u`` may be empty, ``v`` may not.
"""

from __future__ import annotations

from .core import LassoWord, Nba
from .errors import ParseError

_HEADERS = ("alphabet", "states", "initial", "accepting")


def _check_token(token: str, line: int) -> str:
    if ":" in token:
        raise ParseError(f"line {line}: ':' is not allowed inside token {token!r}", line)
    return token


def parse_automaton(text: str | bytes) -> Nba:
    """Parse the automaton file format; errors carry the offending line number."""
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8")
    rows: list[tuple[int, str]] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((no, body))
    pos = 0

    def next_row(expected: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(rows):
            raise ParseError(f"unexpected end of file, expected {expected}")
        row = rows[pos]
        pos += 1
        return row

    no, magic = next_row("'nba' header")
    if magic != "nba":
        raise ParseError(f"line {no}: expected 'nba', found {magic!r}", no)

    fields: dict[str, list[str]] = {}
    lines: dict[str, int] = {}
    for key in _HEADERS:
        no, body = next_row(f"'{key}:' line")
        head, sep, rest = body.partition(":")
        if not sep or head.strip() != key:
            raise ParseError(f"line {no}: expected '{key}:' line, found {body!r}", no)
        fields[key] = [_check_token(t, no) for t in rest.split()]
        lines[key] = no

    no, body = next_row("'trans:' line")
    if body != "trans:":
        raise ParseError(f"line {no}: expected 'trans:' line, found {body!r}", no)

    states = fields["states"]
    if not states:
        raise ParseError(f"line {lines['states']}: empty state set", lines["states"])
    if len(set(states)) != len(states):
        raise ParseError(f"line {lines['states']}: duplicate state id", lines["states"])
    alphabet = fields["alphabet"]
    if len(set(alphabet)) != len(alphabet):
        raise ParseError(f"line {lines['alphabet']}: duplicate symbol", lines["alphabet"])
    state_set = set(states)
    symbol_set = set(alphabet)
    for key in ("initial", "accepting"):
        for q in fields[key]:
            if q not in state_set:
                raise ParseError(
                    f"line {lines[key]}: undeclared state {q!r} in {key} set", lines[key]
                )

    triples = set()
    while pos < len(rows):
        no, body = next_row("transition")
        parts = body.split()
        if len(parts) != 3:
            raise ParseError(f"line {no}: expected 'src sym dst', found {body!r}", no)
        src, sym, dst = (_check_token(p, no) for p in parts)
        if src not in state_set:
            raise ParseError(f"line {no}: undeclared state {src!r}", no)
        if dst not in state_set:
            raise ParseError(f"line {no}: undeclared state {dst!r}", no)
        if sym not in symbol_set:
            raise ParseError(f"line {no}: undeclared symbol {sym!r}", no)
        triples.add((src, sym, dst))

    return Nba.make(states, alphabet, triples, fields["initial"], fields["accepting"])


def _serializable(token: str) -> str:
    if not token or "#" in token or ":" in token or any(c.isspace() for c in token):
        raise ValueError(f"token {token!r} cannot be written in the file format")
    return token


def serialize_automaton(a: Nba) -> str:
    """Canonical text form: declaration order for states and symbols,
    transitions sorted lexicographically.  ``parse_automaton`` inverts it."""
    for tok in (*a.states, *a.alphabet):
        _serializable(tok)

    def header(key: str, tokens) -> str:
        toks = list(tokens)
        return f"{key}:" + (" " + " ".join(toks) if toks else "")

    lines = [
        "nba",
        header("alphabet", a.alphabet),
        header("states", a.states),
        header("initial", a.sort_states(a.initial)),
        header("accepting", a.sort_states(a.accepting)),
        "trans:",
    ]
    lines.extend(f"{s} {x} {t}" for s, x, t in sorted(a.transitions))
    return "\n".join(lines) + "\n"


def parse_symbols(text: str) -> tuple[str, ...]:
    """One side of a lasso literal: dots separate multi-character symbols,
    otherwise every character is its own symbol."""
    if not text:
        return ()
    if "." in text:
        parts = text.split(".")
        if any(not p for p in parts):
            raise ValueError(f"empty symbol in {text!r}")
        return tuple(parts)
    return tuple(text)


def format_symbols(symbols: tuple[str, ...]) -> str:
    if any(len(s) != 1 for s in symbols):
        return ".".join(symbols)
    return "".join(symbols)


def parse_lasso(text: str) -> LassoWord:
    """Parse a ``u:v`` lasso literal; the period ``v`` may not be empty."""
    if text.count(":") != 1:
        raise ValueError(f"lasso literal must contain exactly one ':': {text!r}")
    u, v = text.split(":")
    period = parse_symbols(v)
    if not period:
        raise ValueError(f"lasso literal has an empty period: {text!r}")
    return LassoWord(parse_symbols(u), period)


def format_lasso(w: LassoWord) -> str:
    return f"{format_symbols(w.prefix)}:{format_symbols(w.period)}"
