"""Line-oriented automaton files and key/value reports.

An automaton file looks like::

    # comment
    alphabet: a b u
    uncontrollable: u
    initial: x0
    marked: x1
    trans:
    x0 a x1
    x1 u x0

States are declared by appearing after ``initial:``, ``marked:`` or in a
transition line.  Tokens match ``[A-Za-z0-9_.()-]+``.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .automaton import (DEAD, DUMP, UNCTRL_DEAD, Automaton, EventAlphabet,
                        canonical, render_state)
from .errors import ParseError

TOKEN = re.compile(r"[A-Za-z0-9_.()-]+\Z")
KEYWORDS = ("alphabet", "uncontrollable", "initial", "marked", "trans")
# reserved names written by the tool are read back as the same sentinels
_RESERVED = {r.name: r for r in (DUMP, DEAD, UNCTRL_DEAD)}


def _tokens(text, lineno, path):
    toks = text.split()
    for t in toks:
        if not TOKEN.match(t):
            raise ParseError(f"invalid token {t!r}", lineno, path)
    return toks


def parse_aut(text: str, path=None) -> Automaton:
    """Parse the textual format; raises :class:`ParseError` with line numbers."""
    fields = {}
    transitions = []
    in_trans = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        key = head.strip()
        if sep and key in KEYWORDS:
            in_trans = key == "trans"
            if key == "trans":
                if rest.strip():
                    raise ParseError("'trans:' takes no values on its line",
                                     lineno, path)
                continue
            if key in fields:
                raise ParseError(f"duplicate '{key}:' line", lineno, path)
            fields[key] = (_tokens(rest, lineno, path), lineno)
            continue
        if not in_trans:
            raise ParseError(f"unexpected line {line!r}", lineno, path)
        toks = _tokens(line, lineno, path)
        if len(toks) != 3:
            raise ParseError("transition lines must be 'SRC EVENT DST'",
                             lineno, path)
        transitions.append((tuple(toks), lineno))

    for key in ("alphabet", "initial"):
        if key not in fields:
            raise ParseError(f"missing '{key}:' line", None, path)
    events, ev_line = fields["alphabet"]
    if len(set(events)) != len(events):
        raise ParseError("duplicate event in alphabet", ev_line, path)
    if not events:
        raise ParseError("empty alphabet", ev_line, path)
    unctrl, uc_line = fields.get("uncontrollable", ([], None))
    for u in unctrl:
        if u not in events:
            raise ParseError(f"uncontrollable event {u!r} not in alphabet",
                             uc_line, path)
    initial, init_line = fields["initial"]
    if len(initial) != 1:
        raise ParseError("'initial:' takes exactly one state", init_line, path)
    marked, _ = fields.get("marked", ([], None))

    # declaration order: initial, transition endpoints, then marked; this
    # reproduces the order of a file written by write_aut
    states = [initial[0]]
    for (src, ev, dst), lineno in transitions:
        if ev not in events:
            raise ParseError(f"event {ev!r} not in alphabet", lineno, path)
        states += [src, dst]
    states += list(marked)
    def state(tok):
        return _RESERVED.get(tok, tok)

    alphabet = EventAlphabet(tuple(events), frozenset(unctrl))
    return Automaton(tuple(state(x) for x in states), alphabet,
                     state(initial[0]), frozenset(map(state, marked)),
                     tuple((state(src), ev, state(dst))
                           for (src, ev, dst), _ in transitions))


def read_aut(path) -> Automaton:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, path)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError("file is not valid UTF-8", None, path)
    return parse_aut(text, path)


def format_aut(a: Automaton) -> tuple[str, dict[str, str]]:
    """Canonical text of ``a`` plus the map from written names to state renderings."""
    c, names = canonical(a)
    lines = [
        "alphabet: " + " ".join(c.events),
        "uncontrollable: " + " ".join(e for e in c.events
                                      if e in c.uncontrollable),
        f"initial: {c.initial}",
        "marked: " + " ".join(x for x in c.states if x in c.marked),
        "trans:",
    ]
    lines += [f"{s} {ev} {t}" for s, ev, t in c.transitions]
    return "\n".join(line.rstrip() for line in lines) + "\n", names


def format_names(names: dict[str, str]) -> str:
    return "".join(f"{k} = {v}\n" for k, v in names.items())


def write_aut(a: Automaton, path, *, name_map=True):
    """Write the canonical form of ``a``; the name map goes to ``path + '.map'``."""
    text, names = format_aut(a)
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    if name_map:
        Path(str(path) + ".map").write_text(format_names(names),
                                           encoding="utf-8")


def to_dot(a: Automaton) -> str:
    """Plain Graphviz digraph; cosmetic only."""
    def q(x):
        return json.dumps(render_state(x))

    out = ["digraph automaton {", "  rankdir=LR;", '  __start [shape=point];']
    for x in a.states:
        shape = "doublecircle" if x in a.marked else "circle"
        out.append(f"  {q(x)} [shape={shape}];")
    out.append(f"  __start -> {q(a.initial)};")
    for s, ev, t in a.transitions:
        style = ", style=dashed" if ev in a.uncontrollable else ""
        out.append(f"  {q(s)} -> {q(t)} [label={json.dumps(ev)}{style}];")
    out.append("}")
    return "\n".join(out) + "\n"


def format_report(fields: dict, machine=False) -> str:
    """Render a report as ``key = value`` lines or one JSON object.

    Event strings (tuples) become space-separated words; an empty string
    renders as an empty value.  Keys whose value is None are omitted.
    """
    clean = {k: v for k, v in fields.items() if v is not None}
    if machine:
        return json.dumps({k: list(v) if isinstance(v, tuple) else v
                           for k, v in clean.items()}, sort_keys=False) + "\n"
    lines = []
    for k, v in clean.items():
        if isinstance(v, tuple):
            v = " ".join(v)
        elif isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, float):
            v = f"{v:.6f}"
        lines.append(f"{k} = {v}".rstrip())
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if "=" in line:
            k, _, v = line.partition("=")
            out[k.strip()] = v.strip()
    return out
