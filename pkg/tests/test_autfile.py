import random

import pytest
from hypothesis import given, settings, strategies as st

from descs import DUMP, ParseError, bisimilar, uncontrollable_augment
from descs.autfile import (format_aut, format_report, parse_aut,
                           parse_report, read_aut, to_dot, write_aut)
from descs.oracles import random_alphabet, random_automaton

seeds = st.integers(min_value=0, max_value=2**32 - 1)

SAMPLE = """\
# a small plant
alphabet: a b u
uncontrollable: u
initial: x0
marked: x1

trans:
x0 a x1   # go
x1 u x0
x1 b x2
"""


def test_parse_sample():
    a = parse_aut(SAMPLE)
    assert a.events == ("a", "b", "u")
    assert a.uncontrollable == {"u"}
    assert a.initial == "x0" and a.marked == {"x1"}
    assert ("x1", "b", "x2") in a.transitions
    assert set(a.states) == {"x0", "x1", "x2"}


def test_parse_crlf():
    assert parse_aut(SAMPLE.replace("\n", "\r\n")) == parse_aut(SAMPLE)


def test_optional_lines_default_empty():
    a = parse_aut("alphabet: a\ninitial: s\ntrans:\ns a s\n")
    assert a.uncontrollable == frozenset() and a.marked == frozenset()


@pytest.mark.parametrize("text, line, fragment", [
    ("alphabet: a\nalphabet: b\ninitial: x\n", 2, "duplicate"),
    ("alphabet: a\ninitial: x\ntrans:\nx a\n", 4, "SRC EVENT DST"),
    ("alphabet: a\ninitial: x\ntrans:\nx b y\n", 4, "not in alphabet"),
    ("alphabet: a\ninitial: x y\n", 2, "exactly one"),
    ("alphabet: a\nuncontrollable: u\ninitial: x\n", 2, "not in alphabet"),
    ("alphabet: a a\ninitial: x\n", 1, "duplicate event"),
    ("alphabet: a\ninitial: x\nx a y\n", 3, "unexpected line"),
    ("alphabet: a\ninitial: x$\n", 2, "invalid token"),
    ("alphabet: a\ninitial: x\ntrans: x a y\n", 3, "no values"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_aut(text, "f.aut")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"f.aut:{line}:")


@pytest.mark.parametrize("text", ["initial: x\n", "alphabet: a\n"])
def test_missing_required_line(text):
    with pytest.raises(ParseError, match="missing"):
        parse_aut(text)


def test_read_rejects_invalid_utf8(tmp_path):
    p = tmp_path / "bad.aut"
    p.write_bytes(b"alphabet: a\ninitial: \xff\n")
    with pytest.raises(ParseError, match="UTF-8"):
        read_aut(p)


def test_read_missing_file(tmp_path):
    with pytest.raises(ParseError):
        read_aut(tmp_path / "nope.aut")


def test_format_names_dump_state():
    a = uncontrollable_augment(parse_aut(SAMPLE))
    text, names = format_aut(a)
    assert "x1 u __Dd" not in text
    assert "s0 u __Dd" in text
    assert names["__Dd"] == "__Dd" and names["s0"] == "x0"
    # reserved names come back as the same sentinel
    back = parse_aut(text)
    assert DUMP in back.states and "__Dd" not in back.states
    assert format_aut(back)[0] == text


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_print_parse_print_is_stable(seed):
    rng = random.Random(seed)
    a = random_automaton(rng, random_alphabet(rng), rng.randint(1, 6))
    text, _ = format_aut(a)
    again = parse_aut(text)
    assert format_aut(again)[0] == text
    assert bisimilar(a, again)[0]


def test_write_creates_name_map(tmp_path):
    out = tmp_path / "a.aut"
    write_aut(parse_aut(SAMPLE), out)
    assert read_aut(out) == parse_aut(out.read_text())
    assert "s0 = x0" in (tmp_path / "a.aut.map").read_text()


def test_dot_output():
    dot = to_dot(parse_aut(SAMPLE))
    assert dot.startswith("digraph")
    assert '"x1" -> "x0" [label="u", style=dashed];' in dot


def test_report_formats():
    fields = {"result": "not-controllable", "dead_witness": ("a", "u"),
              "unctrl_witness": None, "empty": (), "ok": False}
    text = format_report(fields)
    assert parse_report(text) == {"result": "not-controllable",
                                  "dead_witness": "a u", "empty": "",
                                  "ok": "false"}
    assert format_report(fields, machine=True).startswith(
        '{"result": "not-controllable", "dead_witness": ["a", "u"]')
