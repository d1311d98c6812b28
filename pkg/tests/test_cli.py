import json
import subprocess
import sys

import pytest

from descs import DUMP, bisimilar, lang_equal
from descs.autfile import parse_report, read_aut
from descs.cli import main

PLANT = """\
alphabet: a b u
uncontrollable: u
initial: x0
marked: x2 x3
trans:
x0 a x1
x1 u x0
x1 b x2
x1 b x3
x2 a x1
x0 b x3
"""

SPEC = """\
alphabet: a b u
uncontrollable: u
initial: q0
marked: q2
trans:
q0 a q1
q1 u q0
q1 b q2
"""

DEAD_PLANT = """\
alphabet: a u
uncontrollable: u
initial: x0
trans:
x0 a x1
x1 u x1
x0 a x2
"""

DEAD_SPEC = """\
alphabet: a u
uncontrollable: u
initial: q0
trans:
q0 a q1
q1 u q1
"""

EMPTY_PLANT = "alphabet: u\nuncontrollable: u\ninitial: x0\ntrans:\nx0 u x1\n"
EMPTY_SPEC = "alphabet: u\nuncontrollable: u\ninitial: q0\n"

NONDET_SPEC = """\
alphabet: a
initial: q0
trans:
q0 a q1
q0 a q2
"""


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_passing(files, capsys):
    code, out, _ = run(capsys, "check", files("g", PLANT), files("r", SPEC))
    assert code == 0
    assert parse_report(out)["result"] == "controllable"


def test_check_failing_reports_witness(files, capsys):
    code, out, _ = run(capsys, "check", files("g", DEAD_PLANT),
                       files("r", DEAD_SPEC))
    rep = parse_report(out)
    assert code == 1
    assert rep["result"] == "not-controllable"
    assert rep["failed"] == "dead"
    assert rep["dead_witness"] == "a u"


def test_check_nondeterministic_spec(files, capsys):
    code, _, err = run(capsys, "check", files("g", PLANT),
                       files("r", NONDET_SPEC))
    assert code == 2
    assert "q0" in err and "'a'" in err


def test_check_parse_error(files, capsys):
    code, _, err = run(capsys, "check", files("g", "alphabet: a\n"),
                       files("r", SPEC))
    assert code == 2 and "missing 'initial:'" in err


def test_alphabet_mismatch_is_usage_error(files, capsys):
    code, _, _ = run(capsys, "check", files("g", DEAD_PLANT), files("r", SPEC))
    assert code == 2


def test_state_limit(files, capsys, monkeypatch):
    g, r = files("g", PLANT), files("r", SPEC)
    code, out, _ = run(capsys, "check", g, r, "--state-limit", "2")
    assert code == 3
    assert parse_report(out)["result"] == "state-limit-exceeded"
    monkeypatch.setenv("DESCS_STATE_LIMIT", "2")
    assert run(capsys, "check", g, r)[0] == 3
    # the flag wins over the environment
    assert run(capsys, "check", g, r, "--state-limit", "100")[0] == 0


def test_synthesize_then_verify(files, capsys, tmp_path):
    g, r = files("g", PLANT), files("r", SPEC)
    out = str(tmp_path / "sup.aut")
    code, _, _ = run(capsys, "synthesize", g, r, "-o", out)
    assert code == 0
    sup = read_aut(out)
    assert DUMP in sup.states
    for x in sup.states:
        assert "u" in sup.enabled(x)
    code, text, _ = run(capsys, "verify", g, out, r)
    assert code == 0 and parse_report(text)["result"] == "bisimilar"


def test_synthesize_failing_writes_nothing(files, capsys, tmp_path):
    out = tmp_path / "sup.aut"
    code, _, _ = run(capsys, "synthesize", files("g", DEAD_PLANT),
                     files("r", DEAD_SPEC), "-o", str(out))
    assert code == 1 and not out.exists()


def test_write_failure(files, capsys, tmp_path):
    out = str(tmp_path / "missing" / "sup.aut")
    code, _, err = run(capsys, "synthesize", files("g", PLANT),
                       files("r", SPEC), "-o", out)
    assert code == 4 and "cannot write" in err


def test_verify_rejects_spec_as_supervisor(files, capsys):
    g, r = files("g", PLANT), files("r", SPEC)
    code, out, _ = run(capsys, "verify", g, r, r)
    rep = parse_report(out)
    assert code == 1
    assert rep["failed"] == "uncontrollable-disabled"
    assert rep["event"] == "u"


def test_supremal_methods_byte_identical(files, capsys, tmp_path):
    g, r = files("g", DEAD_PLANT), files("r", DEAD_SPEC)
    outs = []
    for method in ("fixpoint", "formula"):
        out = tmp_path / f"{method}.aut"
        code, text, _ = run(capsys, "supremal", g, r, "-o", str(out),
                            "--method", method)
        assert code == 0
        assert parse_report(text)["result"] == "nonempty"
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_supremal_of_controllable_spec(files, capsys, tmp_path):
    g, r = files("g", PLANT), files("r", SPEC)
    out = str(tmp_path / "sup.aut")
    assert run(capsys, "supremal", g, r, "-o", out)[0] == 0
    assert lang_equal(read_aut(out), read_aut(r))


def test_supremal_empty(files, capsys, tmp_path):
    out = tmp_path / "sup.aut"
    code, text, _ = run(capsys, "supremal", files("g", EMPTY_PLANT),
                        files("r", EMPTY_SPEC), "-o", str(out))
    assert code == 1
    assert parse_report(text)["result"] == "empty"
    assert not out.exists()


def test_bisim_and_sim(files, capsys):
    g = files("g", PLANT)
    assert run(capsys, "bisim", g, g)[0] == 0
    r = files("r", SPEC)
    code, out, _ = run(capsys, "bisim", g, r)
    assert code == 1 and parse_report(out)["result"] == "not-bisimilar"
    assert run(capsys, "sim", r, g)[0] == 0


def test_compose_with_neutral_automaton(files, capsys, tmp_path):
    g = files("g", PLANT)
    neutral = files("n", "alphabet: a b u\nuncontrollable: u\ninitial: n\n"
                         "marked: n\ntrans:\nn a n\nn b n\nn u n\n")
    out, dot = tmp_path / "c.aut", tmp_path / "c.dot"
    code, _, _ = run(capsys, "compose", g, neutral, "-o", str(out),
                     "--dot", str(dot))
    assert code == 0
    assert bisimilar(read_aut(out), read_aut(g))[0]
    assert dot.read_text().startswith("digraph")


def test_compose_prints_automaton_to_stdout(files, capsys):
    g = files("g", PLANT)
    code, out, _ = run(capsys, "compose", g, g)
    assert code == 0 and out.startswith("alphabet: a b u\n")


def test_fsyn_and_det(files, capsys, tmp_path):
    g = files("g", SPEC)
    for cmd in ("fsyn", "det"):
        out = str(tmp_path / f"{cmd}.aut")
        assert run(capsys, cmd, g, "-o", out)[0] == 0
        assert lang_equal(read_aut(out), read_aut(g))


def test_machine_report_and_seed(files, capsys, tmp_path):
    rep = tmp_path / "rep.json"
    code, out, _ = run(capsys, "check", files("g", DEAD_PLANT),
                       files("r", DEAD_SPEC), "--machine", "--seed", "5",
                       "--report", str(rep))
    data = json.loads(out)
    assert code == 1
    assert data["dead_witness"] == ["a", "u"] and data["seed"] == 5
    assert json.loads(rep.read_text()) == data


def test_reports_are_stable(files, capsys):
    g, r = files("g", PLANT), files("r", SPEC)
    assert run(capsys, "check", g, r) == run(capsys, "check", g, r)
    _, out, _ = run(capsys, "check", g, r, "--timing")
    assert "elapsed_s" in parse_report(out)


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "descs", "check",
                           files("g", PLANT), files("r", SPEC)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "result = controllable" in proc.stdout


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check"])
    assert info.value.code == 2
