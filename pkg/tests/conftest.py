import pytest

from descs import Automaton, DetAutomaton

ACCEPTANCE_LINES = []


def aut(transitions, initial="x0", marked=(), events=None, unctrl=(),
        det=False):
    cls = DetAutomaton if det else Automaton
    return cls.build(transitions, initial, marked=marked, events=events,
                     uncontrollable=unctrl)


@pytest.fixture
def dead_end_pair():
    """Spec q0 -a-> q1 -u-> q1 against a plant with a dead-end a-branch."""
    spec = aut([("q0", "a", "q1"), ("q1", "u", "q1")], "q0",
               events=("a", "u"), unctrl=("u",), det=True)
    plant = aut([("x0", "a", "x1"), ("x1", "u", "x1"), ("x0", "a", "x2")],
                events=("a", "u"), unctrl=("u",))
    return spec, plant


@pytest.fixture
def unctrl_escape_pair():
    """Plant can fire uncontrollable e after f where the spec cannot."""
    spec = aut([("q0", "f", "q1")], "q0", events=("f", "e"), unctrl=("e",),
               det=True)
    plant = aut([("x0", "f", "x1"), ("x1", "e", "x2")], events=("f", "e"),
                unctrl=("e",))
    return spec, plant


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
