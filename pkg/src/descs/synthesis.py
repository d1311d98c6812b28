"""Existence test, supervisor construction and closed-loop verification.

The existence test builds the synchronously simulation-based controllable
product of a deterministic specification with the plant.  Two sink states
record failures: ``__qd`` when the specification enables an event that a
synchronized plant state cannot execute, ``__qd_prime`` when the plant can
execute an uncontrollable event the specification forbids.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import (DEAD, UNCTRL_DEAD, Automaton, DetAutomaton,
                        as_deterministic, determinize, explore, parallel,
                        path_to, require_same_alphabet,
                        uncontrollable_augment)
from .errors import NondeterministicSpec, NotControllable
from .languages import inclusion_witness
from .relations import Relation, bisimilar


@dataclass(frozen=True)
class SyncProduct:
    carrier: Automaton
    dead_reachable: bool
    unctrl_violation_reachable: bool
    marking_violations: frozenset
    dead_witness: tuple | None = None
    unctrl_witness: tuple | None = None
    marking_witness: tuple | None = None


@dataclass(frozen=True)
class CheckReport:
    """Outcome of the existence test.

    Each witness is a shortest event string (BFS order, ties broken by
    alphabet order).  ``marking_witness`` is ``(string, (q, x))``.
    """
    dead_witness: tuple | None = None
    unctrl_witness: tuple | None = None
    marking_witness: tuple | None = None
    product_states: int = 0

    @property
    def controllable(self) -> bool:
        return (self.dead_witness is None and self.unctrl_witness is None
                and self.marking_witness is None)

    @property
    def failures(self) -> list[str]:
        names = []
        if self.dead_witness is not None:
            names.append("dead")
        if self.unctrl_witness is not None:
            names.append("uncontrollable")
        if self.marking_witness is not None:
            names.append("marking")
        return names


def sync_product(r: Automaton, g: Automaton, *, state_limit=None,
                 cancel=None) -> SyncProduct:
    require_same_alphabet(r, g)
    unctrl = r.uncontrollable

    def step(pair):
        if pair is DEAD or pair is UNCTRL_DEAD:
            return
        q, x = pair
        mq, mx = r.moves(q), g.moves(x)
        for ev in r.events:
            if ev in mq and ev in mx:
                for q2 in mq[ev]:
                    for x2 in mx[ev]:
                        yield ev, (q2, x2)
            elif ev in mq:
                yield ev, DEAD
            elif ev in mx and ev in unctrl:
                yield ev, UNCTRL_DEAD

    init = (r.initial, g.initial)
    order, trans, parent = explore(init, step, limit=state_limit,
                                   cancel=cancel)
    pairs = [p for p in order if p is not DEAD and p is not UNCTRL_DEAD]
    marked = frozenset(p for p in pairs if p[0] in r.marked and p[1] in g.marked)
    violations = [p for p in pairs if p[0] in r.marked and p[1] not in g.marked]
    carrier = Automaton(tuple(order), r.alphabet, init, marked, tuple(trans))

    dead = DEAD in parent
    uncd = UNCTRL_DEAD in parent
    return SyncProduct(
        carrier=carrier,
        dead_reachable=dead,
        unctrl_violation_reachable=uncd,
        marking_violations=frozenset(violations),
        dead_witness=path_to(parent, DEAD) if dead else None,
        unctrl_witness=path_to(parent, UNCTRL_DEAD) if uncd else None,
        marking_witness=((path_to(parent, violations[0]), violations[0])
                         if violations else None),
    )


def check_existence(r: Automaton, g: Automaton, *, state_limit=None,
                    cancel=None) -> CheckReport:
    """Decide whether a bisimilarity enforcing supervisor exists for ``g`` and ``r``."""
    choice = r.nondeterministic_choice()
    if choice is not None:
        raise NondeterministicSpec(*choice)
    prod = sync_product(r, g, state_limit=state_limit, cancel=cancel)
    return CheckReport(prod.dead_witness, prod.unctrl_witness,
                       prod.marking_witness, len(prod.carrier))


def synthesize_supervisor(r: Automaton, g: Automaton, *, state_limit=None,
                          cancel=None) -> DetAutomaton:
    """The specification augmented with a dump state for uncontrollable events."""
    report = check_existence(r, g, state_limit=state_limit, cancel=cancel)
    if not report.controllable:
        raise NotControllable(report)
    return uncontrollable_augment(as_deterministic(r))


@dataclass(frozen=True)
class ClosedLoopVerdict:
    """Result of :func:`verify_closed_loop`.

    On failure ``condition`` is ``"uncontrollable-disabled"`` with
    ``witness = (supervisor state, event)``, or ``"not-bisimilar"`` with
    ``witness = ((closed-loop initial, spec initial), string or None)``; the
    string, when present, lies in exactly one of the two languages.
    """
    ok: bool
    relation: Relation | None = None
    condition: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def verify_closed_loop(g: Automaton, s: Automaton, r: Automaton, *,
                       state_limit=None) -> ClosedLoopVerdict:
    """Check that ``s`` is a bisimilarity enforcing supervisor for ``g`` and ``r``."""
    require_same_alphabet(g, s)
    require_same_alphabet(g, r)
    unctrl = [e for e in s.events if e in s.uncontrollable]
    for y in s.states:
        active = s.moves(y)
        for u in unctrl:
            if u not in active:
                return ClosedLoopVerdict(False, None, "uncontrollable-disabled",
                                         (y, u))
    closed = parallel(g, s, state_limit=state_limit)
    ok, rel = bisimilar(closed, r)
    if ok:
        return ClosedLoopVerdict(True, rel)
    dc = determinize(closed, state_limit=state_limit)
    diff = inclusion_witness(dc, r) or inclusion_witness(r, dc)
    string = diff[1] if diff else None
    return ClosedLoopVerdict(False, rel, "not-bisimilar",
                             ((closed.initial, r.initial), string))
