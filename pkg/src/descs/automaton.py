"""Finite automata with a controllable/uncontrollable event partition.

States are arbitrary hashable values.  Composite constructions use tuples
(products) and frozensets (subset constructions) as state identifiers, so
names never collide; files get flat ``s0, s1, ...`` names only when written.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Hashable, Iterable

from .errors import (AlphabetConflict, AlphabetMismatch, Cancelled,
                     InitialStateRemoved, NondeterministicSpec,
                     StateLimitExceeded)

DEFAULT_STATE_LIMIT = 1_000_000


@dataclass(frozen=True)
class Reserved:
    """Sentinel state introduced by a construction (dump or diagnostic sink)."""
    name: str

    def __str__(self):
        return self.name

    __repr__ = __str__


DUMP = Reserved("__Dd")
DEAD = Reserved("__qd")
UNCTRL_DEAD = Reserved("__qd_prime")
RESERVED_NAMES = frozenset(r.name for r in (DUMP, DEAD, UNCTRL_DEAD))


class CancelToken:
    """Cooperative cancellation flag polled by long-running loops."""

    def __init__(self):
        self._cancelled = False

    def cancel(self):
        self._cancelled = True

    @property
    def cancelled(self):
        return self._cancelled

    def check(self):
        if self._cancelled:
            raise Cancelled("computation cancelled")


@dataclass(frozen=True)
class EventAlphabet:
    events: tuple[str, ...]
    uncontrollable: frozenset[str] = frozenset()

    def __post_init__(self):
        events = tuple(self.events)
        unctrl = frozenset(self.uncontrollable)
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "uncontrollable", unctrl)
        if len(set(events)) != len(events):
            raise ValueError(f"duplicate events in alphabet {events}")
        for e in events:
            if not isinstance(e, str) or not e:
                raise ValueError(f"invalid event symbol {e!r}")
        if not unctrl <= set(events):
            raise ValueError(
                f"uncontrollable events {sorted(unctrl - set(events))} "
                "not in alphabet")

    @property
    def controllable(self) -> frozenset[str]:
        return frozenset(self.events) - self.uncontrollable

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.events)}

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)

    def __contains__(self, event):
        return event in self.index

    def same_as(self, other: "EventAlphabet") -> bool:
        """Equality as sets, ignoring declaration order."""
        return (set(self.events) == set(other.events)
                and self.uncontrollable == other.uncontrollable)

    def union(self, other: "EventAlphabet") -> "EventAlphabet":
        for e in set(self.events) & set(other.events):
            if (e in self.uncontrollable) != (e in other.uncontrollable):
                raise AlphabetConflict(
                    f"event {e!r} is uncontrollable on one side only")
        events = self.events + tuple(e for e in other.events if e not in self)
        return EventAlphabet(events, self.uncontrollable | other.uncontrollable)


@dataclass(frozen=True, eq=False)
class Automaton:
    """Nondeterministic automaton ``(states, alphabet, initial, marked, transitions)``.

    ``transitions`` is a set of ``(source, event, target)`` triples; an event
    is *active* at a state iff at least one triple leaves it with that event.
    The stored order of states is significant only for canonical output.
    """
    states: tuple
    alphabet: EventAlphabet
    initial: Hashable
    marked: frozenset
    transitions: tuple

    def __post_init__(self):
        states = tuple(dict.fromkeys(self.states))
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "marked", frozenset(self.marked))
        index = {x: i for i, x in enumerate(states)}
        if self.initial not in index:
            raise ValueError(f"initial state {self.initial!s} not a state")
        if not self.marked <= index.keys():
            raise ValueError("marked states must be states")
        ev_index = self.alphabet.index
        for src, ev, dst in self.transitions:
            if src not in index or dst not in index:
                raise ValueError(f"transition ({src!s}, {ev}, {dst!s}) "
                                 "has an endpoint outside the state set")
            if ev not in ev_index:
                raise ValueError(f"transition event {ev!r} not in alphabet")
        trans = sorted(set(self.transitions),
                       key=lambda t: (index[t[0]], ev_index[t[1]], index[t[2]]))
        object.__setattr__(self, "transitions", tuple(trans))
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(cls, transitions: Iterable[tuple], initial, marked=(),
              events=None, uncontrollable=(), states=None):
        """Convenience constructor; states default to order of appearance."""
        transitions = list(transitions)
        if events is None:
            events = dict.fromkeys(ev for _, ev, _ in transitions)
        alphabet = events if isinstance(events, EventAlphabet) else \
            EventAlphabet(tuple(events), frozenset(uncontrollable))
        if states is None:
            seen = [initial]
            for src, _, dst in transitions:
                seen += [src, dst]
            seen += list(marked)
            states = seen
        return cls(tuple(states), alphabet, initial, frozenset(marked),
                   tuple(transitions))

    @cached_property
    def _succ(self) -> dict:
        succ: dict = {x: {} for x in self.states}
        for src, ev, dst in self.transitions:
            succ[src].setdefault(ev, []).append(dst)
        return {x: {ev: tuple(ts) for ev, ts in by_ev.items()}
                for x, by_ev in succ.items()}

    @property
    def events(self) -> tuple[str, ...]:
        return self.alphabet.events

    @property
    def uncontrollable(self) -> frozenset[str]:
        return self.alphabet.uncontrollable

    def index_of(self, state) -> int:
        return self._index[state]

    def __contains__(self, state):
        return state in self._index

    def __len__(self):
        return len(self.states)

    def enabled(self, state) -> tuple[str, ...]:
        """Active event set, in declared alphabet order."""
        return tuple(self._succ[state])

    def successors(self, state, event) -> tuple:
        return self._succ[state].get(event, ())

    def moves(self, state) -> dict[str, tuple]:
        return self._succ[state]

    def nondeterministic_choice(self):
        """First ``(state, event)`` with two or more targets, or None."""
        for x in self.states:
            for ev, targets in self._succ[x].items():
                if len(targets) > 1:
                    return x, ev
        return None

    @property
    def is_deterministic(self) -> bool:
        return self.nondeterministic_choice() is None

    def _key(self):
        return (frozenset(self.states), frozenset(self.alphabet.events),
                self.alphabet.uncontrollable, self.initial, self.marked,
                frozenset(self.transitions))

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"{type(self).__name__}(states={len(self.states)}, "
                f"events={list(self.events)}, "
                f"transitions={len(self.transitions)})")


class DetAutomaton(Automaton):
    """Automaton whose transition function is a partial map."""

    def __post_init__(self):
        super().__post_init__()
        choice = self.nondeterministic_choice()
        if choice is not None:
            raise NondeterministicSpec(*choice)

    def step(self, state, event):
        """Unique successor, or None when ``event`` is not active."""
        targets = self._succ[state].get(event)
        return targets[0] if targets else None


def as_deterministic(a: Automaton) -> DetAutomaton:
    if isinstance(a, DetAutomaton):
        return a
    return DetAutomaton(a.states, a.alphabet, a.initial, a.marked,
                        a.transitions)


def _kind(a: Automaton):
    return DetAutomaton if isinstance(a, DetAutomaton) else Automaton


def require_same_alphabet(a: Automaton, b: Automaton):
    if not a.alphabet.same_as(b.alphabet):
        raise AlphabetMismatch(
            f"alphabets differ: {list(a.events)} (uncontrollable "
            f"{sorted(a.uncontrollable)}) vs {list(b.events)} "
            f"(uncontrollable {sorted(b.uncontrollable)})")


def explore(initial, step: Callable, *, limit=None, cancel=None):
    """Breadth-first reachability over an implicit transition system.

    ``step(x)`` yields ``(event, target)`` pairs in the order they should be
    visited.  Returns the reached states in discovery order, the transition
    triples, and a parent map ``state -> (predecessor, event)`` describing
    a shortest path tree.
    """
    limit = DEFAULT_STATE_LIMIT if limit is None else limit
    order = [initial]
    parent = {initial: None}
    transitions = []
    queue = deque(order)
    popped = 0
    while queue:
        x = queue.popleft()
        popped += 1
        if cancel is not None and popped % 256 == 0:
            cancel.check()
        for ev, y in step(x):
            if y not in parent:
                if len(order) >= limit:
                    raise StateLimitExceeded(limit)
                parent[y] = (x, ev)
                order.append(y)
                queue.append(y)
            transitions.append((x, ev, y))
    return order, transitions, parent


def path_to(parent: dict, state) -> tuple[str, ...]:
    """Event string along the parent tree from the root to ``state``."""
    events = []
    while parent[state] is not None:
        state, ev = parent[state]
        events.append(ev)
    return tuple(reversed(events))


def accessible(a: Automaton) -> Automaton:
    """Restriction to reachable states, in breadth-first order."""
    def step(x):
        for ev, targets in a.moves(x).items():
            for y in targets:
                yield ev, y

    order, trans, _ = explore(a.initial, step, limit=len(a.states) + 1)
    reached = set(order)
    return _kind(a)(tuple(order), a.alphabet, a.initial,
                    a.marked & reached, tuple(trans))


def subautomaton(a: Automaton, keep: Iterable) -> Automaton:
    """Restrict ``a`` to the states in ``keep`` (transitions inside ``keep`` only)."""
    keep = set(keep)
    if a.initial not in keep:
        raise InitialStateRemoved(
            f"initial state {a.initial!s} not in the kept state set")
    states = tuple(x for x in a.states if x in keep)
    trans = tuple(t for t in a.transitions if t[0] in keep and t[2] in keep)
    return _kind(a)(states, a.alphabet, a.initial, a.marked & keep, trans)


def parallel(a: Automaton, b: Automaton, *, state_limit=None) -> Automaton:
    """Parallel composition: shared events synchronize, private ones interleave.

    Only the accessible part is built.  Private events are those outside the
    other automaton's alphabet.
    """
    alphabet = a.alphabet.union(b.alphabet)
    only_a = set(a.events) - set(b.events)
    only_b = set(b.events) - set(a.events)

    def step(pair):
        x1, x2 = pair
        m1, m2 = a.moves(x1), b.moves(x2)
        for ev in alphabet.events:
            if ev in m1 and ev in m2:
                for y1 in m1[ev]:
                    for y2 in m2[ev]:
                        yield ev, (y1, y2)
            elif ev in m1 and ev in only_a:
                for y1 in m1[ev]:
                    yield ev, (y1, x2)
            elif ev in m2 and ev in only_b:
                for y2 in m2[ev]:
                    yield ev, (x1, y2)

    init = (a.initial, b.initial)
    order, trans, _ = explore(init, step, limit=state_limit)
    marked = frozenset(p for p in order if p[0] in a.marked and p[1] in b.marked)
    both_det = isinstance(a, DetAutomaton) and isinstance(b, DetAutomaton)
    cls = DetAutomaton if both_det else Automaton
    return cls(tuple(order), alphabet, init, marked, tuple(trans))


def subset_construction(a: Automaton, *, state_limit=None) -> DetAutomaton:
    """Accessible subset automaton over nonempty frozensets of states of ``a``.

    A macro-state is marked iff it contains a marked state.
    """
    def step(macro):
        for ev in a.events:
            target = set()
            for x in macro:
                target.update(a.successors(x, ev))
            if target:
                yield ev, frozenset(target)

    init = frozenset([a.initial])
    order, trans, _ = explore(init, step, limit=state_limit)
    marked = frozenset(m for m in order if m & a.marked)
    return DetAutomaton(tuple(order), a.alphabet, init, marked, tuple(trans))


def minimize(d: DetAutomaton) -> DetAutomaton:
    """Minimal partial DFA preserving both generated and marked languages.

    States of the result are named ``s0, s1, ...`` in breadth-first order.
    """
    d = accessible(as_deterministic(d))
    block = {x: int(x in d.marked) for x in d.states}
    n_blocks = len(set(block.values()))
    while True:
        signatures = {}
        new_block = {}
        for x in d.states:
            sig = (block[x],) + tuple(
                block[d.step(x, ev)] if d.step(x, ev) is not None else -1
                for ev in d.events)
            new_block[x] = signatures.setdefault(sig, len(signatures))
        block = new_block
        if len(signatures) == n_blocks:
            break
        n_blocks = len(signatures)

    # Quotient, then rename by breadth-first discovery from the initial block.
    rep = {}
    for x in d.states:
        rep.setdefault(block[x], x)

    def step(b):
        x = rep[b]
        for ev in d.events:
            y = d.step(x, ev)
            if y is not None:
                yield ev, block[y]

    order, trans, _ = explore(block[d.initial], step)
    name = {b: f"s{i}" for i, b in enumerate(order)}
    marked = frozenset(name[block[x]] for x in d.marked)
    return DetAutomaton(tuple(name[b] for b in order), d.alphabet,
                        name[block[d.initial]], marked,
                        tuple((name[s], ev, name[t]) for s, ev, t in trans))


def determinize(a: Automaton, *, state_limit=None) -> DetAutomaton:
    """Minimal deterministic automaton with the same generated and marked languages."""
    return minimize(subset_construction(a, state_limit=state_limit))


def uncontrollable_augment(a: Automaton) -> Automaton:
    """Route every inactive uncontrollable event to a fresh unmarked dump state."""
    unctrl = [e for e in a.events if e in a.uncontrollable]
    extra = []
    states = a.states if DUMP in a else a.states + (DUMP,)
    for x in states:
        active = a.moves(x) if x in a else {}
        for u in unctrl:
            if u not in active:
                extra.append((x, u, DUMP))
    return _kind(a)(states, a.alphabet, a.initial, a.marked,
                    a.transitions + tuple(extra))


def mark_all(a: Automaton) -> Automaton:
    """Same automaton with every state marked (marked language := generated)."""
    return replace(a, marked=frozenset(a.states))


def rename(a: Automaton, mapping: dict) -> Automaton:
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("renaming is not injective")
    return _kind(a)(tuple(mapping[x] for x in a.states), a.alphabet,
                    mapping[a.initial], frozenset(mapping[x] for x in a.marked),
                    tuple((mapping[s], ev, mapping[t])
                          for s, ev, t in a.transitions))


def render_state(state) -> str:
    """Readable rendering of a (possibly composite) state identifier."""
    if isinstance(state, tuple):
        return "(" + ",".join(render_state(s) for s in state) + ")"
    if isinstance(state, frozenset):
        return "{" + ",".join(sorted(render_state(s) for s in state)) + "}"
    return str(state)


def canonical(a: Automaton) -> tuple[Automaton, dict[str, str]]:
    """Accessible part renamed ``s0, s1, ...`` in breadth-first order.

    Reserved sentinels keep their reserved names.  Returns the renamed
    automaton and a map from new names to renderings of the old states.
    """
    a = accessible(a)
    mapping = {}
    i = 0
    for x in a.states:
        if isinstance(x, Reserved):
            mapping[x] = x.name
        else:
            mapping[x] = f"s{i}"
            i += 1
    names = {mapping[x]: render_state(x) for x in a.states}
    return rename(a, mapping), names
