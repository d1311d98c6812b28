"""Simulation, bisimulation and synchronized-state relations between automata."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .automaton import Automaton, explore, require_same_alphabet


@dataclass(frozen=True)
class Relation:
    """A set of state pairs from ``left`` to ``right``."""
    left: Automaton
    right: Automaton
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for x1, x2 in self.pairs:
            if x1 not in self.left or x2 not in self.right:
                raise ValueError(f"pair ({x1!s}, {x2!s}) outside state sets")

    def __contains__(self, pair):
        return pair in self.pairs

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def relates_initials(self) -> bool:
        return (self.left.initial, self.right.initial) in self.pairs

    def inverse(self) -> "Relation":
        return Relation(self.right, self.left,
                        frozenset((y, x) for x, y in self.pairs))

    def image(self, x) -> frozenset:
        return frozenset(y for x1, y in self.pairs if x1 == x)


def is_simulation(a: Automaton, b: Automaton, pairs) -> bool:
    """Check both closure conditions of a simulation for every pair."""
    pairs = set(pairs)
    for x1, x2 in pairs:
        if x1 in a.marked and x2 not in b.marked:
            return False
        for ev, targets in a.moves(x1).items():
            options = b.successors(x2, ev)
            for y1 in targets:
                if not any((y1, y2) in pairs for y2 in options):
                    return False
    return True


def greatest_simulation(a: Automaton, b: Automaton) -> Relation:
    """Largest simulation relation from ``a`` to ``b``.

    Refinement from the marking-compatible pairs with a counter per
    ``(a-target, b-source, event)`` recording how many ``b``-successors
    still match; a pair is dropped as soon as one of its counters hits zero.
    """
    require_same_alphabet(a, b)
    rel = {(x1, x2) for x1 in a.states for x2 in b.states
           if x1 not in a.marked or x2 in b.marked}

    a_pred = defaultdict(list)   # (y1, ev) -> [x1]
    for x1, ev, y1 in a.transitions:
        a_pred[y1, ev].append(x1)
    b_pred = defaultdict(list)   # y2 -> [(x2, ev)]
    for x2, ev, y2 in b.transitions:
        b_pred[y2].append((x2, ev))

    count = {}
    for y1 in a.states:
        for x2 in b.states:
            for ev, targets in b.moves(x2).items():
                count[y1, x2, ev] = sum((y1, y2) in rel for y2 in targets)

    doomed = []
    for x1, x2 in rel:
        for ev, targets in a.moves(x1).items():
            if any(count[y1, x2, ev] == 0 if (y1, x2, ev) in count else True
                   for y1 in targets):
                doomed.append((x1, x2))
                break
    for pair in doomed:
        rel.discard(pair)
    worklist = list(doomed)

    while worklist:
        y1, y2 = worklist.pop()
        for x2, ev in b_pred[y2]:
            key = (y1, x2, ev)
            count[key] -= 1
            if count[key] == 0:
                for x1 in a_pred[y1, ev]:
                    if (x1, x2) in rel:
                        rel.discard((x1, x2))
                        worklist.append((x1, x2))
    return Relation(a, b, frozenset(rel))


def simulates(a: Automaton, b: Automaton) -> bool:
    """True iff ``a`` is simulated by ``b``."""
    return greatest_simulation(a, b).relates_initials


def bisimulation_blocks(a: Automaton, b: Automaton) -> dict:
    """Coarsest bisimulation partition of the disjoint union of ``a`` and ``b``.

    Keys are ``(0, x)`` for states of ``a`` and ``(1, y)`` for states of
    ``b``; values are block numbers.
    """
    nodes = [(0, x) for x in a.states] + [(1, y) for y in b.states]
    side = (a, b)

    def is_marked(n):
        return n[1] in side[n[0]].marked

    block = {n: int(is_marked(n)) for n in nodes}
    n_blocks = len(set(block.values()))
    while True:
        signatures = {}
        new_block = {}
        for n in nodes:
            aut = side[n[0]]
            moves = frozenset((ev, block[n[0], y])
                              for ev, targets in aut.moves(n[1]).items()
                              for y in targets)
            new_block[n] = signatures.setdefault((block[n], moves),
                                                 len(signatures))
        block = new_block
        if len(signatures) == n_blocks:
            return block
        n_blocks = len(signatures)


def bisimilar(a: Automaton, b: Automaton) -> tuple[bool, Relation]:
    """Decide bisimilarity; also return the cross pairs of the largest bisimulation."""
    require_same_alphabet(a, b)
    block = bisimulation_blocks(a, b)
    by_block = defaultdict(list)
    for y in b.states:
        by_block[block[1, y]].append(y)
    pairs = frozenset((x, y) for x in a.states for y in by_block[block[0, x]])
    rel = Relation(a, b, pairs)
    return rel.relates_initials, rel


def synchronized_state_map(a: Automaton, b: Automaton) -> dict:
    """Map each state of ``a`` to the ``b``-states reachable by a common string."""
    require_same_alphabet(a, b)

    def step(pair):
        x1, x2 = pair
        m2 = b.moves(x2)
        for ev, targets in a.moves(x1).items():
            for y1 in targets:
                for y2 in m2.get(ev, ()):
                    yield ev, (y1, y2)

    order, _, _ = explore((a.initial, b.initial), step)
    syn = {x: set() for x in a.states}
    for x1, x2 in order:
        syn[x1].add(x2)
    return {x: frozenset(ys) for x, ys in syn.items()}


def synchronously_simulated(a: Automaton, b: Automaton) -> bool:
    """True iff some simulation from ``a`` to ``b`` contains every synchronized pair."""
    sim = greatest_simulation(a, b)
    if not sim.relates_initials:
        return False
    syn = synchronized_state_map(a, b)
    return all((x1, x2) in sim for x1, ys in syn.items() for x2 in ys)
