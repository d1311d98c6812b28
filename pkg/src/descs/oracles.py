"""Brute-force reference implementations and the shared random generator.

Nothing in this module calls the product, simulation, language-algebra or
supremal code it is meant to check.  Everything works on explicit strings
and explicit state sets, so it is slow by design and meant for small
instances only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as cartesian

from .automaton import (Automaton, DetAutomaton, EventAlphabet, accessible,
                        rename)
from .errors import BudgetExceeded

EVENT_NAMES = ("a", "b", "c", "d", "e", "f")
UC_FRACTIONS = (0.0, 0.3, 0.6)


@dataclass(frozen=True)
class EnumerationBudget:
    max_depth: int = 6
    max_cases: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.max_cases < 0:
            raise ValueError("max_cases must be non-negative")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _adjacency(a: Automaton) -> dict:
    adj = {}
    for src, ev, dst in a.transitions:
        adj.setdefault((src, ev), set()).add(dst)
    return adj


def _post(adj: dict, states, event) -> frozenset:
    out = set()
    for x in states:
        out |= adj.get((x, event), set())
    return frozenset(out)


def oracle_language(a: Automaton, budget: EnumerationBudget):
    """All generated and marked strings of length at most ``max_depth``.

    Strings are tuples of events.  Walks the transition tree level by level,
    keeping for every string the set of states it can reach.
    """
    adj = _adjacency(a)
    level = {(): frozenset([a.initial])}
    generated, marked = set(), set()
    for depth in range(budget.max_depth + 1):
        nxt = {}
        for s, reached in level.items():
            generated.add(s)
            if reached & a.marked:
                marked.add(s)
            if depth == budget.max_depth:
                continue
            for ev in a.events:
                post = _post(adj, reached, ev)
                if post:
                    nxt[s + (ev,)] = post
        level = nxt
    return generated, marked


def oracle_language_dfs(a: Automaton, budget: EnumerationBudget):
    """Same as :func:`oracle_language`, walking individual runs depth first."""
    generated, marked = set(), set()

    def walk(x, s):
        generated.add(s)
        if x in a.marked:
            marked.add(s)
        if len(s) == budget.max_depth:
            return
        for src, ev, dst in a.transitions:
            if src == x:
                walk(dst, s + (ev,))

    walk(a.initial, ())
    return generated, marked


def oracle_run(a: Automaton, s) -> frozenset:
    """States reached by reading the string ``s``; empty if it is not generated."""
    adj = _adjacency(a)
    reached = frozenset([a.initial])
    for ev in s:
        reached = _post(adj, reached, ev)
        if not reached:
            break
    return reached


def oracle_extensions(a: Automaton, events, max_len: int):
    """Predicate ``s -> exists t over events, |t| <= max_len, st marked``.

    Tries every ``t`` explicitly; results are cached per reached state set.
    """
    adj = _adjacency(a)
    cache = {}

    def from_states(reached, budget):
        key = (reached, budget)
        if key not in cache:
            ok = bool(reached & a.marked)
            if not ok and budget:
                ok = any(from_states(nxt, budget - 1)
                         for nxt in (_post(adj, reached, ev) for ev in events)
                         if nxt)
            cache[key] = ok
        return cache[key]

    def check(s):
        reached = oracle_run(a, s)
        return bool(reached) and from_states(reached, max_len)

    return check


def _configurations(r: Automaton, g: Automaton, max_depth: int):
    """Strings in ``L(r) & L(g)``, one representative per configuration.

    A configuration is ``(r-state, set of g-states)`` reached by a string;
    strings sharing a configuration have identical futures, so enumeration
    stops when no new configuration appears.
    """
    radj, gadj = _adjacency(r), _adjacency(g)
    start = (r.initial, frozenset([g.initial]))
    seen = {start: ()}
    frontier = [((), start)]
    depth = 0
    while frontier:
        if depth >= max_depth:
            raise BudgetExceeded(
                f"configurations still growing at depth {max_depth}")
        nxt = []
        for s, (q, reached) in frontier:
            for ev in r.events:
                q2 = _post(radj, [q], ev)
                if not q2:
                    continue
                reached2 = _post(gadj, reached, ev)
                if not reached2:
                    continue
                (q2,) = q2
                cfg = (q2, reached2)
                if cfg not in seen:
                    seen[cfg] = s + (ev,)
                    nxt.append((s + (ev,), cfg))
        frontier = nxt
        depth += 1
    return seen


def _naive_simulation(a: Automaton, b: Automaton) -> set:
    badj = _adjacency(b)
    rel = {(x1, x2) for x1 in a.states for x2 in b.states
           if x1 not in a.marked or x2 in b.marked}
    changed = True
    while changed:
        changed = False
        for x1, x2 in list(rel):
            ok = True
            for src, ev, y1 in a.transitions:
                if src != x1:
                    continue
                if not any((y1, y2) in rel for y2 in _post(badj, [x2], ev)):
                    ok = False
                    break
            if not ok:
                rel.discard((x1, x2))
                changed = True
    return rel


def oracle_sync_controllable(r: Automaton, g: Automaton,
                             budget: EnumerationBudget | None = None) -> bool:
    """Check both conditions of synchronous simulation-based controllability literally.

    Synchronized pairs and language controllability come from string
    enumeration; the simulation is the naive greatest fixpoint.
    """
    budget = budget or EnumerationBudget(max_depth=10_000)
    configs = _configurations(r, g, budget.max_depth)
    sim = _naive_simulation(r, g)
    radj, gadj = _adjacency(r), _adjacency(g)
    # condition (1): a simulation relating every synchronized pair
    for q, reached in configs:
        for x in reached:
            if (q, x) not in sim:
                return False
    # condition (2): uncontrollable extensions of L(r) inside L(g) stay in L(r)
    for q, reached in configs:
        for u in r.uncontrollable:
            in_plant = bool(_post(gadj, reached, u))
            in_spec = bool(_post(radj, [q], u))
            if in_plant and not in_spec:
                return False
    return True


def oracle_controllable(k: DetAutomaton, g: Automaton,
                        budget: EnumerationBudget):
    """Is ``prefix(L(k)) Sigma_uc & L(g)`` inside ``L(k)`` up to ``max_depth``?"""
    gen_k, _ = oracle_language(k, budget)
    gen_g, _ = oracle_language(g, budget)
    for s in gen_k:
        for u in k.uncontrollable:
            t = s + (u,)
            if len(t) <= budget.max_depth and t in gen_g and t not in gen_k:
                return False
    return True


MAX_SUPREMAL_STATES = 16


def oracle_supremal(r: DetAutomaton, g: Automaton,
                    budget: EnumerationBudget):
    """Union of all controllable sub-automata of the merged product, truncated.

    The product pairs specification states with plant state sets; an event
    survives only if the specification and every plant member enable it.
    Every state subset containing the initial state is tried; those whose
    reachable part lets every plant-enabled uncontrollable event continue
    inside the subset are kept.  Returns ``(generated, marked)`` string sets
    of length at most ``max_depth``.
    """
    radj, gadj = _adjacency(r), _adjacency(g)
    start = (r.initial, frozenset([g.initial]))
    states, edges = [start], {}
    todo = [start]
    while todo:
        q, reached = todo.pop()
        for ev in r.events:
            q2 = _post(radj, [q], ev)
            if not q2 or not all(_post(gadj, [x], ev) for x in reached):
                continue
            (q2,) = q2
            nxt = (q2, _post(gadj, reached, ev))
            edges[(q, reached), ev] = nxt
            if nxt not in states:
                states.append(nxt)
                todo.append(nxt)
    if len(states) > MAX_SUPREMAL_STATES:
        raise BudgetExceeded(f"{len(states)} product states")

    def plant_enables(node, u):
        return bool(_post(gadj, node[1], u))

    def reachable_within(subset):
        seen, todo = {start}, [start]
        while todo:
            n = todo.pop()
            for ev in r.events:
                m = edges.get((n, ev))
                if m is not None and m in subset and m not in seen:
                    seen.add(m)
                    todo.append(m)
        return seen

    others = states[1:]
    generated, marked = set(), set()
    for bits in cartesian((False, True), repeat=len(others)):
        subset = {start} | {n for n, b in zip(others, bits) if b}
        if reachable_within(subset) != subset:
            continue
        if not all(edges.get((n, u)) in subset
                   for n in subset for u in r.uncontrollable
                   if plant_enables(n, u)):
            continue
        level = [((), start)]
        for depth in range(budget.max_depth + 1):
            nxt = []
            for s, n in level:
                generated.add(s)
                q, reached = n
                if q in r.marked and reached <= g.marked:
                    marked.add(s)
                if depth < budget.max_depth:
                    for ev in r.events:
                        m = edges.get((n, ev))
                        if m is not None and m in subset:
                            nxt.append((s + (ev,), m))
            level = nxt
    return generated, marked


# -- random instances -------------------------------------------------------

def random_alphabet(rng: random.Random, max_events=4, uc_fraction=None,
                    min_events=1) -> EventAlphabet:
    n = rng.randint(min_events, max_events)
    events = EVENT_NAMES[:n]
    frac = rng.choice(UC_FRACTIONS) if uc_fraction is None else uc_fraction
    k = round(frac * n)
    return EventAlphabet(events, frozenset(rng.sample(events, k)))


def random_automaton(rng: random.Random, alphabet: EventAlphabet, n_states: int,
                     *, density=0.6, nondet=0.3, p_marked=0.4,
                     prefix="x") -> Automaton:
    """Accessible random automaton; ``nondet=0`` gives a deterministic one."""
    names = [f"{prefix}{i}" for i in range(n_states)]
    trans = []
    for x in names:
        for ev in alphabet.events:
            if rng.random() < density:
                trans.append((x, ev, rng.choice(names)))
                while rng.random() < nondet:
                    trans.append((x, ev, rng.choice(names)))
    marked = [x for x in names if rng.random() < p_marked]
    cls = DetAutomaton if nondet == 0 else Automaton
    return accessible(cls(tuple(names), alphabet, names[0],
                          frozenset(marked), tuple(trans)))


def random_det_automaton(rng, alphabet, n_states, **kw) -> DetAutomaton:
    kw["nondet"] = 0
    kw.setdefault("prefix", "q")
    return random_automaton(rng, alphabet, n_states, **kw)


def relabel(a: Automaton, prefix: str) -> Automaton:
    return rename(a, {x: f"{prefix}{i}" for i, x in enumerate(a.states)})


def random_pruning(rng: random.Random, a: DetAutomaton, *, p_state=0.2,
                   p_trans=0.2, p_unmark=0.3) -> DetAutomaton:
    """Random deterministic sub-automaton: drop states, transitions, markings."""
    keep = {x for x in a.states if x == a.initial or rng.random() >= p_state}
    trans = tuple(t for t in a.transitions
                  if t[0] in keep and t[2] in keep and rng.random() >= p_trans)
    marked = frozenset(x for x in a.states if x in a.marked
                       and x in keep and rng.random() >= p_unmark)
    sub = DetAutomaton(tuple(x for x in a.states if x in keep), a.alphabet,
                       a.initial, marked, trans)
    return accessible(sub)


def _restrict_controllable(rng, a: DetAutomaton, p_trans=0.25,
                           p_unmark=0.3) -> DetAutomaton:
    trans = tuple(t for t in a.transitions
                  if t[1] in a.uncontrollable or rng.random() >= p_trans)
    marked = frozenset(x for x in a.states
                       if x in a.marked and rng.random() >= p_unmark)
    return accessible(DetAutomaton(a.states, a.alphabet, a.initial, marked,
                                   trans))


def random_pair(rng: random.Random, *, max_plant=6, max_spec=6, max_events=4,
                uc_fraction=None, merged=None):
    """Random ``(spec, plant)`` pair, mixing three constructions.

    * an unrelated deterministic specification;
    * a specification carved out of the plant by choosing one successor per
      event and dropping transitions;
    * a specification obtained from ``merged(plant)`` (pass the synchronous
      state merger) by dropping controllable transitions, which often
      yields controllable instances.
    """
    alphabet = random_alphabet(rng, max_events, uc_fraction)
    n = rng.randint(1, max_plant)
    mode = rng.random()
    if mode < 0.3 or merged is None and mode >= 0.65:
        g = random_automaton(rng, alphabet, n, nondet=rng.choice((0.0, 0.2, 0.4)))
        r = random_det_automaton(rng, alphabet, rng.randint(1, max_spec))
    elif mode < 0.65:
        g = random_automaton(rng, alphabet, n, nondet=rng.choice((0.2, 0.4)))
        chosen = {}
        for src, ev, dst in g.transitions:
            chosen.setdefault((src, ev), dst)
        trans = [(s, e, d) for (s, e), d in chosen.items() if rng.random() >= 0.2]
        marked = [x for x in g.states
                  if x in g.marked and rng.random() >= 0.3]
        r = accessible(DetAutomaton(g.states, alphabet, g.initial,
                                    frozenset(marked), tuple(trans)))
        r = relabel(r, "q")
    else:
        g = random_automaton(rng, alphabet, n,
                             nondet=rng.choice((0.0, 0.0, 0.15, 0.3)),
                             density=rng.choice((0.6, 0.8)))
        r = relabel(_restrict_controllable(rng, merged(g)), "q")
    return r, g
