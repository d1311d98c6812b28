"""Regular-language operations on deterministic automata.

A deterministic automaton carries two languages: the generated language
(strings with a defined run, always prefix-closed) and the marked language.
Operations here state which of the two they act on.  Completion with a sink
happens only inside a product and is never part of a returned automaton.
"""
from __future__ import annotations

from .automaton import (DetAutomaton, Reserved, accessible, as_deterministic,
                        explore, path_to, require_same_alphabet,
                        subset_construction)

_SINK = None


def empty_language(alphabet) -> DetAutomaton:
    """Canonical empty language: one unmarked initial state, no transitions."""
    return DetAutomaton(("s0",), alphabet, "s0", frozenset(), ())


def trim(d: DetAutomaton) -> DetAutomaton:
    """Keep reachable states that can reach a marked state.

    Returns :func:`empty_language` when nothing is marked.
    """
    d = accessible(d)
    alive = set(d.marked)
    changed = True
    while changed:
        changed = False
        for src, _, dst in d.transitions:
            if dst in alive and src not in alive:
                alive.add(src)
                changed = True
    if d.initial not in alive:
        return empty_language(d.alphabet)
    return DetAutomaton(
        tuple(x for x in d.states if x in alive), d.alphabet, d.initial,
        d.marked, tuple(t for t in d.transitions
                        if t[0] in alive and t[2] in alive))


def _product(a: DetAutomaton, b: DetAutomaton, *, complete_b: bool,
             accept, state_limit=None) -> DetAutomaton:
    """Run ``a`` and ``b`` in lock-step.

    With ``complete_b`` the product follows every move of ``a`` and parks
    ``b`` in a sink (``None``) when it has no move; otherwise both must move.
    ``accept(pa, pb)`` decides marking of a product state.
    """
    require_same_alphabet(a, b)

    def step(pair):
        qa, qb = pair
        for ev in a.events:
            ya = a.step(qa, ev)
            if ya is None:
                continue
            yb = b.step(qb, ev) if qb is not _SINK else _SINK
            if yb is _SINK and not complete_b:
                continue
            yield ev, (ya, yb)

    init = (a.initial, b.initial)
    order, trans, _ = explore(init, step, limit=state_limit)
    marked = frozenset(p for p in order if accept(*p))
    return DetAutomaton(tuple(order), a.alphabet, init, marked, tuple(trans))


def lang_intersect(a, b, *, state_limit=None) -> DetAutomaton:
    """Generated language ``L(a) & L(b)`` and marked language ``Lm(a) & Lm(b)``."""
    a, b = as_deterministic(a), as_deterministic(b)
    return _product(a, b, complete_b=False, state_limit=state_limit,
                    accept=lambda qa, qb: qa in a.marked and qb in b.marked)


def lang_difference_marked(a, b, *, state_limit=None) -> DetAutomaton:
    """Marked language ``L(a) - L(b)`` (difference of generated languages).

    The result is trimmed, so its generated language is the prefix closure
    of the difference.
    """
    a, b = as_deterministic(a), as_deterministic(b)
    prod = _product(a, b, complete_b=True, state_limit=state_limit,
                    accept=lambda qa, qb: qb is _SINK)
    return trim(prod)


def lang_minus(a, b, *, state_limit=None) -> DetAutomaton:
    """Marked language ``Lm(a) - Lm(b)``, trimmed."""
    a, b = as_deterministic(a), as_deterministic(b)
    prod = _product(
        a, b, complete_b=True, state_limit=state_limit,
        accept=lambda qa, qb: qa in a.marked and (qb is _SINK
                                                  or qb not in b.marked))
    return trim(prod)


def quotient_unctrl(a) -> DetAutomaton:
    """Marked language ``Lm(a) / Sigma_uc*``; generated language unchanged.

    A state is marked iff a marked state is reachable from it using
    uncontrollable transitions only.
    """
    a = as_deterministic(a)
    marked = set(a.marked)
    changed = True
    while changed:
        changed = False
        for src, ev, dst in a.transitions:
            if ev in a.uncontrollable and dst in marked and src not in marked:
                marked.add(src)
                changed = True
    return DetAutomaton(a.states, a.alphabet, a.initial, frozenset(marked),
                        a.transitions)


_ALL = Reserved("__all")


def concat_sigma_star(a) -> DetAutomaton:
    """Marked language ``Lm(a) . Sigma*``.

    Acceptance is made absorbing: the first marked state reached is replaced
    by a single accepting state with a self-loop on every event.
    """
    a = as_deterministic(a)

    def lift(x):
        return _ALL if x in a.marked else x

    def step(x):
        for ev in a.events:
            if x is _ALL:
                yield ev, _ALL
            else:
                y = a.step(x, ev)
                if y is not None:
                    yield ev, lift(y)

    init = lift(a.initial)
    order, trans, _ = explore(init, step)
    marked = frozenset([_ALL]) & frozenset(order)
    return trim(DetAutomaton(tuple(order), a.alphabet, init, marked,
                             tuple(trans)))


def prefix_close(a) -> DetAutomaton:
    """Marked language ``prefix-closure(Lm(a))``; non-coreachable states dropped."""
    t = trim(as_deterministic(a))
    if not t.marked:
        return t
    return DetAutomaton(t.states, t.alphabet, t.initial, frozenset(t.states),
                        t.transitions)


def lang_controllable(k, g, *, state_limit=None):
    """Language controllability of ``L(k)`` with respect to ``L(g)``.

    Returns ``(True, None)`` or ``(False, witness)`` where ``witness`` is a
    shortest string ``s + (u,)`` with ``s`` in ``L(k)``, ``u`` uncontrollable,
    and ``s u`` in ``L(g)`` but not in ``L(k)``.
    """
    k = as_deterministic(k)
    require_same_alphabet(k, g)
    dg = subset_construction(g, state_limit=state_limit)
    unctrl = [e for e in k.events if e in k.uncontrollable]

    def step(pair):
        q, m = pair
        for ev in k.events:
            q2, m2 = k.step(q, ev), dg.step(m, ev)
            if q2 is not None and m2 is not None:
                yield ev, (q2, m2)

    order, _, parent = explore((k.initial, dg.initial), step,
                               limit=state_limit)
    for q, m in order:
        for u in unctrl:
            if dg.step(m, u) is not None and k.step(q, u) is None:
                return False, path_to(parent, (q, m)) + (u,)
    return True, None


def _inclusion_failure(a: DetAutomaton, b: DetAutomaton):
    """Shortest ``(kind, string)`` witnessing non-inclusion of ``a`` in ``b``."""
    require_same_alphabet(a, b)

    def step(pair):
        qa, qb = pair
        if qb is _SINK:
            return
        for ev in a.events:
            ya = a.step(qa, ev)
            if ya is not None:
                yield ev, (ya, b.step(qb, ev))

    order, _, parent = explore((a.initial, b.initial), step)
    for qa, qb in order:
        if qb is _SINK:
            return "generated", path_to(parent, (qa, qb))
        if qa in a.marked and qb not in b.marked:
            return "marked", path_to(parent, (qa, qb))
    return None


def inclusion_witness(a, b):
    """None if ``L(a) <= L(b)`` and ``Lm(a) <= Lm(b)``, else ``(kind, string)``."""
    return _inclusion_failure(as_deterministic(a), as_deterministic(b))


def lang_subset(a, b) -> bool:
    """Inclusion of both generated and marked languages."""
    return inclusion_witness(a, b) is None


def lang_equal(a, b) -> bool:
    return lang_subset(a, b) and lang_subset(b, a)


def is_empty(a) -> bool:
    """True iff the marked language is empty."""
    return not trim(as_deterministic(a)).marked
