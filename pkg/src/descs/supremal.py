"""Supremal synchronously simulation-based controllable sub-specifications.

Two independent routes compute the same object:

* :func:`supremal_fixpoint` removes, from the product of the merged plant,
  the specification and the determinized plant, every state from which an
  uncontrollable string escapes the specification;
* :func:`supremal_formula` evaluates the closed-form language expression
  ``M = K - [(L(G) - K) / Sigma_uc*] Sigma*`` with
  ``K = L(R) & L(Fsyn(G))``, and marks ``M & Lm(R) & Lm(Fsyn(G))``.

Both return canonical (minimal, breadth-first named) automata, so equal
languages give identical automata.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import (DUMP, Automaton, DetAutomaton, accessible,
                        as_deterministic, determinize, explore, mark_all,
                        minimize, parallel, require_same_alphabet,
                        subautomaton, uncontrollable_augment)
from .languages import (concat_sigma_star, lang_difference_marked,
                        lang_intersect, lang_minus, quotient_unctrl)


def f_syn(g: Automaton, *, state_limit=None) -> DetAutomaton:
    """Synchronous state merger of ``g``.

    Subset construction that keeps an event only when every member of the
    macro-state enables it; a macro-state is marked iff all its members are.
    """
    def step(macro):
        for ev in g.events:
            target = set()
            for x in macro:
                succ = g.successors(x, ev)
                if not succ:
                    break
                target.update(succ)
            else:
                yield ev, frozenset(target)

    init = frozenset([g.initial])
    order, trans, _ = explore(init, step, limit=state_limit)
    marked = frozenset(m for m in order if m <= g.marked)
    return DetAutomaton(tuple(order), g.alphabet, init, marked, tuple(trans))


@dataclass(frozen=True)
class SupremalResult:
    sub_spec: DetAutomaton | None
    method: str
    iterations: int | None = None

    @property
    def outcome(self) -> str:
        return "empty" if self.sub_spec is None else "nonempty"

    @property
    def empty(self) -> bool:
        return self.sub_spec is None


def escape_layers(product: Automaton, seeds, *, cancel=None) -> list[set]:
    """Backward closure of ``seeds`` under uncontrollable transitions.

    Returns ``[Z0, Z1, ..., Zk]`` where ``Z(i+1)`` adds every state with an
    uncontrollable move into ``Zi`` and ``Zk`` is the first repeated layer.
    """
    unctrl = [e for e in product.events if e in product.uncontrollable]
    layers = [set(seeds)]
    while True:
        if cancel is not None:
            cancel.check()
        z = layers[-1]
        grown = set(z)
        for x in product.states:
            if x in z:
                continue
            if any(y in z for u in unctrl for y in product.successors(x, u)):
                grown.add(x)
        layers.append(grown)
        if grown == z:
            return layers


def fixpoint_product(r: DetAutomaton, g: Automaton, *,
                     state_limit=None) -> Automaton:
    """The automaton ``(Fsyn(g) || r)_uc || det(g)`` searched by the fixpoint."""
    require_same_alphabet(r, g)
    merged = parallel(f_syn(g, state_limit=state_limit), as_deterministic(r),
                      state_limit=state_limit)
    augmented = uncontrollable_augment(merged)
    return parallel(augmented, determinize(g, state_limit=state_limit),
                    state_limit=state_limit)


def supremal_fixpoint(r: DetAutomaton, g: Automaton, *, state_limit=None,
                      cancel=None) -> SupremalResult:
    g2 = fixpoint_product(r, g, state_limit=state_limit)
    seeds = [z for z in g2.states if z[0] is DUMP]
    layers = escape_layers(g2, seeds, cancel=cancel)
    bad = layers[-1]
    iterations = len(layers) - 2
    if g2.initial in bad:
        return SupremalResult(None, "fixpoint", iterations)
    keep = [z for z in g2.states if z not in bad]
    sub = accessible(subautomaton(g2, keep))
    return SupremalResult(minimize(as_deterministic(sub)), "fixpoint",
                          iterations)


def formula_languages(r: DetAutomaton, g: Automaton, *, state_limit=None):
    """Evaluate the closed-form expression.

    Returns ``(m, m_marked)``: ``m`` has generated language ``M`` (every
    state marked), ``m_marked`` has marked language ``M'``.  When ``M`` is
    empty ``m`` is the canonical empty language and ``m_marked`` is None.
    """
    require_same_alphabet(r, g)
    r = as_deterministic(r)
    fs = f_syn(g, state_limit=state_limit)
    k = lang_intersect(r, fs, state_limit=state_limit)
    escaped = lang_difference_marked(determinize(g, state_limit=state_limit),
                                     k, state_limit=state_limit)
    forbidden = concat_sigma_star(quotient_unctrl(escaped))
    m = lang_minus(mark_all(k), forbidden, state_limit=state_limit)
    if not m.marked:
        return m, None
    m_marked = lang_intersect(m, lang_intersect(r, fs), state_limit=state_limit)
    return m, m_marked


def supremal_formula(r: DetAutomaton, g: Automaton, *,
                     state_limit=None) -> SupremalResult:
    _, carrier = formula_languages(r, g, state_limit=state_limit)
    if carrier is None:
        return SupremalResult(None, "formula")
    return SupremalResult(minimize(carrier), "formula")


def supremal(r: DetAutomaton, g: Automaton, *, method="fixpoint",
             state_limit=None, cancel=None) -> SupremalResult:
    if method == "fixpoint":
        return supremal_fixpoint(r, g, state_limit=state_limit, cancel=cancel)
    if method == "formula":
        return supremal_formula(r, g, state_limit=state_limit)
    raise ValueError(f"unknown method {method!r}")
