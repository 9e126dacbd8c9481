"""Source-level rewrites of formulas."""

from __future__ import annotations

from typing import Sequence

from .atoms import FreshAtomRegistry
from .errors import UnknownAgent
from .formula import (
    AX, EX, And, Formula, Forall, Implies, Next, Not, Or, Prop, Relax, RelaxCo, StratQ, StratQCo,
    Until, children, conj, props, rebuild,
)
from .game import MID


def _check_coalition(names, agents):
    for a in names:
        if a not in agents:
            raise UnknownAgent(f"coalition mentions undeclared agent {a}")


def eliminate_complements(f: Formula, agents: Sequence[str]) -> Formula:
    agents = tuple(agents)

    def go(g):
        if isinstance(g, (StratQ, StratQCo, Relax, RelaxCo)):
            _check_coalition(g.coalition, agents)
        kids = [go(h) for h in children(g)]
        if isinstance(g, StratQCo):
            rest = tuple(a for a in agents if a not in g.coalition)
            return StratQ(rest, g.memoryless, kids[0], pos=g.pos)
        if isinstance(g, RelaxCo):
            rest = tuple(a for a in agents if a not in g.coalition)
            return Relax(rest, kids[0], pos=g.pos)
        if all(k is h for k, h in zip(kids, children(g))):
            return g
        return rebuild(g, kids)

    return go(f)


def strat_depth(f: Formula) -> int:
    below = max((strat_depth(g) for g in children(f)), default=0)
    return below + 1 if isinstance(f, (StratQ, StratQCo)) else below


def has_memoryful(f: Formula) -> bool:
    """True if some quantifier over a non-empty coalition ranges over memoryful strategies."""
    if isinstance(f, (StratQ, StratQCo)) and f.coalition and not f.memoryless:
        return True
    return any(has_memoryful(g) for g in children(f))


def has_complements(f: Formula) -> bool:
    if isinstance(f, (StratQCo, RelaxCo)):
        return True
    return any(has_complements(g) for g in children(f))


def ex1(phi: Formula) -> Formula:
    """Exactly one immediate successor satisfies ``phi``.

    The quantified proposition marks an arbitrary set of successors; if it
    contains a ``phi``-successor then it must contain all of them.
    """
    p = Prop(FreshAtomRegistry().fresh(props(phi)))
    return And((EX(phi), Forall(p.name, Implies(EX(And((phi, p))), AX(Implies(phi, p))))))


def translate_formula_tb(f: Formula, p: int) -> Formula:
    """Relativise a formula to the original positions of a turn-based game with ``p`` agents."""
    mid = Prop(MID)

    def go(g):
        if isinstance(g, Next):
            out = go(g.arg)
            for _ in range(p):
                out = Next(out)
            return out
        if isinstance(g, Until):
            if p == 1:
                return Until(go(g.left), go(g.right))
            return Until(Or((mid, go(g.left))), conj([Not(mid), go(g.right)]))
        return rebuild(g, [go(h) for h in children(g)])

    return go(f)
