"""Seeded random games, structures and formulas for the property suites."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .formula import (
    APath, And, Bottom, EPath, Exists, Forall, Formula, Implies, Next, Not, Or, Prop, Relax,
    RelaxCo, StratQ, StratQCo, Top, Until, F, G,
)
from .game import Cgso, KripkeStructure, ObservationPartition


@dataclass(frozen=True)
class GameShape:
    min_states: int = 2
    max_states: int = 4
    agents: int = 2
    moves: int = 2
    props: tuple[str, ...] = ("p", "q")
    uniform_bias: float = 0.5


def random_partition(rng: random.Random, states) -> ObservationPartition:
    blocks: dict[int, list] = {}
    for q in states:
        blocks.setdefault(rng.randrange(len(states)), []).append(q)
    return ObservationPartition(tuple(tuple(b) for _, b in sorted(blocks.items())))


def random_game(rng: random.Random, shape: GameShape = GameShape()) -> Cgso:
    n = rng.randint(shape.min_states, shape.max_states)
    states = tuple(f"q{i}" for i in range(n))
    agents = tuple(f"a{i + 1}" for i in range(shape.agents))
    moves = tuple(f"m{i + 1}" for i in range(shape.moves))
    label = {q: frozenset(p for p in shape.props if rng.random() < 0.4) for q in states}
    edg = {}
    for q in states:
        for mv in itertools.product(moves, repeat=len(agents)):
            edg[(q, mv)] = rng.choice(states)
    if rng.random() < shape.uniform_bias:
        part = random_partition(rng, states)
        obs = {a: part for a in agents}
    else:
        obs = {a: random_partition(rng, states) for a in agents}
    return Cgso(states, shape.props, label, agents, moves, edg, obs, None, states[0])


def random_kripke(rng: random.Random, n: int = 3, props=("p", "q"), max_out: int = 2) -> KripkeStructure:
    states = tuple(f"s{i}" for i in range(n))
    trans = {}
    for q in states:
        k = rng.randint(1, max_out)
        trans[q] = tuple(dict.fromkeys(rng.choice(states) for _ in range(k)))
    label = {q: frozenset(p for p in props if rng.random() < 0.5) for q in states}
    return KripkeStructure(states, trans, label, tuple(props), states[0])


# formulas


def _coalition(rng, agents, allow_empty=True):
    while True:
        out = tuple(a for a in agents if rng.random() < 0.5)
        if out or allow_empty:
            return out


def random_ltl(rng: random.Random, depth: int, props=("p", "q")) -> Formula:
    """Path formula over ``props`` with temporal nesting at most ``depth``."""
    if depth <= 0 or rng.random() < 0.25:
        return _literal(rng, props)
    r = rng.random()
    if r < 0.2:
        return Not(random_ltl(rng, depth, props))
    if r < 0.35:
        return And((random_ltl(rng, depth, props), random_ltl(rng, depth, props)))
    if r < 0.45:
        return Or((random_ltl(rng, depth, props), random_ltl(rng, depth, props)))
    if r < 0.6:
        return Next(random_ltl(rng, depth - 1, props))
    if r < 0.75:
        return Until(random_ltl(rng, depth - 1, props), random_ltl(rng, depth - 1, props))
    if r < 0.87:
        return F(random_ltl(rng, depth - 1, props))
    return G(random_ltl(rng, depth - 1, props))


def _literal(rng, props):
    r = rng.random()
    if r < 0.05:
        return Top()
    if r < 0.08:
        return Bottom()
    p = Prop(rng.choice(props))
    return Not(p) if r < 0.3 else p


def random_atl0(rng: random.Random, agents, strat: int = 2, temporal: int = 3, props=("p", "q")) -> Formula:
    """Memoryless strategy formula with bounded strategy and temporal depth, rooted at a quantifier."""

    def state(sd, td, top=False):
        r = rng.random()
        if sd > 0 and td > 0 and (top or r < 0.45):
            A = _coalition(rng, agents)
            body = path(sd - 1, td)
            if rng.random() < 0.3:
                return Not(StratQ(A, True, Not(body)))
            return StratQ(A, True, body)
        if r < 0.6:
            return _literal(rng, props)
        if r < 0.7:
            return Not(state(sd, td))
        if r < 0.8:
            return Relax(_coalition(rng, agents, False), state(sd, td))
        if r < 0.9:
            return And((state(sd, td), state(sd, td)))
        return Or((state(sd, td), state(sd, td)))

    def path(sd, td):
        r = rng.random()
        if td <= 0 or r < 0.15:
            return state(sd, 0) if td <= 0 else state(sd, td)
        if r < 0.3:
            return Next(path(sd, td - 1))
        if r < 0.45:
            return Until(path(sd, td - 1), path(sd, td - 1))
        if r < 0.6:
            return F(path(sd, td - 1))
        if r < 0.72:
            return G(path(sd, td - 1))
        if r < 0.8:
            return Not(path(sd, td))
        if r < 0.9:
            return And((path(sd, td), path(sd, td)))
        return Or((path(sd, td), path(sd, td)))

    return state(strat, temporal, top=True)


def random_qctl(rng: random.Random, depth: int = 3, props=("p", "q"), qprops=("Q", "R"),
                quantifiers: bool = True) -> Formula:
    """QCTL* state formula; quantified names come from ``qprops``."""
    bound: list[str] = []

    def state(d):
        r = rng.random()
        if d <= 0 or r < 0.2:
            pool = list(props) + bound
            p = Prop(rng.choice(pool))
            return Not(p) if rng.random() < 0.3 else p
        if quantifiers and r < 0.4:
            name = rng.choice(qprops)
            bound.append(name)
            body = state(d - 1)
            bound.pop()
            return (Exists if rng.random() < 0.5 else Forall)(name, body)
        if r < 0.55:
            return Not(state(d))
        if r < 0.65:
            return And((state(d - 1), state(d - 1)))
        if r < 0.72:
            return Or((state(d - 1), state(d - 1)))
        if r < 0.76:
            return Implies(state(d - 1), state(d - 1))
        return (EPath if rng.random() < 0.5 else APath)(path(d - 1))

    def path(d):
        r = rng.random()
        if d <= 0 or r < 0.2:
            return state(d)
        if r < 0.4:
            return Next(path(d - 1))
        if r < 0.6:
            return Until(path(d - 1), path(d - 1))
        if r < 0.7:
            return F(path(d - 1))
        if r < 0.8:
            return G(path(d - 1))
        if r < 0.9:
            return Not(path(d))
        return And((path(d - 1), path(d - 1)))

    return state(depth)


def random_atl_full(rng: random.Random, agents=("a1", "a2"), depth: int = 4, props=("p", "q")) -> Formula:
    """Any strategy formula in the image of the parser, used for printing tests."""

    def state(d):
        r = rng.random()
        if d <= 0 or r < 0.2:
            return _literal(rng, props)
        if r < 0.35:
            cls = StratQ if rng.random() < 0.7 else StratQCo
            return cls(_coalition(rng, agents), rng.random() < 0.5, path(d - 1))
        if r < 0.42:
            return (Relax if rng.random() < 0.5 else RelaxCo)(_coalition(rng, agents), state(d - 1))
        if r < 0.55:
            return Not(state(d - 1))
        if r < 0.65:
            return And(tuple(state(d - 1) for _ in range(rng.randint(2, 3))))
        if r < 0.75:
            return Or(tuple(state(d - 1) for _ in range(rng.randint(2, 3))))
        if r < 0.82:
            return Implies(state(d - 1), state(d - 1))
        return Not(StratQ(_coalition(rng, agents), rng.random() < 0.5, Not(path(d - 1))))

    def path(d):
        r = rng.random()
        if d <= 0 or r < 0.25:
            return state(d)
        if r < 0.4:
            return Next(path(d - 1))
        if r < 0.55:
            return Until(path(d - 1), path(d - 1))
        if r < 0.65:
            return F(path(d - 1))
        if r < 0.75:
            return G(path(d - 1))
        if r < 0.85:
            return Not(path(d - 1))
        if r < 0.93:
            return And((path(d - 1), path(d - 1)))
        return Implies(path(d - 1), path(d - 1))

    return state(depth)
