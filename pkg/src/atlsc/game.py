"""Concurrent game structures with partial observation and derived Kripke structures."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .atoms import RESERVED_CHAR, FreshAtomRegistry
from .errors import InvalidGame, InvalidPath, NotUniform, UnknownAgent, AtlscError

MID = "mid"
_SEP = "~"


@dataclass(frozen=True)
class ObservationPartition:
    """Ordered equivalence classes of states for one agent."""

    classes: tuple[tuple[str, ...], ...]

    @cached_property
    def class_of(self) -> dict[str, int]:
        out = {}
        for i, members in enumerate(self.classes):
            for q in members:
                out.setdefault(q, i)
        return out

    def as_family(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.classes)

    @classmethod
    def identity(cls, states: Sequence[str]) -> "ObservationPartition":
        return cls(tuple((q,) for q in states))

    @classmethod
    def single(cls, states: Sequence[str]) -> "ObservationPartition":
        return cls((tuple(states),))


@dataclass(frozen=True)
class KripkeStructure:
    states: tuple[str, ...]
    transitions: Mapping[str, tuple[str, ...]]
    label: Mapping[str, frozenset]
    props: tuple[str, ...] = ()
    init: Optional[str] = None

    @cached_property
    def index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def all_props(self) -> frozenset:
        out = set(self.props)
        for q in self.states:
            out |= self.label.get(q, frozenset())
        return frozenset(out)

    def successors(self, q: str) -> tuple[str, ...]:
        return self.transitions.get(q, ())

    def edge_count(self) -> int:
        return sum(len(self.transitions.get(q, ())) for q in self.states)

    def problems(self) -> list[str]:
        out = []
        known = set(self.states)
        for q in self.states:
            succ = self.transitions.get(q, ())
            if not succ:
                out.append(f"totality: state {q} has no successor")
            for t in succ:
                if t not in known:
                    out.append(f"target: {q} -> {t} leaves the declared states")
        if self.init is not None and self.init not in known:
            out.append(f"init: {self.init} is not a declared state")
        return out


@dataclass(frozen=True)
class Cgso:
    """A finite concurrent game with per-agent observation partitions.

    ``edg`` maps ``(state, moves)`` to a state, where ``moves`` lists one move
    per agent in the order of ``agents``. The transition relation is derived
    from ``edg`` and never stored.
    """

    states: tuple[str, ...]
    props: tuple[str, ...]
    label: Mapping[str, frozenset]
    agents: tuple[str, ...]
    moves: tuple[str, ...]
    edg: Mapping[tuple[str, tuple[str, ...]], str]
    obs: Mapping[str, ObservationPartition]
    owner: Optional[Mapping[str, str]] = None
    init: Optional[str] = None

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def move_index(self) -> dict[str, int]:
        return {m: i for i, m in enumerate(self.moves)}

    def move_vectors(self):
        return itertools.product(self.moves, repeat=len(self.agents))

    def successors(self, q: str) -> tuple[str, ...]:
        seen = {}
        for mv in self.move_vectors():
            t = self.edg.get((q, mv))
            if t is not None:
                seen.setdefault(t, None)
        return tuple(seen)

    @cached_property
    def relation(self) -> dict[str, tuple[str, ...]]:
        return {q: self.successors(q) for q in self.states}

    def labels(self, q: str) -> frozenset:
        return self.label.get(q, frozenset())

    def partition(self, agent: str) -> ObservationPartition:
        return self.obs[agent]

    def is_turn_based(self) -> bool:
        return self.owner is not None


def validate(game: Cgso) -> list[str]:
    diags = []
    states = set(game.states)
    for kind, names in (("state", game.states), ("agent", game.agents), ("move", game.moves)):
        if len(set(names)) != len(names):
            diags.append(f"duplicate: repeated {kind} name")
    if not game.agents:
        diags.append("agents: no agent declared")
    if not game.moves:
        diags.append("moves: no move declared")
    for p in game.props:
        if RESERVED_CHAR in p:
            diags.append(f"reserved-name: prop {p} contains '{RESERVED_CHAR}'")
    props = set(game.props)
    for q, ps in game.label.items():
        if q not in states:
            diags.append(f"label: unknown state {q}")
        for p in sorted(ps - props):
            diags.append(f"label: prop {p} on {q} is not declared")
    for q in game.states:
        for mv in game.move_vectors():
            t = game.edg.get((q, mv))
            if t is None:
                diags.append(f"totality: edg({q}, {' '.join(mv)}) is undefined")
            elif t not in states:
                diags.append(f"target: edg({q}, {' '.join(mv)}) = {t} is not a declared state")
    for (q, mv) in game.edg:
        if q not in states:
            diags.append(f"edge: unknown source state {q}")
        if len(mv) != len(game.agents) or any(m not in game.move_index for m in mv):
            diags.append(f"edge: malformed move vector {' '.join(mv)} at {q}")
    for a in game.agents:
        part = game.obs.get(a)
        if part is None:
            diags.append(f"partition-coverage: no observation partition for {a}")
            continue
        seen = {}
        for i, members in enumerate(part.classes):
            if not members:
                diags.append(f"partition-empty: class {i} of {a} is empty")
            for q in members:
                if q not in states:
                    diags.append(f"partition-unknown: {q} in partition of {a} is not a state")
                elif q in seen:
                    diags.append(f"partition-overlap: {q} appears twice in partition of {a}")
                seen[q] = i
        for q in game.states:
            if q not in seen:
                diags.append(f"partition-coverage: {q} is missing from partition of {a}")
    for a in game.obs:
        if a not in game.agents:
            diags.append(f"unknown-agent: partition given for {a}")
    if game.owner is not None:
        for q in game.states:
            own = game.owner.get(q)
            if own is None:
                diags.append(f"turn-based: {q} has no owner")
                continue
            if own not in game.agents:
                diags.append(f"turn-based: owner {own} of {q} is not an agent")
                continue
            k = game.agents.index(own)
            by_move = {}
            for mv in game.move_vectors():
                t = game.edg.get((q, mv))
                if t is None:
                    continue
                prev = by_move.setdefault(mv[k], t)
                if prev != t:
                    diags.append(f"turn-based: at {q} the successor depends on more than {own}'s move {mv[k]}")
                    break
    if game.init is not None and game.init not in states:
        diags.append(f"init: {game.init} is not a declared state")
    return diags


def require_valid(game: Cgso) -> None:
    diags = validate(game)
    if diags:
        raise InvalidGame(diags)


def is_uniform(game: Cgso) -> bool:
    families = {game.obs[a].as_family() for a in game.agents}
    return len(families) <= 1


def quotient(game: Cgso) -> KripkeStructure:
    """Complete graph over the observation classes of a uniform game."""
    if not is_uniform(game):
        raise NotUniform("observation partitions differ between agents")
    reg = FreshAtomRegistry()
    part = game.obs[game.agents[0]]
    names = tuple(f"C{i}" for i in range(len(part.classes)))
    label = {}
    for name, members in zip(names, part.classes):
        label[name] = frozenset(reg.class_atom(game.state_index[q]) for q in members)
    trans = {name: names for name in names}
    props = tuple(reg.class_atom(i) for i in range(len(game.states)))
    return KripkeStructure(names, trans, label, props)


def underlying_kripke(game: Cgso) -> KripkeStructure:
    reg = FreshAtomRegistry()
    label = {}
    for q in game.states:
        extra = {reg.state_atom(q)}
        for a in game.agents:
            extra.add(reg.obs_atom(a, game.obs[a].class_of[q]))
        label[q] = game.labels(q) | frozenset(extra)
    props = list(game.props) + [reg.state_atom(q) for q in game.states]
    for a in game.agents:
        props += [reg.obs_atom(a, c) for c in range(len(game.obs[a].classes))]
    return KripkeStructure(game.states, dict(game.relation), label, tuple(props), game.init)


def to_turn_based(game: Cgso, agent_order: Optional[Sequence[str]] = None) -> Cgso:
    """Sequentialise the agents' choices through hidden intermediate states."""
    order = tuple(agent_order) if agent_order is not None else game.agents
    for a in order:
        if a not in game.agents:
            raise UnknownAgent(f"unknown agent {a} in turn order")
    if sorted(order) != sorted(game.agents):
        raise UnknownAgent("turn order must be a permutation of the agents")
    p = len(order)
    if p == 1:
        return replace(game, owner={q: order[0] for q in game.states})
    if MID in game.props:
        raise AtlscError(f"prop name {MID!r} is reserved for intermediate states")
    pos = {a: game.agents.index(a) for a in order}

    def name(q, v):
        return _SEP.join((q,) + v)

    inter = []
    for q in game.states:
        for j in range(1, p):
            for v in itertools.product(game.moves, repeat=j):
                inter.append((q, v))
    taken = set(game.states)
    for q, v in inter:
        if name(q, v) in taken:
            raise AtlscError(f"intermediate state name {name(q, v)} collides with a state")

    edg = {}
    owner = {}
    label = dict(game.label)
    for q in game.states:
        owner[q] = order[0]
    for q, v in inter:
        owner[name(q, v)] = order[len(v)]
        label[name(q, v)] = frozenset({MID})
    for q in game.states:
        for mv in game.move_vectors():
            edg[(q, mv)] = name(q, (mv[pos[order[0]]],))
    for q, v in inter:
        j = len(v)
        for mv in game.move_vectors():
            m = mv[pos[order[j]]]
            if j < p - 1:
                edg[(name(q, v), mv)] = name(q, v + (m,))
            else:
                full = [None] * p
                for i, a in enumerate(order[:-1]):
                    full[pos[a]] = v[i]
                full[pos[order[-1]]] = m
                edg[(name(q, v), mv)] = game.edg[(q, tuple(full))]

    obs = {}
    for a in game.agents:
        classes = list(game.obs[a].classes)
        for j in range(1, p):
            classes.append(tuple(name(q, v) for q, v in inter if len(v) == j))
        obs[a] = ObservationPartition(tuple(classes))
    states = game.states + tuple(name(q, v) for q, v in inter)
    return Cgso(states, game.props + (MID,), label, game.agents, game.moves, edg, obs, owner, game.init)


def check_path(game: Cgso, path: Sequence[str]) -> None:
    if not path:
        raise InvalidPath("paths are non-empty")
    for q in path:
        if q not in game.state_index:
            raise InvalidPath(f"unknown state {q}")
    rel = game.relation
    for q, t in zip(path, path[1:]):
        if t not in rel[q]:
            raise InvalidPath(f"{q} -> {t} is not a transition")


def path_equivalent(game: Cgso, agent: str, path1: Sequence[str], path2: Sequence[str]) -> bool:
    check_path(game, path1)
    check_path(game, path2)
    if len(path1) != len(path2):
        return False
    cls = game.obs[agent].class_of
    return all(cls[a] == cls[b] for a, b in zip(path1, path2))


def normalize_availability(game: Cgso, available: Mapping[tuple[str, str], Sequence[str]]) -> Cgso:
    """Rewrite unavailable moves to the first available one.

    ``available`` maps ``(state, agent)`` to the moves that agent may play there;
    missing entries mean every move is available.
    """
    pos = {a: i for i, a in enumerate(game.agents)}
    edg = {}
    for (q, mv), t in game.edg.items():
        edg[(q, mv)] = t
    for q in game.states:
        for mv in game.move_vectors():
            fixed = list(mv)
            for a, i in pos.items():
                allowed = available.get((q, a))
                if allowed and fixed[i] not in allowed:
                    fixed[i] = allowed[0]
            fixed = tuple(fixed)
            if fixed != mv and (q, fixed) in game.edg:
                edg[(q, mv)] = game.edg[(q, fixed)]
    return replace(game, edg=edg)
