"""Direct evaluation of strategy formulas over explicit strategy tables.

Strategies are finite tables keyed by observation data: a memoryless table
maps the agent's observation class of the current state to a move, a
window-``k`` table maps the sequence of the agent's classes over the last
``k`` states (shorter at the start of a play) to a move. Tables are keyed by
observations only, so every table is compatible with the agent's observation.

A state formula is evaluated at a node, the tuple of the last ``K`` states of
the current history (``K = 1`` for memoryless checking, ``K = k`` for window-k
checking), under a strategy context. ``<<A>>`` enumerates the tables of ``A``
in a fixed order and checks that every outcome from the node satisfies the
path formula, using the tableau of its negation.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .errors import IncompatibleTable, MemoryfulQuantifier, ResourceLimit, UnknownProp
from .formula import (
    And, Bottom, Formula, Implies, Next, Not, Or, Prop, Relax, StratQ, Top, Until, children,
    is_propositional, is_state, rebuild,
)
from .game import Cgso, KripkeStructure, check_path
from .rewrite import eliminate_complements
from .tableau import Tableau, exists_path

MEMORYLESS = "memoryless"
WINDOWED = "windowed"

DEFAULT_MAX_WINDOW_NODES = 200_000
DEFAULT_MAX_TABLES = 1_000_000
_PLACEHOLDER = "\x00"


def max_window_nodes() -> int:
    return int(os.environ.get("ATLSC_MAX_WINDOW_NODES", DEFAULT_MAX_WINDOW_NODES))


def max_tables() -> int:
    return int(os.environ.get("ATLSC_MAX_TABLES", DEFAULT_MAX_TABLES))


@dataclass(frozen=True)
class StrategyTable:
    """Moves of one agent keyed by a class index (memoryless) or a tuple of class indices."""

    agent: str
    kind: str
    window: int
    entries: tuple

    @cached_property
    def lookup(self) -> dict:
        return dict(self.entries)

    def key(self, game: Cgso, node: Sequence[int]):
        cls = game.obs[self.agent].class_of
        states = game.states
        if self.kind == MEMORYLESS:
            return cls[states[node[-1]]]
        return tuple(cls[states[i]] for i in node[-self.window:])

    def move(self, game: Cgso, node: Sequence[int]) -> str:
        k = self.key(game, node)
        try:
            return self.lookup[k]
        except KeyError:
            raise IncompatibleTable(f"table of {self.agent} has no move for observation {k}") from None

    @classmethod
    def memoryless(cls, agent: str, entries) -> "StrategyTable":
        return cls(agent, MEMORYLESS, 1, tuple(sorted(dict(entries).items())))

    @classmethod
    def windowed(cls, agent: str, k: int, entries) -> "StrategyTable":
        if k < 1:
            raise ValueError("window length must be positive")
        return cls(agent, WINDOWED, k, tuple(sorted(dict(entries).items())))


@dataclass(frozen=True)
class StrategyContext:
    """A partial assignment of tables to agents, kept sorted by agent name."""

    tables: tuple[tuple[str, StrategyTable], ...] = ()

    @classmethod
    def of(cls, tables) -> "StrategyContext":
        out = {}
        for t in tables:
            out[t.agent] = t
        return cls(tuple(sorted(out.items())))

    @cached_property
    def mapping(self) -> dict:
        return dict(self.tables)

    @property
    def agents(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.tables)

    def restrict(self, agents) -> "StrategyContext":
        keep = set(agents)
        return StrategyContext(tuple((a, t) for a, t in self.tables if a in keep))

    def without(self, agents) -> "StrategyContext":
        drop = set(agents)
        return StrategyContext(tuple((a, t) for a, t in self.tables if a not in drop))

    def __len__(self):
        return len(self.tables)


def compose(g: StrategyContext, f: StrategyContext) -> StrategyContext:
    """Union of both contexts; ``g`` wins on shared agents."""
    out = dict(f.tables)
    out.update(g.tables)
    return StrategyContext(tuple(sorted(out.items())))


def _check_table(game: Cgso, t: StrategyTable) -> None:
    if t.agent not in game.agents:
        raise IncompatibleTable(f"table for unknown agent {t.agent}")
    n = len(game.obs[t.agent].classes)
    for key, move in t.entries:
        if move not in game.move_index:
            raise IncompatibleTable(f"table of {t.agent} uses unknown move {move}")
        keys = (key,) if t.kind == MEMORYLESS else key
        if t.kind == WINDOWED and (not isinstance(key, tuple) or not 1 <= len(key) <= t.window):
            raise IncompatibleTable(f"table of {t.agent} has a malformed window {key}")
        for c in keys:
            if not isinstance(c, int) or not 0 <= c < n:
                raise IncompatibleTable(f"table of {t.agent} is keyed by {key}, not by observation classes")


class _Arena:
    """Window graph of a game: nodes are tuples of the last ``K`` state indices."""

    def __init__(self, game: Cgso, K: int):
        self.game = game
        self.K = K
        idx = game.state_index
        self.vectors = list(game.move_vectors())
        self.edg = {}
        for i, q in enumerate(game.states):
            for mv in self.vectors:
                self.edg[(i, mv)] = idx[game.edg[(q, mv)]]
        # agents whose move can change the successor somewhere at a state
        self.matters = {}
        for i in range(len(game.states)):
            for j, a in enumerate(game.agents):
                seen = {}
                hit = False
                for mv in self.vectors:
                    rest = mv[:j] + mv[j + 1:]
                    t = self.edg[(i, mv)]
                    if seen.setdefault(rest, t) != t:
                        hit = True
                        break
                self.matters[(i, a)] = hit
        self._succ: dict = {}

    def step(self, node, t):
        return (node + (t,))[-self.K:]

    def successors(self, node, ctx: StrategyContext):
        key = (node, ctx)
        hit = self._succ.get(key)
        if hit is not None:
            return hit
        game = self.game
        fixed = ctx.mapping
        choices = []
        for a in game.agents:
            t = fixed.get(a)
            choices.append((t.move(game, node),) if t is not None else game.moves)
        s = node[-1]
        out = tuple(dict.fromkeys(self.step(node, self.edg[(s, mv)]) for mv in itertools.product(*choices)))
        self._succ[key] = out
        return out

    def reachable(self, node, ctx: StrategyContext, cap: Optional[int] = None):
        seen = {node: None}
        todo = [node]
        while todo:
            v = todo.pop()
            for w in self.successors(v, ctx):
                if w not in seen:
                    seen[w] = None
                    todo.append(w)
                    if cap is not None and len(seen) > cap:
                        raise ResourceLimit(f"more than {cap} window nodes are reachable")
        return list(seen)


def _anchor_node(game: Cgso, anchor: Sequence[str], K: int):
    check_path(game, anchor)
    idx = game.state_index
    return tuple(idx[q] for q in anchor)[-K:]


def _node_name(game: Cgso, node) -> str:
    return ".".join(game.states[i] for i in node)


def pruned_system(game: Cgso, context: StrategyContext, anchor: Sequence[str],
                  window: Optional[int] = None) -> KripkeStructure:
    """Finite system whose paths from the first state are the outcomes of ``context`` after ``anchor``.

    Nodes are the last ``K`` states of the history, written ``q0.q1.q3``;
    ``K`` is the largest window among the tables (1 if all are memoryless).
    """
    for _, t in context.tables:
        _check_table(game, t)
    K = window or max([t.window for _, t in context.tables] + [1])
    arena = _Arena(game, K)
    root = _anchor_node(game, anchor, K)
    nodes = arena.reachable(root, context, max_window_nodes())
    names = {v: _node_name(game, v) for v in nodes}
    trans = {names[v]: tuple(names[w] for w in arena.successors(v, context)) for v in nodes}
    label = {names[v]: game.labels(game.states[v[-1]]) for v in nodes}
    return KripkeStructure(tuple(names[v] for v in nodes), trans, label, game.props, names[root])


@dataclass(frozen=True)
class Witness:
    table: StrategyTable
    keys: tuple


class StrategyChecker:
    def __init__(self, game: Cgso, K: int = 1, window: Optional[int] = None, allow_memoryful: bool = False):
        self.game = game
        self.K = K
        self.window = window
        self.allow_memoryful = allow_memoryful
        self.arena = _Arena(game, K)
        self.known = set(game.props)
        for q in game.states:
            self.known |= game.labels(q)
        self.cap_nodes = max_window_nodes()
        self.cap_tables = max_tables()
        self.stats = {"nodes": 0, "tables": 0, "path_checks": 0, "product_nodes": 0}
        self._memo: dict = {}
        self._paths: dict = {}
        self._keep: list = []
        self._reach: dict = {}
        self._root_quantifiers: set = set()
        self.witnesses: list[Witness] = []

    def prepare(self, f: Formula) -> Formula:
        f = eliminate_complements(f, self.game.agents)
        for g in _walk(f):
            if isinstance(g, Prop) and g.name not in self.known:
                raise UnknownProp(f"proposition {g.name} is not declared by the game")
            if isinstance(g, StratQ) and g.coalition and not g.memoryless and not self.allow_memoryful:
                raise MemoryfulQuantifier("memoryless checking cannot decide a memoryful quantifier")
        return f

    def check(self, f: Formula, q: str) -> bool:
        f = self.prepare(f)
        if not is_state(f):
            raise ValueError("strategy checking needs a state formula")
        self._keep.append(f)
        self._root_quantifiers = set()
        stack = [f]
        while stack:
            g = stack.pop()
            if isinstance(g, (And, Or)):
                stack.extend(g.args)
            elif isinstance(g, StratQ):
                self._root_quantifiers.add(id(g))
        self.witnesses = []
        self._root_node = (self.game.state_index[q],)
        return self.holds(f, self._root_node, StrategyContext())

    def holds(self, f: Formula, node, ctx: StrategyContext) -> bool:
        if isinstance(f, Prop):
            return f.name in self.game.labels(self.game.states[node[-1]])
        if isinstance(f, Top):
            return True
        if isinstance(f, Bottom):
            return False
        if isinstance(f, Not):
            return not self.holds(f.arg, node, ctx)
        if isinstance(f, And):
            return all(self.holds(g, node, ctx) for g in f.args)
        if isinstance(f, Or):
            return any(self.holds(g, node, ctx) for g in f.args)
        if isinstance(f, Implies):
            return not self.holds(f.left, node, ctx) or self.holds(f.right, node, ctx)
        if isinstance(f, Relax):
            return self.holds(f.arg, node, ctx.without(f.coalition))
        key = (id(f), node, ctx)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if isinstance(f, StratQ):
            out = self._quantify(f, node, ctx)
        else:
            raise TypeError(f"not a state formula: {type(f).__name__}")
        self._memo[key] = out
        return out

    # quantifiers

    def _reachable(self, node):
        hit = self._reach.get(node)
        if hit is None:
            hit = self.arena.reachable(node, StrategyContext(), self.cap_nodes)
            self.stats["nodes"] = max(self.stats["nodes"], len(hit))
            self._reach[node] = hit
        return hit

    def _domain(self, agent: str, memoryless: bool, node):
        """(relevant keys, all keys) of the tables to enumerate for ``agent`` at ``node``."""
        game = self.game
        cls = game.obs[agent].class_of
        relevant = set()
        keys = set()
        w = self.window or 1
        for v in self._reachable(node):
            k = cls[game.states[v[-1]]] if memoryless else tuple(cls[game.states[i]] for i in v[-w:])
            keys.add(k)
            if self.arena.matters[(v[-1], agent)]:
                relevant.add(k)
        if memoryless:
            keys = set(range(len(game.obs[agent].classes)))
        return sorted(relevant), sorted(keys)

    def _tables(self, A, memoryless: bool, node):
        game = self.game
        moves = game.moves
        per_agent = []
        total = 1
        for a in A:
            rel, keys = self._domain(a, memoryless, node)
            per_agent.append((a, rel, keys))
            total *= len(moves) ** len(rel)
            if total > self.cap_tables:
                raise ResourceLimit(f"more than {self.cap_tables} strategy tables for {','.join(A)}")
        ranges = [itertools.product(moves, repeat=len(rel)) for _, rel, _ in per_agent]
        for combo in itertools.product(*[list(r) for r in ranges]):
            tables = []
            for (a, rel, keys), choice in zip(per_agent, combo):
                entries = dict.fromkeys(keys, moves[0])
                entries.update(zip(rel, choice))
                if memoryless:
                    t = StrategyTable.memoryless(a, entries)
                else:
                    t = StrategyTable.windowed(a, self.window, entries)
                tables.append((t, tuple(rel)))
            yield tables

    def _quantify(self, f: StratQ, node, ctx: StrategyContext) -> bool:
        A = tuple(a for a in self.game.agents if a in set(f.coalition))
        memoryless = f.memoryless or not self.allow_memoryful
        for tables in self._tables(A, memoryless, node):
            self.stats["tables"] += 1
            inner = compose(StrategyContext.of(t for t, _ in tables), ctx)
            if self._all_paths(f, node, inner):
                if id(f) in self._root_quantifiers and node == self._root_node and not ctx:
                    self.witnesses.extend(Witness(t, keys) for t, keys in tables)
                return True
        return False

    def _all_paths(self, f: StratQ, node, ctx: StrategyContext) -> bool:
        hit = self._paths.get(id(f))
        if hit is None:
            subs: list = []
            skel = Not(_abstract(f.arg, subs, {}))
            tab = Tableau(skel)
            readers = []
            for p in tab.props:
                readers.append(subs[int(p[1:])] if p.startswith(_PLACEHOLDER) else Prop(p))
            hit = (tab, readers)
            self._paths[id(f)] = hit
            self._keep.append(f)
        tab, readers = hit

        def letter(v):
            out = 0
            for i, g in enumerate(readers):
                if self.holds(g, v, ctx):
                    out |= 1 << i
            return out

        self.stats["path_checks"] += 1
        succ = self.arena.successors
        return not exists_path(tab, node, lambda v: succ(v, ctx), letter, self.stats)


def _walk(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(children(g))


def _abstract(f, subs, seen):
    if is_state(f) and not is_propositional(f):
        if f not in seen:
            seen[f] = len(subs)
            subs.append(f)
        return Prop(f"{_PLACEHOLDER}{seen[f]}")
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [_abstract(g, subs, seen) for g in kids])


def _report(checker: StrategyChecker, verdict: bool, engine: str):
    from .report import CheckReport, format_table

    lines = []
    for w in checker.witnesses:
        lines.extend(format_table(checker.game, w.table, w.keys))
    return CheckReport(verdict, engine, tuple(lines), dict(checker.stats))


def check_memoryless(game: Cgso, q0: str, f: Formula):
    """Decide ``f`` with every quantifier ranging over compatible memoryless strategies."""
    checker = StrategyChecker(game, K=1)
    verdict = checker.check(f, q0)
    return _report(checker, verdict, "memoryless-direct")


def check_windowed(game: Cgso, q0: str, f: Formula, k: int):
    """Decide ``f`` with memoryful quantifiers ranging over window-``k`` strategies."""
    if k < 1:
        raise ValueError("window length must be positive")
    checker = StrategyChecker(game, K=k, window=k, allow_memoryful=True)
    verdict = checker.check(f, q0)
    return _report(checker, verdict, f"windowed({k})")
