"""Quantified CTL* under the structure semantics on finite Kripke structures.

Truth of a state formula is computed lazily per state. A quantified
proposition is bound to a bitmask over the states; ``exists P`` enumerates the
valuations of ``P`` over the states reachable from the current one (nothing
else can influence the result), in increasing bitmask order, and stops at the
first witness.

Consecutive quantifiers of the same kind are enumerated as one block: when the
body is a conjunction (for ``exists``) or a disjunction/implication (for
``forall``), each member is evaluated as soon as the propositions it mentions
are bound, which prunes the enumeration without changing the result.

Path quantifiers go through the tableau in ``tableau``. Maximal state
subformulas that are not propositional are abstracted into placeholder
propositions evaluated on demand.
"""

from __future__ import annotations

import os
from typing import Optional

from .errors import ResourceLimit, UnknownProp
from .formula import (
    And, APath, Bottom, EPath, Exists, Forall, Formula, Implies, Not, Or, Prop, Top, children,
    free_props, is_propositional, is_state, quantifier_depth, rebuild,
)
from .game import KripkeStructure
from .tableau import Tableau, exists_path

DEFAULT_MAX_DEPTH = 8
_PLACEHOLDER = "\x00"


def max_quantifier_depth() -> int:
    return int(os.environ.get("ATLSC_MAX_QUANTIFIER_DEPTH", DEFAULT_MAX_DEPTH))


def _flatten(f, kind):
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, kind):
            stack.extend(reversed(g.args))
        else:
            out.append(g)
    return out


class QctlChecker:
    def __init__(self, k: KripkeStructure, max_depth: Optional[int] = None):
        problems = k.problems()
        if problems:
            raise ValueError("; ".join(problems))
        self.k = k
        self.max_depth = max_quantifier_depth() if max_depth is None else max_depth
        n = len(k.states)
        idx = k.index
        self.succ = [tuple(idx[t] for t in k.successors(q)) for q in k.states]
        self.base: dict[str, int] = {}
        for i, q in enumerate(k.states):
            for p in k.label.get(q, ()):
                self.base[p] = self.base.get(p, 0) | (1 << i)
        self.known = k.all_props
        self.reach = [self._reach_from(i) for i in range(n)]
        self.reach_list = [tuple(j for j in range(n) if r >> j & 1) for r in self.reach]
        self.env: dict[str, int] = {}
        self._memo: dict = {}
        self._free: dict = {}
        self._keep: list = []
        self._paths: dict = {}
        self._blocks: dict = {}
        self.stats = {"valuations": 0, "path_checks": 0, "product_nodes": 0}
        self.witness: Optional[list[tuple[str, tuple[str, ...]]]] = None
        self._root: Optional[int] = None

    def _reach_from(self, i: int) -> int:
        seen = 1 << i
        todo = [i]
        while todo:
            s = todo.pop()
            for t in self.succ[s]:
                if not seen >> t & 1:
                    seen |= 1 << t
                    todo.append(t)
        return seen

    # static checks

    def check_props(self, f: Formula) -> None:
        def walk(g, bound):
            if isinstance(g, Prop):
                if g.name not in self.known and g.name not in bound:
                    raise UnknownProp(f"proposition {g.name} is neither in the structure nor quantified")
                return
            if isinstance(g, (Exists, Forall)):
                bound = bound | {g.prop}
            for h in children(g):
                walk(h, bound)

        walk(f, frozenset())
        depth = quantifier_depth(f)
        if depth > self.max_depth:
            raise ResourceLimit(f"quantifier nesting {depth} exceeds the limit {self.max_depth}")

    # evaluation

    def _free_of(self, f):
        key = id(f)
        out = self._free.get(key)
        if out is None:
            out = tuple(sorted(free_props(f)))
            self._free[key] = out
            self._keep.append(f)
        return out

    def holds(self, f: Formula, s: int) -> bool:
        if isinstance(f, Prop):
            m = self.env.get(f.name)
            if m is None:
                m = self.base.get(f.name, 0)
            return bool(m >> s & 1)
        if isinstance(f, Top):
            return True
        if isinstance(f, Bottom):
            return False
        if isinstance(f, Not):
            return not self.holds(f.arg, s)
        if isinstance(f, And):
            return all(self.holds(g, s) for g in f.args)
        if isinstance(f, Or):
            return any(self.holds(g, s) for g in f.args)
        if isinstance(f, Implies):
            return not self.holds(f.left, s) or self.holds(f.right, s)
        r = self.reach[s]
        env = self.env
        fp = tuple(env[p] & r if p in env else None for p in self._free_of(f))
        key = (id(f), s, fp)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if isinstance(f, (Exists, Forall)):
            out = self._block(f, s)
        elif isinstance(f, EPath):
            out = self._exists_path(f, f.arg, False, s)
        elif isinstance(f, APath):
            out = not self._exists_path(f, f.arg, True, s)
        else:
            raise TypeError(f"not a QCTL* state formula: {type(f).__name__}")
        self._memo[key] = out
        return out

    def _block_shape(self, f):
        hit = self._blocks.get(id(f))
        if hit is not None:
            return hit
        kind = type(f)
        names = []
        g = f
        while isinstance(g, kind):
            names.append(g.prop)
            g = g.arg
        body = g
        # members: (formula, negated); exists needs all members true, forall needs one
        if kind is Exists and isinstance(body, And):
            members = [(h, False) for h in _flatten(body, And)]
        elif kind is Forall and isinstance(body, Or):
            members = [(h, False) for h in _flatten(body, Or)]
        elif kind is Forall and isinstance(body, Implies):
            members = [(body.left, True), (body.right, False)]
        else:
            members = [(body, False)]
        # a name shadowed later in the block is bound at its last occurrence
        last = {p: i for i, p in enumerate(names)}
        stage = [[] for _ in range(len(names) + 1)]
        used = set()
        for h, neg in members:
            lvl = 0
            for p in self._free_of(h):
                if p in last:
                    lvl = max(lvl, last[p] + 1)
                    used.add(p)
            stage[lvl].append((h, neg))
        useful = tuple(last[p] == i and p in used for i, p in enumerate(names))
        shape = (kind is Exists, tuple(names), tuple(tuple(x) for x in stage), useful)
        self._blocks[id(f)] = shape
        self._keep.append(f)
        return shape

    def _block(self, f, s: int) -> bool:
        existential, names, stage, useful = self._block_shape(f)
        bits = self.reach_list[s]
        env = self.env
        saved = [(p, env.get(p)) for p in names]
        record = self._root == id(f)
        self._root = None

        def settle(level):
            # existential blocks fail on a false member, universal ones succeed on a true member
            for h, neg in stage[level]:
                if (self.holds(h, s) != neg) != existential:
                    return not existential
            return None

        def go(i):
            r = settle(i)
            if r is not None:
                return r
            if i == len(names):
                if record and existential:
                    self.witness = [
                        (p, tuple(q for j, q in enumerate(self.k.states) if env[p] >> j & 1))
                        for p in names
                    ]
                return existential
            count = 1 << len(bits) if useful[i] else 1
            for n in range(count):
                m = 0
                for j, b in enumerate(bits):
                    if n >> j & 1:
                        m |= 1 << b
                env[names[i]] = m
                self.stats["valuations"] += 1
                if go(i + 1) == existential:
                    return existential
            return not existential

        try:
            return go(0)
        finally:
            for p, old in saved:
                if old is None:
                    env.pop(p, None)
                else:
                    env[p] = old

    def _exists_path(self, node, psi, negate: bool, s: int) -> bool:
        key = (id(node), negate)
        hit = self._paths.get(key)
        if hit is None:
            subs: list = []
            skel = self._abstract(psi, subs, {})
            if negate:
                skel = Not(skel)
            tab = Tableau(skel)
            hit = (tab, tuple(subs))
            self._paths[key] = hit
            self._keep.append(node)
        tab, subs = hit
        readers = []
        for p in tab.props:
            if p.startswith(_PLACEHOLDER):
                readers.append(subs[int(p[1:])])
            else:
                readers.append(Prop(p))

        def letter(t):
            out = 0
            for i, g in enumerate(readers):
                if self.holds(g, t):
                    out |= 1 << i
            return out

        self.stats["path_checks"] += 1
        return exists_path(tab, s, self.succ.__getitem__, letter, self.stats)

    def _abstract(self, f, subs, seen):
        if is_state(f) and not is_propositional(f):
            key = f
            if key not in seen:
                seen[key] = len(subs)
                subs.append(f)
            return Prop(f"{_PLACEHOLDER}{seen[key]}")
        kids = children(f)
        if not kids:
            return f
        return rebuild(f, [self._abstract(g, subs, seen) for g in kids])

    def check(self, f: Formula, q: str) -> bool:
        if not is_state(f):
            raise ValueError("QCTL* checking needs a state formula")
        self.check_props(f)
        self.witness = None
        self._root = id(f) if isinstance(f, Exists) else None
        return self.holds(f, self.k.index[q])


def check_structure(k: KripkeStructure, q: str, f: Formula, max_depth: Optional[int] = None) -> bool:
    return QctlChecker(k, max_depth).check(f, q)


def check_ctlstar(k: KripkeStructure, q: str, f: Formula) -> bool:
    if quantifier_depth(f):
        raise ValueError("check_ctlstar expects a formula without propositional quantifiers")
    return QctlChecker(k).check(f, q)


def find_witness(k: KripkeStructure, q: str, f: Formula):
    """First satisfying valuation of the leading ``exists`` block, or None."""
    c = QctlChecker(k)
    return c.witness if c.check(f, q) else None
