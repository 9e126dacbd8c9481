"""Linear-time path checking through a tableau automaton.

A path formula over propositions is put in negation normal form and each
distinct subformula is interned as an integer. Automaton states are sets of
obligations (formulas that must hold at the current position). Expanding a
state against the current letter yields the possible next-step obligation
sets together with the set of Until formulas postponed on that step. A run is
accepting when every Until is left un-postponed infinitely often (one
acceptance set per Until, generalized Büchi on transitions).

Nonemptiness of the product with a transition system is decided on the fly
with Tarjan's algorithm: an accepting run exists iff some reachable
non-trivial strongly connected component has, for every Until, an internal
edge that does not postpone it.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .formula import And, Bottom, Formula, Implies, Next, Not, Or, Prop, Top, Until

TRUE, FALSE, LIT, AND, OR, NEXT, UNTIL, RELEASE = range(8)


class Tableau:
    def __init__(self, formula: Formula):
        self.props: list[str] = []
        self._prop_idx: dict[str, int] = {}
        self.nodes: list[tuple] = []
        self._intern: dict[tuple, int] = {}
        self.propmask: list[int] = []
        self.untils: dict[int, int] = {}
        self._nnf_memo: dict[tuple[int, bool], int] = {}
        self._keep = formula
        self.root = self._nnf(formula, True)
        self._exp_cache: dict = {}
        self._set_cache: dict = {}
        self._set_mask: dict = {}

    # construction

    def _node(self, key: tuple, mask: int) -> int:
        i = self._intern.get(key)
        if i is None:
            i = len(self.nodes)
            self.nodes.append(key)
            self.propmask.append(mask)
            self._intern[key] = i
            if key[0] == UNTIL:
                self.untils[i] = len(self.untils)
        return i

    def _prop(self, name: str) -> int:
        i = self._prop_idx.get(name)
        if i is None:
            i = len(self.props)
            self.props.append(name)
            self._prop_idx[name] = i
        return i

    def _nnf(self, f: Formula, pos: bool) -> int:
        key = (id(f), pos)
        hit = self._nnf_memo.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Top):
            out = self._node((TRUE,) if pos else (FALSE,), 0)
        elif isinstance(f, Bottom):
            out = self._node((FALSE,) if pos else (TRUE,), 0)
        elif isinstance(f, Prop):
            p = self._prop(f.name)
            out = self._node((LIT, p, pos), 1 << p)
        elif isinstance(f, Not):
            out = self._nnf(f.arg, not pos)
        elif isinstance(f, (And, Or)):
            kids = tuple(self._nnf(g, pos) for g in f.args)
            op = AND if isinstance(f, And) == pos else OR
            out = self._junction(op, kids)
        elif isinstance(f, Implies):
            a = self._nnf(f.left, not pos)
            b = self._nnf(f.right, pos)
            out = self._junction(OR if pos else AND, (a, b))
        elif isinstance(f, Next):
            a = self._nnf(f.arg, pos)
            out = self._node((NEXT, a), 0)
        elif isinstance(f, Until):
            a = self._nnf(f.left, pos)
            b = self._nnf(f.right, pos)
            op = UNTIL if pos else RELEASE
            out = self._node((op, a, b), self.propmask[a] | self.propmask[b])
        else:
            raise TypeError(f"not a linear-time formula: {type(f).__name__}")
        self._nnf_memo[key] = out
        return out

    def _junction(self, op: int, kids: tuple) -> int:
        kids = tuple(dict.fromkeys(kids))
        if len(kids) == 1:
            return kids[0]
        mask = 0
        for k in kids:
            mask |= self.propmask[k]
        return self._node((op,) + kids, mask)

    # expansion

    def expand(self, fid: int, letter: int) -> tuple:
        """Options ``(next_obligations, postponed_untils)`` for one obligation."""
        key = (fid, letter & self.propmask[fid])
        hit = self._exp_cache.get(key)
        if hit is not None:
            return hit
        node = self.nodes[fid]
        op = node[0]
        if op == TRUE:
            out = ((frozenset(), 0),)
        elif op == FALSE:
            out = ()
        elif op == LIT:
            out = ((frozenset(), 0),) if bool(letter >> node[1] & 1) == node[2] else ()
        elif op == AND:
            out = ((frozenset(), 0),)
            for k in node[1:]:
                out = _combine(out, self.expand(k, letter))
                if not out:
                    break
        elif op == OR:
            opts = []
            for k in node[1:]:
                opts.extend(self.expand(k, letter))
            out = _prune(opts)
        elif op == NEXT:
            out = ((frozenset((node[1],)), 0),)
        elif op == UNTIL:
            bit = 1 << self.untils[fid]
            later = tuple((n | {fid}, d | bit) for n, d in self.expand(node[1], letter))
            out = _prune(self.expand(node[2], letter) + later)
        else:
            hold = self.expand(node[2], letter)
            now = _combine(hold, self.expand(node[1], letter))
            later = _combine(hold, ((frozenset((fid,)), 0),))
            out = _prune(now + later)
        self._exp_cache[key] = out
        return out

    def expand_set(self, obligations: frozenset, letter: int) -> tuple:
        mask = self._set_mask.get(obligations)
        if mask is None:
            mask = 0
            for k in obligations:
                mask |= self.propmask[k]
            self._set_mask[obligations] = mask
        key = (obligations, letter & mask)
        hit = self._set_cache.get(key)
        if hit is not None:
            return hit
        out = ((frozenset(), 0),)
        for k in sorted(obligations):
            out = _combine(out, self.expand(k, letter))
            if not out:
                break
        self._set_cache[key] = out
        return out

    @property
    def initial(self) -> frozenset:
        return frozenset((self.root,))

    @property
    def acceptance_mask(self) -> int:
        return (1 << len(self.untils)) - 1


def _dominates(a, b) -> bool:
    return a[0] <= b[0] and not (a[1] & ~b[1])


def _prune(options) -> tuple:
    kept: list = []
    for opt in sorted(set(options), key=lambda o: (len(o[0]), bin(o[1]).count("1"))):
        if not any(_dominates(k, opt) for k in kept):
            kept.append(opt)
    return tuple(kept)


def _combine(xs, ys) -> tuple:
    if not xs or not ys:
        return ()
    if len(ys) == 1 and not ys[0][0] and not ys[0][1]:
        return xs
    return _prune((a | c, b | d) for a, b in xs for c, d in ys)


def letter_of(tab: Tableau, truth: Callable[[str], bool]) -> int:
    out = 0
    for i, p in enumerate(tab.props):
        if truth(p):
            out |= 1 << i
    return out


def exists_path(
    tab: Tableau,
    start: Hashable,
    successors: Callable[[Hashable], Iterable[Hashable]],
    letter: Callable[[Hashable], int],
    stats: dict | None = None,
) -> bool:
    """Is there an infinite path from ``start`` whose trace satisfies the tableau formula?"""
    full = tab.acceptance_mask
    letters: dict = {}
    succ_cache: dict = {}

    def edges(node):
        s, obl = node
        lt = letters.get(s)
        if lt is None:
            lt = letters[s] = letter(s)
        opts = tab.expand_set(obl, lt)
        if not opts:
            return []
        nxt = succ_cache.get(s)
        if nxt is None:
            nxt = succ_cache[s] = tuple(successors(s))
        return [((t, n), d) for n, d in opts for t in nxt]

    root = (start, tab.initial)
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out_edges: dict = {}
    counter = 0
    work = [(root, 0)]
    index[root] = low[root] = 0
    counter = 1
    stack.append(root)
    on_stack.add(root)
    out_edges[root] = edges(root)
    while work:
        node, i = work[-1]
        es = out_edges[node]
        if i < len(es):
            work[-1] = (node, i + 1)
            w = es[i][0]
            if w not in index:
                index[w] = low[w] = counter
                counter += 1
                stack.append(w)
                on_stack.add(w)
                out_edges[w] = edges(w)
                work.append((w, 0))
            elif w in on_stack:
                if index[w] < low[node]:
                    low[node] = index[w]
            continue
        work.pop()
        if work:
            parent = work[-1][0]
            if low[node] < low[parent]:
                low[parent] = low[node]
        if low[node] == index[node]:
            comp = set()
            while True:
                w = stack.pop()
                on_stack.discard(w)
                comp.add(w)
                if w == node:
                    break
            inner = False
            acc = 0
            for v in comp:
                for w, d in out_edges[v]:
                    if w in comp:
                        inner = True
                        acc |= ~d & full
            if inner and acc == full:
                if stats is not None:
                    stats["product_nodes"] = stats.get("product_nodes", 0) + counter
                return True
    if stats is not None:
        stats["product_nodes"] = stats.get("product_nodes", 0) + counter
    return False
