"""Translations of strategy formulas into quantified CTL*.

Two encodings are provided.

* Tree encoding (uniform observation, memoryful strategies): the game is
  replaced by the complete graph over its observation classes and every
  strategy quantifier becomes a quantification over move labels of the
  execution tree, followed by a universal quantification over the path labels
  ``q#i@k`` of the next level that pick one outcome. The output is meant for
  the tree semantics and is only emitted here.
* Structure encoding (memoryless strategies, arbitrary observation): move
  labels are placed directly on the states of the underlying Kripke structure
  and the result is decided by :mod:`atlsc.qctl`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from .atoms import FreshAtomRegistry
from .errors import ComplementPresent, MemoryfulQuantifier, NotUniform, TranslationError
from .formula import (
    AG, APath, And, Bottom, EF, EG, EPath, EX, Exists, Forall, Formula, G, Implies, Next, Not, Or,
    Prop, Relax, RelaxCo, StratQ, StratQCo, Top, Until, conj, disj,
)
from .game import Cgso, KripkeStructure, is_uniform, quotient, underlying_kripke
from .rewrite import eliminate_complements, ex1, strat_depth


@dataclass(frozen=True)
class TranslationContext:
    game: Cgso
    B: tuple[str, ...] = ()
    kappa: int = 0
    lam: int = 0
    registry: FreshAtomRegistry = field(default_factory=FreshAtomRegistry)

    def with_coalition(self, coalition: Iterable[str]) -> "TranslationContext":
        members = set(coalition)
        return replace(self, B=tuple(a for a in self.game.agents if a in members))


def _flat_and(items) -> Formula:
    out = []
    for g in items:
        if isinstance(g, And):
            out.extend(g.args)
        else:
            out.append(g)
    return conj(out)


def _ordered(game: Cgso, coalition) -> tuple[str, ...]:
    members = set(coalition)
    return tuple(a for a in game.agents if a in members)


def _exactly_one(atoms: list[Formula]) -> Formula:
    return disj(_flat_and([m] + [Not(o) for o in atoms if o is not m]) for m in atoms)


def phi_strat(A, ctx: TranslationContext) -> Formula:
    """Every node carries exactly one move label for each agent of ``A``."""
    reg, game = ctx.registry, ctx.game
    parts = []
    for a in _ordered(game, A):
        atoms = [Prop(reg.move_atom(a, m)) for m in game.moves]
        parts.append(AG(_exactly_one(atoms)))
    return conj(parts)


def phi_path(level: int, ctx: TranslationContext) -> Formula:
    """The ``q#i@level`` labels mark a single branch following real classes."""
    reg, n = ctx.registry, len(ctx.game.states)
    qs = [Prop(reg.path_atom(i, level)) for i in range(n)]
    here = disj(
        _flat_and([qs[i], Prop(reg.class_atom(i))] + [Not(qs[j]) for j in range(n) if j != i])
        for i in range(n)
    )
    return EG(_flat_and([here, ex1(disj(qs))]))


def _move_label(game: Cgso, mv, B, atom) -> Formula:
    members = set(B)
    return conj(Prop(atom(a, m)) for a, m in zip(game.agents, mv) if a in members)


def phi_out(level: int, B, ctx: TranslationContext) -> Formula:
    """The branch labelled at ``level`` is an outcome of the moves labelled for ``B``."""
    reg, game = ctx.registry, ctx.game
    idx = game.state_index
    items = []
    for i, q in enumerate(game.states):
        qi = Prop(reg.path_atom(i, level))
        for mv in game.move_vectors():
            t = game.edg[(q, mv)]
            items.append(_flat_and([qi, _move_label(game, mv, B, reg.move_atom),
                                    EX(Prop(reg.path_atom(idx[t], level)))]))
    return EG(disj(items))


def translate_tree(f: Formula, ctx: TranslationContext) -> Formula:
    game, reg = ctx.game, ctx.registry
    if not is_uniform(game):
        raise NotUniform("the tree encoding needs a uniform observation")
    n = len(game.states)

    def go(g, B, k):
        if isinstance(g, Prop):
            return disj(Prop(reg.path_atom(i, k)) for i, q in enumerate(game.states)
                        if g.name in game.labels(q))
        if isinstance(g, (Top, Bottom)):
            return g
        if isinstance(g, Not):
            return Not(go(g.arg, B, k))
        if isinstance(g, And):
            return And(tuple(go(h, B, k) for h in g.args))
        if isinstance(g, Or):
            return Or(tuple(go(h, B, k) for h in g.args))
        if isinstance(g, Implies):
            return Implies(go(g.left, B, k), go(g.right, B, k))
        if isinstance(g, Next):
            return Next(go(g.arg, B, k))
        if isinstance(g, Until):
            return Until(go(g.left, B, k), go(g.right, B, k))
        if isinstance(g, Relax):
            return go(g.arg, tuple(b for b in B if b not in g.coalition), k)
        if isinstance(g, (StratQCo, RelaxCo)):
            raise ComplementPresent("eliminate complement coalitions before translating")
        if isinstance(g, StratQ):
            if g.memoryless and g.coalition:
                raise TranslationError("the tree encoding covers memoryful quantifiers only")
            if k + 1 > ctx.lam:
                raise TranslationError(f"quantifier level {k + 1} exceeds the depth {ctx.lam}")
            A = _ordered(game, g.coalition)
            BA = _ordered(game, set(B) | set(A))
            nxt = [Prop(reg.path_atom(i, k + 1)) for i in range(n)]
            guard = _flat_and([
                phi_path(k + 1, ctx),
                disj(And((Prop(reg.path_atom(i, k)), nxt[i])) for i in range(n)),
                phi_out(k + 1, BA, ctx),
            ])
            body: Formula = Implies(guard, APath(Implies(G(disj(nxt)), go(g.arg, BA, k + 1))))
            for q in reversed(nxt):
                body = Forall(q.name, body)
            body = _flat_and([phi_strat(A, ctx), body])
            for a in reversed(A):
                for m in reversed(game.moves):
                    body = Exists(reg.move_atom(a, m), body)
            return body
        raise TranslationError(f"unexpected node {type(g).__name__}")

    return go(f, ctx.B, ctx.kappa)


def build_uniform_reduction(game: Cgso, q_alpha: str, f: Formula) -> tuple[KripkeStructure, Formula]:
    f = eliminate_complements(f, game.agents)
    s_c = quotient(game)
    ctx = TranslationContext(game, lam=strat_depth(f))
    alpha = Prop(ctx.registry.path_atom(game.state_index[q_alpha], 0))
    body = translate_tree(f, ctx)
    return s_c, Exists(alpha.name, _flat_and([body, alpha]))


# structure encoding


def phi_stratm(A, ctx: TranslationContext) -> Formula:
    """One move label per state for each agent of ``A``, constant on its observation classes."""
    reg, game = ctx.registry, ctx.game
    parts = []
    for a in _ordered(game, A):
        atoms = [Prop(reg.move_atom(a, m)) for m in game.moves]
        parts.append(AG(_exactly_one(atoms)))
        for c in range(len(game.obs[a].classes)):
            o = Prop(reg.obs_atom(a, c))
            for m in atoms:
                parts.append(Implies(EF(And((o, m))), AG(Implies(o, m))))
    return conj(parts)


def phi_out_mem(B, ctx: TranslationContext) -> Formula:
    """Paths that follow the move labels of ``B`` at every step."""
    reg, game = ctx.registry, ctx.game
    parts = []
    for q in game.states:
        options = disj(
            conj([_move_label(game, mv, B, reg.move_atom), Next(Prop(reg.state_atom(game.edg[(q, mv)])))])
            for mv in game.move_vectors()
        )
        parts.append(Implies(Prop(reg.state_atom(q)), options))
    return G(conj(parts))


def translate_memoryless(f: Formula, ctx: TranslationContext) -> Formula:
    game, reg = ctx.game, ctx.registry

    def go(g, B):
        if isinstance(g, (Prop, Top, Bottom)):
            return g
        if isinstance(g, Not):
            return Not(go(g.arg, B))
        if isinstance(g, And):
            return And(tuple(go(h, B) for h in g.args))
        if isinstance(g, Or):
            return Or(tuple(go(h, B) for h in g.args))
        if isinstance(g, Implies):
            return Implies(go(g.left, B), go(g.right, B))
        if isinstance(g, Next):
            return Next(go(g.arg, B))
        if isinstance(g, Until):
            return Until(go(g.left, B), go(g.right, B))
        if isinstance(g, Relax):
            return go(g.arg, tuple(b for b in B if b not in g.coalition))
        if isinstance(g, (StratQCo, RelaxCo)):
            raise ComplementPresent("eliminate complement coalitions before translating")
        if isinstance(g, StratQ):
            if g.coalition and not g.memoryless:
                raise MemoryfulQuantifier("the structure encoding covers memoryless quantifiers only")
            A = _ordered(game, g.coalition)
            BA = _ordered(game, set(B) | set(A))
            body = _flat_and([phi_stratm(A, ctx), APath(Implies(phi_out_mem(BA, ctx), go(g.arg, BA)))])
            for a in reversed(A):
                for m in reversed(game.moves):
                    body = Exists(reg.move_atom(a, m), body)
            return body
        raise TranslationError(f"unexpected node {type(g).__name__}")

    return go(f, ctx.B)


def build_memoryless_reduction(game: Cgso, f: Formula) -> tuple[KripkeStructure, Formula]:
    f = eliminate_complements(f, game.agents)
    ctx = TranslationContext(game, lam=strat_depth(f))
    return underlying_kripke(game), translate_memoryless(f, ctx)
