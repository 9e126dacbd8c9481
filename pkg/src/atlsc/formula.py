"""Formula trees shared by the strategy logic and quantified CTL*.

Both logics use the Boolean and temporal core (``Prop`` .. ``Until``). Strategy
formulas add ``StratQ``/``StratQCo``/``Relax``/``RelaxCo``; QCTL* formulas add
``Exists``/``Forall``/``EPath``/``APath``. Nodes are immutable; ``pos`` records
the source position and takes no part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional


@dataclass(frozen=True)
class Formula:
    pos: Optional[tuple[int, int]] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class StratQ(Formula):
    coalition: tuple[str, ...]
    memoryless: bool
    arg: Formula


@dataclass(frozen=True)
class StratQCo(Formula):
    coalition: tuple[str, ...]
    memoryless: bool
    arg: Formula


@dataclass(frozen=True)
class Relax(Formula):
    coalition: tuple[str, ...]
    arg: Formula


@dataclass(frozen=True)
class RelaxCo(Formula):
    coalition: tuple[str, ...]
    arg: Formula


@dataclass(frozen=True)
class Exists(Formula):
    prop: str
    arg: Formula


@dataclass(frozen=True)
class Forall(Formula):
    prop: str
    arg: Formula


@dataclass(frozen=True)
class EPath(Formula):
    arg: Formula


@dataclass(frozen=True)
class APath(Formula):
    arg: Formula


BOOLEAN = (Top, Bottom, Prop, Not, And, Or, Implies)
TEMPORAL = (Next, Until)
ATL_STATE = (StratQ, StratQCo, Relax, RelaxCo)
QCTL_STATE = (Exists, Forall, EPath, APath)
UNARY = (Not, Next, StratQ, StratQCo, Relax, RelaxCo, Exists, Forall, EPath, APath)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, (Implies, Until)):
        return (f.left, f.right)
    if isinstance(f, UNARY):
        return (f.arg,)
    return ()


def rebuild(f: Formula, kids) -> Formula:
    kids = tuple(kids)
    if isinstance(f, And):
        return And(kids)
    if isinstance(f, Or):
        return Or(kids)
    if isinstance(f, Implies):
        return Implies(kids[0], kids[1])
    if isinstance(f, Until):
        return Until(kids[0], kids[1])
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, Next):
        return Next(kids[0])
    if isinstance(f, StratQ):
        return StratQ(f.coalition, f.memoryless, kids[0])
    if isinstance(f, StratQCo):
        return StratQCo(f.coalition, f.memoryless, kids[0])
    if isinstance(f, Relax):
        return Relax(f.coalition, kids[0])
    if isinstance(f, RelaxCo):
        return RelaxCo(f.coalition, kids[0])
    if isinstance(f, Exists):
        return Exists(f.prop, kids[0])
    if isinstance(f, Forall):
        return Forall(f.prop, kids[0])
    if isinstance(f, EPath):
        return EPath(kids[0])
    if isinstance(f, APath):
        return APath(kids[0])
    return f


def subformulas(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def size(f: Formula) -> int:
    """Number of AST nodes."""
    return sum(1 for _ in subformulas(f))


def props(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Prop)}


def free_props(f: Formula) -> frozenset:
    if isinstance(f, Prop):
        return frozenset((f.name,))
    if isinstance(f, (Exists, Forall)):
        return free_props(f.arg) - {f.prop}
    out = frozenset()
    for g in children(f):
        out |= free_props(g)
    return out


def is_state(f: Formula) -> bool:
    """True when ``f`` is a state formula of either logic."""
    if isinstance(f, TEMPORAL):
        return False
    if isinstance(f, ATL_STATE + QCTL_STATE + (Top, Bottom, Prop)):
        return True
    return all(is_state(g) for g in children(f))


def is_propositional(f: Formula) -> bool:
    return isinstance(f, BOOLEAN) and all(is_propositional(g) for g in children(f))


def temporal_depth(f: Formula) -> int:
    """Nesting depth of X and U."""
    below = max((temporal_depth(g) for g in children(f)), default=0)
    return below + 1 if isinstance(f, TEMPORAL) else below


def next_depth(f: Formula) -> int:
    below = max((next_depth(g) for g in children(f)), default=0)
    return below + 1 if isinstance(f, Next) else below


def quantifier_depth(f: Formula) -> int:
    below = max((quantifier_depth(g) for g in children(f)), default=0)
    return below + 1 if isinstance(f, (Exists, Forall)) else below


# builders used by the reductions and tests


def conj(items: Iterable[Formula]) -> Formula:
    items = [g for g in items if not isinstance(g, Top)]
    if not items:
        return Top()
    if len(items) == 1:
        return items[0]
    return And(tuple(items))


def disj(items: Iterable[Formula]) -> Formula:
    items = [g for g in items if not isinstance(g, Bottom)]
    items = list(dict.fromkeys(items))
    if not items:
        return Bottom()
    if len(items) == 1:
        return items[0]
    return Or(tuple(items))


def F(f: Formula) -> Formula:
    return Until(Top(), f)


def G(f: Formula) -> Formula:
    return Not(Until(Top(), Not(f)))


def EX(f):
    return EPath(Next(f))


def AX(f):
    return APath(Next(f))


def EF(f):
    return EPath(F(f))


def AF(f):
    return APath(F(f))


def EG(f):
    return EPath(G(f))


def AG(f):
    return APath(G(f))


def box(coalition, f: Formula, memoryless: bool = False) -> Formula:
    return Not(StratQ(tuple(coalition), memoryless, Not(f)))


def all_paths(f: Formula) -> Formula:
    """The strategy-logic encoding of the universal path quantifier."""
    return RelaxCo((), StratQ((), False, f))


def some_path(f: Formula) -> Formula:
    return Not(all_paths(Not(f)))
