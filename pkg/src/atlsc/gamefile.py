"""Line-oriented text format for games and Kripke structures.

Game files::

    agents: a1 a2
    moves: m1 m2 m3
    props: P f
    states: q0 q1 q2
    label q2: P
    obs uniform: {q0 q1} {q2}        # or one `obs a1: ...` line per agent
    edge q0 m3 * -> q2               # one move per agent, `*` matches any move
    owner q0: a2                     # optional
    init: q0

Edge rules are tried in file order and the first match wins. Agents without
an ``obs`` line observe states perfectly. ``#`` starts a comment only at the
beginning of a token.
"""

from __future__ import annotations

import itertools
import re
from typing import Optional

from .errors import GameFileError
from .game import Cgso, KripkeStructure, ObservationPartition, is_uniform, normalize_availability

_CLASS_RE = re.compile(r"\{([^{}]*)\}")


def _strip_comment(line: str) -> str:
    out = []
    for tok in line.split():
        if tok.startswith("#"):
            break
        out.append(tok)
    return " ".join(out)


def _split_head(line: str, lineno: int):
    if ":" not in line:
        raise GameFileError(f"expected 'keyword: values', got {line!r}", lineno)
    head, _, rest = line.partition(":")
    return head.split(), rest.split()


def _classes(text: str, lineno: int) -> tuple[tuple[str, ...], ...]:
    stripped = _CLASS_RE.sub("", text).strip()
    if stripped:
        raise GameFileError(f"unexpected text in observation classes: {stripped!r}", lineno)
    return tuple(tuple(m.group(1).split()) for m in _CLASS_RE.finditer(text))


def parse_game(text: str, normalize: bool = False) -> Cgso:
    agents: list[str] = []
    moves: list[str] = []
    props: list[str] = []
    states: list[str] = []
    label: dict[str, set] = {}
    obs_lines: dict[str, tuple] = {}
    uniform_obs = None
    rules = []
    owner: dict[str, str] = {}
    avail: dict[tuple[str, str], list[str]] = {}
    init = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line.startswith("edge "):
            lhs, arrow, rhs = line[5:].partition("->")
            if not arrow or len(rhs.split()) != 1:
                raise GameFileError("edge lines read 'edge q m1 .. mp -> q2'", lineno)
            toks = lhs.split()
            if not toks:
                raise GameFileError("edge without source state", lineno)
            rules.append((toks[0], tuple(toks[1:]), rhs.split()[0], lineno))
            continue
        if line.startswith("obs "):
            head, _, rest = line.partition(":")
            who = head.split()[1:]
            if len(who) != 1:
                raise GameFileError("obs lines read 'obs <agent|uniform>: {..} {..}'", lineno)
            classes = _classes(rest, lineno)
            if who[0] == "uniform":
                uniform_obs = classes
            else:
                obs_lines[who[0]] = classes
            continue
        head, vals = _split_head(line, lineno)
        key = head[0]
        if key == "agents" and len(head) == 1:
            agents += vals
        elif key == "moves" and len(head) == 1:
            moves += vals
        elif key == "props" and len(head) == 1:
            props += vals
        elif key == "states" and len(head) == 1:
            states += vals
        elif key == "init" and len(head) == 1:
            if len(vals) != 1:
                raise GameFileError("init takes exactly one state", lineno)
            init = vals[0]
        elif key == "label" and len(head) == 2:
            label.setdefault(head[1], set()).update(vals)
        elif key == "owner" and len(head) == 2:
            if len(vals) != 1:
                raise GameFileError("owner takes exactly one agent", lineno)
            owner[head[1]] = vals[0]
        elif key == "avail" and len(head) == 3:
            avail[(head[1], head[2])] = vals
        else:
            raise GameFileError(f"unknown directive {' '.join(head)!r}", lineno)

    edg = {}
    for q, pattern, target, lineno in rules:
        if len(pattern) != len(agents):
            raise GameFileError(f"edge gives {len(pattern)} moves for {len(agents)} agents", lineno)
        choices = []
        for m in pattern:
            if m == "*":
                choices.append(moves)
            elif m in moves:
                choices.append([m])
            else:
                raise GameFileError(f"unknown move {m}", lineno)
        for mv in itertools.product(*choices):
            edg.setdefault((q, tuple(mv)), target)

    obs = {}
    for a in agents:
        if a in obs_lines:
            obs[a] = ObservationPartition(obs_lines[a])
        elif uniform_obs is not None:
            obs[a] = ObservationPartition(uniform_obs)
        else:
            obs[a] = ObservationPartition.identity(states)
    for a, classes in obs_lines.items():
        if a not in obs:
            obs[a] = ObservationPartition(classes)

    game = Cgso(
        tuple(states),
        tuple(props),
        {q: frozenset(ps) for q, ps in label.items()},
        tuple(agents),
        tuple(moves),
        edg,
        obs,
        owner or None,
        init,
    )
    if avail:
        if not normalize:
            q, a = next(iter(avail))
            raise GameFileError(f"partial move availability ({q}, {a}) is not supported; use normalization")
        game = normalize_availability(game, avail)
    return game


def load_game(path, normalize: bool = False) -> Cgso:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read(), normalize=normalize)


def _fmt_classes(part: ObservationPartition) -> str:
    return " ".join("{" + " ".join(c) + "}" for c in part.classes)


def dump_game(game: Cgso) -> str:
    lines = [
        f"agents: {' '.join(game.agents)}",
        f"moves: {' '.join(game.moves)}",
        f"props: {' '.join(game.props)}".rstrip(),
        f"states: {' '.join(game.states)}",
    ]
    for q in game.states:
        ps = [p for p in game.props if p in game.labels(q)]
        ps += sorted(game.labels(q) - set(game.props))
        if ps:
            lines.append(f"label {q}: {' '.join(ps)}")
    if game.agents and is_uniform(game):
        lines.append(f"obs uniform: {_fmt_classes(game.obs[game.agents[0]])}")
    else:
        for a in game.agents:
            lines.append(f"obs {a}: {_fmt_classes(game.obs[a])}")
    p = len(game.agents)
    for q in game.states:
        targets = [game.edg.get((q, mv)) for mv in game.move_vectors()]
        if targets and all(t == targets[0] and t is not None for t in targets):
            lines.append(f"edge {q} {' '.join(['*'] * p)} -> {targets[0]}")
            continue
        for mv, t in zip(game.move_vectors(), targets):
            if t is not None:
                lines.append(f"edge {q} {' '.join(mv)} -> {t}")
    if game.owner:
        for q in game.states:
            if q in game.owner:
                lines.append(f"owner {q}: {game.owner[q]}")
    if game.init is not None:
        lines.append(f"init: {game.init}")
    return "\n".join(lines) + "\n"


def parse_kripke(text: str) -> KripkeStructure:
    props: list[str] = []
    states: list[str] = []
    label: dict[str, set] = {}
    trans: dict[str, list[str]] = {}
    init: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        head, vals = _split_head(line, lineno)
        key = head[0]
        if key == "props" and len(head) == 1:
            props += vals
        elif key == "states" and len(head) == 1:
            states += vals
        elif key == "init" and len(head) == 1 and len(vals) == 1:
            init = vals[0]
        elif key == "label" and len(head) == 2:
            label.setdefault(head[1], set()).update(vals)
        elif key == "trans" and len(head) == 2:
            trans.setdefault(head[1], []).extend(vals)
        else:
            raise GameFileError(f"unknown directive {' '.join(head)!r}", lineno)
    return KripkeStructure(
        tuple(states),
        {q: tuple(dict.fromkeys(ts)) for q, ts in trans.items()},
        {q: frozenset(ps) for q, ps in label.items()},
        tuple(props),
        init,
    )


def load_kripke(path) -> KripkeStructure:
    with open(path, encoding="utf-8") as fh:
        return parse_kripke(fh.read())


def dump_kripke(k: KripkeStructure) -> str:
    lines = []
    if k.props:
        lines.append(f"props: {' '.join(k.props)}")
    lines.append(f"states: {' '.join(k.states)}")
    order = {p: i for i, p in enumerate(k.props)}
    for q in k.states:
        ps = sorted(k.label.get(q, ()), key=lambda p: (order.get(p, len(order)), p))
        if ps:
            lines.append(f"label {q}: {' '.join(ps)}")
    for q in k.states:
        lines.append(f"trans {q}: {' '.join(k.transitions.get(q, ()))}")
    if k.init is not None:
        lines.append(f"init: {k.init}")
    return "\n".join(lines) + "\n"
