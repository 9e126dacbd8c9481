"""Command-line entry point: ``atlsc {validate,check,translate,to-turnbased,qctl,crosscheck}``.

Exit codes: 0 when the checked property holds (or the game is valid), 1 when
it does not, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .errors import AtlscError, InvalidGame
from .formula import size
from .gamefile import dump_game, dump_kripke, load_game, load_kripke
from .game import require_valid, to_turn_based, validate
from .qctl import QctlChecker
from .reductions import build_memoryless_reduction, build_uniform_reduction, phi_out, TranslationContext
from .report import CheckReport, digest, format_valuation
from .rewrite import has_memoryful, translate_formula_tb
from .strategies import check_memoryless, check_windowed
from .syntax import parse_atlsc, parse_qctl, to_text

DEFAULT_WINDOW = 3


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _formula_text(arg: str) -> str:
    return _read(arg[1:]).strip() if arg.startswith("@") else arg


def _game(path: str, normalize: bool = False):
    game = load_game(path, normalize=normalize)
    require_valid(game)
    return game


def _start(game, state):
    q = state or game.init or game.states[0]
    if q not in game.state_index:
        raise AtlscError(f"unknown state {q}")
    return q


def cmd_validate(args) -> int:
    game = load_game(args.game, normalize=args.normalize)
    diags = validate(game)
    for d in diags:
        print(d, file=sys.stderr)
    return 0 if not diags else 2


def cmd_check(args) -> int:
    text = _formula_text(args.formula)
    game = _game(args.game, args.normalize)
    f = parse_atlsc(text)
    q = _start(game, args.state)
    engine = args.engine
    if engine is None:
        engine = "windowed" if has_memoryful(f) or args.window else "reduction"
    started = time.perf_counter()
    if engine == "direct":
        report = check_memoryless(game, q, f)
    elif engine == "windowed":
        report = check_windowed(game, q, f, args.window or DEFAULT_WINDOW)
    else:
        k, phi = build_memoryless_reduction(game, f)
        checker = QctlChecker(k)
        verdict = checker.check(phi, q)
        witnesses = format_valuation(checker.witness) if verdict and checker.witness else []
        stats = dict(checker.stats, kripke_states=len(k.states), formula_size=size(phi))
        report = CheckReport(verdict, "memoryless-reduction", tuple(witnesses), stats)
    inputs = {"game": digest(_read(args.game)), "formula": digest(text), "state": q}
    if engine == "windowed":
        inputs["window"] = args.window or DEFAULT_WINDOW
    stats = dict(report.stats)
    if args.timing:
        stats["wall_seconds"] = round(time.perf_counter() - started, 6)
    report = CheckReport(report.verdict, report.engine, report.witnesses, stats, inputs)
    sys.stdout.write(report.to_json())
    return 0 if report.verdict else 1


def cmd_translate(args) -> int:
    text = _formula_text(args.formula)
    game = _game(args.game, args.normalize)
    f = parse_atlsc(text)
    if args.semantics == "tree":
        k, phi = build_uniform_reduction(game, _start(game, args.state), f)
    else:
        k, phi = build_memoryless_reduction(game, f)
    with open(args.output + ".kripke", "w", encoding="utf-8") as fh:
        fh.write(dump_kripke(k))
    with open(args.output + ".qctl", "w", encoding="utf-8") as fh:
        fh.write(to_text(phi) + "\n")
    n, r, p = len(game.states), len(game.moves), len(game.agents)
    stats = {
        "semantics": args.semantics,
        "structure_states": len(k.states),
        "formula_size": size(phi),
        "input_size": size(f),
    }
    if args.semantics == "tree":
        stats["phi_out_size"] = size(phi_out(1, game.agents, TranslationContext(game, lam=1)))
        stats["phi_out_bound_unit"] = n * n * r ** p
    else:
        stats["bound_unit"] = size(f) * n * (p * r * r + n * n * r ** p)
    print(json.dumps(stats, indent=2))
    return 0


def cmd_to_turnbased(args) -> int:
    game = _game(args.game, args.normalize)
    order = args.order.split(",") if args.order else None
    tb = to_turn_based(game, order)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(dump_game(tb))
    if args.formula:
        f = parse_atlsc(_formula_text(args.formula))
        out = to_text(translate_formula_tb(f, len(game.agents)))
        if args.formula_output:
            with open(args.formula_output, "w", encoding="utf-8") as fh:
                fh.write(out + "\n")
        else:
            print(out)
    return 0


def cmd_qctl(args) -> int:
    text = _formula_text(args.formula)
    k = load_kripke(args.structure)
    problems = k.problems()
    if problems:
        raise InvalidGame(problems)
    f = parse_qctl(text)
    q = args.state or k.init or k.states[0]
    checker = QctlChecker(k)
    verdict = checker.check(f, q)
    witnesses = format_valuation(checker.witness) if verdict and checker.witness else []
    inputs = {"structure": digest(_read(args.structure)), "formula": digest(text), "state": q}
    report = CheckReport(verdict, "qctl-structure", tuple(witnesses), dict(checker.stats), inputs)
    sys.stdout.write(report.to_json())
    return 0 if verdict else 1


def cmd_crosscheck(args) -> int:
    from .randgen import random_atl0, random_game

    rng = random.Random(args.seed)
    mismatches = 0
    for i in range(args.count):
        game = random_game(rng)
        f = random_atl0(rng, game.agents)
        direct = check_memoryless(game, "q0", f).verdict
        k, phi = build_memoryless_reduction(game, f)
        reduced = QctlChecker(k).check(phi, "q0")
        if direct != reduced:
            mismatches += 1
            print(f"case {i}: direct={direct} reduction={reduced} formula={to_text(f)}")
    print(f"{args.count - mismatches}/{args.count} agree (seed {args.seed})")
    return 0 if mismatches == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="atlsc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def game_args(p):
        p.add_argument("game")
        p.add_argument("--normalize", action="store_true", help="accept avail lines by rewriting unavailable moves")

    p = sub.add_parser("validate", help="check a game file")
    game_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="model-check a strategy formula; formula may be @file")
    game_args(p)
    p.add_argument("formula")
    p.add_argument("--engine", choices=("direct", "reduction", "windowed"))
    p.add_argument("--window", type=int)
    p.add_argument("--state")
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("translate", help="emit a structure and a QCTL* formula")
    game_args(p)
    p.add_argument("formula")
    p.add_argument("--semantics", choices=("tree", "structure"), default="structure")
    p.add_argument("--state")
    p.add_argument("-o", "--output", required=True, help="prefix for the .kripke and .qctl files")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("to-turnbased", help="sequentialise the agents' moves")
    game_args(p)
    p.add_argument("--order")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--formula")
    p.add_argument("--formula-output")
    p.set_defaults(func=cmd_to_turnbased)

    p = sub.add_parser("qctl", help="check a QCTL* formula on a Kripke structure")
    p.add_argument("structure")
    p.add_argument("formula")
    p.add_argument("--state")
    p.set_defaults(func=cmd_qctl)

    p = sub.add_parser("crosscheck", help="compare both memoryless engines on random cases")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.set_defaults(func=cmd_crosscheck)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidGame as e:
        for d in e.diagnostics:
            print(d, file=sys.stderr)
        return 2
    except (AtlscError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
