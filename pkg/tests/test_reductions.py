import random

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from atlsc.errors import ComplementPresent, MemoryfulQuantifier, NotUniform, TranslationError
from atlsc.formula import (
    EPath, Exists, Forall, Or, Prop, StratQCo, Top, free_props, size, subformulas,
)
from atlsc.gamefile import dump_kripke, parse_game
from atlsc.qctl import check_structure
from atlsc.randgen import GameShape, random_atl0, random_game
from atlsc.reductions import (
    TranslationContext, build_memoryless_reduction, build_uniform_reduction, phi_out, phi_path,
    phi_strat, translate_tree,
)
from atlsc.strategies import check_memoryless
from atlsc.syntax import parse_atlsc, parse_qctl, to_text

from conftest import GOLDEN

seeds = st.integers(0, 10**6)
SIZE_C = 8

ONE_STATE = parse_game("agents: a1\nmoves: m1 m2\nstates: q0\nedge q0 * -> q0\n")


def ctx(game, lam=1):
    return TranslationContext(game, lam=lam)


def test_phi_strat_examples():
    assert phi_strat((), ctx(ONE_STATE)) == Top()
    assert to_text(phi_strat(("a1",), ctx(ONE_STATE))) == \
        "A G (m#a1#m1 & !m#a1#m2 | m#a1#m2 & !m#a1#m1)"


def test_phi_path_single_state():
    assert to_text(phi_path(1, ctx(ONE_STATE))).startswith(
        "E G (q#0@1 & s#0 & E X q#0@1 & forall #P0.")


def test_phi_path_fig1(fig1):
    f = phi_path(1, ctx(fig1))
    disjunction = f.arg.arg.right.arg.args[0]
    assert isinstance(disjunction, Or) and len(disjunction.args) == 6
    assert all(sum(1 for g in d.args if to_text(g).startswith("!")) == 5 for d in disjunction.args)


def test_phi_out_examples():
    assert to_text(phi_out(1, ("a1",), ctx(ONE_STATE))) == \
        "E G (q#0@1 & m#a1#m1 & E X q#0@1 | q#0@1 & m#a1#m2 & E X q#0@1)"
    assert to_text(phi_out(1, (), ctx(ONE_STATE))) == "E G (q#0@1 & E X q#0@1)"


def test_atomic_clause(fig1):
    assert to_text(translate_tree(Prop("P"), ctx(fig1))) == "q#2@0 | q#3@0"


def test_relax_clause(fig1):
    c = TranslationContext(fig1, B=("a1",), lam=1)
    assert translate_tree(parse_atlsc("relax(a1) P"), c) == translate_tree(Prop("P"), ctx(fig1))


def test_tree_top_level(fig1):
    k, phi = build_uniform_reduction(fig1, "q0", parse_atlsc("<<a1>> F f"))
    assert k.states == ("C0", "C1")
    assert isinstance(phi, Exists) and phi.prop == "q#0@0"
    assert to_text(phi.arg.args[-1]) == "q#0@0"
    assert phi.arg.args[0].prop == "m#a1#m1"


def test_tree_atomic_pipeline(fig1):
    _, phi = build_uniform_reduction(fig1, "q0", parse_atlsc("P"))
    assert to_text(phi) == "exists q#0@0. ((q#2@0 | q#3@0) & q#0@0)"


def test_tree_errors(fig1):
    nonuniform = parse_game(
        "agents: a b\nmoves: m\nstates: s t\nobs a: {s t}\nedge s * * -> t\nedge t * * -> s\n")
    with pytest.raises(NotUniform):
        build_uniform_reduction(nonuniform, "s", parse_atlsc("<<a>> X true"))
    with pytest.raises(ComplementPresent):
        translate_tree(StratQCo(("a1",), False, Prop("P")), ctx(fig1))
    with pytest.raises(TranslationError):
        build_uniform_reduction(fig1, "q0", parse_atlsc("<<a1>>_0 F f"))


def test_tree_level_discipline(fig1):
    """Level k reads q#i@k and binds q#i@(k+1); only class atoms and unlabelled q#i@0 stay free."""
    f = parse_atlsc("<<a1>> X (<<a2>> F f & [[a1]] G P)")
    _, phi = build_uniform_reduction(fig1, "q1", f)
    allowed = {f"s#{i}" for i in range(6)} | {f"q#{i}@0" for i in range(6) if i != 1}
    assert free_props(phi) <= allowed
    for g in subformulas(phi):
        if isinstance(g, Forall) and g.prop.startswith("q#"):
            level = int(g.prop.split("@")[1])
            below = {p for p in free_props(g.arg) if p.startswith("q#")}
            assert all(int(p.split("@")[1]) in (level - 1, level) for p in below)


def test_golden_files(fig1):
    k, phi = build_uniform_reduction(fig1, "q0", parse_atlsc("<<a1>> F f"))
    assert dump_kripke(k) == (GOLDEN / "fig1_tree.kripke").read_text()
    assert to_text(phi) + "\n" == (GOLDEN / "fig1_tree.qctl").read_text()
    k, phi = build_memoryless_reduction(fig1, parse_atlsc("<<a1>>_0 F f"))
    assert dump_kripke(k) == (GOLDEN / "fig1_structure.kripke").read_text()
    assert to_text(phi) + "\n" == (GOLDEN / "fig1_structure.qctl").read_text()
    assert parse_qctl((GOLDEN / "fig1_tree.qctl").read_text()) == build_uniform_reduction(
        fig1, "q0", parse_atlsc("<<a1>> F f"))[1]


def test_memoryless_pipeline_fig1(fig1):
    for text, expected in [("<<a1>>_0 F f", True), ("<<a1>>_0 X X X f", False), ("[[a1]]_0 F f", True)]:
        k, phi = build_memoryless_reduction(fig1, parse_atlsc(text))
        assert check_structure(k, "q0", phi) is expected, text


def test_memoryless_reduction_errors(fig1):
    with pytest.raises(MemoryfulQuantifier):
        build_memoryless_reduction(fig1, parse_atlsc("<<a1>> F f"))
    k, phi = build_memoryless_reduction(fig1, parse_atlsc("A F f"))
    assert not check_structure(k, "q0", phi)


def test_memoryless_emission_is_closed(fig1):
    k, phi = build_memoryless_reduction(fig1, parse_atlsc("<<a1,a2>>_0 X <<a2>>_0 F f"))
    assert free_props(phi) <= k.all_props


def test_phi_strat_size_linear():
    sizes = []
    for r in range(1, 6):
        g = parse_game("agents: a1 a2\nmoves: " + " ".join(f"m{i}" for i in range(r)) +
                       "\nstates: q\nedge q * * -> q\n")
        sizes.append([size(phi_strat(A, ctx(g))) for A in [("a1",), ("a1", "a2")]])
    for r, (one, two) in enumerate(sizes, 1):
        assert two == 2 * one + 1
        assert one <= SIZE_C * r * r


def test_phi_path_size_quadratic():
    sizes = {}
    for n in range(2, 9):
        g = random_game(random.Random(n), GameShape(n, n, 1, 1))
        sizes[n] = size(phi_path(1, ctx(g)))
    second = {sizes[n + 1] - 2 * sizes[n] + sizes[n - 1] for n in range(3, 8)}
    assert second == {4}
    assert all(sizes[n] <= SIZE_C * n * n for n in range(3, 9))


def test_size_bounds_family():
    rng = random.Random(5)
    for n in range(2, 7):
        for r in (2, 3):
            g = random_game(rng, GameShape(n, n, 2, r))
            for B in [(), ("a1",), ("a1", "a2")]:
                assert size(phi_out(1, B, ctx(g))) <= SIZE_C * n * n * r ** 2
            f = random_atl0(rng, g.agents)
            _, phi = build_memoryless_reduction(g, f)
            assert size(phi) <= SIZE_C * size(f) * n * (2 * r * r + n * n * r ** 2)


def test_emission_is_deterministic(fig1):
    f = parse_atlsc("<<a1>> X [[a2]] F P")
    assert to_text(build_uniform_reduction(fig1, "q0", f)[1]) == \
        to_text(build_uniform_reduction(fig1, "q0", f)[1])


@settings(max_examples=40)
@given(seeds)
def test_structure_reduction_matches_direct_engine(seed):
    rng = random.Random(seed)
    g = random_game(rng)
    f = random_atl0(rng, g.agents)
    k, phi = build_memoryless_reduction(g, f)
    assert check_structure(k, "q0", phi) == check_memoryless(g, "q0", f).verdict
