import random

import hypothesis.strategies as st
import pytest
from hypothesis import given

from atlsc.errors import GameFileError, InvalidPath, NotUniform, UnknownAgent
from atlsc.game import (
    MID, ObservationPartition, check_path, is_uniform, path_equivalent, quotient, to_turn_based,
    underlying_kripke, validate,
)
from atlsc.gamefile import dump_game, dump_kripke, parse_game, parse_kripke
from atlsc.randgen import GameShape, random_game

seeds = st.integers(0, 10**6)

SMALL = """
agents: a
moves: x y
props: p
states: s t
label t: p
edge s x -> t
edge s y -> s
edge t * -> t
"""


def test_fig1_is_valid_and_uniform(fig1):
    assert validate(fig1) == []
    assert is_uniform(fig1)
    assert fig1.init == "q0"
    assert fig1.relation["q0"] == ("q1", "q3", "q2")


def test_first_matching_edge_rule_wins(fig1):
    assert fig1.edg[("q2", ("m1", "m3"))] == "q5"
    assert fig1.edg[("q2", ("m2", "m1"))] == "q4"


def test_missing_obs_line_means_perfect_observation():
    g = parse_game(SMALL)
    assert g.obs["a"].classes == (("s",), ("t",))


def test_totality_diagnostic():
    g = parse_game(SMALL.replace("edge s y -> s\n", ""))
    assert any(d.startswith("totality:") for d in validate(g))


def test_reserved_name_diagnostic():
    g = parse_game(SMALL.replace("props: p", "props: p#1"))
    assert any(d.startswith("reserved-name:") for d in validate(g))


def test_partition_diagnostics():
    g = parse_game(SMALL + "obs a: {s} {s t}\n")
    assert any(d.startswith("partition-overlap:") for d in validate(g))
    g = parse_game(SMALL + "obs a: {s}\n")
    assert any(d.startswith("partition-coverage:") for d in validate(g))


def test_turn_based_diagnostic():
    text = SMALL.replace("agents: a", "agents: a b").replace("edge s x -> t", "edge s x x -> t")
    text = text.replace("edge s y -> s", "edge s * * -> s").replace("edge t * -> t", "edge t * * -> t")
    text += "owner s: b\nowner t: b\n"
    g = parse_game(text)
    assert any(d.startswith("turn-based:") for d in validate(g))


def test_syntax_errors_carry_line_numbers():
    with pytest.raises(GameFileError) as e:
        parse_game("agents: a\nfrobnicate: x\n")
    assert e.value.line == 2
    with pytest.raises(GameFileError):
        parse_game(SMALL + "edge s z -> t\n")


def test_avail_needs_normalization():
    text = SMALL + "avail s a: x\n"
    with pytest.raises(GameFileError):
        parse_game(text)
    g = parse_game(text, normalize=True)
    assert g.edg[("s", ("y",))] == "t"


def test_game_file_round_trip(fig1, fig3):
    for g in (fig1, fig3):
        again = parse_game(dump_game(g))
        assert dict(again.edg) == dict(g.edg)
        assert again.obs == g.obs
        assert dump_game(again) == dump_game(g)


@given(seeds)
def test_game_file_round_trip_random(seed):
    g = random_game(random.Random(seed))
    again = parse_game(dump_game(g))
    assert dict(again.edg) == dict(g.edg)
    assert {a: again.obs[a].as_family() for a in g.agents} == {a: g.obs[a].as_family() for a in g.agents}
    assert {q: again.labels(q) for q in g.states} == {q: g.labels(q) for q in g.states}


def test_quotient_of_fig1(fig1):
    k = quotient(fig1)
    assert k.states == ("C0", "C1")
    assert k.label["C1"] == frozenset({"s#2", "s#3"})
    assert all(k.successors(c) == ("C0", "C1") for c in k.states)


def test_quotient_needs_uniform_observation():
    g = parse_game(SMALL.replace("agents: a", "agents: a b").replace("edge s x", "edge s x *")
                   .replace("edge s y", "edge s y *").replace("edge t *", "edge t * *")
                   + "obs a: {s t}\n")
    with pytest.raises(NotUniform):
        quotient(g)


def test_underlying_kripke_atoms(fig1):
    k = underlying_kripke(fig1)
    assert k.label["q2"] == frozenset({"P", "p#q2", "o#a1#1", "o#a2#1"})
    assert k.transitions == fig1.relation
    assert k.problems() == []


def test_paths(fig1):
    check_path(fig1, ["q0", "q1", "q3"])
    with pytest.raises(InvalidPath):
        check_path(fig1, ["q0", "q4"])
    assert path_equivalent(fig1, "a1", ["q0", "q2"], ["q0", "q3"])
    assert not path_equivalent(fig1, "a1", ["q0", "q1", "q3"], ["q0", "q3", "q2"])


def test_turn_based_fig1(fig1):
    tb = to_turn_based(fig1)
    assert validate(tb) == []
    assert tb.owner["q0"] == "a1" and tb.owner["q0~m1"] == "a2"
    assert tb.labels("q0~m2") == frozenset({MID})
    assert tb.edg[("q0~m2", ("m1", "m3"))] == "q2"
    with pytest.raises(UnknownAgent):
        to_turn_based(fig1, ["a1", "a3"])


def test_turn_based_single_agent_adds_owners_only():
    g = parse_game(SMALL)
    tb = to_turn_based(g)
    assert tb.states == g.states and dict(tb.edg) == dict(g.edg)
    assert tb.owner == {"s": "a", "t": "a"}


@given(seeds, st.booleans())
def test_turn_based_properties(seed, reverse):
    rng = random.Random(seed)
    g = random_game(rng, GameShape(max_states=3, moves=rng.randint(1, 3)))
    order = tuple(reversed(g.agents)) if reverse else g.agents
    tb = to_turn_based(g, order)
    assert validate(tb) == []
    assert is_uniform(tb) == is_uniform(g)


def test_partition_helpers():
    part = ObservationPartition((("a", "b"), ("c",)))
    assert part.class_of == {"a": 0, "b": 0, "c": 1}
    assert ObservationPartition.single(["a", "b"]).classes == (("a", "b"),)


def test_kripke_round_trip():
    text = "props: p\nstates: s t\nlabel t: p\ntrans s: t s\ntrans t: t\ninit: s\n"
    k = parse_kripke(text)
    assert k.successors("s") == ("t", "s")
    assert dump_kripke(k) == text
    assert parse_kripke("states: s\n").problems() == ["totality: state s has no successor"]
