import random

import hypothesis.strategies as st
import pytest
from hypothesis import given

from atlsc.errors import FormulaSyntaxError, StratificationError
from atlsc.formula import (
    APath, And, EPath, Exists, Next, Not, Or, Prop, Relax, RelaxCo, StratQ, StratQCo, Top, Until,
    free_props, is_state, size,
)
from atlsc.randgen import random_atl_full, random_qctl
from atlsc.syntax import parse_atlsc, parse_path, parse_qctl, to_text

seeds = st.integers(0, 10**6)

p, q = Prop("p"), Prop("q")


def test_precedence():
    assert parse_qctl("p | q & p -> q") == \
        parse_qctl("(p | (q & p)) -> q")
    assert parse_path("X p U q & p") == And((Until(Next(p), q), p))
    assert parse_path("p U q U p") == Until(p, Until(q, p))
    assert parse_qctl("p -> q -> p") == parse_qctl("p -> (q -> p)")


def test_derived_operators_expand():
    assert parse_path("F p") == Until(Top(), p)
    assert parse_path("G p") == Not(Until(Top(), Not(p)))
    assert parse_atlsc("[[a]]_0 X p") == Not(StratQ(("a",), True, Not(Next(p))))
    assert parse_atlsc("A X p") == RelaxCo((), StratQ((), False, Next(p)))
    assert parse_qctl("E X p") == EPath(Next(p))


def test_strategy_operators():
    f = parse_atlsc("<<co a, b>>_0 relax(a) keep(b) p")
    assert f == StratQCo(("a", "b"), True, Relax(("a",), RelaxCo(("b",), p)))
    assert parse_atlsc("<<>> G p").coalition == ()


def test_quantifiers():
    f = parse_qctl("exists Q. forall R. A G (Q -> R)")
    assert isinstance(f, Exists) and f.prop == "Q"
    assert free_props(f) == frozenset()
    assert isinstance(f.arg.arg, APath)


def test_error_positions():
    with pytest.raises(FormulaSyntaxError) as e:
        parse_qctl("p & (q")
    assert (e.value.line, e.value.column) == (1, 7)
    with pytest.raises(FormulaSyntaxError) as e:
        parse_atlsc("p &\n  $")
    assert (e.value.line, e.value.column) == (2, 3)
    with pytest.raises(FormulaSyntaxError):
        parse_atlsc("<<a p")


def test_stratification():
    with pytest.raises(StratificationError):
        parse_atlsc("F p")
    with pytest.raises(StratificationError):
        parse_qctl("exists Q. X Q")
    with pytest.raises(StratificationError):
        parse_atlsc("relax(a) X p")
    assert is_state(parse_atlsc("<<a>> X p & q"))


def test_printer_resugars():
    for text in [
        "A X <<a1>> X f & !<<a1>> X X f",
        "[[a1]]_0 G (p -> F q)",
        "E (p U q) | A G p",
        "keep(a1) <<co a2>>_0 X p",
    ]:
        assert to_text(parse_atlsc(text)) == text
    assert to_text(parse_qctl("exists Q. (Q & A G p)")) == "exists Q. (Q & A G p)"
    assert to_text(parse_qctl("E G (p | q)")) == "E G (p | q)"


def test_positions_do_not_affect_equality():
    assert parse_qctl("p & q") == parse_qctl("  p   &  q")
    assert size(parse_qctl("p & q | !p")) == 6


@given(seeds)
def test_round_trip_strategy_formulas(seed):
    f = random_atl_full(random.Random(seed))
    text = to_text(f)
    assert parse_atlsc(text) == f
    assert to_text(parse_atlsc(text)) == text


@given(seeds)
def test_round_trip_qctl_formulas(seed):
    f = random_qctl(random.Random(seed), depth=4)
    text = to_text(f)
    assert parse_qctl(text) == f
    assert to_text(parse_qctl(text)) == text


def test_nary_junctions_keep_grouping():
    f = And((p, And((q, p))))
    assert to_text(f) == "p & (q & p)"
    assert parse_qctl(to_text(f)) == f
    assert parse_qctl(to_text(Or((p, q, p)))) == Or((p, q, p))
