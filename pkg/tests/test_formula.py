import pytest
from hypothesis import given, strategies as st

from meetsim.formula import (BOT, TOP, And, FormulaSyntaxError, Or, Prop, conj,
                             depth, or_depth, parse_formula, props, size)

atoms = st.sampled_from([Prop("p"), Prop("q"), TOP, BOT])
formulas = st.recursive(
    atoms,
    lambda sub: st.builds(And, sub, sub) | st.builds(Or, sub, sub),
    max_leaves=12,
)


@pytest.mark.parametrize("text, expected", [
    ("p", Prop("p")),
    ("top", TOP),
    ("bot", BOT),
    ("(p | q)", Or(Prop("p"), Prop("q"))),
    ("p & q | r", Or(And(Prop("p"), Prop("q")), Prop("r"))),
    ("p | q & r", Or(Prop("p"), And(Prop("q"), Prop("r")))),
    ("p | q | r", Or(Or(Prop("p"), Prop("q")), Prop("r"))),
    ("  ( p&(q|bot) ) ", And(Prop("p"), Or(Prop("q"), BOT))),
])
def test_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("bad", ["", "(p", "p q", "p &", "| p", "p # q", "()"])
def test_parse_errors(bad):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(bad)


@given(formulas)
def test_print_parse_roundtrip(phi):
    assert parse_formula(str(phi)) == phi


def test_measures():
    phi = parse_formula("((p | q) & (top | (p | bot)))")
    assert depth(phi) == 3
    assert or_depth(phi) == 2
    assert size(phi) == 9
    assert props(phi) == {"p", "q"}
    assert depth(Prop("p")) == or_depth(BOT) == 0


def test_conj():
    assert conj([]) == TOP
    assert conj([Prop("p")]) == Prop("p")
    assert conj([Prop("p"), Prop("q"), BOT]) == And(And(Prop("p"), Prop("q")), BOT)


@given(formulas)
def test_hash_consistent_with_eq(phi):
    copy = parse_formula(str(phi))
    assert hash(copy) == hash(phi)
    assert len({phi, copy}) == 1
