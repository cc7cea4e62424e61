import numpy as np
import pytest
from hypothesis import given, settings

from conftest import models
from meetsim.core import UndeclaredProposition, UnknownElement, filter_generated_by, is_filter
from meetsim.formula import BOT, Or, parse_formula
from meetsim.generators import chain
from meetsim.oracle import enumerate_formulas
from meetsim.semantics import check_l1_morphism, satisfies, truth_set
from oracles import naive_satisfies

P = parse_formula


def test_satisfies_examples(dia):
    assert satisfies(dia, "w", P("p | q"))
    assert not satisfies(dia, "w", P("p"))
    assert satisfies(dia, "1", BOT)
    assert not satisfies(dia, "u", BOT)


def test_truth_set_examples(dia):
    assert truth_set(dia, P("p | q")).members == {"w", "u", "v", "1"}
    assert truth_set(dia, BOT).members == {"1"}
    assert truth_set(dia, P("p & q")).members == {"1"}
    assert truth_set(dia, P("top")).members == set(dia.elements)


def test_errors(dia):
    with pytest.raises(UndeclaredProposition):
        satisfies(dia, "w", P("r"))
    with pytest.raises(UnknownElement):
        satisfies(dia, "zz", P("p"))


@settings(max_examples=15, deadline=None)
@given(models())
def test_truth_sets_against_pointwise_oracle(m):
    memo = {}
    for phi in enumerate_formulas(m.props, 2):
        ts = truth_set(m, phi).members
        assert ts == {m.elements[w] for w in range(m.n) if naive_satisfies(m, w, phi, memo)}


@settings(max_examples=40, deadline=None)
@given(models())
def test_truth_set_laws(m):
    fs = list(enumerate_formulas(m.props, 3, models=[m]))
    for phi in fs:
        ts = truth_set(m, phi).members
        assert is_filter(m, ts)
        assert m.elements[m.top] in ts
        # monotone along the order
        for a, b in np.argwhere(m.leq):
            if m.elements[a] in ts:
                assert m.elements[b] in ts
    for phi in fs[:12]:
        for psi in fs[:12]:
            joined = truth_set(m, phi).members | truth_set(m, psi).members
            assert truth_set(m, Or(phi, psi)).members == filter_generated_by(m, joined)


def test_identity_morphism(dia):
    assert check_l1_morphism({e: e for e in dia.elements}, dia, dia)


def test_constant_top_map_fails_top_reflection(dia):
    r = check_l1_morphism({e: "1" for e in dia.elements}, dia, dia)
    assert not r and r.clause == "top-reflect"


def test_diamond_to_chain_fails_valuation(dia, chain2):
    r = check_l1_morphism({"w": "0", "u": "0", "v": "0", "1": "1"}, dia, chain2)
    assert not r and r.clause == "valuation" and r.witness[0] == "p"


def test_meet_preservation_failure(dia):
    c3 = chain(3, {"p": ["1", "2"], "q": ["2"]})
    # u ^ v = w but f(u) ^ f(v) = 1 != f(w) = 0
    r = check_l1_morphism({"w": "0", "u": "1", "v": "1", "1": "2"}, dia, c3)
    assert not r and r.clause == "meets"


def test_back_condition_failure(dia):
    # f(0) = w, f(1) = 1: u ^ v <= f(0) but u, v lie only below f(1), and 1 ^ 1 is not <= 0
    src = chain(2, {})
    dst = dia.__class__(dia.poset, dia.meet, dia.top, {})
    r = check_l1_morphism({"0": "w", "1": "1"}, src, dst)
    assert not r and r.clause == "back" and r.witness == ("0", "u", "v")


def test_missing_mapping(dia):
    with pytest.raises(UnknownElement):
        check_l1_morphism({"w": "w"}, dia, dia)
