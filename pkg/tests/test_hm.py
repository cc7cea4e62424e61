import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import models
from meetsim.core import UnknownElement
from meetsim.formula import BOT, Prop, or_depth
from meetsim.hm import (WitnessSynthesizer, distinguishing_formula, hm_report,
                        similar)
from meetsim.oracle import first_distinguishing, theory_inclusion_oracle
from meetsim.semantics import satisfies

pairs_of_models = st.tuples(models(max_size=5), models(max_size=5))


def test_similar_examples(dia):
    assert similar(dia, "w", dia, "u")
    assert not similar(dia, "u", dia, "v")
    assert all(similar(dia, e, dia, e) for e in dia.elements)
    with pytest.raises(UnknownElement):
        similar(dia, "z", dia, "w")


def test_witness_examples(dia):
    wit = distinguishing_formula(dia, "u", dia, "v")
    assert wit.formula == Prop("p") and wit.stage == 0
    assert distinguishing_formula(dia, "1", dia, "w").formula == BOT
    assert distinguishing_formula(dia, "w", dia, "u") is None


def test_witness_serialisation(dia):
    wit = distinguishing_formula(dia, "u", dia, "v")
    assert wit.to_dict() == {"formula": "p", "stage": 0,
                             "left": ["M", "u"], "right": ["M'", "v"]}


def test_hm_report_examples(dia, one, chain2):
    r = hm_report(dia, dia, depth=3)
    assert r and r.extra["similar"] + r.extra["witnesses"] == 16
    r = hm_report(one, one, depth=2)
    assert r and r.extra == {"similar": 1, "witnesses": 0}
    assert hm_report(dia, chain2, depth=3)
    assert distinguishing_formula(dia, "u", chain2, "0").formula == Prop("p")


def test_disjunctive_witness():
    from meetsim.core import validate_model
    # w = u ^ v on the left; on the right a three-element chain with the same atoms
    m = validate_model(["w", "u", "v", "1"], [("w", "u"), ("w", "v"), ("u", "1"), ("v", "1")],
                       {"p": ["u", "1"], "q": ["v", "1"]}, kind="covers")
    m2 = validate_model(["a", "b", "1"], [("a", "b"), ("b", "1")],
                        {"p": ["b", "1"], "q": ["b", "1"]}, kind="covers")
    wit = distinguishing_formula(m, "w", m2, "a")
    assert wit is not None and wit.stage >= 1
    assert str(wit.formula) == "(p | q)"


@settings(max_examples=40, deadline=None)
@given(pairs_of_models)
def test_witness_soundness_and_completeness(mm):
    m, m2 = mm
    syn = WitnessSynthesizer(m, m2)
    for w in m.elements:
        for w2 in m2.elements:
            wit = syn.witness(w, w2)
            assert (wit is None) == syn.similar(w, w2)
            if wit is not None:
                assert satisfies(m, w, wit.formula)
                assert not satisfies(m2, w2, wit.formula)
                assert or_depth(wit.formula) <= wit.stage <= m.n * m2.n


@settings(max_examples=25, deadline=None)
@given(pairs_of_models)
def test_similar_agrees_with_oracle(mm):
    m, m2 = mm
    syn = WitnessSynthesizer(m, m2)
    for w in m.elements:
        for w2 in m2.elements:
            if syn.similar(w, w2):
                assert theory_inclusion_oracle(m, w, m2, w2, 2)
                assert first_distinguishing(m, w, m2, w2, 2) is None


@settings(max_examples=25, deadline=None)
@given(pairs_of_models)
def test_stage_zero_witnesses_are_atoms(mm):
    m, m2 = mm
    syn = WitnessSynthesizer(m, m2)
    for (a, b), k in syn.fp.stages.items():
        if k == 0:
            phi = syn.witness(a, b).formula
            assert isinstance(phi, Prop) or phi == BOT
