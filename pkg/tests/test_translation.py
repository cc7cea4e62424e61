import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import model_corpus, models
from meetsim.core import ValidationError, validate_model
from meetsim.emit import emit
from meetsim.fol import (And, Eq, Exists, Forall, Implies, Not, OrC, Pred, Rel,
                         free_vars, parse_fol, to_text)
from meetsim.formula import BOT, Prop, parse_formula
from meetsim.oracle import enumerate_formulas, naive_fol_eval
from meetsim.semantics import satisfies, truth_mask
from meetsim.translation import (FOLStructure, UnboundVariable, check_fsl,
                                 fol_eval, fol_truth_set, from_structure,
                                 standard_translate, to_structure)

P = parse_formula


def bound_vars(alpha):
    out = []
    stack = [alpha]
    while stack:
        f = stack.pop()
        if isinstance(f, (Exists, Forall)):
            out.append(f.var)
            stack.append(f.body)
        elif isinstance(f, Not):
            stack.append(f.body)
        elif isinstance(f, (And, OrC, Implies)):
            stack.extend((f.left, f.right))
    return out


def test_translate_atoms():
    assert standard_translate(Prop("p")) == Pred("p", "x")
    assert standard_translate(BOT) == Forall("v0", Rel("v0", "x"))
    assert standard_translate(P("top")) == Eq("x", "x")


def test_translate_disjunction():
    ismeet = And(And(Rel("v0", "v1"), Rel("v0", "v2")),
                 Forall("v3", Implies(And(Rel("v3", "v1"), Rel("v3", "v2")), Rel("v3", "v0"))))
    body = And(And(And(ismeet, Rel("v0", "x")), Pred("p", "v1")), Pred("q", "v2"))
    assert standard_translate(P("p | q")) == Exists("v0", Exists("v1", Exists("v2", body)))


def test_fresh_names_avoid_free_variable():
    alpha = standard_translate(P("bot | bot"), x="v0")
    assert free_vars(alpha) == {"v0"}
    assert "v0" not in bound_vars(alpha)


@given(st.recursive(st.sampled_from(["p", "q", "top", "bot"]),
                    lambda s: st.tuples(s, st.sampled_from("&|"), s).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
                    max_leaves=8))
def test_translation_shape(text):
    alpha = standard_translate(P(text))
    assert free_vars(alpha) == {"x"}
    bvs = bound_vars(alpha)
    assert len(bvs) == len(set(bvs)) and "x" not in bvs
    assert parse_fol(to_text(alpha)) == alpha


def test_fol_eval_examples(dia):
    s = to_structure(dia)
    assert fol_eval(s, {"x": "1"}, standard_translate(BOT))
    alpha = parse_fol("P_p(x) | P_q(x)")
    assert not fol_eval(s, {"x": "w"}, alpha)
    assert fol_eval(s, {"x": "u"}, alpha)
    assert fol_truth_set(s, alpha).tolist() == [False, True, True, True]
    with pytest.raises(UnboundVariable):
        fol_eval(s, {}, alpha)


def test_to_structure(dia, one):
    s = to_structure(dia)
    assert s.carrier == ("w", "u", "v", "1")
    assert {(s.carrier[a], s.carrier[b]) for a, b in np.argwhere(s.rel)} == {
        ("w", "w"), ("u", "u"), ("v", "v"), ("1", "1"),
        ("w", "u"), ("w", "v"), ("w", "1"), ("u", "1"), ("v", "1")}
    s1 = to_structure(one)
    assert s1.carrier == ("1",) and s1.rel.tolist() == [[True]]
    assert from_structure(s) == dia


var_names = st.sampled_from(["x", "y", "z"])
fol_atoms = (st.builds(Pred, st.sampled_from(["p", "q"]), var_names)
             | st.builds(Rel, var_names, var_names) | st.builds(Eq, var_names, var_names))
fol_formulas = st.recursive(
    fol_atoms,
    lambda s: (st.builds(Not, s) | st.builds(And, s, s) | st.builds(OrC, s, s)
               | st.builds(Implies, s, s) | st.builds(Exists, var_names, s)
               | st.builds(Forall, var_names, s)),
    max_leaves=8,
)


@settings(max_examples=150, deadline=None)
@given(models(max_size=4), fol_formulas)
def test_tensor_eval_matches_naive(m, alpha):
    s = to_structure(m)
    for combo in itertools.product(m.elements, repeat=3):
        a = dict(zip("xyz", combo))
        assert fol_eval(s, a, alpha) == naive_fol_eval(s, a, alpha)


@settings(max_examples=100)
@given(fol_formulas)
def test_plain_roundtrip(alpha):
    assert parse_fol(to_text(alpha)) == alpha
    assert parse_fol(emit(alpha, "plain")) == alpha


def test_translation_correct_depth_two_full():
    for m in model_corpus(3, seed=11):
        s = to_structure(m)
        memo = {}
        for phi in enumerate_formulas(m.props, 2):
            fol_mask = fol_truth_set(s, standard_translate(phi), memo=memo)
            assert np.array_equal(fol_mask, truth_mask(m, phi))


def test_naive_fol_agrees_on_translations(dia):
    s = to_structure(dia)
    for phi in enumerate_formulas(["p", "q"], 1):
        alpha = standard_translate(phi)
        for w in dia.elements:
            assert naive_fol_eval(s, {"x": w}, alpha) == satisfies(dia, w, phi)


def test_no_equality_mode(dia):
    s = to_structure(dia)
    for text in ["top", "(top | p)", "(q & top)"]:
        alpha = standard_translate(P(text), equality=False)
        assert "=" not in to_text(alpha).replace("->", "")
        assert np.array_equal(fol_truth_set(s, alpha), truth_mask(dia, P(text)))


def test_check_fsl_examples(dia):
    assert check_fsl(to_structure(dia))
    rel = np.eye(3, dtype=bool)
    rel[0, 1] = rel[1, 2] = True
    r = check_fsl(FOLStructure(("a", "b", "c"), rel, {}))
    assert not r and r.clause == "M3" and r.witness == {"x": "a", "y": "b", "z": "c"}
    bad = FOLStructure(dia.elements, dia.leq, {"p": dia.indices({"u", "v", "1"}), "q": dia.valuation["q"]})
    r = check_fsl(bad)
    assert not r and r.clause == "M6[p]"
    assert r.witness == {"x": "w", "y": "u", "z": "v"}
    empty = FOLStructure(dia.elements, dia.leq, {"p": frozenset()})
    r = check_fsl(empty)
    assert not r and r.clause == "M6[p]" and r.message == "predicate is empty"
    with pytest.raises(ValueError):
        from_structure(bad)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.booleans(), min_size=n * n, max_size=n * n),
    st.lists(st.booleans(), min_size=n, max_size=n))))
def test_check_fsl_agrees_with_validation(data):
    n, rel_bits, pred_bits = data
    rel = np.array(rel_bits).reshape(n, n)
    names = tuple("abc"[:n])
    preds = {"p": frozenset(i for i in range(n) if pred_bits[i])}
    s = FOLStructure(names, rel, preds)
    pairs = [(names[a], names[b]) for a, b in np.argwhere(rel)]
    try:
        m = validate_model(names, pairs, {"p": [names[i] for i in preds["p"]]})
        valid = bool(np.diag(rel).all())
    except ValidationError:
        valid = False
    assert bool(check_fsl(s)) == valid
    if valid:
        m2 = from_structure(s)
        assert m2 == m
        for phi in enumerate_formulas(["p"], 2):
            for w in names:
                assert satisfies(m2, w, phi) == satisfies(m, w, phi)


@settings(max_examples=40, deadline=None)
@given(models())
def test_fsl_roundtrip(m):
    s = to_structure(m)
    assert check_fsl(s)
    assert from_structure(s) == m


def test_emit_plain_bot():
    assert emit(standard_translate(BOT), "plain") == "forall v0. R(v0,x)\n"


def test_emit_tptp_atom():
    out = emit(standard_translate(Prop("p")), "tptp")
    assert out == "fof(goal, conjecture, ![X] : p_p(X)).\n"


def test_emit_smtlib_axioms():
    out = emit(Pred("p", "x"), "smtlib", axioms=True)
    assert ("(assert (! (forall ((x S)) (forall ((y S)) (=> (and (R x y) (R y x)) (= x y)))) "
            ":named M2))") in out
    assert "(declare-fun P_p (S) Bool)" in out and out.rstrip().endswith("(check-sat)")


@pytest.mark.parametrize("fmt", ["plain", "tptp", "smtlib"])
def test_emit_balanced_and_deterministic(fmt):
    alpha = standard_translate(P("((p | q) & (bot | top))"))
    a, b = emit(alpha, fmt, axioms=True), emit(alpha, fmt, axioms=True)
    assert a == b
    depth = 0
    for ch in a:
        depth += {"(": 1, ")": -1}.get(ch, 0)
        assert depth >= 0
    assert depth == 0
    if fmt == "tptp":
        assert all(line.startswith("fof(") and line.endswith(").") for line in a.splitlines())


def test_emit_unknown_format():
    with pytest.raises(ValueError):
        emit(Pred("p", "x"), "dimacs")
