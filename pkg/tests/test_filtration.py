import random

from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from secretlogic.decision import filtrate, verify_filtration
from secretlogic.formula import desugar, subformulas, translate_t
from secretlogic.generators import FormulaConfig, random_formula
from secretlogic.kripke import KripkeModel, check_frame, diagonal, evaluate, random_s_model
from secretlogic.parser import parse_formula as P
from strategies import formulas, s_models


def intent_model():
    W = ("i", "j")
    return KripkeModel.build(W, {"a": {"K": diagonal(W), "B": diagonal(W), "I": [("i", "j"), ("j", "j")]}}, {"p": ["j"]})


def test_agreeing_worlds_collapse():
    W = ("u", "v")
    full = [(x, y) for x in W for y in W]
    m = KripkeModel.build(W, {"a": {"K": full, "B": full, "I": full}}, {"p": ["u", "v"]})
    res = filtrate(m, P("p"))
    assert res.model.worlds == ("u",)
    assert res.class_map == {"u": "u", "v": "u"}
    assert verify_filtration(m, res, P("p")).ok


def test_intent_model_filtration():
    m, phi = intent_model(), P("I[a] p")
    res = filtrate(m, phi)
    rep = verify_filtration(m, res, phi)
    assert rep.ok, rep.lines()
    assert evaluate(res.model, "i", phi) and not evaluate(res.model, "i", P("K[a] p"))
    assert all(line.endswith("PASS") for line in rep.lines())


def test_planted_fault_breaks_first_condition():
    m, phi = intent_model(), P("I[a] p")
    res = filtrate(m, phi)
    fm = res.model
    rels = {(a, op): set(fm.rel(a, op)) for a in fm.agents for op in "KBI"}
    rels[("a", "I")].discard(("i", "j"))
    broken = type(res)(KripkeModel(fm.worlds, fm.agents, rels, fm.valuation), res.class_map, res.theta)
    rep = verify_filtration(m, broken, phi)
    assert not rep.ok
    assert ("a", "I", "i", "j", "j") in rep.first_condition
    assert "filtration condition 1: FAIL" in rep.lines()


def test_bad_class_map_detected():
    m, phi = intent_model(), P("I[a] p")
    res = filtrate(m, phi)
    broken = type(res)(res.model, {"i": "j", "j": "j"}, res.theta)
    assert verify_filtration(m, broken, phi).classes


def test_theta_is_closure_of_translation():
    phi = P("I[a] p")
    res = filtrate(intent_model(), phi)
    assert res.theta == subformulas(translate_t(desugar(phi)))
    assert res.certified_bound == 8
    assert res.certified_bound <= res.nominal_bound


def test_sidecar():
    res = filtrate(intent_model(), P("I[a] p"))
    side = res.sidecar_json()
    assert side["class_map"] == {"i": "i", "j": "j"}
    assert "I[a] K[a] p" in side["theta"]


@settings(max_examples=100)
@given(st.integers(0, 10**9), st.integers(1, 5))
def test_random_pairs_filtrate_correctly(seed, n):
    rng = random.Random(seed)
    m = random_s_model(seed, n, ["a", "b"], ["p", "q"])
    phi = random_formula(rng, FormulaConfig(agents=("a", "b"), variables=("p", "q"), max_depth=3))
    res = filtrate(m, phi)
    rep = verify_filtration(m, res, phi)
    assert rep.ok, rep.lines()
    assert len(res.model.worlds) <= res.certified_bound
    assert check_frame(res.model).ok


@given(formulas(), s_models(max_worlds=4))
def test_filtration_preserves_truth(phi, m):
    res = filtrate(m, phi)
    for w in m.worlds:
        assert naive.holds(res.model, res.class_map[w], phi) == naive.holds(m, w, phi)
