import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from secretlogic.decision import (
    Invalid,
    SearchConfig,
    Timeout,
    Valid,
    ValidUpTo,
    decide,
    find_countermodel,
    fmp_bound,
    nominal_bound,
    outcome_to_json,
)
from secretlogic.decision.oracle import brute_force_refutable, single_agent_frames
from secretlogic.decision.search import MAX_ENCODED_WORLDS, fresh_agent, search_agents
from secretlogic.decision.solver import Solver, luby
from secretlogic.formula import desugar
from secretlogic.kripke import check_frame, evaluate, extension, random_s_model
from secretlogic.parser import parse_formula as P
from strategies import formulas

# -- SAT solver ---------------------------------------------------------------


def test_luby_prefix():
    assert [luby(i) for i in range(15)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def _brute_sat(nvars, clauses):
    for bits in product((False, True), repeat=nvars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


@settings(max_examples=300)
@given(st.integers(0, 10**9))
def test_solver_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    clauses = [
        [rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(1, 3))] for _ in range(rng.randint(1, 40))
    ]
    s = Solver()
    for _ in range(n):
        s.new_var()
    for c in clauses:
        s.add_clause(c)
    res = s.solve()
    assert res == _brute_sat(n, clauses)
    if res:
        assert all(any(s.value(l) for l in c) for c in clauses)


def test_solver_pigeonhole_unsat():
    # 5 pigeons, 4 holes
    s = Solver()
    x = {(i, j): s.new_var() for i in range(5) for j in range(4)}
    for i in range(5):
        s.add_clause([x[i, j] for j in range(4)])
    for j in range(4):
        for i in range(5):
            for k in range(i + 1, 5):
                s.add_clause([-x[i, j], -x[k, j]])
    assert s.solve() is False
    assert s.stats["conflicts"] > 0


def test_solver_empty_clause():
    s = Solver()
    s.new_var()
    assert s.add_clause([]) is False
    assert s.solve() is False


def test_solver_deadline_in_past():
    s = Solver()
    x = {(i, j): s.new_var() for i in range(9) for j in range(8)}
    for i in range(9):
        s.add_clause([x[i, j] for j in range(8)])
    for j in range(8):
        for i in range(9):
            for k in range(i + 1, 9):
                s.add_clause([-x[i, j], -x[k, j]])
    assert s.solve(deadline=0.0) is None


def test_solver_phase_hint():
    s = Solver()
    v = s.new_var()
    s.set_phase(v)
    assert s.solve() and s.value(v)
    s2 = Solver()
    v = s2.new_var()
    s2.set_phase(-v)
    assert s2.solve() and not s2.value(v)


# -- search ---------------------------------------------------------------------


def test_tautology_has_no_countermodel():
    out = find_countermodel(desugar(P("p -> p")))
    assert isinstance(out, (Valid, ValidUpTo))


@pytest.mark.parametrize("text", ["I[a] p -> K[a] p", "B[a] p -> K[a] p", "I[a] p -> B[a] p"])
def test_two_world_witnesses(text):
    out = find_countermodel(P(text), SearchConfig(max_worlds=2))
    assert isinstance(out, Invalid)
    assert len(out.model.worlds) == 2
    assert check_frame(out.model).ok
    assert not evaluate(out.model, out.world, P(text))
    assert brute_force_refutable(P(text), max_worlds=2) is not None


def test_search_is_deterministic():
    phi = P("S[a,b] p -> ~S[b,a] p")
    first = find_countermodel(phi)
    second = find_countermodel(phi)
    assert first == second


def test_witness_refutes_at_first_world():
    out = find_countermodel(P("S[a,b] p -> ~S[b,a] p"))
    assert isinstance(out, Invalid)
    assert out.world == out.model.worlds[0]
    assert len(out.model.worlds) <= 5


def test_fresh_agent_included_by_default():
    assert search_agents(P("K[a] p"), SearchConfig()) == ("a", "x")
    assert fresh_agent({"x", "y", "z"}) == "x1"
    assert fresh_agent({"x", "y", "z", "x1"}) == "x2"


def test_explicit_agents_must_cover_formula():
    with pytest.raises(ValueError):
        find_countermodel(P("K[a] p -> K[b] p"), SearchConfig(agents={"a"}))


def test_explicit_agents_used():
    out = find_countermodel(P("K[a] p -> K[b] p"), SearchConfig(agents={"a", "b"}))
    assert isinstance(out, Invalid)
    assert tuple(out.model.agents) == ("a", "b")


def test_max_worlds_validated():
    with pytest.raises(ValueError):
        SearchConfig(max_worlds=0)


def test_valid_when_max_worlds_reaches_bound():
    phi = P("K[a] p -> p")
    out = find_countermodel(phi, SearchConfig(max_worlds=fmp_bound(phi)))
    assert out == Valid(fmp_bound(phi))
    assert find_countermodel(phi, SearchConfig(max_worlds=2)) == ValidUpTo(2)


def test_timeout_is_distinct():
    out = find_countermodel(P("S[a,b] p -> p"), SearchConfig(max_worlds=3, time_budget=0.0))
    assert isinstance(out, Timeout)
    assert outcome_to_json(out) == {"verdict": "timeout", "explored": 0}


def test_top_only_tier():
    # padding: a 1-world refutation lifts to any larger size
    out = find_countermodel(P("p"), SearchConfig(max_worlds=3, exhaustive=False))
    assert isinstance(out, Invalid)
    assert len(out.model.worlds) == 2 or len(out.model.worlds) == 3


def test_bounds():
    phi = P("K[a] p -> p")
    assert fmp_bound(phi) == 4
    assert fmp_bound(phi) <= nominal_bound(phi)
    # t(I p) = I K p adds a box
    assert fmp_bound(P("I[a] p")) == 8


# -- decide ---------------------------------------------------------------------


@pytest.mark.parametrize("text", ["K[a] p -> p", "K[a] p -> K[a] K[a] p", "B[a] p -> ~B[a] ~p"])
def test_decide_certifies(text):
    out = decide(P(text), budget=60)
    assert isinstance(out, Valid)
    assert out.certified_bound == fmp_bound(P(text))


def test_decide_atom():
    out = decide(P("p"))
    assert isinstance(out, Invalid)
    assert len(out.model.worlds) == 1


def test_decide_non_exclusive_secrets():
    out = decide(P("S[a,b] p -> ~S[b,a] p"))
    assert isinstance(out, Invalid)
    assert len(out.model.worlds) <= 5
    assert check_frame(out.model).ok


def test_decide_large_bound_reports_explored_size():
    out = decide(P("S[a,b] p -> p"), budget=120)
    assert fmp_bound(P("S[a,b] p -> p")) > MAX_ENCODED_WORLDS
    assert isinstance(out, (ValidUpTo, Timeout))
    if isinstance(out, ValidUpTo):
        assert out.n == MAX_ENCODED_WORLDS


# -- oracle -----------------------------------------------------------------------


def test_oracle_frame_counts():
    # one world: every relation is forced to the loop
    assert len(single_agent_frames(1)) == 1
    frames2 = single_agent_frames(2)
    assert all(naive.serial(set(b), ("w0", "w1")) for _, b, _ in frames2)


@settings(max_examples=60)
@given(formulas(agents=("a",), variables=("p", "q"), max_leaves=6))
def test_search_agrees_with_oracle(phi):
    found = find_countermodel(phi, SearchConfig(max_worlds=2, agents={"a"}))
    oracle = brute_force_refutable(phi, max_worlds=2, agents={"a"})
    assert isinstance(found, Invalid) == (oracle is not None)


@given(formulas(max_leaves=8), st.integers(1, 3))
def test_invalid_outcomes_are_rechecked(phi, n):
    out = find_countermodel(phi, SearchConfig(max_worlds=n))
    if isinstance(out, Invalid):
        assert naive.is_s_frame(out.model)
        assert not naive.holds(out.model, out.world, phi)


@settings(max_examples=40)
@given(formulas(max_leaves=8))
def test_more_worlds_never_lose_a_witness(phi):
    small = find_countermodel(phi, SearchConfig(max_worlds=2))
    big = find_countermodel(phi, SearchConfig(max_worlds=3))
    if isinstance(small, Invalid):
        assert isinstance(big, Invalid)
        assert len(big.model.worlds) == len(small.model.worlds)


@settings(max_examples=300)
@given(formulas(max_leaves=10), st.integers(0, 10**9))
def test_any_refuting_sample_model_is_found(phi, seed):
    m = random_s_model(seed, 3, ["a", "b"], ["p", "q", "r"])
    if extension(m, phi) != m.full_mask:
        assert isinstance(find_countermodel(phi, SearchConfig(max_worlds=3)), Invalid)
