import json

import pytest

from secretlogic.cli import ExitStatus, main
from secretlogic.corpus import CORPUS_DIR
from secretlogic.kripke import check_frame, evaluate, load_model, model_to_json
from secretlogic.parser import parse_formula as P

MODELS = CORPUS_DIR / "models"
INTENT_MODEL = str(MODELS / "notrivializ.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exit_status_values():
    assert [int(s) for s in ExitStatus] == [0, 1, 2, 3]


def test_check_model_pass(capsys):
    code, out, _ = run(capsys, "check-model", INTENT_MODEL)
    assert code == 0
    assert out.count("PASS") == 7


def test_check_model_empty_belief(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(
        json.dumps(
            {"worlds": ["i"], "agents": ["a"], "relations": {"a": {"K": [["i", "i"]], "B": [], "I": [["i", "i"]]}}, "valuation": {}}
        )
    )
    code, out, _ = run(capsys, "check-model", str(path))
    assert code == 1
    assert out.splitlines()[0] == "condition 2 (B serial): FAIL"
    assert "agent a: B serial fails at (i)" in out


def test_check_model_unknown_key(capsys, tmp_path):
    data = json.loads((MODELS / "notrivializ.json").read_text())
    data["colour"] = "red"
    path = tmp_path / "m.json"
    path.write_text(json.dumps(data))
    code, _, err = run(capsys, "check-model", str(path))
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize(
    "model, world, formula, code",
    [
        ("notrivializ", "i", "I[a] p", 0),
        ("notrivializ", "j", "true", 0),
        ("zkproof", "i", "K[b] p", 1),
    ],
)
def test_eval(capsys, model, world, formula, code):
    rc, out, _ = run(capsys, "eval", str(MODELS / f"{model}.json"), world, formula)
    assert rc == code
    assert out.strip() == ("true" if code == 0 else "false")


def test_eval_refuses_non_s_model(capsys):
    path = str(MODELS / "zkproof.verbatim.json")
    assert run(capsys, "eval", path, "i", "p")[0] == 2
    assert run(capsys, "eval", path, "i", "p", "--allow-non-s")[0] == 0


def test_holds(capsys):
    assert run(capsys, "holds", INTENT_MODEL, "K[a] p -> p")[0] == 0
    assert run(capsys, "holds", INTENT_MODEL, "I[a] p -> K[a] p")[0] == 1


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "eval", INTENT_MODEL, "i", "p &")
    assert code == 2
    assert "error" in err


def test_decide_examples(capsys, tmp_path):
    assert run(capsys, "decide", "S[a,b] p -> p")[0] == 0
    assert run(capsys, "decide", "p")[0] == 1
    out_path = tmp_path / "w.json"
    code, _, _ = run(capsys, "decide", "I[a] p -> K[a] p", "--out", str(out_path))
    assert code == 1
    witness = load_model(out_path)
    assert len(witness.worlds) <= 2
    assert check_frame(witness).ok
    assert not evaluate(witness, witness.worlds[0], P("I[a] p -> K[a] p"))


def test_decide_certify(capsys):
    code, out, _ = run(capsys, "decide", "K[a] p -> p", "--certify")
    assert code == 0
    assert "4" in out


def test_decide_budget_exhausted(capsys):
    assert run(capsys, "decide", "S[a,b] p -> p", "--budget", "0")[0] == 3


def test_global_flags_either_side(capsys):
    a = run(capsys, "--json", "decide", "p")
    b = run(capsys, "decide", "p", "--json")
    assert a == b
    doc = json.loads(a[1])
    assert doc["verdict"] == "invalid"


def test_json_is_one_document(capsys):
    code, out, _ = run(capsys, "--json", "check-model", INTENT_MODEL)
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_countermodel(capsys):
    code, out, _ = run(capsys, "countermodel", "B[a] p -> K[a] p", "--max-worlds", "2")
    assert code == 1
    assert "worlds" in out


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", "I[a] p")
    assert code == 0
    assert out.splitlines()[0] == "I[a] K[a] p"
    assert run(capsys, "translate", "p")[1].splitlines()[0] == "p"
    out = run(capsys, "translate", "S[a,b] p")[1]
    assert "expanded: K[a] p & (B[a] ~K[b] p & I[a] (p & ~K[b] p))" in out


def test_filtrate_writes_model_and_classes(capsys, tmp_path):
    out_path = tmp_path / "f.json"
    code, _, _ = run(capsys, "filtrate", INTENT_MODEL, "I[a] p", "--out", str(out_path))
    assert code == 0
    assert check_frame(load_model(out_path)).ok
    side = json.loads((tmp_path / "f.classes.json").read_text())
    assert side["class_map"] == {"i": "i", "j": "j"}


def test_prove_check(capsys):
    proofs = CORPUS_DIR / "proofs"
    assert run(capsys, "prove-check", str(proofs / "iaka.json"))[0] == 0
    code, out, _ = run(capsys, "prove-check", str(proofs / "premise_rn.rejected.json"))
    assert code == 1
    assert "necessitation over premise" in out


def test_corpus_filter(capsys):
    code, out, _ = run(capsys, "corpus", "--filter", "propertiessab.*")
    assert code == 0
    assert sum(line.startswith("PASS") for line in out.splitlines()) == 9


def test_corpus_empty_selection(capsys):
    assert run(capsys, "corpus", "--filter", "nothing.*")[0] == 2


def test_random_model_deterministic(capsys):
    a = run(capsys, "random-model", "--seed", "7")
    b = run(capsys, "random-model", "--seed", "7")
    assert a == b
    data = json.loads(a[1])
    assert data["agents"] == ["a", "b"]


def test_model_output_round_trips(capsys, tmp_path):
    code, out, _ = run(capsys, "random-model", "--seed", "3", "--max-worlds", "4")
    path = tmp_path / "m.json"
    path.write_text(out)
    m = load_model(path)
    assert model_to_json(m) == json.loads(out)
    assert run(capsys, "check-model", str(path))[0] == 0
