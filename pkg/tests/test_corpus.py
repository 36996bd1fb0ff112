import json
import shutil

import pytest

from secretlogic.corpus import (
    CORPUS_DIR,
    CorpusFormatError,
    check_entry,
    entry_from_json,
    list_corpus,
    load_corpus,
    padded_agents,
    run_corpus,
)
from secretlogic.decision import SearchConfig
from secretlogic.kripke import check_frame, evaluate, load_model, model_from_json
from secretlogic.parser import parse_formula as P


def test_corpus_loads_cleanly():
    entries, errors = load_corpus()
    assert not errors
    assert len(entries) >= 55
    assert [e.id for e in entries] == sorted(e.id for e in entries)


def test_families():
    assert len(list_corpus("threeagents.*")) == 7
    assert len(list_corpus("propertiessab.*")) == 9


def test_every_entry_is_documented():
    for e in list_corpus():
        assert e.citation.strip() and e.schema_note.strip()
        if e.claim.kind == "valid":
            assert e.claim.witness is None


@pytest.mark.parametrize(
    "name, expected",
    [
        ("notnegcompl", {(5, "a", ("i", "u", "u")), (5, "b", ("u", "w", "w")), (8, "b", ("u", "u", "w"))}),
        ("nonmonotonic", {(7, "b", ("i3", "i1", "i1")), (7, "b", ("i4", "i2", "i2"))}),
        ("zkproof", {(c, "b", ("i", "j", "w")) for c in (3, 4, 5, 7, 8)}),
        ("threeagents7", {(2, "c", ("u",)), (3, "c", ("u",))}),
        ("threeagents6", {(c, a, (w,)) for c in (2, 3) for a in "ac" for w in "uv"}),
    ],
)
def test_verbatim_models_fail_exactly(name, expected):
    rep = check_frame(load_model(CORPUS_DIR / "models" / f"{name}.verbatim.json"))
    found = {(c, v.agent, v.witness) for c, vs in rep.violations.items() for v in vs}
    assert expected <= found
    if name != "zkproof":
        assert found == expected
    assert check_frame(load_model(CORPUS_DIR / "models" / f"{name}.json")).ok


def test_witness_entries_pass():
    witnessed = [e for e in list_corpus() if e.claim.witness is not None]
    assert len(witnessed) >= 10
    for e in witnessed:
        rep = check_entry(e)
        assert rep.passed, rep.line()


def test_recorded_search_witnesses_still_refute():
    paths = sorted((CORPUS_DIR / "found").glob("*.json"))
    assert paths
    for path in paths:
        data = json.loads(path.read_text())
        model = model_from_json(data["model"])
        assert check_frame(model).ok
        assert not evaluate(model, data["world"], P(data["formula"]))


def test_padded_agents():
    assert padded_agents(P("K[a] p"), 3) == {"a", "x", "y"}
    assert padded_agents(P("K[a] K[b] K[c] p"), 2) == {"a", "b", "c"}


def test_entry_validation():
    good = {"id": "t", "claim": {"kind": "valid", "formula": "p -> p"}, "schema_note": "n", "citation": "c"}
    assert entry_from_json(good).formula == P("p -> p")
    for bad in (
        {**good, "extra": 1},
        {**good, "claim": {"kind": "maybe", "formula": "p"}},
        {**good, "claim": {"kind": "valid", "formula": "p", "witness": "models/x.json", "world": "i"}},
        {**good, "claim": {"kind": "invalid", "formula": "p", "witness": "models/x.json"}},
        {**good, "citation": ""},
    ):
        with pytest.raises(CorpusFormatError):
            entry_from_json(bad)


@pytest.fixture
def small_corpus(tmp_path):
    root = tmp_path / "corpus"
    (root / "entries").mkdir(parents=True)
    shutil.copytree(CORPUS_DIR / "models", root / "models")
    for name in ("notrivializ.1", "A.1", "nonproperties.1"):
        shutil.copy(CORPUS_DIR / "entries" / f"{name}.json", root / "entries")
    return root


def test_malformed_files_become_error_reports(small_corpus):
    (small_corpus / "entries" / "broken.json").write_text("{not json")
    (small_corpus / "entries" / "badformula.json").write_text(
        json.dumps({"id": "badformula", "claim": {"kind": "valid", "formula": "p &"}, "schema_note": "n", "citation": "c"})
    )
    reports = run_corpus(root=small_corpus, search_cfg=SearchConfig(max_worlds=2))
    status = {r.id: r.status for r in reports}
    assert status["broken"] == "error" and status["badformula"] == "error"
    assert status["A.1"] == "pass"
    with pytest.raises(CorpusFormatError):
        list_corpus(root=small_corpus)


def test_missing_witness_file_is_error(small_corpus):
    (small_corpus / "models" / "notrivializ.json").unlink()
    reports = run_corpus("notrivializ.*", root=small_corpus)
    assert [r.status for r in reports] == ["error"]


def test_wrong_world_fails(small_corpus):
    path = small_corpus / "entries" / "notrivializ.1.json"
    data = json.loads(path.read_text())
    data["claim"]["world"] = "j"
    path.write_text(json.dumps(data))
    (rep,) = run_corpus("notrivializ.1", root=small_corpus)
    assert rep.status == "fail"


def test_parallel_matches_serial(small_corpus):
    cfg = SearchConfig(max_worlds=2)
    serial = run_corpus(root=small_corpus, search_cfg=cfg)
    parallel = run_corpus(root=small_corpus, search_cfg=cfg, jobs=2)
    assert [(r.id, r.status, r.detail) for r in serial] == [(r.id, r.status, r.detail) for r in parallel]
    assert [r.id for r in serial] == sorted(r.id for r in serial)


def test_report_json():
    (rep,) = run_corpus("notrivializ.1")
    data = rep.to_json()
    assert data["status"] == "pass" and data["world"] == "i"
    assert rep.line().startswith("PASS")
