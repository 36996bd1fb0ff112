"""Executable fixtures for the propositions about S[a,b], and a runner for them.

Each entry lives in ``corpus_data/entries/<id>.json``.  Invalid entries either
point at a model file (``corpus_data/models``) plus a world, or carry no
witness and must be refuted by search.  Witnesses found by search are kept in
``corpus_data/found`` for inspection; the runner never trusts them and
searches afresh.
"""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from secretlogic.decision.search import (
    Invalid,
    SearchConfig,
    Timeout,
    Valid,
    ValidUpTo,
    fresh_agent,
    find_countermodel,
)
from secretlogic.formula import Formula, agents_of
from secretlogic.kripke import KripkeModel, ModelError, check_frame, evaluate, load_model
from secretlogic.parser import ParseError, parse_formula

CORPUS_DIR = Path(__file__).parent / "corpus_data"

ENTRY_KEYS = {"id", "claim", "schema_note", "citation"}
CLAIM_KEYS = {"kind", "formula", "witness", "world"}


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Claim:
    kind: str  # "valid" | "invalid"
    formula: str
    witness: str | None = None  # path relative to the corpus directory
    world: str | None = None


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    claim: Claim
    schema_note: str
    citation: str
    root: Path = field(default=CORPUS_DIR, compare=False, repr=False)

    @property
    def formula(self) -> Formula:
        return parse_formula(self.claim.formula)

    @property
    def witness_path(self) -> Path | None:
        return None if self.claim.witness is None else self.root / self.claim.witness

    def witness_model(self) -> KripkeModel | None:
        path = self.witness_path
        return None if path is None else load_model(path)


def entry_from_json(data, root: Path = CORPUS_DIR) -> CorpusEntry:
    if not isinstance(data, dict) or set(data) != ENTRY_KEYS:
        raise CorpusFormatError(f"entry keys must be {sorted(ENTRY_KEYS)}")
    claim = data["claim"]
    if not isinstance(claim, dict) or not {"kind", "formula"} <= set(claim) <= CLAIM_KEYS:
        raise CorpusFormatError("claim needs kind and formula, optionally witness and world")
    kind = claim["kind"]
    if kind not in ("valid", "invalid"):
        raise CorpusFormatError(f"unknown claim kind {kind!r}")
    witness, world = claim.get("witness"), claim.get("world")
    if (witness is None) != (world is None):
        raise CorpusFormatError("witness and world go together")
    if kind == "valid" and witness is not None:
        raise CorpusFormatError("valid entries carry no witness")
    for key in ("id", "schema_note", "citation"):
        if not isinstance(data[key], str) or not data[key]:
            raise CorpusFormatError(f"{key} must be a non-empty string")
    return CorpusEntry(data["id"], Claim(kind, claim["formula"], witness, world), data["schema_note"], data["citation"], root)


def load_corpus(root: Path | str = CORPUS_DIR) -> tuple[list[CorpusEntry], list[tuple[str, str]]]:
    """All entries sorted by id, plus (file, error) for files that failed to load."""
    root = Path(root)
    entries, errors = [], []
    for path in sorted((root / "entries").glob("*.json")):
        try:
            entry = entry_from_json(json.loads(path.read_text(encoding="utf-8")), root)
            entry.formula  # parse eagerly so bad formulas surface here
            if entry.id != path.stem:
                raise CorpusFormatError(f"id {entry.id!r} does not match file name")
            entries.append(entry)
        except (OSError, json.JSONDecodeError, CorpusFormatError, ParseError) as exc:
            errors.append((path.name, str(exc)))
    entries.sort(key=lambda e: e.id)
    return entries, errors


def list_corpus(pattern: str | None = None, root: Path | str = CORPUS_DIR) -> list[CorpusEntry]:
    entries, errors = load_corpus(root)
    if errors:
        raise CorpusFormatError("; ".join(f"{f}: {e}" for f, e in errors))
    return [e for e in entries if pattern is None or fnmatch.fnmatchcase(e.id, pattern)]


@dataclass
class EntryReport:
    id: str
    kind: str
    status: str  # "pass" | "fail" | "error"
    detail: str
    elapsed: float = 0.0
    model: KripkeModel | None = None  # the refuting model for invalid entries
    world: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def line(self) -> str:
        return f"{self.status.upper():5} {self.id}: {self.detail}"

    def to_json(self) -> dict:
        from secretlogic.kripke import model_to_json

        out = {"id": self.id, "kind": self.kind, "status": self.status, "detail": self.detail, "elapsed": round(self.elapsed, 4)}
        if self.model is not None:
            out["world"] = self.world
            out["model"] = model_to_json(self.model)
        return out


def padded_agents(phi: Formula, count: int) -> frozenset[str]:
    """Agents of phi, topped up with fresh ones to at least ``count``."""
    names = set(agents_of(phi))
    while len(names) < count:
        names.add(fresh_agent(names))
    return frozenset(names)


def check_entry(entry: CorpusEntry, cfg: SearchConfig | None = None, agent_count: int | None = None) -> EntryReport:
    cfg = cfg or SearchConfig()
    start = time.monotonic()

    def report(status, detail, model=None, world=None):
        return EntryReport(entry.id, entry.claim.kind, status, detail, time.monotonic() - start, model, world)

    try:
        phi = entry.formula
        if entry.claim.witness is not None:
            model = entry.witness_model()
            frame = check_frame(model)
            if not frame.ok:
                bad = "; ".join(v.describe() for v in frame.all_violations())
                return report("fail", f"witness is not an S-model: {bad}")
            if entry.claim.world not in model.index:
                return report("fail", f"world {entry.claim.world!r} not in witness")
            if evaluate(model, entry.claim.world, phi):
                return report("fail", f"witness satisfies the formula at {entry.claim.world}")
            return report("pass", f"witness refutes at {entry.claim.world}", model, entry.claim.world)

        run_cfg = cfg if agent_count is None else replace(cfg, agents=padded_agents(phi, agent_count))
        outcome = find_countermodel(phi, run_cfg)
        if entry.claim.kind == "valid":
            if isinstance(outcome, Valid):
                return report("pass", f"certified (bound {outcome.certified_bound})")
            if isinstance(outcome, ValidUpTo):
                return report("pass", f"consistent up to {outcome.n} worlds")
            if isinstance(outcome, Invalid):
                return report("fail", f"counter-model with {len(outcome.model.worlds)} worlds", outcome.model, outcome.world)
            return report("fail", f"timeout after {outcome.explored} worlds")
        if isinstance(outcome, Invalid):
            return report("pass", f"search found a {len(outcome.model.worlds)}-world witness", outcome.model, outcome.world)
        if isinstance(outcome, Timeout):
            return report("fail", f"timeout after {outcome.explored} worlds")
        return report("fail", f"no witness up to {cfg.max_worlds} worlds")
    except (OSError, ValueError, ModelError, ParseError) as exc:
        return report("error", f"{type(exc).__name__}: {exc}")


def _check_star(args):
    return check_entry(*args)


def run_corpus(
    pattern: str | None = None,
    search_cfg: SearchConfig | None = None,
    *,
    agent_count: int | None = None,
    jobs: int = 1,
    root: Path | str = CORPUS_DIR,
) -> list[EntryReport]:
    """Check every entry whose id matches ``pattern``; reports are ordered by id.

    ``agent_count`` pins the searched agents to those of the formula plus
    fresh ones up to that many; by default the search adds one fresh agent.
    Broken files show up as "error" reports.
    """
    cfg = search_cfg or SearchConfig()
    entries, errors = load_corpus(root)
    selected = [e for e in entries if pattern is None or fnmatch.fnmatchcase(e.id, pattern)]
    reports = [
        EntryReport(Path(f).stem, "?", "error", err)
        for f, err in errors
        if pattern is None or fnmatch.fnmatchcase(Path(f).stem, pattern)
    ]
    work = [(e, cfg, agent_count) for e in selected]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports.extend(pool.map(_check_star, work))
    else:
        reports.extend(_check_star(w) for w in work)
    return sorted(reports, key=lambda r: r.id)
