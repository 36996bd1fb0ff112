"""Finite S-models: construction, frame validation, evaluation, JSON I/O.

Worlds are indexed by their position in ``model.worlds``; extensions and
successor sets are int bitmasks over those positions.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping

from secretlogic.formula import (
    MODAL_OPS,
    And,
    Bot,
    Formula,
    Iff,
    Implies,
    Modal,
    Not,
    Or,
    Top,
    Var,
    agents_of,
)

TOKEN_RE = re.compile(r"[A-Za-z0-9_]+\Z")

Pair = tuple[str, str]


class ModelError(ValueError):
    """Structurally malformed model or model file."""


class EvaluationError(ValueError):
    """Unknown world/agent, or evaluation refused on a non-S model."""


def diagonal(worlds: Iterable[str]) -> frozenset[Pair]:
    """The identity relation on ``worlds``."""
    return frozenset((w, w) for w in worlds)


@dataclass(frozen=True, eq=False)
class KripkeModel:
    worlds: tuple[str, ...]
    agents: tuple[str, ...]
    relations: Mapping[tuple[str, str], frozenset[Pair]]
    valuation: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ModelError("duplicate world names")
        for w in worlds:
            if not isinstance(w, str) or not TOKEN_RE.match(w):
                raise ModelError(f"bad world name {w!r}")
        agents = tuple(sorted(set(self.agents)))
        if not agents:
            raise ModelError("a model needs at least one agent")
        for a in agents:
            if not isinstance(a, str) or not TOKEN_RE.match(a):
                raise ModelError(f"bad agent name {a!r}")
        known = set(worlds)
        rel = {}
        for key, pairs in self.relations.items():
            agent, op = key
            if agent not in agents:
                raise ModelError(f"relation for undeclared agent {agent!r}")
            if op not in MODAL_OPS:
                raise ModelError(f"unknown modality {op!r}")
            frozen = frozenset((str(i), str(j)) for i, j in pairs)
            for i, j in frozen:
                if i not in known or j not in known:
                    raise ModelError(f"{op}[{agent}] edge ({i},{j}) mentions an undeclared world")
            rel[(agent, op)] = frozen
        for a in agents:
            for op in MODAL_OPS:
                rel.setdefault((a, op), frozenset())
        val = {}
        for var, ws in self.valuation.items():
            frozen = frozenset(ws)
            if not frozen <= known:
                raise ModelError(f"valuation of {var!r} mentions undeclared worlds {sorted(frozen - known)}")
            val[var] = frozen
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "relations", rel)
        object.__setattr__(self, "valuation", val)

    @classmethod
    def build(cls, worlds, rels: Mapping[str, Mapping[str, Iterable[Pair]]], valuation=None):
        """Convenience constructor: ``rels`` maps agent -> {op: pairs}."""
        flat = {}
        for agent, per_op in rels.items():
            for op, pairs in per_op.items():
                flat[(agent, op)] = pairs
        return cls(tuple(worlds), tuple(rels), flat, dict(valuation or {}))

    def rel(self, agent: str, op: str) -> frozenset[Pair]:
        try:
            return self.relations[(agent, op)]
        except KeyError:
            raise EvaluationError(f"unknown agent {agent!r}") from None

    def replace(self, *, relations=None, valuation=None) -> KripkeModel:
        rel = dict(self.relations)
        if relations:
            rel.update(relations)
        return KripkeModel(self.worlds, self.agents, rel, self.valuation if valuation is None else valuation)

    def __eq__(self, other):
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return model_to_json(self) == model_to_json(other)

    def __hash__(self):
        return hash(json.dumps(model_to_json(self), sort_keys=True))

    def __repr__(self):
        return f"KripkeModel(worlds={list(self.worlds)}, agents={list(self.agents)})"

    @cached_property
    def index(self) -> dict[str, int]:
        return {w: n for n, w in enumerate(self.worlds)}

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.worlds)) - 1

    @cached_property
    def successor_masks(self) -> dict[tuple[str, str], tuple[int, ...]]:
        idx = self.index
        out = {}
        for key, pairs in self.relations.items():
            rows = [0] * len(self.worlds)
            for i, j in pairs:
                rows[idx[i]] |= 1 << idx[j]
            out[key] = tuple(rows)
        return out

    @cached_property
    def frame_report(self) -> FrameReport:
        return check_frame(self)

    def mask_of(self, worlds: Iterable[str]) -> int:
        m = 0
        for w in worlds:
            m |= 1 << self.index[w]
        return m

    def worlds_of(self, mask: int) -> list[str]:
        return [w for n, w in enumerate(self.worlds) if mask >> n & 1]


# ---------------------------------------------------------------------------
# frame conditions

CONDITION_NAMES = {
    2: "B serial",
    3: "I serial and transitive",
    4: "K reflexive and transitive",
    5: "K;I included in I",
    6: "B included in K",
    7: "K;B included in B",
    8: "I;K included in I",
}


@dataclass(frozen=True)
class Violation:
    condition: int
    agent: str
    kind: str  # serial, reflexive, transitive, inclusion, composition
    witness: tuple[str, ...]

    def describe(self) -> str:
        return f"agent {self.agent}: {self.kind} fails at ({', '.join(self.witness)})"


@dataclass(frozen=True)
class FrameReport:
    violations: dict[int, tuple[Violation, ...]]

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def passed(self, condition: int) -> bool:
        return not self.violations[condition]

    def all_violations(self) -> list[Violation]:
        return [v for c in sorted(self.violations) for v in self.violations[c]]

    def lines(self) -> list[str]:
        out = []
        for c in sorted(self.violations):
            vs = self.violations[c]
            out.append(f"condition {c} ({CONDITION_NAMES[c]}): {'PASS' if not vs else 'FAIL'}")
            out.extend(f"  {v.describe()}" for v in vs)
        return out

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "conditions": {
                str(c): {
                    "name": CONDITION_NAMES[c],
                    "pass": not vs,
                    "violations": [{"agent": v.agent, "kind": v.kind, "witness": list(v.witness)} for v in vs],
                }
                for c, vs in sorted(self.violations.items())
            },
        }


def check_frame(model: KripkeModel) -> FrameReport:
    """Check frame conditions 2-8 for every agent, reporting every violation."""
    found: dict[int, list[Violation]] = {c: [] for c in CONDITION_NAMES}
    W = model.worlds
    n = len(W)
    for a in model.agents:
        k, b, i_ = (model.successor_masks[(a, op)] for op in ("K", "B", "I"))

        def serial(cond, rows, name):
            for x in range(n):
                if not rows[x]:
                    found[cond].append(Violation(cond, a, f"{name} serial", (W[x],)))

        def compose(cond, first, second, target, kind):
            # first(x,y) and second(y,z) must give target(x,z)
            for x in range(n):
                for y in _bits(first[x]):
                    missing = second[y] & ~target[x]
                    for z in _bits(missing):
                        found[cond].append(Violation(cond, a, kind, (W[x], W[y], W[z])))

        serial(2, b, "B")
        serial(3, i_, "I")
        compose(3, i_, i_, i_, "I transitive")
        for x in range(n):
            if not k[x] >> x & 1:
                found[4].append(Violation(4, a, "K reflexive", (W[x],)))
        compose(4, k, k, k, "K transitive")
        compose(5, k, i_, i_, "K;I in I")
        for x in range(n):
            for y in _bits(b[x] & ~k[x]):
                found[6].append(Violation(6, a, "B in K", (W[x], W[y])))
        compose(7, k, b, b, "K;B in B")
        compose(8, i_, k, i_, "I;K in I")
    return FrameReport({c: tuple(vs) for c, vs in found.items()})


def _bits(mask: int):
    n = 0
    while mask:
        if mask & 1:
            yield n
        mask >>= 1
        n += 1


# ---------------------------------------------------------------------------
# evaluation


def extension(model: KripkeModel, phi: Formula, allow_non_s: bool = False) -> int:
    """Bitmask of the worlds where ``phi`` holds."""
    if not allow_non_s and not model.frame_report.ok:
        raise EvaluationError("model is not an S-model; pass allow_non_s=True for diagnostic evaluation")
    missing = agents_of(phi) - set(model.agents)
    if missing:
        raise EvaluationError(f"formula mentions agents not in the model: {sorted(missing)}")
    return _ext(model, phi, {})


def _ext(model: KripkeModel, phi: Formula, memo: dict) -> int:
    hit = memo.get(phi)
    if hit is not None:
        return hit
    full = model.full_mask
    if isinstance(phi, Var):
        r = model.mask_of(model.valuation.get(phi.name, ()))
    elif isinstance(phi, Top):
        r = full
    elif isinstance(phi, Bot):
        r = 0
    elif isinstance(phi, Not):
        r = full & ~_ext(model, phi.body, memo)
    elif isinstance(phi, And):
        r = _ext(model, phi.left, memo) & _ext(model, phi.right, memo)
    elif isinstance(phi, Or):
        r = _ext(model, phi.left, memo) | _ext(model, phi.right, memo)
    elif isinstance(phi, Implies):
        r = (full & ~_ext(model, phi.left, memo)) | _ext(model, phi.right, memo)
    elif isinstance(phi, Iff):
        r = full & ~(_ext(model, phi.left, memo) ^ _ext(model, phi.right, memo))
    elif isinstance(phi, Modal):
        body = _ext(model, phi.body, memo)
        rows = model.successor_masks[(phi.agent, phi.op)]
        r = 0
        for x, succ in enumerate(rows):
            if not succ & ~body:
                r |= 1 << x
    else:
        raise TypeError(f"not a formula: {phi!r}")
    memo[phi] = r
    return r


def evaluate(model: KripkeModel, world: str, phi: Formula, allow_non_s: bool = False) -> bool:
    """Truth of ``phi`` at ``world``.

    Refuses models that fail :func:`check_frame` unless ``allow_non_s``.
    """
    if world not in model.index:
        raise EvaluationError(f"unknown world {world!r}")
    return bool(extension(model, phi, allow_non_s) >> model.index[world] & 1)


def model_validates(model: KripkeModel, phi: Formula, allow_non_s: bool = False) -> bool:
    return extension(model, phi, allow_non_s) == model.full_mask


# ---------------------------------------------------------------------------
# JSON


def model_from_json(data) -> KripkeModel:
    if not isinstance(data, dict):
        raise ModelError("model file must hold a JSON object")
    keys = set(data)
    expected = {"worlds", "agents", "relations", "valuation"}
    if keys != expected:
        extra, absent = sorted(keys - expected), sorted(expected - keys)
        raise ModelError(f"model keys must be exactly {sorted(expected)} (unknown: {extra}, missing: {absent})")
    worlds, agents, relations, valuation = (data[k] for k in ("worlds", "agents", "relations", "valuation"))
    if not isinstance(worlds, list) or not all(isinstance(w, str) for w in worlds):
        raise ModelError("'worlds' must be an array of strings")
    if not isinstance(agents, list) or not all(isinstance(a, str) for a in agents):
        raise ModelError("'agents' must be an array of strings")
    if len(set(agents)) != len(agents):
        raise ModelError("duplicate agent names")
    if not isinstance(relations, dict) or set(relations) != set(agents):
        raise ModelError("'relations' must have exactly one entry per agent")
    flat = {}
    for a, per_op in relations.items():
        if not isinstance(per_op, dict) or set(per_op) != set(MODAL_OPS):
            raise ModelError(f"relations of agent {a!r} need exactly the keys K, B, I")
        for op, pairs in per_op.items():
            if not isinstance(pairs, list):
                raise ModelError(f"{op}[{a}] must be an array of pairs")
            for p in pairs:
                if not (isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)):
                    raise ModelError(f"{op}[{a}] entries must be 2-element string arrays, got {p!r}")
            flat[(a, op)] = [tuple(p) for p in pairs]
    if not isinstance(valuation, dict):
        raise ModelError("'valuation' must be an object")
    for var, ws in valuation.items():
        if not isinstance(ws, list) or not all(isinstance(w, str) for w in ws):
            raise ModelError(f"valuation of {var!r} must be an array of strings")
    return KripkeModel(tuple(worlds), tuple(agents), flat, valuation)


def model_to_json(model: KripkeModel) -> dict:
    """Canonical form: every array sorted."""
    return {
        "worlds": sorted(model.worlds),
        "agents": sorted(model.agents),
        "relations": {
            a: {op: sorted([list(p) for p in model.rel(a, op)]) for op in MODAL_OPS} for a in model.agents
        },
        "valuation": {v: sorted(ws) for v, ws in sorted(model.valuation.items())},
    }


def load_model(path) -> KripkeModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON: {exc}") from exc
    return model_from_json(data)


def dump_model(model: KripkeModel) -> str:
    return json.dumps(model_to_json(model), indent=2, sort_keys=False)


def save_model(model: KripkeModel, path) -> None:
    Path(path).write_text(dump_model(model) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# random S-models


def random_s_model(seed: int, max_worlds: int, agents, vars, *, edge_prob: float = 0.3) -> KripkeModel:
    model, _ = random_s_model_with_stats(seed, max_worlds, agents, vars, edge_prob=edge_prob)
    return model


def random_s_model_with_stats(seed, max_worlds, agents, vars, *, edge_prob=0.3):
    """Sample a model and close it under the frame conditions.

    Returns ``(model, rounds)`` where ``rounds`` is the number of passes of
    the closure loop; every pass but the last adds at least one edge, so
    rounds <= 3 * n**2 + 1.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be >= 1")
    agents = sorted(agents)
    if not agents:
        raise ValueError("need at least one agent")
    rng = random.Random(seed)
    n = rng.randint(1, max_worlds)
    worlds = tuple(f"w{x}" for x in range(n))
    rels = {}
    max_rounds = 0
    for a in agents:
        sample = lambda: [sum(1 << y for y in range(n) if rng.random() < edge_prob) for _ in range(n)]  # noqa: E731
        k, b, i_ = sample(), sample(), sample()
        k, b, i_, rounds = _close(rng, n, k, b, i_)
        max_rounds = max(max_rounds, rounds)
        for op, rows in (("K", k), ("B", b), ("I", i_)):
            rels[(a, op)] = [(worlds[x], worlds[y]) for x in range(n) for y in _bits(rows[x])]
    valuation = {v: [w for w in worlds if rng.random() < 0.5] for v in sorted(vars)}
    return KripkeModel(worlds, tuple(agents), rels, valuation), max_rounds


def _compose_rows(first, second):
    out = []
    for row in first:
        acc = 0
        for y in _bits(row):
            acc |= second[y]
        out.append(acc)
    return out


def _close(rng, n, k, b, i_):
    rounds = 0
    while True:
        rounds += 1
        before = (tuple(k), tuple(b), tuple(i_))
        # 6, then 4
        k = [k[x] | b[x] | (1 << x) for x in range(n)]
        while True:
            kk = [k[x] | c for x, c in enumerate(_compose_rows(k, k))]
            if kk == k:
                break
            k = kk
        # 7, then seriality of B inside K
        b = [b[x] | c for x, c in enumerate(_compose_rows(k, b))]
        for x in range(n):
            if not b[x]:
                b[x] = 1 << rng.choice(list(_bits(k[x])))
        # 3, 5, 8
        i_ = [
            i_[x] | c1 | c2 | c3
            for x, (c1, c2, c3) in enumerate(zip(_compose_rows(i_, i_), _compose_rows(k, i_), _compose_rows(i_, k)))
        ]
        for x in range(n):
            if not i_[x]:
                i_[x] = 1 << rng.randrange(n)
        if (tuple(k), tuple(b), tuple(i_)) == before:
            return k, b, i_, rounds
