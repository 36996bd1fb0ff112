"""Filtration of an S-model through t(phi) and an independent checker for it."""

from __future__ import annotations

from dataclasses import dataclass, field

from secretlogic.formula import MODAL_OPS, Formula, Modal, Var, desugar, subformulas, translate_t
from secretlogic.kripke import FrameReport, KripkeModel, check_frame, extension
from secretlogic.parser import print_formula


@dataclass(frozen=True)
class FiltrationResult:
    model: KripkeModel
    class_map: dict[str, str]
    theta: tuple[Formula, ...]

    @property
    def certified_bound(self) -> int:
        return 2 ** sum(isinstance(psi, (Var, Modal)) for psi in self.theta)

    @property
    def nominal_bound(self) -> int:
        return 2 ** len(self.theta)

    def sidecar_json(self) -> dict:
        return {
            "class_map": dict(sorted(self.class_map.items())),
            "theta": [print_formula(psi) for psi in self.theta],
        }


def _truth_table(model: KripkeModel, theta) -> dict[Formula, int]:
    return {psi: extension(model, psi) for psi in theta}


def _holds(table, psi, idx) -> bool:
    return bool(table[psi] >> idx & 1)


def filtrate(model: KripkeModel, phi: Formula) -> FiltrationResult:
    """Quotient ``model`` by agreement on Theta of t(phi).

    Representatives are the lexicographically least world names of their
    classes.  The relations are the K-bar, I-bar, B-bar relations: K-bar
    preserves the K-, I- and B-members of Theta for the agent, I-bar
    preserves the I-members and needs their bodies true at the target, B-bar
    is K-bar plus truth of the B-bodies.
    """
    phi = desugar(phi)
    missing = {n.agent for n in subformulas(phi) if isinstance(n, Modal)} - set(model.agents)
    if missing:
        raise ValueError(f"formula mentions agents not in the model: {sorted(missing)}")
    theta = subformulas(translate_t(phi))
    table = _truth_table(model, theta)
    idx = model.index

    classes: dict[tuple, list[str]] = {}
    for w in model.worlds:
        sig = tuple(_holds(table, psi, idx[w]) for psi in theta)
        classes.setdefault(sig, []).append(w)
    class_map = {}
    for members in classes.values():
        rep = min(members)
        for w in members:
            class_map[w] = rep
    reps = [w for w in model.worlds if class_map[w] == w]

    def preserves(members, i, j):
        return all(not _holds(table, m, idx[i]) or _holds(table, m, idx[j]) for m in members)

    def bodies(members, i, j):
        return all(not _holds(table, m, idx[i]) or _holds(table, m.body, idx[j]) for m in members)

    rels = {}
    for a in model.agents:
        boxed = {op: [m for m in theta if isinstance(m, Modal) and m.agent == a and m.op == op] for op in MODAL_OPS}
        allboxes = boxed["K"] + boxed["I"] + boxed["B"]
        k_pairs, i_pairs, b_pairs = [], [], []
        for i in reps:
            for j in reps:
                kb = preserves(allboxes, i, j)
                if kb:
                    k_pairs.append((i, j))
                    if bodies(boxed["B"], i, j):
                        b_pairs.append((i, j))
                if preserves(boxed["I"], i, j) and bodies(boxed["I"], i, j):
                    i_pairs.append((i, j))
        rels[(a, "K")] = k_pairs
        rels[(a, "I")] = i_pairs
        rels[(a, "B")] = b_pairs
    keep = set(reps)
    valuation = {p: [w for w in ws if w in keep] for p, ws in model.valuation.items()}
    return FiltrationResult(KripkeModel(tuple(reps), model.agents, rels, valuation), class_map, theta)


@dataclass
class FiltrationReport:
    first_condition: list[tuple] = field(default_factory=list)  # (agent, op, i, k, j)
    second_condition: list[tuple] = field(default_factory=list)  # (agent, op, i, j, formula)
    frame: FrameReport | None = None
    truth: list[tuple] = field(default_factory=list)  # (world, formula)
    classes: list[str] = field(default_factory=list)
    size_ok: bool = True

    @property
    def ok(self) -> bool:
        return (
            not self.first_condition
            and not self.second_condition
            and self.frame is not None
            and self.frame.ok
            and not self.truth
            and not self.classes
            and self.size_ok
        )

    def lines(self) -> list[str]:
        out = [
            f"filtration condition 1: {'PASS' if not self.first_condition else 'FAIL'}",
            *(f"  R{op}[{a}]({i},{k}) with {k} ~ {j} but no edge ({i},{j})" for a, op, i, k, j in self.first_condition),
            f"filtration condition 2: {'PASS' if not self.second_condition else 'FAIL'}",
            *(
                f"  edge {op}[{a}]({i},{j}) but {print_formula(f)} at {i} without its body at {j}"
                for a, op, i, j, f in self.second_condition
            ),
            f"S-frame: {'PASS' if self.frame and self.frame.ok else 'FAIL'}",
            *(f"  {v.describe()}" for v in (self.frame.all_violations() if self.frame else [])),
            f"truth agreement on theta: {'PASS' if not self.truth else 'FAIL'}",
            *(f"  {print_formula(f)} differs at {w}" for w, f in self.truth),
            f"class map: {'PASS' if not self.classes else 'FAIL'}",
            *(f"  {c}" for c in self.classes),
            f"size bound: {'PASS' if self.size_ok else 'FAIL'}",
        ]
        return out


def verify_filtration(model: KripkeModel, result: FiltrationResult, phi: Formula) -> FiltrationReport:
    """Recheck a filtration from scratch, without reusing filtrate's tables."""
    rep = FiltrationReport()
    phi = desugar(phi)
    theta = subformulas(translate_t(phi))
    if tuple(theta) != tuple(result.theta):
        rep.classes.append("theta does not match t(phi)")
    orig = {psi: extension(model, psi) for psi in theta}
    idx = model.index

    def truth_vector(w):
        return tuple(bool(orig[psi] >> idx[w] & 1) for psi in theta)

    fm = result.model
    reps = set(fm.worlds)
    for w in model.worlds:
        r = result.class_map.get(w)
        if r is None or r not in reps:
            rep.classes.append(f"{w} has no representative in the filtered model")
        elif truth_vector(w) != truth_vector(r):
            rep.classes.append(f"{w} and its representative {r} disagree on theta")
    for r in fm.worlds:
        if result.class_map.get(r) != r:
            rep.classes.append(f"{r} does not represent itself")
    rep.size_ok = len(fm.worlds) <= 2 ** len(theta)

    def equivalent(x, y):
        return truth_vector(x) == truth_vector(y)

    for a in fm.agents:
        for op in MODAL_OPS:
            edges = fm.rel(a, op)
            orig_edges = model.rel(a, op)
            for i in fm.worlds:
                for k in model.worlds:
                    if (i, k) not in orig_edges:
                        continue
                    for j in fm.worlds:
                        if equivalent(k, j) and (i, j) not in edges:
                            rep.first_condition.append((a, op, i, k, j))
            members = [m for m in theta if isinstance(m, Modal) and m.agent == a and m.op == op]
            for i, j in sorted(edges):
                for m in members:
                    if orig[m] >> idx[i] & 1 and not orig[m.body] >> idx[j] & 1:
                        rep.second_condition.append((a, op, i, j, m))
    rep.frame = check_frame(fm)
    fidx = fm.index
    for psi in theta:
        ext = extension(fm, psi, allow_non_s=True)
        for w in fm.worlds:
            if bool(ext >> fidx[w] & 1) != bool(orig[psi] >> idx[w] & 1):
                rep.truth.append((w, psi))
    return rep
