"""Axiom schemes A1-A11, the tautology check for A1, and a Hilbert proof checker.

A2 is implemented as the distribution axiom ``*(phi -> psi) -> (*phi -> *psi)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from secretlogic.formula import (
    MODAL_OPS,
    And,
    B,
    Formula,
    I,
    K,
    Modal,
    Not,
    Var,
    box,
    desugar,
    implication_parts,
)
from secretlogic.parser import ParseError, parse_formula

AXIOM_NAMES = tuple(f"A{n}" for n in range(1, 12))
MAX_ATOMS = 20


class TautologyCapError(ValueError):
    pass


class ProofFormatError(ValueError):
    pass


def _atoms(phi: Formula, out: dict) -> None:
    if isinstance(phi, (Var, Modal)):
        out.setdefault(phi, len(out))
    elif isinstance(phi, Not):
        _atoms(phi.body, out)
    elif isinstance(phi, And):
        _atoms(phi.left, out)
        _atoms(phi.right, out)
    else:
        raise TypeError(f"not a desugared formula: {phi!r}")


def is_tautology(phi: Formula) -> bool:
    """Truth-table check with maximal modal subformulas as opaque atoms."""
    phi = desugar(phi)
    atoms: dict = {}
    _atoms(phi, atoms)
    m = len(atoms)
    if m > MAX_ATOMS:
        raise TautologyCapError(f"{m} atoms exceed the truth-table cap of {MAX_ATOMS}")
    rows = 1 << m
    full = (1 << rows) - 1
    # column for atom k: bit r set iff bit k of row index r is set
    cols = {}
    for atom, k in atoms.items():
        block = ((1 << (1 << k)) - 1) << (1 << k)  # 2^k zeros then 2^k ones
        period = 1 << (k + 1)
        col = 0
        for start in range(0, rows, period):
            col |= block << start
        cols[atom] = col & full

    def ev(f):
        if isinstance(f, (Var, Modal)):
            return cols[f]
        if isinstance(f, Not):
            return full & ~ev(f.body)
        return ev(f.left) & ev(f.right)

    return ev(phi) == full


def _match_a2(ante: Formula, cons: Formula) -> bool:
    if not isinstance(ante, Modal):
        return False
    inner = implication_parts(ante.body)
    if not inner:
        return False
    for lhs, rhs in implication_parts(cons):
        if not (isinstance(lhs, Modal) and isinstance(rhs, Modal)):
            continue
        if not (type(lhs) is type(ante) is type(rhs) and lhs.agent == ante.agent == rhs.agent):
            continue
        if any(p == lhs.body and q == rhs.body for p, q in inner):
            return True
    return False


def _match_one(name: str, ante: Formula, cons: Formula) -> bool:
    if name == "A2":
        return _match_a2(ante, cons)
    head = {"A3": K, "A4": K, "A5": B, "A6": K, "A7": B, "A8": I, "A9": I, "A10": I, "A11": I}[name]
    if not isinstance(ante, head):
        return False
    a, x = ante.agent, ante.body
    if name == "A3":
        return cons == x
    if name == "A4":
        return cons == K(a, K(a, x))
    if name == "A5":
        return cons == Not(B(a, Not(x)))
    if name == "A6":
        return cons == B(a, x)
    if name == "A7":
        return cons == K(a, B(a, x))
    if name == "A8":
        return cons == Not(I(a, Not(x)))
    if name == "A9":
        return cons == K(a, I(a, x))
    if name == "A10":
        return cons == I(a, K(a, x))
    return cons == I(a, I(a, x))


def match_axiom(phi: Formula, name: str) -> bool:
    """Is ``phi`` an instance of scheme ``name``?  Implications are matched in
    both their sugared and desugared shapes."""
    if name not in AXIOM_NAMES:
        raise ValueError(f"unknown axiom {name!r}")
    phi = desugar(phi)
    if name == "A1":
        try:
            return is_tautology(phi)
        except TautologyCapError:
            return False
    return any(_match_one(name, ante, cons) for ante, cons in implication_parts(phi))


def which_axioms(phi: Formula) -> list[str]:
    return [n for n in AXIOM_NAMES if match_axiom(phi, n)]


# ---------------------------------------------------------------------------
# proofs


@dataclass(frozen=True)
class Axiom:
    name: str


@dataclass(frozen=True)
class ModusPonens:
    first: int
    second: int


@dataclass(frozen=True)
class Necessitation:
    op: str
    agent: str
    source: int


@dataclass(frozen=True)
class Premise:
    pass


Justification = Union[Axiom, ModusPonens, Necessitation, Premise]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    by: Justification


@dataclass(frozen=True)
class Proof:
    lines: tuple[ProofLine, ...]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula

    @property
    def premises(self) -> list[Formula]:
        return [ln.formula for ln in self.lines if isinstance(ln.by, Premise)]


@dataclass(frozen=True)
class ProofVerdict:
    accepted: bool
    line: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.accepted

    def render(self) -> str:
        if self.accepted:
            return "accepted"
        return f"rejected at line {self.line}: {self.reason}"


def check_proof(proof: Proof) -> ProofVerdict:
    """Line-by-line check.  RN may only be applied to premise-free lines."""
    if not proof.lines:
        return ProofVerdict(False, 0, "empty proof")
    forms: list[Formula] = []
    uses_premise: list[bool] = []
    for n, line in enumerate(proof.lines, start=1):
        phi = desugar(line.formula)
        by = line.by

        def ref(k):
            if not isinstance(k, int) or not 1 <= k < n:
                raise _Reject(f"line reference {k} out of range")
            return k - 1

        try:
            if isinstance(by, Premise):
                dep = True
            elif isinstance(by, Axiom):
                if by.name not in AXIOM_NAMES:
                    raise _Reject(f"unknown axiom {by.name!r}")
                if by.name == "A1":
                    try:
                        ok = is_tautology(phi)
                    except TautologyCapError as exc:
                        raise _Reject(str(exc)) from None
                else:
                    ok = match_axiom(phi, by.name)
                if not ok:
                    raise _Reject(f"not an instance of {by.name}")
                dep = False
            elif isinstance(by, ModusPonens):
                i, j = ref(by.first), ref(by.second)
                if not (_mp(forms[i], forms[j], phi) or _mp(forms[j], forms[i], phi)):
                    raise _Reject(f"lines {by.first} and {by.second} do not yield this line by modus ponens")
                dep = uses_premise[i] or uses_premise[j]
            elif isinstance(by, Necessitation):
                i = ref(by.source)
                if by.op not in MODAL_OPS:
                    raise _Reject(f"unknown modality {by.op!r}")
                if uses_premise[i]:
                    raise _Reject("necessitation over premise")
                if phi != box(by.op, by.agent, forms[i]):
                    raise _Reject(f"not {by.op}[{by.agent}] applied to line {by.source}")
                dep = False
            else:
                raise _Reject(f"unknown justification {by!r}")
        except _Reject as exc:
            return ProofVerdict(False, n, str(exc))
        forms.append(phi)
        uses_premise.append(dep)
    return ProofVerdict(True)


class _Reject(Exception):
    pass


def _mp(minor: Formula, major: Formula, goal: Formula) -> bool:
    return any(a == minor and b == goal for a, b in implication_parts(major))


def proof_from_json(data) -> Proof:
    if not isinstance(data, list) or not data:
        raise ProofFormatError("proof file must hold a nonempty JSON array")
    lines = []
    for n, item in enumerate(data, start=1):
        if not isinstance(item, dict) or set(item) != {"formula", "by"}:
            raise ProofFormatError(f"line {n}: expected an object with keys 'formula' and 'by'")
        try:
            phi = parse_formula(item["formula"])
        except ParseError as exc:
            raise ProofFormatError(f"line {n}: {exc}") from exc
        lines.append(ProofLine(phi, _justification(item["by"], n)))
    return Proof(tuple(lines))


def _justification(by, n):
    if by == "premise":
        return Premise()
    if isinstance(by, str) and by in AXIOM_NAMES:
        return Axiom(by)
    if isinstance(by, dict) and set(by) == {"mp"}:
        pair = by["mp"]
        if isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair):
            return ModusPonens(pair[0], pair[1])
    if isinstance(by, dict) and set(by) == {"rn"}:
        rn = by["rn"]
        if isinstance(rn, dict) and set(rn) == {"mod", "agent", "from"} and isinstance(rn["from"], int):
            return Necessitation(rn["mod"], rn["agent"], rn["from"])
    raise ProofFormatError(f"line {n}: bad justification {by!r}")


def load_proof(path) -> Proof:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ProofFormatError(f"cannot read proof {path}: {exc}") from exc
    return proof_from_json(data)


def proof_to_json(proof: Proof) -> list:
    from secretlogic.parser import print_formula

    out = []
    for line in proof.lines:
        by = line.by
        if isinstance(by, Premise):
            j = "premise"
        elif isinstance(by, Axiom):
            j = by.name
        elif isinstance(by, ModusPonens):
            j = {"mp": [by.first, by.second]}
        else:
            j = {"rn": {"mod": by.op, "agent": by.agent, "from": by.source}}
        out.append({"formula": print_formula(line.formula, sugar=True), "by": j})
    return out


__all__ = [
    "AXIOM_NAMES",
    "Axiom",
    "ModusPonens",
    "Necessitation",
    "Premise",
    "Proof",
    "ProofLine",
    "ProofVerdict",
    "check_proof",
    "is_tautology",
    "match_axiom",
    "which_axioms",
    "load_proof",
    "proof_from_json",
    "proof_to_json",
]
