"""Bounded counter-model search and the FMP-based decision procedure.

Each world-count tier is a propositional encoding handed to the CDCL solver
in :mod:`secretlogic.decision.solver`.  Frame conditions become clauses, so
unit propagation enforces them incrementally as edges are assigned.

Two facts keep the search small and complete:

* an S-model stays an S-model when isolated worlds with identity relations
  are added, so "no counter-model with exactly n worlds" covers every
  smaller size too;
* for an agent of phi whose B (or I) box never occurs in phi, setting that
  relation equal to K always satisfies the frame conditions, so only K and
  the mentioned relations are searched.  Agents absent from phi get the
  identity relation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from secretlogic.decision.solver import Solver
from secretlogic.formula import (
    TOP_VAR,
    And,
    Formula,
    Modal,
    Not,
    Var,
    agents_of,
    desugar,
    modalities_of,
    subformulas,
    translate_t,
    variables_of,
)
from secretlogic.kripke import KripkeModel, check_frame, diagonal, evaluate

# decide() never encodes tiers above this size; beyond it the verdict is ValidUpTo.
MAX_ENCODED_WORLDS = 16


@dataclass
class SearchConfig:
    max_worlds: int = 4
    agents: frozenset[str] | None = None  # None: agents of phi plus one fresh agent
    time_budget: float = 30.0
    exhaustive: bool = True  # False: only the top tier is encoded

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be >= 1")
        if self.agents is not None:
            self.agents = frozenset(self.agents)


@dataclass(frozen=True)
class Invalid:
    model: KripkeModel
    world: str
    verdict: str = field(default="invalid", init=False)


@dataclass(frozen=True)
class ValidUpTo:
    n: int
    verdict: str = field(default="valid-up-to", init=False)


@dataclass(frozen=True)
class Valid:
    certified_bound: int
    verdict: str = field(default="valid", init=False)


@dataclass(frozen=True)
class Timeout:
    explored: int  # every tier <= explored was refuted completely
    verdict: str = field(default="timeout", init=False)


SearchOutcome = Invalid | ValidUpTo | Valid | Timeout


class SearchInternalError(RuntimeError):
    """A witness produced by the encoding failed independent re-checking."""


def theta_of(phi: Formula):
    return subformulas(translate_t(desugar(phi)))


def fmp_bound(phi: Formula) -> int:
    """2^k with k the number of variables and boxes in Theta of t(phi).

    Worlds agreeing on those members agree on all of Theta, so a filtration
    through t(phi) has at most 2^k worlds.
    """
    theta = theta_of(phi)
    return 2 ** sum(isinstance(psi, (Var, Modal)) for psi in theta)


def nominal_bound(phi: Formula) -> int:
    """2^|Theta of t(phi)|, the coarser bound."""
    return 2 ** len(theta_of(phi))


def fresh_agent(used) -> str:
    for name in ("x", "y", "z"):
        if name not in used:
            return name
    n = 1
    while f"x{n}" in used:
        n += 1
    return f"x{n}"


def search_agents(phi: Formula, cfg: SearchConfig) -> tuple[str, ...]:
    mentioned = agents_of(phi)
    if cfg.agents is None:
        return tuple(sorted(mentioned | {fresh_agent(mentioned)}))
    missing = mentioned - cfg.agents
    if missing:
        raise ValueError(f"search agents must include the agents of the formula; missing {sorted(missing)}")
    return tuple(sorted(cfg.agents))


class _Encoding:
    def __init__(self, phi: Formula, n: int, agents: tuple[str, ...]):
        self.phi = phi
        self.n = n
        self.agents = agents
        self.s = Solver()
        self.mods = modalities_of(phi)
        self.rels: dict[str, dict[str, list[list[int]]]] = {}
        # edge variables first: they get the lowest indices, so decisions
        # follow the canonical edge order on ties
        for a in sorted(agents_of(phi)):
            k = self._matrix()
            b = self._matrix() if (a, "B") in self.mods else k
            i = self._matrix() if (a, "I") in self.mods else k
            self.rels[a] = {"K": k, "B": b, "I": i}
        for a in sorted(self.rels):
            self._frame(self.rels[a])
        self.vals: dict[tuple[str, int], int] = {}
        self.memo: dict[tuple[Formula, int], int] = {}
        self.goal = self.lit(phi, 0)
        self.s.add_clause([-self.goal])

    def _matrix(self):
        return [[self.s.new_var() for _ in range(self.n)] for _ in range(self.n)]

    def _frame(self, r):
        n, add = self.n, self.s.add_clause
        K, B, I = r["K"], r["B"], r["I"]
        for x in range(n):
            add([K[x][x]])
        for x in range(n):
            for y in range(n):
                if y == x:
                    continue
                for z in range(n):
                    if z != y:
                        add([-K[x][y], -K[y][z], K[x][z]])
        if B is not K:
            for x in range(n):
                add([B[x][y] for y in range(n)])
                for y in range(n):
                    add([-B[x][y], K[x][y]])
            for x in range(n):
                for y in range(n):
                    if y != x:
                        for z in range(n):
                            add([-K[x][y], -B[y][z], B[x][z]])
        if I is not K:
            for x in range(n):
                add([I[x][y] for y in range(n)])
            for x in range(n):
                for y in range(n):
                    for z in range(n):
                        if y != x and z != y:
                            add([-I[x][y], -I[y][z], I[x][z]])
                        if y != x:
                            add([-K[x][y], -I[y][z], I[x][z]])
                        if z != y:
                            add([-I[x][y], -K[y][z], I[x][z]])

    def lit(self, psi: Formula, w: int) -> int:
        key = (psi, w)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        s = self.s
        if isinstance(psi, Var):
            out = self.vals.get((psi.name, w))
            if out is None:
                out = self.vals[(psi.name, w)] = s.new_var()
        elif isinstance(psi, Not):
            out = -self.lit(psi.body, w)
        elif isinstance(psi, And):
            left, right = self.lit(psi.left, w), self.lit(psi.right, w)
            out = s.new_var()
            s.add_clause([-out, left])
            s.add_clause([-out, right])
            s.add_clause([out, -left, -right])
        elif isinstance(psi, Modal):
            row = self.rels[psi.agent][psi.op][w]
            body = [self.lit(psi.body, j) for j in range(self.n)]
            out = s.new_var()
            escapes = [out]
            for j in range(self.n):
                s.add_clause([-out, -row[j], body[j]])
                esc = s.new_var()
                s.add_clause([-esc, row[j]])
                s.add_clause([-esc, -body[j]])
                escapes.append(esc)
            s.add_clause(escapes)
        else:
            raise ValueError(f"search needs a desugared formula, got {type(psi).__name__}")
        self.memo[key] = out
        return out

    def model(self) -> KripkeModel:
        worlds = tuple(f"w{x}" for x in range(self.n))
        val = self.s.value
        rels = {}
        for a in self.agents:
            for op in ("K", "B", "I"):
                if a in self.rels:
                    m = self.rels[a][op]
                    rels[(a, op)] = [
                        (worlds[x], worlds[y]) for x in range(self.n) for y in range(self.n) if val(m[x][y])
                    ]
                else:
                    rels[(a, op)] = diagonal(worlds)
        valuation = {}
        for p in sorted(variables_of(self.phi) - {TOP_VAR}):
            valuation[p] = [worlds[x] for x in range(self.n) if (p, x) in self.vals and val(self.vals[(p, x)])]
        return KripkeModel(worlds, self.agents, rels, valuation)


def _solve_tier(phi, n, agents, deadline):
    """Invalid for a witness, None when refuted, "timeout" on deadline."""
    enc = _Encoding(phi, n, agents)
    res = enc.s.solve(deadline)
    if res is None:
        return "timeout"
    if not res:
        return None
    model = enc.model()
    report = check_frame(model)
    if not report.ok or evaluate(model, "w0", phi):
        raise SearchInternalError(f"witness with {n} worlds failed re-verification: {report.lines()}")
    return Invalid(model, "w0")


def find_countermodel(phi: Formula, cfg: SearchConfig | None = None) -> SearchOutcome:
    """Search S-models with at most ``cfg.max_worlds`` worlds for one refuting phi."""
    cfg = cfg or SearchConfig()
    phi = desugar(phi)
    deadline = time.monotonic() + cfg.time_budget
    agents = search_agents(phi, cfg)
    bound = fmp_bound(phi)
    top = min(cfg.max_worlds, bound)
    tiers = range(1, top + 1) if cfg.exhaustive else [top]
    explored = 0
    for n in tiers:
        if time.monotonic() > deadline:
            return Timeout(explored)
        res = _solve_tier(phi, n, agents, deadline)
        if res == "timeout":
            return Timeout(explored)
        if res is not None:
            return res
        explored = n
    if cfg.max_worlds >= bound:
        return Valid(bound)
    return ValidUpTo(cfg.max_worlds)


def decide(phi: Formula, budget: float = 30.0, agents=None) -> SearchOutcome:
    """Complete decision via the finite model property.

    The tier at the FMP bound is tried first; if it has no counter-model the
    formula is valid.  Otherwise tiers are ascended to report the smallest
    witness.
    """
    phi = desugar(phi)
    deadline = time.monotonic() + budget
    cfg = SearchConfig(max_worlds=1, agents=agents, time_budget=budget)
    names = search_agents(phi, cfg)
    bound = fmp_bound(phi)
    if bound <= MAX_ENCODED_WORLDS:
        res = _solve_tier(phi, bound, names, deadline)
        if res == "timeout":
            return Timeout(0)
        if res is None:
            return Valid(bound)
        fallback = res
        for n in range(1, bound):
            if time.monotonic() > deadline:
                break
            smaller = _solve_tier(phi, n, names, deadline)
            if smaller == "timeout":
                break
            if smaller is not None:
                return smaller
        return fallback
    # bound too large to encode: refute tiers up to the cap, then report
    # the explored size honestly
    explored = 0
    for n in range(1, MAX_ENCODED_WORLDS + 1):
        if time.monotonic() > deadline:
            return Timeout(explored)
        res = _solve_tier(phi, n, names, deadline)
        if res == "timeout":
            return Timeout(explored)
        if res is not None:
            return res
        explored = n
    return ValidUpTo(explored)


def outcome_to_json(outcome: SearchOutcome) -> dict:
    from secretlogic.kripke import model_to_json

    if isinstance(outcome, Invalid):
        return {"verdict": "invalid", "world": outcome.world, "model": model_to_json(outcome.model)}
    if isinstance(outcome, ValidUpTo):
        return {"verdict": "valid-up-to", "worlds": outcome.n}
    if isinstance(outcome, Valid):
        return {"verdict": "valid", "certified_bound": outcome.certified_bound}
    return {"verdict": "timeout", "explored": outcome.explored}
