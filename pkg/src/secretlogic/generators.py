"""Seeded random formulas and axiom instances for fuzzing and experiments."""

from __future__ import annotations

import random
from dataclasses import dataclass

from secretlogic.formula import (
    And,
    B,
    Bot,
    Formula,
    I,
    Iff,
    Implies,
    K,
    Not,
    Or,
    Top,
    Var,
    box,
)


@dataclass
class FormulaConfig:
    max_depth: int = 3
    agents: tuple[str, ...] = ("a", "b")
    variables: tuple[str, ...] = ("p", "q", "r")
    sugar: bool = False  # allow Or/Implies/Iff/Top/Bot nodes


def random_formula(rng: random.Random, cfg: FormulaConfig, depth: int | None = None) -> Formula:
    depth = cfg.max_depth if depth is None else depth
    if depth <= 0 or rng.random() < 0.25:
        if cfg.sugar and rng.random() < 0.1:
            return rng.choice((Top(), Bot()))
        return Var(rng.choice(cfg.variables))
    kinds = ["not", "and", "box"]
    if cfg.sugar:
        kinds += ["or", "implies", "iff"]
    kind = rng.choice(kinds)
    sub = lambda: random_formula(rng, cfg, depth - 1)  # noqa: E731
    if kind == "not":
        return Not(sub())
    if kind == "box":
        return box(rng.choice("KBI"), rng.choice(cfg.agents), sub())
    cls = {"and": And, "or": Or, "implies": Implies, "iff": Iff}[kind]
    return cls(sub(), sub())


def axiom_instance(name: str, agent: str, phi: Formula, psi: Formula, op: str = "K") -> Formula:
    """Instance of scheme A2..A11 (sugared implications)."""
    a = agent
    if name == "A2":
        return Implies(box(op, a, Implies(phi, psi)), Implies(box(op, a, phi), box(op, a, psi)))
    table = {
        "A3": lambda: Implies(K(a, phi), phi),
        "A4": lambda: Implies(K(a, phi), K(a, K(a, phi))),
        "A5": lambda: Implies(B(a, phi), Not(B(a, Not(phi)))),
        "A6": lambda: Implies(K(a, phi), B(a, phi)),
        "A7": lambda: Implies(B(a, phi), K(a, B(a, phi))),
        "A8": lambda: Implies(I(a, phi), Not(I(a, Not(phi)))),
        "A9": lambda: Implies(I(a, phi), K(a, I(a, phi))),
        "A10": lambda: Implies(I(a, phi), I(a, K(a, phi))),
        "A11": lambda: Implies(I(a, phi), I(a, I(a, phi))),
    }
    return table[name]()


def random_axiom_instance(rng: random.Random, cfg: FormulaConfig) -> tuple[str, Formula]:
    """A random instance of A2..A11 whose whole formula has depth <= cfg.max_depth + 3."""
    name = f"A{rng.randint(2, 11)}"
    sub = FormulaConfig(max_depth=cfg.max_depth, agents=cfg.agents, variables=cfg.variables)
    phi, psi = random_formula(rng, sub), random_formula(rng, sub)
    return name, axiom_instance(name, rng.choice(cfg.agents), phi, psi, rng.choice("KBI"))
