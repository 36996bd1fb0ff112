"""Naive enumerate-and-filter oracle for tiny models.

Enumerates every relation triple per agent on up to ``max_worlds`` worlds,
keeps the ones passing :func:`check_frame`, and tries every valuation.  No
propagation and no sharing with the search code.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from secretlogic.formula import Formula, agents_of, desugar, variables_of
from secretlogic.kripke import KripkeModel, check_frame, extension


@lru_cache(maxsize=None)
def single_agent_frames(n: int) -> tuple:
    """(K, B, I) triples forming an S-frame for one agent on w0..w{n-1}."""
    worlds = tuple(f"w{x}" for x in range(n))
    pairs = [(x, y) for x in worlds for y in worlds]
    per_agent = []
    for bits in product((False, True), repeat=3 * len(pairs)):
        k = [p for p, b in zip(pairs, bits[: len(pairs)]) if b]
        bb = [p for p, b in zip(pairs, bits[len(pairs) : 2 * len(pairs)]) if b]
        i = [p for p, b in zip(pairs, bits[2 * len(pairs) :]) if b]
        probe = KripkeModel(worlds, ("a",), {("a", "K"): k, ("a", "B"): bb, ("a", "I"): i})
        if check_frame(probe).ok:
            per_agent.append((tuple(k), tuple(bb), tuple(i)))
    return tuple(per_agent)


def s_frames(n: int, agents):
    """Every S-frame on worlds w0..w{n-1}, as relation dicts."""
    worlds = tuple(f"w{x}" for x in range(n))
    agents = tuple(sorted(agents))
    for combo in product(single_agent_frames(n), repeat=len(agents)):
        rels = {}
        for a, (k, bb, i) in zip(agents, combo):
            rels[(a, "K")], rels[(a, "B")], rels[(a, "I")] = k, bb, i
        yield worlds, rels


def brute_force_refutable(phi: Formula, max_worlds: int = 2, agents=None) -> KripkeModel | None:
    """First S-model (smallest first) with a world refuting phi, or None."""
    phi = desugar(phi)
    agents = sorted(agents or agents_of(phi) or {"a"})
    variables = sorted(variables_of(phi))
    for n in range(1, max_worlds + 1):
        worlds_cells = None
        for worlds, rels in s_frames(n, agents):
            if worlds_cells is None:
                worlds_cells = list(product((False, True), repeat=n * len(variables)))
            for cells in worlds_cells:
                valuation = {
                    p: [w for x, w in enumerate(worlds) if cells[v * n + x]] for v, p in enumerate(variables)
                }
                model = KripkeModel(worlds, tuple(agents), rels, valuation)
                if extension(model, phi) != model.full_mask:
                    return model
    return None
