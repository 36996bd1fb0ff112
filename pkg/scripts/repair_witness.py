"""Find a minimal edit of a broken witness model that is an S-model refuting a formula.

Usage:
    python scripts/repair_witness.py MODEL.json WORLD "FORMULA" [--out FILE]

Worlds and valuation are kept fixed.  Edges are free; the solver starts from
the input's edges as preferred phases, and the edit is then made
inclusion-minimal greedily: every edge that differs from the input is pinned
back to its original state in turn, keeping the pin whenever the constraints
stay satisfiable.  Differences from the input are printed.
"""

import argparse
import sys

from secretlogic.decision.search import _Encoding
from secretlogic.formula import desugar
from secretlogic.kripke import KripkeModel, check_frame, evaluate, load_model, save_model
from secretlogic.parser import parse_formula


def _encode(phi, model, world, pins):
    order = [world] + [w for w in model.worlds if w != world]
    enc = _Encoding(phi, len(order), model.agents)
    pos = {w: n for n, w in enumerate(order)}
    for (p, w), var in enc.vals.items():
        enc.s.add_clause([var if w_in(model, p, order[w]) else -var])
    for a in model.agents:
        if a not in enc.rels:
            continue
        for op in ("K", "B", "I"):
            for x in order:
                for y in order:
                    var = enc.rels[a][op][pos[x]][pos[y]]
                    enc.s.set_phase(var if (x, y) in model.rel(a, op) else -var)
    for (a, op, x, y), want in pins.items():
        var = enc.rels[a][op][pos[x]][pos[y]]
        enc.s.add_clause([var if want else -var])
    return enc, order


def w_in(model, p, w):
    return w in model.valuation.get(p, ())


def _relations(enc, order, model):
    out = {}
    for a in model.agents:
        for op in ("K", "B", "I"):
            m = enc.rels[a][op]
            out[(a, op)] = {
                (order[x], order[y]) for x in range(len(order)) for y in range(len(order)) if enc.s.value(m[x][y])
            }
    return out


def repair(model: KripkeModel, world: str, phi):
    phi = desugar(phi)
    pins = {}
    enc, order = _encode(phi, model, world, pins)
    if not enc.s.solve():
        return None
    current = _relations(enc, order, model)
    for a in model.agents:
        for op in ("K", "B", "I"):
            for x in model.worlds:
                for y in model.worlds:
                    want = (x, y) in model.rel(a, op)
                    if ((x, y) in current[(a, op)]) == want:
                        continue
                    trial = dict(pins)
                    trial[(a, op, x, y)] = want
                    enc2, _ = _encode(phi, model, world, trial)
                    if enc2.s.solve():
                        pins = trial
                        current = _relations(enc2, order, model)
    # freeze the untouched edges too, then read the final model
    fixed = model.replace(relations={k: v for k, v in current.items()})
    assert check_frame(fixed).ok and not evaluate(fixed, world, phi)
    return fixed


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("model")
    ap.add_argument("world")
    ap.add_argument("formula")
    ap.add_argument("--out")
    args = ap.parse_args(argv)
    model = load_model(args.model)
    fixed = repair(model, args.world, parse_formula(args.formula))
    if fixed is None:
        print("no S-model on these worlds with this valuation refutes the formula")
        return 1
    for a in model.agents:
        for op in ("K", "B", "I"):
            added = sorted(fixed.rel(a, op) - model.rel(a, op))
            removed = sorted(model.rel(a, op) - fixed.rel(a, op))
            if added or removed:
                print(f"{op}[{a}]: added {added} removed {removed}")
    if args.out:
        save_model(fixed, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
