"""Soundness fuzzing: random S-models against random instances of A2..A11.

Also checks, on the same models, that phi and t(phi) hold at the same worlds.
"""

import argparse
import random
import time
from collections import Counter

from secretlogic.formula import translate_t
from secretlogic.generators import FormulaConfig, random_axiom_instance, random_formula
from secretlogic.hilbert import match_axiom
from secretlogic.kripke import extension, random_s_model
from secretlogic.parser import print_formula


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--models", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-worlds", type=int, default=4)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    cfg = FormulaConfig(max_depth=3)
    by_axiom = Counter()
    failures = 0
    start = time.monotonic()
    for k in range(args.models):
        model = random_s_model(args.seed * 1_000_003 + k, args.max_worlds, ["a", "b"], ["p", "q", "r"])
        name, phi = random_axiom_instance(rng, cfg)
        assert match_axiom(phi, name), name
        by_axiom[name] += 1
        if extension(model, phi) != model.full_mask:
            failures += 1
            print(f"axiom {name} fails: {print_formula(phi)}")
        psi = random_formula(rng, cfg)
        if extension(model, psi) != extension(model, translate_t(psi)):
            failures += 1
            print(f"translation differs: {print_formula(psi)}")
    print(dict(sorted(by_axiom.items(), key=lambda kv: int(kv[0][1:]))))
    print(f"{args.models} models, {failures} failures, {time.monotonic() - start:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
