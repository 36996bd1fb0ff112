"""Search a witness for every invalid corpus entry without one and store it.

Writes corpus_data/found/<id>.json as {"id", "formula", "world", "model"}.
The runner does not read these files; they are kept so the counter-models
can be inspected and diffed across solver changes.
"""

import argparse
import json

from secretlogic.corpus import CORPUS_DIR, check_entry, list_corpus
from secretlogic.decision import SearchConfig
from secretlogic.kripke import model_to_json


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-worlds", type=int, default=4)
    ap.add_argument("--budget", type=float, default=60.0)
    args = ap.parse_args()
    out_dir = CORPUS_DIR / "found"
    out_dir.mkdir(exist_ok=True)
    cfg = SearchConfig(max_worlds=args.max_worlds, time_budget=args.budget)
    for entry in list_corpus():
        if entry.claim.kind != "invalid" or entry.claim.witness is not None:
            continue
        rep = check_entry(entry, cfg)
        print(rep.line())
        if rep.model is None:
            continue
        doc = {"id": entry.id, "formula": entry.claim.formula, "world": rep.world, "model": model_to_json(rep.model)}
        (out_dir / f"{entry.id}.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
