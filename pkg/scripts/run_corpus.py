"""Run the proposition corpus and print one line per entry plus timings."""

import argparse
import time

from secretlogic.corpus import run_corpus
from secretlogic.decision import SearchConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--filter")
    ap.add_argument("--max-worlds", type=int, default=3)
    ap.add_argument("--agent-count", type=int, default=2)
    ap.add_argument("--budget", type=float, default=120.0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    cfg = SearchConfig(max_worlds=args.max_worlds, time_budget=args.budget)
    start = time.monotonic()
    reports = run_corpus(args.filter, cfg, agent_count=args.agent_count, jobs=args.jobs)
    for rep in reports:
        print(f"{rep.line():70} {rep.elapsed:7.3f}s")
    passed = sum(r.passed for r in reports)
    print(f"{passed}/{len(reports)} pass in {time.monotonic() - start:.2f}s")
    return 0 if passed == len(reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
