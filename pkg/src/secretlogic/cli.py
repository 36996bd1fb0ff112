"""Command-line front end.

Exit codes: 0 success / claim confirmed, 1 claim refuted, 2 usage or input
error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from enum import IntEnum
from pathlib import Path

from secretlogic.corpus import CorpusFormatError, run_corpus
from secretlogic.decision import (
    Invalid,
    SearchConfig,
    Timeout,
    Valid,
    decide,
    filtrate,
    find_countermodel,
    fmp_bound,
    nominal_bound,
    outcome_to_json,
    verify_filtration,
)
from secretlogic.formula import desugar, resugar, translate_t
from secretlogic.hilbert import ProofFormatError, check_proof, load_proof
from secretlogic.kripke import (
    EvaluationError,
    ModelError,
    check_frame,
    dump_model,
    evaluate,
    extension,
    load_model,
    model_to_json,
    random_s_model,
    save_model,
)
from secretlogic.parser import ParseError, parse_formula, print_formula


class ExitStatus(IntEnum):
    OK = 0
    REFUTED = 1
    USAGE = 2
    BUDGET = 3


class _Out:
    """Collects either text lines or one JSON document."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.doc: dict = {}

    def line(self, text: str = "") -> None:
        if not self.as_json:
            print(text)

    def put(self, **fields) -> None:
        self.doc.update(fields)

    def flush(self) -> None:
        if self.as_json:
            print(json.dumps(self.doc, indent=2, ensure_ascii=False))


def _agents(text):
    return None if text is None else frozenset(a.strip() for a in text.split(",") if a.strip())


def _outcome_status(outcome) -> ExitStatus:
    if isinstance(outcome, Invalid):
        return ExitStatus.REFUTED
    if isinstance(outcome, Timeout):
        return ExitStatus.BUDGET
    return ExitStatus.OK


def _describe(outcome) -> str:
    if isinstance(outcome, Invalid):
        return f"invalid: counter-model with {len(outcome.model.worlds)} worlds, refuted at {outcome.world}"
    if isinstance(outcome, Valid):
        return f"valid (certified, bound {outcome.certified_bound} worlds)"
    if isinstance(outcome, Timeout):
        return f"timeout: no counter-model up to {outcome.explored} worlds"
    return f"no counter-model up to {outcome.n} worlds"


# -- commands ---------------------------------------------------------------


def cmd_check_model(args, out: _Out) -> ExitStatus:
    report = check_frame(load_model(args.model))
    for text in report.lines():
        out.line(text)
    out.put(**report.to_json())
    return ExitStatus.OK if report.ok else ExitStatus.REFUTED


def cmd_eval(args, out: _Out) -> ExitStatus:
    model = load_model(args.model)
    phi = parse_formula(args.formula)
    value = evaluate(model, args.world, phi, allow_non_s=args.allow_non_s)
    out.line("true" if value else "false")
    out.put(world=args.world, formula=print_formula(phi), value=value)
    return ExitStatus.OK if value else ExitStatus.REFUTED


def cmd_holds(args, out: _Out) -> ExitStatus:
    model = load_model(args.model)
    phi = parse_formula(args.formula)
    failing = model.worlds_of(model.full_mask & ~extension(model, phi, allow_non_s=args.allow_non_s))
    if failing:
        out.line(f"false at {', '.join(failing)}")
    else:
        out.line("true at every world")
    out.put(formula=print_formula(phi), holds=not failing, failing=failing)
    return ExitStatus.REFUTED if failing else ExitStatus.OK


def _write_witness(outcome, args, out: _Out) -> None:
    if not isinstance(outcome, Invalid):
        return
    if args.out:
        save_model(outcome.model, args.out)
        out.line(f"witness written to {args.out}")
    else:
        out.line(dump_model(outcome.model))


def cmd_decide(args, out: _Out) -> ExitStatus:
    phi = parse_formula(args.formula)
    if args.certify:
        outcome = decide(phi, budget=args.budget, agents=_agents(args.agents))
    else:
        cfg = SearchConfig(max_worlds=args.max_worlds, agents=_agents(args.agents), time_budget=args.budget)
        outcome = find_countermodel(phi, cfg)
    out.line(_describe(outcome))
    out.put(formula=print_formula(phi), fmp_bound=fmp_bound(phi), **outcome_to_json(outcome))
    _write_witness(outcome, args, out)
    return _outcome_status(outcome)


def cmd_countermodel(args, out: _Out) -> ExitStatus:
    phi = parse_formula(args.formula)
    cfg = SearchConfig(
        max_worlds=args.max_worlds,
        agents=_agents(args.agents),
        time_budget=args.budget,
        exhaustive=not args.top_only,
    )
    outcome = find_countermodel(phi, cfg)
    out.line(_describe(outcome))
    out.put(**outcome_to_json(outcome))
    _write_witness(outcome, args, out)
    return _outcome_status(outcome)


def cmd_filtrate(args, out: _Out) -> ExitStatus:
    model = load_model(args.model)
    phi = parse_formula(args.formula)
    result = filtrate(model, phi)
    report = verify_filtration(model, result, phi)
    out.line(f"{len(model.worlds)} worlds -> {len(result.model.worlds)} classes (bound {result.nominal_bound})")
    for text in report.lines():
        out.line(text)
    if args.out:
        save_model(result.model, args.out)
        sidecar = Path(args.out).with_suffix(".classes.json")
        sidecar.write_text(json.dumps(result.sidecar_json(), indent=2) + "\n", encoding="utf-8")
        out.line(f"filtered model written to {args.out}, classes to {sidecar}")
    elif not out.as_json:
        out.line(dump_model(result.model))
    out.put(ok=report.ok, model=model_to_json(result.model), **result.sidecar_json())
    return ExitStatus.OK if report.ok else ExitStatus.REFUTED


def cmd_translate(args, out: _Out) -> ExitStatus:
    phi = parse_formula(args.formula)
    t = print_formula(resugar(translate_t(desugar(phi))))
    expanded = print_formula(phi)
    out.line(t)
    out.line(f"expanded: {expanded}")
    out.line(f"desugared: {print_formula(desugar(phi))}")
    out.line(f"fmp bound: {fmp_bound(phi)} (nominal {nominal_bound(phi)})")
    out.put(translation=t, expanded=expanded, fmp_bound=fmp_bound(phi), nominal_bound=nominal_bound(phi))
    return ExitStatus.OK


def cmd_prove_check(args, out: _Out) -> ExitStatus:
    proof = load_proof(args.proof)
    verdict = check_proof(proof)
    out.line(verdict.render())
    out.put(accepted=verdict.accepted, line=verdict.line, reason=verdict.reason)
    return ExitStatus.OK if verdict.accepted else ExitStatus.REFUTED


def cmd_corpus(args, out: _Out) -> ExitStatus:
    cfg = SearchConfig(max_worlds=args.max_worlds, time_budget=args.budget)
    reports = run_corpus(args.filter, cfg, agent_count=args.agent_count, jobs=args.jobs)
    for rep in reports:
        out.line(rep.line())
    passed = sum(r.passed for r in reports)
    out.line(f"{passed}/{len(reports)} entries pass")
    out.put(entries=[r.to_json() for r in reports], passed=passed, total=len(reports))
    if not reports:
        return ExitStatus.USAGE
    return ExitStatus.OK if passed == len(reports) else ExitStatus.REFUTED


def cmd_random_model(args, out: _Out) -> ExitStatus:
    model = random_s_model(
        args.seed,
        args.max_worlds,
        sorted(_agents(args.agents)),
        sorted(_agents(args.vars)),
        edge_prob=args.edge_prob,
    )
    if out.as_json:
        out.put(**model_to_json(model))
    else:
        out.line(dump_model(model))
    return ExitStatus.OK


# -- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # globals are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit one JSON document")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--budget", type=float, default=argparse.SUPPRESS, help="time budget in seconds (default 30)")

    ap = argparse.ArgumentParser(prog="secretlogic", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    p = add("check-model", cmd_check_model, "check the S-frame conditions of a model file")
    p.add_argument("model")

    for name, func, help in (
        ("eval", cmd_eval, "truth of a formula at one world"),
        ("holds", cmd_holds, "truth of a formula at every world"),
    ):
        p = add(name, func, help)
        p.add_argument("model")
        if name == "eval":
            p.add_argument("world")
        p.add_argument("formula")
        p.add_argument("--allow-non-s", action="store_true", help="evaluate even if the frame is not an S-frame")

    for name, func, help in (
        ("decide", cmd_decide, "search for a counter-model; exit 0 if none"),
        ("countermodel", cmd_countermodel, "search for a counter-model and print it"),
    ):
        p = add(name, func, help)
        p.add_argument("formula")
        p.add_argument("--max-worlds", type=int, default=4)
        p.add_argument("--agents", help="comma-separated search agents (default: formula's plus one fresh)")
        p.add_argument("--out", help="write the witness model here")
        if name == "decide":
            p.add_argument("--certify", action="store_true", help="run the complete procedure up to the FMP bound")
        else:
            p.add_argument("--top-only", action="store_true", help="encode only the largest tier")

    p = add("filtrate", cmd_filtrate, "filtrate a model through t(phi) and verify the result")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--out", help="write the filtered model here (class map goes next to it)")

    p = add("translate", cmd_translate, "print t(phi) and the S/T expansion")
    p.add_argument("formula")

    p = add("prove-check", cmd_prove_check, "check a Hilbert proof file")
    p.add_argument("proof")

    p = add("corpus", cmd_corpus, "run the proposition corpus")
    p.add_argument("--filter", help="glob over entry ids, e.g. 'propertiessab.*'")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--agent-count", type=int, help="search exactly the formula's agents padded to this many")
    p.add_argument("--jobs", type=int, default=1)

    p = add("random-model", cmd_random_model, "print a random S-model")
    p.add_argument("--max-worlds", type=int, default=3)
    p.add_argument("--agents", default="a,b")
    p.add_argument("--vars", default="p,q")
    p.add_argument("--edge-prob", type=float, default=0.3)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    for name, default in (("json", False), ("seed", 0), ("budget", 30.0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    out = _Out(args.json)
    try:
        status = args.func(args, out)
    except (ParseError, ModelError, EvaluationError, ProofFormatError, CorpusFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.json:
            print(json.dumps({"error": str(exc)}))
        return ExitStatus.USAGE
    out.put(exit=int(status))
    out.flush()
    return int(status)


if __name__ == "__main__":
    sys.exit(main())
