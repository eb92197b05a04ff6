"""Command line entry point: ``jtrans translate|prove|kripke|nucleus-check|suite``.

Exit codes: 0 pass, 1 logical failure, 2 usage or parse error, 3 precondition gate.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import re
import sys

from .formula import ParseError, parse, parse_sequent, pretty, read_formula_file
from .kripke import (
    Evaluator, ModelError, check_section5, dumps_model, load_model,
    parse_eval_query,
)
from .nucleus import NucleusError, check_axioms, check_lemma_properties, parse_nucleus
from .prover import BudgetExceeded, DEFAULT_BUDGET, Logic, OutOfFragment, decide
from .suite import CLAIMS, RECORD_VERSION, SuiteConfig, run_suite
from .translate import PreconditionError, Scheme, translate

MAX_WORLDS = 8
MAX_DOMAIN = 4

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GATE = 0, 1, 2, 3


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _record(**kw) -> str:
    return json.dumps({"v": RECORD_VERSION, **kw}, ensure_ascii=False)


def _formulas_arg(arg: str):
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return read_formula_file(fh)
    return [parse(arg)]


def cmd_translate(args) -> int:
    try:
        j = parse_nucleus(args.nucleus)
        fs = _formulas_arg(args.formula)
    except (ParseError, NucleusError) as e:
        _err(str(e))
        return EXIT_USAGE
    try:
        outs = [translate(f, args.scheme, j, args.logic) for f in fs]
    except PreconditionError as e:
        _err(str(e))
        return EXIT_GATE
    for f, g in zip(fs, outs):
        if args.format == "records":
            print(_record(kind="translation", input=pretty(f), scheme=args.scheme, nucleus=j.name,
                          logic=args.logic, output=pretty(g)))
        else:
            print(pretty(g))
    return EXIT_OK


def cmd_prove(args) -> int:
    try:
        s = parse_sequent(args.sequent)
        v = decide(args.logic, s, countermodel=args.countermodel, budget=args.budget)
    except ParseError as e:
        _err(str(e))
        return EXIT_USAGE
    except (OutOfFragment, BudgetExceeded) as e:
        _err(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    if args.format == "records":
        cm = v.countermodel
        if cm is not None and not isinstance(cm, dict):
            cm = dumps_model(cm)
        print(_record(kind="verdict", logic=args.logic, sequent=str(s), derivable=v.derivable,
                      witness=v.witness if args.witness else None,
                      countermodel=cm if args.countermodel else None))
    else:
        print("derivable" if v.derivable else "not derivable")
        if args.witness and v.witness:
            print("\n".join(v.witness))
        if args.countermodel and v.countermodel is not None:
            if isinstance(v.countermodel, dict):
                print(" ".join(f"{k}={'T' if b else 'F'}" for k, b in v.countermodel.items()))
            else:
                print(dumps_model(v.countermodel), end="")
    return EXIT_OK if v.derivable else EXIT_FAIL


def cmd_kripke(args) -> int:
    try:
        m = load_model(args.model)
    except (OSError, ModelError, ValueError) as e:
        _err(str(e))
        return EXIT_USAGE
    if len(m.worlds) > MAX_WORLDS or len(m.domain) > MAX_DOMAIN:
        _err(f"model too large (limits: {MAX_WORLDS} worlds, {MAX_DOMAIN} individuals)")
        return EXIT_USAGE
    if args.eval:
        try:
            world, kind, f = parse_eval_query(args.eval)
            if world not in m.worlds:
                raise ModelError(f"unknown world {world!r}")
            ev = Evaluator(m)
            value = ev.internal_j(world, f) if kind == "internal" else ev.strong(world, f, kind)
        except (ParseError, ModelError) as e:
            _err(str(e))
            return EXIT_USAGE
        if args.format == "records":
            print(_record(kind="forcing", world=world, relation=getattr(kind, "value", kind),
                          formula=pretty(f), value=value))
        else:
            print("true" if value else "false")
        return EXIT_OK if value else EXIT_FAIL
    if args.check == "section5":
        if not args.battery:
            _err("--check section5 needs --battery")
            return EXIT_USAGE
        try:
            with open(args.battery, encoding="utf-8") as fh:
                battery = read_formula_file(fh)
            rep = check_section5(m, battery)
        except (OSError, ParseError, ModelError) as e:
            _err(str(e))
            return EXIT_USAGE
        if args.format == "records":
            print(_record(kind="strong-forcing-check", counts=rep.counts, passed=rep.passed,
                          violations=[list(v) for v in rep.violations], skipped=rep.skipped))
        else:
            print(rep)
            for s in rep.skipped:
                print(f"skipped {s}")
        return EXIT_OK if rep.passed else EXIT_FAIL
    _err("kripke needs --eval or --check section5")
    return EXIT_USAGE


def cmd_nucleus_check(args) -> int:
    try:
        j = parse_nucleus(args.nucleus)
    except (ParseError, NucleusError) as e:
        _err(str(e))
        return EXIT_USAGE
    reports = [check_axioms(j, args.logic)]
    if args.lemma:
        reports.append(check_lemma_properties(j, args.logic))
    for rep in reports:
        if args.format == "records":
            print(_record(kind="nucleus-check", nucleus=j.name, logic=args.logic, passed=rep.passed,
                          items=[{"name": i.name, "status": i.status, "ok": i.ok,
                                  "formula": pretty(i.formula) if i.formula is not None else None}
                                 for i in rep.items]))
        else:
            print(rep)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _suite_config(args) -> SuiteConfig:
    seed = args.seed
    if os.environ.get("NUCLEUS_SEED"):
        seed = int(os.environ["NUCLEUS_SEED"])
    kw = {"seed": seed}
    for f in dataclasses.fields(SuiteConfig):
        v = getattr(args, f.name, None)
        if f.name != "seed" and v is not None:
            kw[f.name] = v
    return SuiteConfig(**kw)


def cmd_suite(args) -> int:
    try:
        cfg = _suite_config(args)
        for spec in cfg.nuclei:
            parse_nucleus(spec)
    except (ValueError, ParseError, NucleusError) as e:
        _err(str(e))
        return EXIT_USAGE
    # ids may carry a numeric grouping prefix such as "sec4-"; it is ignored
    claims = [re.sub(r"^sec\d+-", "", c.strip())
              for part in (args.claims or []) for c in part.split(",") if c.strip()]
    unknown = [c for c in claims if c not in CLAIMS]
    if unknown:
        _err(f"unknown claims {unknown}; known: {', '.join(CLAIMS)}")
        return EXIT_USAGE

    def show(r):
        if args.format == "records":
            print(r.record(), flush=True)
        else:
            print(r.line(), flush=True)
            for n in r.notes:
                print(f"    note: {n}")
            for fail in r.failures[:10]:
                print(f"    failure: {fail}")

    results = run_suite(cfg, claims or None, on_result=show)
    ok = all(r.passed for r in results)
    if args.format != "records":
        print(f"{sum(r.passed for r in results)}/{len(results)} claims pass")
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jtrans", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    logics = [x.value for x in Logic]

    def common(sp):
        sp.add_argument("--format", choices=["human", "records"], default="human")

    t = sub.add_parser("translate", help="translate formulas")
    t.add_argument("--scheme", choices=[s.value for s in Scheme], required=True)
    t.add_argument("--nucleus", required=True, help="dneg, dneg[A], or[A], from[A], peirce[A], template:<f>")
    t.add_argument("--logic", choices=logics, default="iqc")
    t.add_argument("formula", help="formula text or a file with one formula per line")
    common(t)
    t.set_defaults(func=cmd_translate)

    pr = sub.add_parser("prove", help="decide a propositional sequent")
    pr.add_argument("--logic", choices=logics, required=True)
    pr.add_argument("sequent", help='"h1; h2 |- c"')
    pr.add_argument("--witness", action="store_true")
    pr.add_argument("--countermodel", action="store_true")
    pr.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(pr)
    pr.set_defaults(func=cmd_prove)

    k = sub.add_parser("kripke", help="evaluate forcing in a finite model")
    k.add_argument("--model", required=True)
    k.add_argument("--eval", help='"<world> |-[s|c|j] <formula>"')
    k.add_argument("--check", choices=["section5"])
    k.add_argument("--battery")
    common(k)
    k.set_defaults(func=cmd_kripke)

    n = sub.add_parser("nucleus-check", help="check nucleus axioms (and lemma items)")
    n.add_argument("--nucleus", required=True)
    n.add_argument("--logic", choices=logics, default="iqc")
    n.add_argument("--lemma", action="store_true")
    common(n)
    n.set_defaults(func=cmd_nucleus_check)

    s = sub.add_parser("suite", help="run the claim suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--claims", action="append", help=f"comma-separated subset of: {', '.join(CLAIMS)}")
    s.add_argument("--nucleus", dest="nuclei", action="append", help="repeatable; replaces the default five")
    s.add_argument("--logic", dest="logics", action="append", choices=["mqc", "iqc"])
    for name in ("formulas", "max_depth", "atoms", "sequents", "models", "max_worlds", "max_domain",
                 "sentences", "cross_sequents", "budget"):
        s.add_argument("--" + name.replace("_", "-"), dest=name, type=int)
    common(s)
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
