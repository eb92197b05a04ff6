"""Nuclei as formula templates with a hole, plus axiom and lemma checks.

A nucleus is stored as a template formula containing the reserved atom
``HOLE``; applying it plugs a formula into every hole.  Parameters such as
the sentence ``A`` in ``(HOLE -> A) -> A`` must be closed, which makes
substitution commute with application by construction.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .formula import (
    BOTTOM, And, Atom, Box, Const, Exists, Forall, Formula, Iff, Implies, Or,
    Sequent, Var, alpha_eq, atoms, free_vars, normalize, parse, predicates,
    pretty, replace_atom, substitute,
)
from .kripke import Evaluator, KripkeModel, random_model
from .prover import BudgetExceeded, Logic, OutOfFragment, Verdict, decide

HOLE = Atom("HOLE")


class NucleusError(ValueError):
    pass


@dataclass(frozen=True)
class Nucleus:
    name: str
    template: Formula
    param: Formula | None = None

    def __post_init__(self):
        if HOLE not in atoms(self.template):
            raise NucleusError(f"template {pretty(self.template)} has no HOLE")
        if free_vars(self.template):
            raise NucleusError(f"template {pretty(self.template)} has free variables "
                               f"{sorted(free_vars(self.template))}")

    def __call__(self, f: Formula) -> Formula:
        return apply(self, f)

    def __str__(self) -> str:
        return self.name


def apply(j: Nucleus, f: Formula) -> Formula:
    return replace_atom(j.template, HOLE, f)


def _sentence(a: Formula | str) -> Formula:
    a = parse(a) if isinstance(a, str) else normalize(a)
    if free_vars(a):
        raise NucleusError(f"parameter {pretty(a)} is not a sentence")
    if HOLE in atoms(a):
        raise NucleusError("parameter may not mention HOLE")
    return a


def dneg() -> Nucleus:
    return Nucleus("dneg", Implies(Implies(HOLE, BOTTOM), BOTTOM), BOTTOM)


def relativized_dneg(a: Formula | str) -> Nucleus:
    a = _sentence(a)
    return Nucleus(f"dneg[{pretty(a)}]", Implies(Implies(HOLE, a), a), a)


def or_a(a: Formula | str) -> Nucleus:
    a = _sentence(a)
    return Nucleus(f"or[{pretty(a)}]", Or(HOLE, a), a)


def implies_from_a(a: Formula | str) -> Nucleus:
    a = _sentence(a)
    return Nucleus(f"from[{pretty(a)}]", Implies(a, HOLE), a)


def peirce_a(a: Formula | str) -> Nucleus:
    a = _sentence(a)
    return Nucleus(f"peirce[{pretty(a)}]", Implies(Implies(HOLE, a), HOLE), a)


def template(f: Formula | str, name: str | None = None) -> Nucleus:
    f = parse(f) if isinstance(f, str) else normalize(f)
    return Nucleus(name or f"template:{pretty(f)}", f)


# The dense-below operator of a Kripke model, as a formal nucleus.
INTERNAL_J = Nucleus("internal-j", Box(HOLE))


def builtin(kind: str, a: Formula | str | None = None) -> Nucleus:
    """One of ``dneg``, ``relativized_dneg``, ``or_A``, ``implies_from_A``,
    ``peirce_A``; the last four take the sentence ``a``."""
    makers = {"relativized_dneg": relativized_dneg, "or_A": or_a,
              "implies_from_A": implies_from_a, "peirce_A": peirce_a}
    if kind == "dneg":
        return dneg() if a is None else relativized_dneg(a)
    if kind not in makers:
        raise NucleusError(f"unknown nucleus kind {kind!r}")
    if a is None:
        raise NucleusError(f"{kind} needs a sentence parameter")
    return makers[kind](a)


def builtins(a: Formula | str = "A") -> list[Nucleus]:
    """The five example nuclei, with parameter ``a``."""
    return [dneg(), relativized_dneg(a), or_a(a), implies_from_a(a), peirce_a(a)]


_SPEC = re.compile(r"^(dneg|or|from|peirce)(?:\[(.*)\])?$", re.S)


def parse_nucleus(spec: str) -> Nucleus:
    """``dneg``, ``dneg[A]``, ``or[A]``, ``from[A]``, ``peirce[A]`` or
    ``template:<formula mentioning HOLE>``."""
    spec = spec.strip()
    if spec.startswith("template:"):
        return template(spec[len("template:"):])
    m = _SPEC.match(spec)
    if not m:
        raise NucleusError(f"bad nucleus spec {spec!r}")
    kind, a = m.groups()
    if kind == "dneg":
        return dneg() if a is None else relativized_dneg(a)
    if a is None:
        raise NucleusError(f"{kind}[A] needs a sentence A")
    return {"or": or_a, "from": implies_from_a, "peirce": peirce_a}[kind](a)


# ---------------------------------------------------------------- checks

@dataclass
class ItemResult:
    name: str
    formula: Formula | None
    status: str  # derivable | not derivable | out-of-fragment | budget | syntactic | semantic
    ok: bool
    verdict: Verdict | None = field(default=None, repr=False)
    detail: str = ""

    def line(self) -> str:
        f = f"  {pretty(self.formula)}" if self.formula is not None else ""
        extra = f"  ({self.detail})" if self.detail else ""
        return f"[{'ok' if self.ok else 'FAIL'}] {self.name}: {self.status}{extra}{f}"


@dataclass
class AxiomReport:
    nucleus: Nucleus
    logic: Logic
    items: list[ItemResult]

    @property
    def passed(self) -> bool:
        return all(i.ok for i in self.items)

    def failures(self) -> list[ItemResult]:
        return [i for i in self.items if not i.ok]

    def __str__(self) -> str:
        head = f"nucleus {self.nucleus.name} over {self.logic.value.upper()}: {'pass' if self.passed else 'FAIL'}"
        return "\n".join([head] + ["  " + i.line() for i in self.items])


def fresh_atoms(j: Nucleus, n: int, base: str = "P") -> list[Atom]:
    taken = {a.pred for a in atoms(j.template)}
    out, k = [], 0
    while len(out) < n:
        name = f"{base}{k}"
        if name not in taken:
            out.append(Atom(name))
        k += 1
    return out


def _decide_item(name: str, f: Formula, logic: Logic) -> ItemResult:
    try:
        v = decide(logic, Sequent((), f))
    except OutOfFragment:
        return ItemResult(name, f, "out-of-fragment", False)
    except BudgetExceeded:
        return ItemResult(name, f, "budget", False)
    return ItemResult(name, f, "derivable" if v.derivable else "not derivable", v.derivable, v)


def substitution_item(j: Nucleus) -> ItemResult:
    """``(jf)[t/x]`` against ``j(f[t/x])`` for ``f = R(x)``, both as a
    constant and as a variable that a binder might capture."""
    taken = {a.pred for a in atoms(j.template)}
    pred = next(f"R{k}" for k in range(10**6) if f"R{k}" not in taken)
    f = Atom(pred, (Var("x"),))
    ok = True
    for t in (Const("c"), Var("y"), Var("x")):
        lhs = substitute(apply(j, f), "x", t)
        rhs = apply(j, substitute(f, "x", t))
        ok = ok and alpha_eq(lhs, rhs)
    return ItemResult("substitution", apply(j, f), "syntactic", ok,
                      detail="(j phi)[t/x] alpha-equal to j(phi[t/x])")


def check_axioms(j: Nucleus, logic: Logic | str) -> AxiomReport:
    """The four nucleus axioms, instantiated at fresh atoms ``p, q``."""
    logic = Logic(logic)
    p, q = fresh_atoms(j, 2)
    items = [
        _decide_item("inflation", Implies(p, apply(j, p)), logic),
        _decide_item("meet", Iff(apply(j, And(p, q)), And(apply(j, p), apply(j, q))), logic),
        _decide_item("multiplication", Implies(Implies(p, apply(j, q)), Implies(apply(j, p), apply(j, q))), logic),
        substitution_item(j),
    ]
    return AxiomReport(j, logic, items)


def lemma_formulas(j: Nucleus, p: Formula, q: Formula) -> dict[str, Formula]:
    """The four propositional lemma displays at ``p, q``."""
    jp, jq = apply(j, p), apply(j, q)
    return {
        "monotone": Implies(Implies(p, q), Implies(jp, jq)),
        "idempotent": Iff(jp, apply(j, jp)),
        "implication": Iff(apply(j, Implies(p, jq)), Implies(jp, jq)),
        "join": Iff(apply(j, Or(jp, jq)), apply(j, Or(p, q))),
    }


def quantifier_lemma_formulas(j: Nucleus, phi: Formula, x: str = "x") -> dict[str, Formula]:
    """``j(exists x. j phi) <-> j(exists x. phi)`` and
    ``j(forall x. j phi) <-> forall x. j phi``."""
    jphi = apply(j, phi)
    return {
        "exists": normalize(Iff(apply(j, Exists(x, jphi)), apply(j, Exists(x, phi)))),
        "forall": normalize(Iff(apply(j, Forall(x, jphi)), Forall(x, jphi))),
    }


def model_battery(j: Nucleus, logic: Logic | str, count: int = 20, seed: int = 0,
                  max_worlds: int = 6, max_domain: int = 3) -> list[KripkeModel]:
    """Random models over the signature of ``j`` plus a unary ``R0`` and ``S0``.

    Minimal-logic batteries force falsum at some worlds; classical batteries
    use one-world models.
    """
    logic = Logic(logic)
    sig = {**predicates(j.template), "R0": 1, "S0": 0}
    sig.pop(HOLE.pred, None)
    rng = random.Random(seed)
    return [random_model(rng, 1 if logic is Logic.CQC else max_worlds, max_domain, sig,
                         minimal=logic is Logic.MQC) for _ in range(count)]


def check_lemma_properties(
    j: Nucleus,
    logic: Logic | str,
    models: list[KripkeModel] | None = None,
) -> AxiomReport:
    """Propositional lemma items by the prover; quantifier items on models.

    Quantifier items are only ever reported as semantically confirmed or
    refuted, never as derivable.
    """
    logic = Logic(logic)
    p, q = fresh_atoms(j, 2)
    items = [_decide_item(name, f, logic) for name, f in lemma_formulas(j, p, q).items()]
    if models is None:
        models = model_battery(j, logic)
    instances = [Atom("R0", (Var("x"),)), Or(Atom("R0", (Var("x"),)), Atom("S0")),
                 Implies(Atom("S0"), Atom("R0", (Var("x"),)))]
    for name in ("exists", "forall"):
        bad = None
        for phi in instances:
            f = quantifier_lemma_formulas(j, phi)[name]
            for mi, m in enumerate(models):
                ev = Evaluator(m)
                w = next((w for w in m.worlds if not ev.forces(w, f)), None)
                if w is not None:
                    bad = f"model {mi}, world {w}, phi = {pretty(phi)}"
                    break
            if bad:
                break
        items.append(ItemResult(name, quantifier_lemma_formulas(j, instances[0])[name],
                                "semantically refuted" if bad else "semantically confirmed",
                                bad is None, detail=bad or f"{len(models)} models, {len(instances)} instances"))
    return AxiomReport(j, logic, items)


def implication_commutation(j: Nucleus, logic: Logic | str) -> Verdict:
    """Verdict for ``j(p -> q) <-> (jp -> jq)`` at fresh atoms."""
    p, q = fresh_atoms(j, 2)
    f = Iff(apply(j, Implies(p, q)), Implies(apply(j, p), apply(j, q)))
    return decide(logic, Sequent((), f))


def commutes_with_implication(j: Nucleus, logic: Logic | str) -> bool:
    return implication_commutation(j, logic).derivable
