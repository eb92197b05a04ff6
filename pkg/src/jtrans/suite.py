"""The claim suite: every provability and forcing claim, checked on seeded batteries.

Each check returns a :class:`ClaimResult`.  :func:`run_suite` runs a
selection of them in a fixed order, so reports are reproducible for a fixed
:class:`SuiteConfig`.
"""
from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from .formula import (
    BOTTOM, And, Atom, Forall, Formula, Iff, Implies, Not, Or, Sequent,
    alpha_eq, normalize, subformulas,
)
from .kripke import (
    KripkeModel, StrongForcingReport, check_strong_forcing, random_model,
    random_sentence, refuting_world,
)
from .nucleus import (
    Nucleus, check_axioms, check_lemma_properties, dneg,
    implication_commutation, model_battery, or_a, parse_nucleus, relativized_dneg,
)
from .prover import (
    BudgetExceeded, G4ip, GenConfig, GenerationError, Logic, TruthTables,
    decide, random_derivable_sequent, random_formula, random_sequent,
)
from .translate import (
    Scheme, classic_kuroda, gg_translate, kuroda_inner, kuroda_translate,
    translate_sequent,
)

RECORD_VERSION = 1


@dataclass
class SuiteConfig:
    seed: int = 0
    formulas: int = 200
    max_depth: int = 6
    atoms: int = 4
    sequents: int = 100
    sequent_depth: int = 4
    sequent_atoms: int = 3
    models: int = 20
    max_worlds: int = 6
    max_domain: int = 3
    sentences: int = 50
    sentence_depth: int = 5
    cross_sequents: int = 300
    glivenko: int = 50
    coherent_depth: int = 3
    nuclei: list[str] = field(default_factory=lambda: ["dneg", "dneg[A]", "or[A]", "from[A]", "peirce[A]"])
    logics: list[str] = field(default_factory=lambda: ["mqc", "iqc"])
    budget: int = 10**6

    def __post_init__(self):
        for name in ("formulas", "max_depth", "atoms", "sequents", "sequent_depth", "sequent_atoms",
                     "models", "max_worlds", "max_domain", "sentences", "sentence_depth",
                     "cross_sequents", "glivenko", "coherent_depth", "budget"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not self.nuclei or not self.logics:
            raise ValueError("need at least one nucleus and one logic")
        self.logics = [Logic(x).value for x in self.logics]

    def nucleus_objects(self) -> list[Nucleus]:
        return [parse_nucleus(s) for s in self.nuclei]


@dataclass
class ClaimResult:
    id: str
    title: str
    statement: str
    passed: bool
    checked: int
    failures: list[str]
    seconds: float
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.id}: {self.title} -- {self.checked} checks, "
                f"{len(self.failures)} failures, {self.seconds:.1f}s")

    def record(self) -> str:
        d = asdict(self)
        d["v"] = RECORD_VERSION
        # timings vary between runs; records must be byte-identical
        del d["seconds"]
        d["failures"] = self.failures[:50]
        return json.dumps(d, sort_keys=True, ensure_ascii=False)


class _Tally:
    def __init__(self):
        self.checked = 0
        self.failures: list[str] = []
        self.notes: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(what)

    def derivable(self, logic, s: Sequent, what: str, prover: G4ip | None = None, budget: int = 10**6) -> bool:
        try:
            ok = decide(logic, s, countermodel=False, prover=prover, budget=budget).derivable
        except BudgetExceeded:
            self.check(False, f"budget exceeded: {what}")
            return False
        self.check(ok, what)
        return ok


# ---------------------------------------------------------------- batteries

def formula_battery(cfg: SuiteConfig) -> list[Formula]:
    rng = random.Random(cfg.seed)
    gen = GenConfig(atoms=cfg.atoms, max_depth=cfg.max_depth)
    return [random_formula(rng, gen) for _ in range(cfg.formulas)]


def derivable_battery(cfg: SuiteConfig, logic: Logic | str, count: int | None = None,
                      max_hyps: int = 2, salt: int = 0) -> list[Sequent]:
    """``count`` sequents derivable in ``logic``, one per derived seed."""
    logic = Logic(logic)
    prover = G4ip(cfg.budget)
    out = []
    base = (cfg.seed * 7919 + salt) * 100003 + {"mqc": 1, "iqc": 2, "cqc": 3}[logic.value] * 10007
    for i in range(count or cfg.sequents):
        gen = GenConfig(atoms=cfg.sequent_atoms, max_depth=cfg.sequent_depth, seed=base + i,
                        target=logic, max_hyps=max_hyps)
        out.append(random_derivable_sequent(gen, prover))
    return out


def kripke_battery(cfg: SuiteConfig, signature: dict[str, int], minimal: bool = False,
                   salt: int = 0) -> list[KripkeModel]:
    rng = random.Random(cfg.seed * 31 + salt)
    return [random_model(rng, cfg.max_worlds, cfg.max_domain, signature, minimal=minimal)
            for _ in range(cfg.models)]


def coherent_formulas(depth: int, names=("P", "Q")) -> list[Formula]:
    """Every formula over ``names`` and ``_|_`` built with ``&`` and ``|``
    of depth at most ``depth``."""
    leaves = [Atom(n) for n in names] + [BOTTOM]
    level = list(leaves)
    for _ in range(depth - 1):
        level = leaves + [c(a, b) for c in (And, Or) for a in level for b in level]
    return level


# ---------------------------------------------------------------- claims

def claim_nucleus_axioms(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    for j in cfg.nucleus_objects():
        for logic in cfg.logics:
            rep = check_axioms(j, logic)
            for item in rep.items:
                t.check(item.ok, f"{j.name} over {logic}: {item.name} axiom {item.status}: {item.formula}")
    return ClaimResult("nucleus-axioms", "the example nuclei satisfy the nucleus axioms",
                       "|- p -> jp;  |- j(p & q) <-> jp & jq;  |- (p -> jq) -> (jp -> jq);  "
                       "(jp)[t/x] = j(p[t/x])",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start)


def claim_lemma(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    for j in cfg.nucleus_objects():
        for logic in cfg.logics:
            models = model_battery(j, logic, count=cfg.models, seed=cfg.seed,
                                   max_worlds=cfg.max_worlds, max_domain=cfg.max_domain)
            rep = check_lemma_properties(j, logic, models)
            for item in rep.items:
                t.check(item.ok, f"{j.name} over {logic}: {item.name} {item.status} {item.detail}")
    t.notes.append("quantifier items are confirmed on finite models only")
    return ClaimResult("nucleus-lemma", "derived properties of nuclei",
                       "(p -> q) -> (jp -> jq);  jp <-> jjp;  j(p -> jq) <-> (jp -> jq);  "
                       "j(jp | jq) <-> j(p | q);  j(exists x. j phi) <-> j(exists x. phi);  "
                       "j(forall x. j phi) <-> forall x. j phi",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start, t.notes)


def claim_gg_idempotent(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    fs = formula_battery(cfg)
    for j in cfg.nucleus_objects():
        for logic in cfg.logics:
            pr = G4ip(cfg.budget)
            for f in fs:
                g = gg_translate(f, j)
                t.derivable(logic, Sequent((), Iff(j(g), g)), f"{j.name}/{logic}: j(gg) <-> gg for {f}", pr, cfg.budget)
    return ClaimResult("gg-idempotent", "GG translations are j-stable", "|- j(phi^j) <-> phi^j",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start)


def claim_equivalence(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    fs = formula_battery(cfg)
    for j in cfg.nucleus_objects():
        for logic in cfg.logics:
            pr = G4ip(cfg.budget)
            for f in fs:
                s = Sequent((), Iff(gg_translate(f, j), kuroda_translate(f, j)))
                t.derivable(logic, s, f"{j.name}/{logic}: gg <-> kuroda for {f}", pr, cfg.budget)
    return ClaimResult("gg-kuroda-equivalence", "GG and Kuroda-style translations are equivalent",
                       "|- phi^j <-> phi_j", not t.failures, t.checked, t.failures, time.perf_counter() - start)


def claim_preservation(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    for logic in cfg.logics:
        seqs = derivable_battery(cfg, logic)
        for j in cfg.nucleus_objects():
            pr = G4ip(cfg.budget)
            for s in seqs:
                for scheme in (Scheme.GG, Scheme.KURODA):
                    ts = translate_sequent(s, scheme, j)
                    t.derivable(logic, ts, f"{j.name}/{logic}/{scheme.value}: {s} -> {ts}", pr, cfg.budget)
    return ClaimResult("preservation", "translations preserve derivability",
                       "G |- psi  implies  G^j |- psi^j  and  J(G) |- psi_j",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start)


def claim_specific_nuclei(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    classical = derivable_battery(cfg, Logic.CQC)
    intuitionistic = derivable_battery(cfg, Logic.IQC, salt=1)
    cases = [
        (relativized_dneg("A"), classical, Logic.IQC),
        (dneg(), classical, Logic.MQC),
        (or_a(BOTTOM), intuitionistic, Logic.MQC),
    ]
    for j, seqs, target in cases:
        pr = G4ip(cfg.budget)
        for s in seqs:
            for scheme in (Scheme.GG, Scheme.KURODA):
                ts = translate_sequent(s, scheme, j)
                t.derivable(target, ts, f"{j.name} into {target.value}/{scheme.value}: {s}", pr, cfg.budget)
    return ClaimResult("specific-nuclei", "stronger logics translate into weaker ones",
                       "CQC into IQC by (p -> A) -> A;  CQC into MQC by ~~p;  IQC into MQC by p | _|_",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start)


def claim_commutation(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    j = dneg()
    iqc = implication_commutation(j, Logic.IQC)
    t.check(iqc.derivable, "dneg should commute with implication over IQC")
    mqc = implication_commutation(j, Logic.MQC)
    t.check(not mqc.derivable, "dneg should not commute with implication over MQC")
    cm = mqc.countermodel
    world = refuting_world(cm, mqc.sequent) if cm is not None else None
    t.check(world is not None, "the MQC countermodel must refute the commutation formula")
    if world is not None:
        t.notes.append(f"MQC countermodel: {len(cm.worlds)} worlds, refuted at {world}, _|_ forced at "
                       f"{sorted(cm.bottom)}")
    # where commutation holds, the classic Kuroda clause gives an equivalent translation
    fs = formula_battery(cfg)[: max(1, cfg.formulas // 4)]
    for jj in cfg.nucleus_objects():
        for logic in cfg.logics:
            if implication_commutation(jj, logic).derivable:
                pr = G4ip(cfg.budget)
                for f in fs:
                    s = Sequent((), Iff(classic_kuroda(f, jj), gg_translate(f, jj)))
                    t.derivable(logic, s, f"{jj.name}/{logic}: classic kuroda <-> gg for {f}", pr, cfg.budget)
    return ClaimResult("commutation", "double negation commutes with implication intuitionistically only",
                       "IQC |- ~~(p -> q) <-> (~~p -> ~~q);  MQC does not",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start, t.notes)


def claim_coherent(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    fs = coherent_formulas(cfg.coherent_depth)
    tables = TruthTables()
    tables.cover(fs)
    masks = [tables.mask(f) for f in fs]
    pr = G4ip(cfg.budget)
    for i, f in enumerate(fs):
        for k, g in enumerate(fs):
            if masks[i] & ~masks[k] == 0:
                t.derivable(Logic.IQC, Sequent((f,), g), f"{f} |- {g}", pr, cfg.budget)
    t.notes.append(f"{len(fs)} coherent formulas, {len(fs) ** 2} pairs")
    return ClaimResult("coherent", "classical logic is conservative over IQC for coherent sequents",
                       "phi |-CQC psi  implies  phi |-IQC psi  for phi, psi without -> and forall",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start, t.notes)


def claim_johansson(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    j = or_a(BOTTOM)
    pr = G4ip(cfg.budget)
    for s in derivable_battery(cfg, Logic.IQC, max_hyps=0, salt=2):
        phi = s.conclusion
        t.derivable(Logic.MQC, Sequent((), kuroda_inner(phi, j)), f"MQC |- J({phi})", pr, cfg.budget)
    return ClaimResult("johansson", "IQC theorems have minimal-logic J-translations",
                       "IQC |- phi  implies  MQC |- J(phi)  for j p = p | _|_",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start)


def _no_imp_forall(f: Formula) -> bool:
    return not any(isinstance(g, (Implies, Forall)) for g in subformulas(f))


def claim_shape(cfg: SuiteConfig) -> ClaimResult:
    t, start = _Tally(), time.perf_counter()
    j = dneg()
    gen = GenConfig(atoms=cfg.atoms, max_depth=cfg.max_depth,
                    weights={"atom": 4, "bottom": 1, "and": 2, "or": 2, "implies": 0, "not": 0})
    rng = random.Random(cfg.seed + 5)
    for _ in range(cfg.formulas):
        f = random_formula(rng, gen)
        t.check(_no_imp_forall(f) and alpha_eq(kuroda_translate(f, j), Not(Not(f))),
                f"kuroda(dneg) of {f} is not ~~({f})")
    return ClaimResult("kuroda-shape", "on formulas without -> and forall, Kuroda(dneg) is a single outer ~~",
                       "phi_j = ~~phi when phi has no -> or forall",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start)


def claim_strong_forcing(cfg: SuiteConfig) -> ClaimResult:
    start = time.perf_counter()
    rng = random.Random(cfg.seed * 13 + 5)
    sig = {"P": 0, "Q": 0, "R": 1, "S": 1}
    total = StrongForcingReport()
    failures = []
    for mi in range(cfg.models):
        m = random_model(rng, cfg.max_worlds, cfg.max_domain, sig)
        battery = [normalize(random_sentence(rng, sig, cfg.sentence_depth)) for _ in range(cfg.sentences)]
        rep = check_strong_forcing(m, battery)
        total.merge(rep)
        failures += [f"model {mi}: item ({k}) fails at {w} for {f}" for k, w, f in rep.violations]
    checked = sum(total.counts.values())
    return ClaimResult("strong-forcing", "strong forcing, its shortened and Cohen variants, internal j",
                       "p |-s phi iff p |- J phi;  p |- phi^j iff (forall q <= p)(exists r <= q) r |-s phi;  "
                       "internal j = ~~",
                       not failures, checked, failures, time.perf_counter() - start,
                       [f"({k}) {v} instances" for k, v in total.counts.items()])


def cross_validate(cfg: SuiteConfig) -> ClaimResult:
    """Prover verdicts against finite models, logic inclusion, determinism."""
    t, start = _Tally(), time.perf_counter()
    rng = random.Random(cfg.seed * 17 + 3)
    gen = GenConfig(atoms=cfg.sequent_atoms, max_depth=cfg.sequent_depth)
    sig = {n: 0 for n in ("P", "Q", "R", "S", "T", "U", "V", "W")[:cfg.sequent_atoms]}
    iqc_models = kripke_battery(cfg, sig, salt=1)
    mqc_models = kripke_battery(cfg, sig, minimal=True, salt=2)
    pr = G4ip(cfg.budget)
    for _ in range(cfg.cross_sequents):
        s = random_sequent(rng, gen)
        verdicts = {}
        for logic, models in ((Logic.IQC, iqc_models), (Logic.MQC, mqc_models)):
            v = decide(logic, s, prover=pr, budget=cfg.budget)
            verdicts[logic] = v.derivable
            if v.derivable:
                for mi, m in enumerate(models):
                    t.check(refuting_world(m, s) is None, f"{logic.value}-derivable {s} refuted in model {mi}")
            else:
                t.check(v.countermodel is not None and refuting_world(v.countermodel, s) is not None,
                        f"{logic.value} countermodel does not refute {s}")
        verdicts[Logic.CQC] = decide(Logic.CQC, s).derivable
        t.check(not verdicts[Logic.MQC] or verdicts[Logic.IQC], f"MQC but not IQC: {s}")
        t.check(not verdicts[Logic.IQC] or verdicts[Logic.CQC], f"IQC but not CQC: {s}")
        again = decide(Logic.IQC, s, budget=cfg.budget)
        t.check(again.derivable == verdicts[Logic.IQC] and
                (again.witness == decide(Logic.IQC, s, budget=cfg.budget).witness),
                f"nondeterministic verdict for {s}")
    # double-negated classical tautologies are intuitionistic theorems
    for i in range(cfg.glivenko):
        g = GenConfig(atoms=cfg.sequent_atoms, max_depth=cfg.sequent_depth, seed=cfg.seed * 1009 + i,
                      target=Logic.CQC, max_hyps=0)
        phi = random_derivable_sequent(g, pr).conclusion
        t.derivable(Logic.IQC, Sequent((), Not(Not(phi))), f"IQC |- ~~({phi})", pr, cfg.budget)
    return ClaimResult("prover-cross-check", "prover verdicts agree with finite Kripke models",
                       "countermodels refute; derivable sequents hold in every model; MQC <= IQC <= CQC",
                       not t.failures, t.checked, t.failures, time.perf_counter() - start)


CLAIMS: dict[str, Callable[[SuiteConfig], ClaimResult]] = {
    "nucleus-axioms": claim_nucleus_axioms,
    "nucleus-lemma": claim_lemma,
    "gg-idempotent": claim_gg_idempotent,
    "gg-kuroda-equivalence": claim_equivalence,
    "preservation": claim_preservation,
    "specific-nuclei": claim_specific_nuclei,
    "commutation": claim_commutation,
    "coherent": claim_coherent,
    "johansson": claim_johansson,
    "kuroda-shape": claim_shape,
    "strong-forcing": claim_strong_forcing,
    "prover-cross-check": cross_validate,
}


def run_suite(cfg: SuiteConfig, claims: list[str] | None = None,
              on_result: Callable[[ClaimResult], None] | None = None) -> list[ClaimResult]:
    ids = list(CLAIMS) if not claims else claims
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claims {unknown}; known: {', '.join(CLAIMS)}")
    out = []
    for cid in ids:
        try:
            res = CLAIMS[cid](cfg)
        except (BudgetExceeded, GenerationError) as e:
            res = ClaimResult(cid, cid, "", False, 0, [f"{type(e).__name__}: {e}"], 0.0)
        out.append(res)
        if on_result:
            on_result(res)
    return out
