"""Propositional decision procedures for classical, intuitionistic and minimal logic.

* CQC: truth tables, with ``_|_`` false.
* IQC: Dyckhoff's contraction-free calculus G4ip.  Left implication is split
  by the shape of its antecedent, so search terminates without loop checks.
  Invertible rules are applied first; the leftmost eligible formula (in
  printed-form order) is always chosen, which makes results reproducible.
* MQC: ``_|_`` is replaced by a reserved atom and the IQC procedure is run.

Refuted IQC/MQC sequents come with a finite Kripke countermodel, built from
prime theories over the subformulas of the sequent.  For MQC the reserved
atom is read back as falsum, so the model forces ``_|_`` at some worlds.
"""
from __future__ import annotations

import enum
import random
import sys
from dataclasses import dataclass, field
from typing import Mapping

from .formula import (
    BOTTOM, And, Atom, Bottom, Formula, Iff, Implies, Or, Sequent,
    is_propositional, pretty, subformulas,
)
from .kripke import KripkeModel

# G4ip recursion depth grows with formula weight
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_BUDGET = 10**6

# Not expressible in the text grammar, so it cannot clash with user atoms.
FALSUM_ATOM = Atom("_bot")


class Logic(str, enum.Enum):
    MQC = "mqc"
    IQC = "iqc"
    CQC = "cqc"


class OutOfFragment(ValueError):
    """The sequent is not propositional."""


class BudgetExceeded(RuntimeError):
    """Proof search visited more nodes than the budget allows."""


@dataclass(frozen=True)
class Proof:
    rule: str
    context: tuple[Formula, ...]
    goal: Formula
    premises: tuple[Proof, ...] = ()

    def trace(self) -> list[str]:
        out = []
        stack = [self]
        while stack:
            p = stack.pop()
            hyps = ", ".join(pretty(h) for h in p.context)
            out.append(f"{p.rule}: {hyps} |- {pretty(p.goal)}")
            stack.extend(reversed(p.premises))
        return out


@dataclass(frozen=True)
class Verdict:
    logic: Logic
    sequent: Sequent
    derivable: bool
    proof: Proof | None = field(default=None, repr=False)
    countermodel: KripkeModel | dict[str, bool] | None = field(default=None, repr=False)

    @property
    def witness(self) -> list[str] | None:
        if self.proof is None:
            if self.derivable and self.logic is Logic.CQC:
                return ["truth table: every row satisfies the sequent"]
            return None
        return self.proof.trace()


def _sorted(fs) -> tuple[Formula, ...]:
    return tuple(sorted(fs, key=lambda f: (len(f.key), f.key)))


class G4ip:
    """Memoising G4ip prover.  One instance may be reused across calls; the
    node budget applies to each top-level :meth:`prove` call."""

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self.nodes = 0
        self.memo: dict[tuple[frozenset, Formula], Proof | None] = {}
        self.tables = TruthTables()

    def prove(self, hyps, goal: Formula) -> Proof | None:
        self.nodes = 0
        hyps = frozenset(hyps)
        self.tables.cover(hyps | {goal})
        return self._prove(hyps, goal)

    def derives(self, hyps, goal: Formula) -> bool:
        return self.prove(hyps, goal) is not None

    def _prove(self, ctx: frozenset, goal: Formula) -> Proof | None:
        key = (ctx, goal)
        if key in self.memo:
            return self.memo[key]
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"more than {self.budget} search nodes")
        # classically invalid sequents are intuitionistically underivable
        res = self._search(ctx, goal) if self.tables.valid(ctx, goal) else None
        self.memo[key] = res
        return res

    def _step(self, rule, ctx, goal, premises):
        """Build a proof node if every premise ``(ctx, goal)`` is provable."""
        proofs = []
        for c, g in premises:
            p = self._prove(c, g)
            if p is None:
                return None
            proofs.append(p)
        return Proof(rule, _sorted(ctx), goal, tuple(proofs))

    def _search(self, ctx: frozenset, goal: Formula) -> Proof | None:
        if goal in ctx:
            return Proof("Ax", _sorted(ctx), goal)
        if BOTTOM in ctx:
            return Proof("L_|_", _sorted(ctx), goal)
        items = _sorted(ctx)

        # invertible, single premise, left
        for a in items:
            rest = ctx - {a}
            if isinstance(a, And):
                return self._step("L&", ctx, goal, [(rest | {a.left, a.right}, goal)])
            if isinstance(a, Implies):
                x, b = a.left, a.right
                if isinstance(x, Bottom):
                    return self._step("L_|_->", ctx, goal, [(rest, goal)])
                if x in ctx:
                    return self._step("L0->", ctx, goal, [(rest | {b}, goal)])
                if isinstance(x, And):
                    return self._step("L&->", ctx, goal, [(rest | {Implies(x.left, Implies(x.right, b))}, goal)])
                if isinstance(x, Or):
                    return self._step("L|->", ctx, goal,
                                      [(rest | {Implies(x.left, b), Implies(x.right, b)}, goal)])

        # invertible, right
        if isinstance(goal, Implies):
            return self._step("R->", ctx, goal, [(ctx | {goal.left}, goal.right)])
        if isinstance(goal, And):
            return self._step("R&", ctx, goal, [(ctx, goal.left), (ctx, goal.right)])

        # invertible, branching
        for a in items:
            if isinstance(a, Or):
                rest = ctx - {a}
                return self._step("L|", ctx, goal, [(rest | {a.left}, goal), (rest | {a.right}, goal)])

        # non-invertible: backtrack over the alternatives
        if isinstance(goal, Or):
            for rule, side in (("R|1", goal.left), ("R|2", goal.right)):
                p = self._step(rule, ctx, goal, [(ctx, side)])
                if p is not None:
                    return p
        for a in items:
            if isinstance(a, Implies) and isinstance(a.left, Implies):
                c, d, b = a.left.left, a.left.right, a.right
                rest = ctx - {a}
                p = self._step("L->->", ctx, goal, [(rest | {Implies(d, b)}, Implies(c, d)), (rest | {b}, goal)])
                if p is not None:
                    return p
        return None


# ---------------------------------------------------------------- CQC

class TruthTables:
    """Truth tables as bitmasks: bit ``r`` of a formula's mask is its value
    in row ``r`` of the table over the current atom universe."""

    def __init__(self):
        self.index: dict[str, int] = {}
        self.masks: dict[Formula, int] = {}
        self.full = 1

    def cover(self, fs) -> None:
        names = sorted({g.pred for f in fs for g in subformulas(f) if isinstance(g, Atom)} - set(self.index))
        if not names:
            return
        for n in names:
            self.index[n] = len(self.index)
        self.masks.clear()
        self.full = (1 << (1 << len(self.index))) - 1

    def mask(self, f: Formula) -> int:
        m = self.masks.get(f)
        if m is not None:
            return m
        if isinstance(f, Atom):
            i = self.index[f.pred]
            block = (1 << (1 << i)) - 1
            period = 1 << (i + 1)
            unit = block << (1 << i)
            m = 0
            for start in range(0, 1 << len(self.index), period):
                m |= unit << start
        elif isinstance(f, Bottom):
            m = 0
        elif isinstance(f, And):
            m = self.mask(f.left) & self.mask(f.right)
        elif isinstance(f, Or):
            m = self.mask(f.left) | self.mask(f.right)
        elif isinstance(f, Implies):
            m = (self.full & ~self.mask(f.left)) | self.mask(f.right)
        else:
            raise OutOfFragment(pretty(f))
        self.masks[f] = m
        return m

    def valid(self, ctx, goal: Formula) -> bool:
        m = self.full
        for h in ctx:
            m &= self.mask(h)
        return m & ~self.mask(goal) == 0


def _atom_names(fs) -> list[str]:
    return sorted({g.pred for f in fs for g in subformulas(f) if isinstance(g, Atom)})


def truth(f: Formula, val: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        return val[f.pred]
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return truth(f.left, val) and truth(f.right, val)
    if isinstance(f, Or):
        return truth(f.left, val) or truth(f.right, val)
    if isinstance(f, Implies):
        return not truth(f.left, val) or truth(f.right, val)
    raise OutOfFragment(pretty(f))


def classical_countermodel(s: Sequent, tables: TruthTables | None = None) -> dict[str, bool] | None:
    """First falsifying row of the truth table, or None if the sequent is valid."""
    tables = tables or TruthTables()
    tables.cover(s.formulas())
    m = tables.full
    for h in s.hypotheses:
        m &= tables.mask(h)
    bad = m & ~tables.mask(s.conclusion)
    if not bad:
        return None
    row = (bad & -bad).bit_length() - 1
    names = set(_atom_names(s.formulas()))
    return {n: bool(row >> i & 1) for n, i in tables.index.items() if n in names}


# ---------------------------------------------------------------- countermodels

def _bot_to_atom(f: Formula) -> Formula:
    if isinstance(f, Bottom):
        return FALSUM_ATOM
    if isinstance(f, (And, Or, Implies)):
        return type(f)(_bot_to_atom(f.left), _bot_to_atom(f.right))
    return f


def canonical_countermodel(prover: G4ip, s: Sequent, falsum: Atom | None = None) -> KripkeModel:
    """Kripke countermodel for an underivable propositional sequent.

    Worlds are prime theories over the subformulas: each is grown greedily
    from a base set while never deriving a designated formula.  A world
    lacking ``a -> b`` gets a refinement containing ``a`` but not ``b``.
    With ``falsum`` set, that atom is read back as ``_|_``.
    """
    sub = _sorted({g for f in s.formulas() for g in subformulas(f)})

    def extend(base: frozenset, avoid: Formula) -> frozenset:
        gamma = set(base)
        for chi in sub:
            if chi not in gamma and not prover.derives(gamma | {chi}, avoid):
                gamma.add(chi)
        return frozenset(gamma)

    root = extend(frozenset(s.hypotheses), s.conclusion)
    seen = {root: "w0"}
    queue = [root]
    while queue:
        gamma = queue.pop(0)
        for chi in sub:
            if isinstance(chi, Implies) and chi not in gamma:
                delta = extend(gamma | {chi.left}, chi.right)
                if delta not in seen:
                    seen[delta] = f"w{len(seen)}"
                    queue.append(delta)
    names = list(seen.values())
    order = [(seen[d], seen[g]) for g in seen for d in seen if g != d and g <= d]
    facts, bottom = [], []
    sig = {n: 0 for n in _atom_names(s.formulas())}
    for gamma, w in seen.items():
        for a in gamma:
            if isinstance(a, Atom):
                if a == falsum:
                    bottom.append(w)
                else:
                    facts.append((w, a.pred, ()))
    sig.pop(falsum.pred if falsum else None, None)
    return KripkeModel.build(names, order, (), facts, sig, bottom)


# ---------------------------------------------------------------- decide

def _check_fragment(s: Sequent) -> None:
    for f in s.formulas():
        if not is_propositional(f):
            raise OutOfFragment(f"not propositional: {pretty(f)}")
    for f in s.formulas():
        for g in subformulas(f):
            if g == FALSUM_ATOM:
                raise OutOfFragment("reserved atom _bot in input")


def decide(
    logic: Logic | str,
    s: Sequent,
    *,
    countermodel: bool = True,
    budget: int = DEFAULT_BUDGET,
    prover: G4ip | None = None,
) -> Verdict:
    """Decide ``s`` in ``logic``.

    Raises :class:`OutOfFragment` for quantified or predicate input and
    :class:`BudgetExceeded` when search runs past ``budget`` nodes.  Pass a
    shared ``prover`` to reuse its memo table across many calls.
    """
    logic = Logic(logic)
    _check_fragment(s)
    if prover is None:
        prover = G4ip(budget)
    else:
        prover.budget = budget
    work, falsum = s, None
    if logic is Logic.MQC:
        work = Sequent(map(_bot_to_atom, s.hypotheses), _bot_to_atom(s.conclusion))
        falsum = FALSUM_ATOM
    cm = classical_countermodel(work, prover.tables)
    if logic is Logic.CQC:
        return Verdict(logic, s, cm is None, countermodel=cm)
    # a classical countermodel refutes intuitionistically as well
    proof = None if cm is not None else prover.prove(work.hypotheses, work.conclusion)
    if proof is not None:
        return Verdict(logic, s, True, proof=proof)
    model = canonical_countermodel(prover, work, falsum) if countermodel else None
    return Verdict(logic, s, False, countermodel=model)


def check_equiv(logic: Logic | str, f: Formula, g: Formula, **kw) -> bool:
    return decide(logic, Sequent((), Iff(f, g)), countermodel=False, **kw).derivable


# ---------------------------------------------------------------- generation

ATOM_NAMES = ("P", "Q", "R", "S", "T", "U", "V", "W")

DEFAULT_WEIGHTS = {"atom": 4, "bottom": 1, "and": 2, "or": 2, "implies": 3, "not": 1}


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenConfig:
    atoms: int = 3
    max_depth: int = 4
    weights: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    seed: int = 0
    target: Logic = Logic.IQC
    max_hyps: int = 2
    attempts: int = 5000

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 1 <= self.atoms <= len(ATOM_NAMES):
            raise ValueError(f"atoms must be in 1..{len(ATOM_NAMES)}")
        if any(w < 0 for w in self.weights.values()) or not any(self.weights.values()):
            raise ValueError("weights must be nonnegative and not all zero")
        unknown = set(self.weights) - set(DEFAULT_WEIGHTS)
        if unknown:
            raise ValueError(f"unknown connective weights {sorted(unknown)}")
        object.__setattr__(self, "target", Logic(self.target))


def random_formula(rng: random.Random, cfg: GenConfig, depth: int | None = None) -> Formula:
    """Random propositional formula of depth at most ``cfg.max_depth``."""
    depth = cfg.max_depth if depth is None else depth
    names = ATOM_NAMES[:cfg.atoms]
    w = cfg.weights
    leaf = [("atom", w.get("atom", 0)), ("bottom", w.get("bottom", 0))]
    if depth <= 1 or not any(w.get(k, 0) for k in ("and", "or", "implies", "not")):
        kinds = leaf if any(x for _, x in leaf) else [("atom", 1)]
    else:
        kinds = leaf + [(k, w.get(k, 0)) for k in ("and", "or", "implies", "not")]
    kind = rng.choices([k for k, _ in kinds], [x for _, x in kinds])[0]
    if kind == "atom":
        return Atom(rng.choice(names))
    if kind == "bottom":
        return BOTTOM
    if kind == "not":
        return Implies(random_formula(rng, cfg, depth - 1), BOTTOM)
    cls = {"and": And, "or": Or, "implies": Implies}[kind]
    return cls(random_formula(rng, cfg, depth - 1), random_formula(rng, cfg, depth - 1))


def random_sequent(rng: random.Random, cfg: GenConfig) -> Sequent:
    hyps = [random_formula(rng, cfg) for _ in range(rng.randint(0, cfg.max_hyps))]
    return Sequent(hyps, random_formula(rng, cfg))


def random_derivable_sequent(cfg: GenConfig, prover: G4ip | None = None) -> Sequent:
    """A sequent derivable in ``cfg.target``, by rejection sampling.

    Deterministic for a fixed ``cfg.seed``.
    """
    rng = random.Random(cfg.seed)
    prover = prover or G4ip()
    for _ in range(cfg.attempts):
        s = random_sequent(rng, cfg)
        try:
            if decide(cfg.target, s, countermodel=False, prover=prover).derivable:
                return s
        except BudgetExceeded:
            continue
    raise GenerationError(f"no {cfg.target.value}-derivable sequent in {cfg.attempts} attempts")
