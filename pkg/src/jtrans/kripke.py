"""Finite Kripke models with constant domains.

Worlds are ordered by ``q <= p``, read "q refines p"; forcing is inherited
downwards.  Besides plain forcing the module evaluates

* the internal nucleus ``p |- [j]f  iff  for all q <= p there is r <= q with r |- f``;
* strong forcing ``|-s``, whose implication and universal clauses quantify
  densely below the current world, and Cohen's variant with the plain
  implication clause.

A model may force ``_|_`` on a downward-closed set of worlds.  That set is
empty for intuitionistic models; nonempty sets give models of minimal logic,
where falsum is an arbitrary proposition.

Model file format::

    # comment
    worlds: p, q
    order: q <= p
    domain: c, d
    predicates: P/0, R/1      # optional; otherwise inferred from the facts
    q: P R(c)
    q: _|_                    # falsum forced at q (minimal-logic models)
"""
from __future__ import annotations

import enum
import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .formula import (
    BOTTOM, And, Atom, Bottom, Box, Const, Exists, Forall, Formula, Func,
    Implies, Or, ParseError, Sequent, Var, Binary, _Parser, normalize,
)


class ModelError(ValueError):
    pass


class ForcingKind(enum.Enum):
    PLAIN = "plain"
    STRONG = "strong"
    COHEN = "cohen"
    # strong forcing with the shortened implication clause
    SIMPLIFIED = "simplified"


@dataclass(frozen=True)
class KripkeModel:
    worlds: tuple[str, ...]
    leq: frozenset[tuple[str, str]]
    domain: tuple[str, ...]
    valuation: Mapping[str, frozenset[tuple[str, tuple[str, ...]]]]
    signature: Mapping[str, int]
    bottom: frozenset[str] = frozenset()
    below: Mapping[str, tuple[str, ...]] = field(default=None, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        worlds: Iterable[str],
        order: Iterable[tuple[str, str]] = (),
        domain: Iterable[str] = (),
        facts: Iterable[tuple[str, str, tuple[str, ...]]] = (),
        signature: Mapping[str, int] | None = None,
        bottom: Iterable[str] = (),
        close: bool = False,
    ) -> KripkeModel:
        """Validate and assemble a model.

        ``order`` holds pairs ``(q, p)`` meaning ``q <= p``; the reflexive
        transitive closure is taken.  ``facts`` are ``(world, pred, args)``.
        With ``close=False`` a non-monotone valuation is rejected; with
        ``close=True`` facts are propagated downwards instead.
        """
        worlds = tuple(dict.fromkeys(worlds))
        wset = set(worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        domain = tuple(dict.fromkeys(domain))
        leq = {(w, w) for w in worlds}
        for q, p in order:
            for w in (q, p):
                if w not in wset:
                    raise ModelError(f"unknown world {w!r} in order")
            leq.add((q, p))
        changed = True
        while changed:
            new = {(a, d) for (a, b) in leq for (c, d) in leq if b == c} - leq
            changed = bool(new)
            leq |= new
        for q, p in leq:
            if q != p and (p, q) in leq:
                raise ModelError(f"order is not antisymmetric: {q} <= {p} and {p} <= {q}")
        below = {p: tuple(q for q in worlds if (q, p) in leq) for p in worlds}

        sig = dict(signature or {})
        val: dict[str, set] = {w: set() for w in worlds}
        for w, pred, args in facts:
            if w not in wset:
                raise ModelError(f"unknown world {w!r} in valuation")
            args = tuple(args)
            if sig.setdefault(pred, len(args)) != len(args):
                raise ModelError(f"predicate {pred} used with arity {len(args)}, declared {sig[pred]}")
            for a in args:
                if a not in domain:
                    raise ModelError(f"unknown individual {a!r} in {pred}{args}")
            val[w].add((pred, args))
        bot = set(bottom)
        for w in bot:
            if w not in wset:
                raise ModelError(f"unknown world {w!r} forcing _|_")

        for p in worlds:
            for q in below[p]:
                missing = val[p] - val[q]
                if missing:
                    if not close:
                        pred, args = sorted(missing)[0]
                        atom = pred + (f"({','.join(args)})" if args else "")
                        raise ModelError(f"valuation not monotone: {atom} holds at {p} but not at {q} <= {p}")
                    val[q] |= missing
                if p in bot and q not in bot:
                    if not close:
                        raise ModelError(f"valuation not monotone: _|_ holds at {p} but not at {q} <= {p}")
                    bot.add(q)
        return cls(
            worlds=worlds,
            leq=frozenset(leq),
            domain=domain,
            valuation={w: frozenset(v) for w, v in val.items()},
            signature=sig,
            bottom=frozenset(bot),
            below=below,
        )

    def le(self, q: str, p: str) -> bool:
        return (q, p) in self.leq

    def roots(self) -> list[str]:
        """Maximal worlds (nothing strictly above them)."""
        return [p for p in self.worlds if not any((p, r) in self.leq and r != p for r in self.worlds)]

    def facts(self) -> list[tuple[str, str, tuple[str, ...]]]:
        return [(w, pred, args) for w in self.worlds for pred, args in sorted(self.valuation[w])]


# ---------------------------------------------------------------- file format

_ATOM_RE = re.compile(r"_\|_|⊥|[A-Z][A-Za-z0-9_]*'*(?:\([^)]*\))?")


def _split_names(s: str) -> list[str]:
    return [x for x in re.split(r"[,\s]+", s.strip()) if x]


def loads_model(text: str) -> KripkeModel:
    worlds: list[str] = []
    order: list[tuple[str, str]] = []
    domain: list[str] = []
    sig: dict[str, int] = {}
    facts: list[tuple[str, str, tuple[str, ...]]] = []
    bottom: list[str] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "<=" in line and not line.startswith(("order:", "order ")):
            line = "order: " + line
        head, sep, rest = line.partition(":")
        if not sep:
            raise ModelError(f"line {n}: expected 'key: value', got {raw!r}")
        head = head.strip()
        if head == "worlds":
            worlds += _split_names(rest)
        elif head == "domain":
            domain += _split_names(rest)
        elif head == "order":
            for pair in rest.split(","):
                if not pair.strip():
                    continue
                q, le, p = pair.partition("<=")
                if not le or not q.strip() or not p.strip():
                    raise ModelError(f"line {n}: bad order pair {pair.strip()!r}")
                order.append((q.strip(), p.strip()))
        elif head == "predicates":
            for item in rest.split(","):
                name, _, ar = item.strip().partition("/")
                if name:
                    sig[name] = int(ar or 0)
        else:
            if head not in worlds:
                raise ModelError(f"line {n}: unknown world {head!r}")
            for m in _ATOM_RE.finditer(rest):
                tok = m.group()
                if tok in ("_|_", "⊥"):
                    bottom.append(head)
                    continue
                name, _, args = tok.partition("(")
                args_t = tuple(a.strip() for a in args.rstrip(")").split(",")) if args else ()
                facts.append((head, name, args_t))
    return KripkeModel.build(worlds, order, domain, facts, sig, bottom)


def load_model(path: str) -> KripkeModel:
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())


def dumps_model(m: KripkeModel) -> str:
    lines = [f"worlds: {', '.join(m.worlds)}"]
    pairs = sorted((q, p) for (q, p) in m.leq if q != p)
    # only the covering pairs; the loader recomputes the closure
    cover = [(q, p) for (q, p) in pairs
             if not any((q, r) in m.leq and (r, p) in m.leq and r not in (q, p) for r in m.worlds)]
    if cover:
        lines.append("order: " + ", ".join(f"{q} <= {p}" for q, p in cover))
    lines.append(f"domain: {', '.join(m.domain)}".rstrip())
    if m.signature:
        lines.append("predicates: " + ", ".join(f"{k}/{v}" for k, v in sorted(m.signature.items())))
    for w in m.worlds:
        items = [pred + (f"({','.join(args)})" if args else "") for pred, args in sorted(m.valuation[w])]
        if w in m.bottom:
            items.append("_|_")
        if items:
            lines.append(f"{w}: {' '.join(items)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- evaluation

class Evaluator:
    """Forcing evaluator for one model, memoised on ``(kind, world, formula)``."""

    def __init__(self, model: KripkeModel):
        self.m = model
        self.below = model.below
        self.cache: dict = {}

    def _resolve(self, t) -> str:
        if isinstance(t, (Var, Const)):
            if t.name not in self.m.domain:
                raise ModelError(f"open formula: {t.name} is neither bound nor an individual")
            return t.name
        if isinstance(t, Func):
            raise ModelError(f"function symbol {t.name} has no interpretation in finite models")
        raise TypeError(t)

    def atom(self, p: str, f: Atom) -> bool:
        ar = self.m.signature.get(f.pred)
        # a predicate the model never mentions has empty extension everywhere
        if ar is not None and ar != len(f.args):
            raise ModelError(f"predicate {f.pred} has arity {ar}, used with {len(f.args)}")
        return (f.pred, tuple(self._resolve(t) for t in f.args)) in self.m.valuation[p]

    def instances(self, f: Exists | Forall) -> list[Formula]:
        return [_plug(f.body, f.var, d) for d in self.m.domain]

    def dense(self, p: str, test) -> bool:
        return all(any(test(r) for r in self.below[q]) for q in self.below[p])

    def forces(self, p: str, f: Formula) -> bool:
        key = ("plain", p, f)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            v = self.atom(p, f)
        elif isinstance(f, Bottom):
            v = p in self.m.bottom
        elif isinstance(f, And):
            v = self.forces(p, f.left) and self.forces(p, f.right)
        elif isinstance(f, Or):
            v = self.forces(p, f.left) or self.forces(p, f.right)
        elif isinstance(f, Implies):
            v = all(not self.forces(q, f.left) or self.forces(q, f.right) for q in self.below[p])
        elif isinstance(f, Exists):
            v = any(self.forces(p, g) for g in self.instances(f))
        elif isinstance(f, Forall):
            v = all(self.forces(q, g) for g in self.instances(f) for q in self.below[p])
        elif isinstance(f, Box):
            v = self.dense(p, lambda r: self.forces(r, f.body))
        else:
            raise TypeError(f)
        self.cache[key] = v
        return v

    def internal_j(self, p: str, f: Formula) -> bool:
        return self.dense(p, lambda r: self.forces(r, f))

    def strong(self, p: str, f: Formula, kind: ForcingKind = ForcingKind.STRONG) -> bool:
        if kind is ForcingKind.PLAIN:
            return self.forces(p, f)
        key = (kind, p, f)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        s = lambda w, g: self.strong(w, g, kind)  # noqa: E731
        if isinstance(f, Atom):
            v = self.atom(p, f)
        elif isinstance(f, Bottom):
            v = p in self.m.bottom
        elif isinstance(f, And):
            v = s(p, f.left) and s(p, f.right)
        elif isinstance(f, Or):
            v = s(p, f.left) or s(p, f.right)
        elif isinstance(f, Implies):
            if kind is ForcingKind.STRONG:
                v = all(not s(q, f.left) or all(any(s(t, f.right) for t in self.below[r]) for r in self.below[q])
                        for q in self.below[p])
            elif kind is ForcingKind.SIMPLIFIED:
                v = all(not s(q, f.left) or any(s(r, f.right) for r in self.below[q]) for q in self.below[p])
            else:
                v = all(not s(q, f.left) or s(q, f.right) for q in self.below[p])
        elif isinstance(f, Exists):
            v = any(s(p, g) for g in self.instances(f))
        elif isinstance(f, Forall):
            v = all(self.dense(p, lambda r, g=g: s(r, g)) for g in self.instances(f))
        elif isinstance(f, Box):
            raise ModelError("the modal marker has no strong-forcing clause")
        else:
            raise TypeError(f)
        self.cache[key] = v
        return v


def _plug(f: Formula, x: str, d: str) -> Formula:
    """``f[d/x]`` for an individual ``d``; no capture is possible."""
    c = Const(d)

    def term(t):
        if isinstance(t, Var) and t.name == x:
            return c
        if isinstance(t, Func):
            return Func(t.name, tuple(term(a) for a in t.args))
        return t

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(term(t) for t in g.args)) if g.args else g
        if isinstance(g, Binary):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, (Exists, Forall)):
            return g if g.var == x else type(g)(g.var, go(g.body))
        if isinstance(g, Box):
            return Box(go(g.body))
        return g

    return go(f)


def _check_world(m: KripkeModel, p: str) -> None:
    if p not in m.below:
        raise ModelError(f"unknown world {p!r}")


def eval_forces(m: KripkeModel, p: str, f: Formula) -> bool:
    """Plain intuitionistic forcing ``p |- f``."""
    _check_world(m, p)
    return Evaluator(m).forces(p, f)


def eval_internal_j(m: KripkeModel, p: str, f: Formula) -> bool:
    """``p |- jf`` for the internal nucleus: f is forced densely below p."""
    _check_world(m, p)
    return Evaluator(m).internal_j(p, f)


def eval_strong(m: KripkeModel, p: str, f: Formula, kind: ForcingKind = ForcingKind.STRONG) -> bool:
    _check_world(m, p)
    return Evaluator(m).strong(p, f, kind)


def forced_everywhere(m: KripkeModel, f: Formula) -> bool:
    ev = Evaluator(m)
    return all(ev.forces(p, f) for p in m.worlds)


def refuting_world(m: KripkeModel, s: Sequent) -> str | None:
    """A world forcing every hypothesis but not the conclusion, if any."""
    ev = Evaluator(m)
    for p in m.worlds:
        if all(ev.forces(p, h) for h in s.hypotheses) and not ev.forces(p, s.conclusion):
            return p
    return None


def parse_eval_query(text: str) -> tuple[str, ForcingKind | str, Formula]:
    """Parse ``"<world> |- f"``, ``"<world> |-s f"``, ``"<world> |-c f"`` or
    ``"<world> |-j f"``."""
    m = re.match(r"\s*(\S+)\s*\|-([scj]?)\s+(.*)$", text, re.S)
    if not m:
        raise ParseError("expected '<world> |-[s|c|j] <formula>'", 0, text)
    world, flag, body = m.groups()
    p = _Parser(body)
    f = p.formula()
    p.done()
    f = normalize(f)
    kind = {"": ForcingKind.PLAIN, "s": ForcingKind.STRONG, "c": ForcingKind.COHEN, "j": "internal"}[flag]
    return world, kind, f


# ---------------------------------------------------------------- random models

def random_model(
    rng: random.Random,
    max_worlds: int = 6,
    max_domain: int = 3,
    signature: Mapping[str, int] | None = None,
    density: float = 0.4,
    fact_rate: float = 0.3,
    minimal: bool = False,
) -> KripkeModel:
    """A random finite poset with a random monotone valuation.

    Worlds ``w0..wn``; ``wj <= wi`` is drawn only for ``i < j`` so the order
    is a DAG, then closed.  With ``minimal=True`` falsum is forced on a random
    downward-closed set.
    """
    signature = dict(signature or {"P": 0, "Q": 0, "R": 1})
    n = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(n)]
    order = [(worlds[j], worlds[i]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    dsize = rng.randint(1, max_domain)
    domain = [f"d{i}" for i in range(dsize)]
    facts = []
    for w in worlds:
        for pred, ar in sorted(signature.items()):
            for args in itertools.product(domain, repeat=ar):
                if rng.random() < fact_rate:
                    facts.append((w, pred, args))
    bottom = [w for w in worlds if minimal and rng.random() < 0.2]
    return KripkeModel.build(worlds, order, domain, facts, signature, bottom, close=True)


# ---------------------------------------------------------------- strong-forcing identities

STRONG_FORCING_ITEMS = {
    "i": "strong forcing is forcing of the inner Kuroda map with j internal",
    "ii": "the shortened implication clause agrees with the long one",
    "iii": "p forces the GG translation iff strong forcing holds densely below p",
    "iv": "internal j agrees with double negation",
    "v": "Cohen's clause gives the same dense-below forcing and is forcing of classic Kuroda",
}


@dataclass
class StrongForcingReport:
    counts: dict[str, int] = field(default_factory=lambda: {k: 0 for k in STRONG_FORCING_ITEMS})
    violations: list[tuple[str, str, str]] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: StrongForcingReport) -> None:
        for k, v in other.counts.items():
            self.counts[k] += v
        self.violations += other.violations
        self.skipped += other.skipped

    def __str__(self) -> str:
        lines = []
        for k, text in STRONG_FORCING_ITEMS.items():
            bad = sum(1 for v in self.violations if v[0] == k)
            lines.append(f"({k}) {'ok' if not bad else 'FAIL'} {self.counts[k]} instances, {bad} violations: {text}")
        lines += [f"  violated ({k}) at {w}: {f}" for k, w, f in self.violations[:20]]
        return "\n".join(lines)


def check_strong_forcing(m: KripkeModel, battery: Iterable[Formula]) -> StrongForcingReport:
    """Check the five strong-forcing identities at every world of ``m`` for
    every sentence of ``battery``."""
    from .formula import Not, pretty
    from .nucleus import INTERNAL_J
    from .translate import classic_kuroda_inner, gg_translate, kuroda_inner

    ev = Evaluator(m)
    rep = StrongForcingReport()
    S, SIMP, COHEN = ForcingKind.STRONG, ForcingKind.SIMPLIFIED, ForcingKind.COHEN
    classical = not m.bottom
    if not classical:
        rep.skipped.append("iv: model forces _|_ somewhere, so internal j and double negation differ")
    for f in battery:
        inner = kuroda_inner(f, INTERNAL_J)
        gg = gg_translate(f, INTERNAL_J)
        cinner = classic_kuroda_inner(f, INTERNAL_J)
        nnf = Not(Not(f))
        for p in m.worlds:
            strong = ev.strong(p, f, S)
            dense_strong = ev.dense(p, lambda r: ev.strong(r, f, S))
            checks = {
                "i": strong == ev.forces(p, inner),
                "ii": ev.strong(p, f, SIMP) == strong,
                "iii": ev.forces(p, gg) == dense_strong,
                "v": (ev.dense(p, lambda r: ev.strong(r, f, COHEN)) == dense_strong
                      and ev.strong(p, f, COHEN) == ev.forces(p, cinner)),
            }
            if classical:
                checks["iv"] = ev.internal_j(p, f) == ev.forces(p, nnf)
            for k, ok in checks.items():
                rep.counts[k] += 1
                if not ok:
                    rep.violations.append((k, p, pretty(f)))
    return rep


# name used by the CLI's ``--check section5`` option
check_section5 = check_strong_forcing


def random_sentence(
    rng: random.Random,
    signature: Mapping[str, int],
    depth: int = 5,
    bound: tuple[str, ...] = (),
    quant_rate: float = 0.25,
) -> Formula:
    """A random sentence over ``signature``.  Predicate arguments are drawn
    from the enclosing bound variables, so the result is closed."""
    usable = [(p, a) for p, a in sorted(signature.items()) if a == 0 or bound]
    if depth <= 1 or rng.random() < 0.2:
        if rng.random() < 0.1:
            return BOTTOM
        pred, ar = rng.choice(usable)
        return Atom(pred, tuple(Var(rng.choice(bound)) for _ in range(ar)))
    r = rng.random()
    if r < quant_rate:
        x = f"x{len(bound)}"
        body = random_sentence(rng, signature, depth - 1, bound + (x,), quant_rate)
        return (Forall if rng.random() < 0.5 else Exists)(x, body)
    cls = rng.choice([And, Or, Implies, Implies])
    if cls is Implies and rng.random() < 0.25:
        return Implies(random_sentence(rng, signature, depth - 1, bound, quant_rate), BOTTOM)
    return cls(random_sentence(rng, signature, depth - 1, bound, quant_rate),
               random_sentence(rng, signature, depth - 1, bound, quant_rate))


__all__ = [
    "BOTTOM", "Evaluator", "ForcingKind", "KripkeModel", "ModelError",
    "dumps_model", "eval_forces", "eval_internal_j", "eval_strong",
    "forced_everywhere", "load_model", "loads_model", "parse_eval_query",
    "random_model", "random_sentence", "refuting_world", "check_section5", "check_strong_forcing",
    "StrongForcingReport",
]
