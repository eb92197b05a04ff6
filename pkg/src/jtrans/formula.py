"""First-order formulas: AST, parser, printer and capture-avoiding substitution.

Negation is not a constructor. ``~f`` is read as ``f -> _|_`` and printed back
as ``~f``.  Every formula produced by :func:`parse`, :func:`substitute` or the
translations is kept in Barendregt normal form: bound variables are pairwise
distinct and distinct from the free variables.

Text grammar (ASCII, with Unicode alternatives)::

    formula := ('forall' | 'exists') var '.' formula
             | disj ['->' formula]           # right associative
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '~' unary | '[j]' unary | '(' formula ')' | atom
             | '_|_' | 'false' | quantifier    # quantifier scope is maximal
    atom    := Pred ['(' term (',' term)* ')']
    term    := var | Func '(' term (',' term)* ')'

Lowercase identifiers are variables, uppercase-initial identifiers are
predicate or function symbols.  ``[j]`` is the reserved modal marker that the
Kripke evaluator reads as the internal dense-below nucleus.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Raised on malformed formula text.  ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


# ---------------------------------------------------------------- terms

class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const(Term):
    """A constant.  The parser never produces these (lowercase names parse as
    variables); they appear when domain elements are plugged into formulas."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Func(Term):
    name: str
    args: tuple[Term, ...]

    def __post_init__(self):
        if not self.args:
            raise ValueError(f"function symbol {self.name} needs arity >= 1")

    def __str__(self) -> str:
        return f"{self.name}({', '.join(map(str, self.args))})"


def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Func):
        return frozenset().union(*(term_vars(a) for a in t.args))
    return frozenset()


def _subst_term(t: Term, x: str, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Func):
        return Func(t.name, tuple(_subst_term(a, x, s) for a in t.args))
    return t


def _rename_term(t: Term, env: dict[str, str]) -> Term:
    if isinstance(t, Var):
        return Var(env[t.name]) if t.name in env else t
    if isinstance(t, Func):
        return Func(t.name, tuple(_rename_term(a, env) for a in t.args))
    return t


# ---------------------------------------------------------------- formulas

class Formula:
    """Base class.  Hashes are cached because the prover hashes deep
    formulas constantly."""

    __slots__ = ()

    @cached_property
    def key(self) -> str:
        """Canonical printed form; used as a deterministic sort key."""
        return pretty(self)

    @cached_property
    def _hash(self) -> int:
        return hash((type(self).__name__,) + tuple(getattr(self, f) for f in self._fields))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.key

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __rshift__(self, other: Formula) -> Formula:
        return Implies(self, other)

    def __invert__(self) -> Formula:
        return Implies(self, BOTTOM)


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    pred: str
    args: tuple[Term, ...] = ()
    _fields = ("pred", "args")
    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Bottom(Formula):
    _fields = ()
    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class And(Formula):
    left: Formula
    right: Formula
    _fields = ("left", "right")
    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Or(Formula):
    left: Formula
    right: Formula
    _fields = ("left", "right")
    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Implies(Formula):
    left: Formula
    right: Formula
    _fields = ("left", "right")
    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Exists(Formula):
    var: str
    body: Formula
    _fields = ("var", "body")
    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Forall(Formula):
    var: str
    body: Formula
    _fields = ("var", "body")
    __hash__ = Formula.__hash__


@dataclass(frozen=True, eq=True)
class Box(Formula):
    """Reserved modal marker ``[j]``: the internal nucleus of a Kripke model."""

    body: Formula
    _fields = ("body",)
    __hash__ = Formula.__hash__


BOTTOM = Bottom()
Binary = (And, Or, Implies)
Quant = (Exists, Forall)


def Not(f: Formula) -> Formula:
    return Implies(f, BOTTOM)


def Iff(f: Formula, g: Formula) -> Formula:
    """``f <-> g`` abbreviates ``(f -> g) & (g -> f)``."""
    return And(Implies(f, g), Implies(g, f))


def P(name: str, *args: str | Term) -> Atom:
    """Convenience atom builder: ``P('R', 'x', 'y')``."""
    return Atom(name, tuple(Var(a) if isinstance(a, str) else a for a in args))


@dataclass(frozen=True)
class Sequent:
    hypotheses: tuple[Formula, ...]
    conclusion: Formula

    def __init__(self, hypotheses: Iterable[Formula], conclusion: Formula):
        object.__setattr__(self, "hypotheses", tuple(hypotheses))
        object.__setattr__(self, "conclusion", conclusion)

    def formulas(self) -> tuple[Formula, ...]:
        return self.hypotheses + (self.conclusion,)

    def __str__(self) -> str:
        hyps = "; ".join(pretty(h) for h in self.hypotheses)
        return f"{hyps} |- {pretty(self.conclusion)}" if hyps else f"|- {pretty(self.conclusion)}"


# ---------------------------------------------------------------- traversal

def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over ``f`` and all its subformulas."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Binary):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, Quant):
            stack.append(g.body)
        elif isinstance(g, Box):
            stack.append(g.body)


def atoms(f: Formula) -> set[Atom]:
    return {g for g in subformulas(f) if isinstance(g, Atom)}


def predicates(f: Formula) -> dict[str, int]:
    return {a.pred: len(a.args) for a in atoms(f)}


def is_propositional(f: Formula) -> bool:
    """No quantifiers, no modal marker, only nullary atoms."""
    for g in subformulas(f):
        if isinstance(g, (Exists, Forall, Box)):
            return False
        if isinstance(g, Atom) and g.args:
            return False
    return True


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset().union(*(term_vars(t) for t in f.args))
    if isinstance(f, Binary):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Quant):
        return free_vars(f.body) - {f.var}
    if isinstance(f, Box):
        return free_vars(f.body)
    return frozenset()


def all_var_names(f: Formula) -> set[str]:
    names: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            for t in g.args:
                names |= term_vars(t)
        elif isinstance(g, Quant):
            names.add(g.var)
    return names


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    name = base.rstrip("'") or "x"
    cand = name + "'"
    while cand in avoid:
        cand += "'"
    return cand


def _rebuild(f: Formula, left: Formula, right: Formula | None = None) -> Formula:
    if isinstance(f, Binary):
        if left is f.left and right is f.right:
            return f
        return type(f)(left, right)
    if isinstance(f, Box):
        return f if left is f.body else Box(left)
    raise TypeError(f)


def normalize(f: Formula) -> Formula:
    """Rename binders so that bound names are pairwise distinct and distinct
    from the free variables.  Idempotent; renaming is left-to-right."""
    used = set(free_vars(f))
    avoid = used | all_var_names(f)

    def go(g: Formula, env: dict[str, str]) -> Formula:
        if isinstance(g, Atom):
            if not env or not g.args:
                return g
            return Atom(g.pred, tuple(_rename_term(t, env) for t in g.args))
        if isinstance(g, Binary):
            return _rebuild(g, go(g.left, env), go(g.right, env))
        if isinstance(g, Box):
            return _rebuild(g, go(g.body, env))
        if isinstance(g, Quant):
            x = g.var
            if x in used:
                x = fresh_name(x, avoid)
                avoid.add(x)
            used.add(x)
            inner = {**env, g.var: x} if x != g.var or g.var in env else env
            body = go(g.body, inner)
            if x == g.var and body is g.body:
                return g
            return type(g)(x, body)
        return g

    return go(f, {})


def substitute(f: Formula, x: str, t: Term) -> Formula:
    """``f[t/x]``: replace free occurrences of ``x`` by ``t``, renaming bound
    variables that would capture a variable of ``t``."""
    tv = term_vars(t)

    def go(g: Formula) -> Formula:
        if isinstance(g, Atom):
            if not g.args:
                return g
            return Atom(g.pred, tuple(_subst_term(a, x, t) for a in g.args))
        if isinstance(g, Binary):
            return _rebuild(g, go(g.left), go(g.right))
        if isinstance(g, Box):
            return _rebuild(g, go(g.body))
        if isinstance(g, Quant):
            if g.var == x or x not in free_vars(g.body):
                return g
            if g.var in tv:
                y = fresh_name(g.var, tv | all_var_names(g.body) | {x})
                body = substitute(g.body, g.var, Var(y))
                return type(g)(y, go(body))
            return type(g)(g.var, go(g.body))
        return g

    return normalize(go(f))


def replace_atom(f: Formula, target: Atom, g: Formula) -> Formula:
    """Replace every occurrence of the atom ``target`` in ``f`` by ``g``.
    Binders of ``f`` that would capture free variables of ``g`` are renamed."""
    gfree = free_vars(g)

    def go(h: Formula) -> Formula:
        if isinstance(h, Atom):
            return g if h == target else h
        if isinstance(h, Binary):
            return _rebuild(h, go(h.left), go(h.right))
        if isinstance(h, Box):
            return _rebuild(h, go(h.body))
        if isinstance(h, Quant):
            if h.var in gfree:
                y = fresh_name(h.var, gfree | all_var_names(h.body))
                return type(h)(y, go(substitute(h.body, h.var, Var(y))))
            return type(h)(h.var, go(h.body))
        return h

    return normalize(go(f))


def alpha_eq(f: Formula, g: Formula) -> bool:
    """Equality up to renaming of bound variables."""

    def term_eq(s: Term, t: Term, ef: dict, eg: dict) -> bool:
        if isinstance(s, Var) and isinstance(t, Var):
            bs, bt = ef.get(s.name), eg.get(t.name)
            if bs is None and bt is None:
                return s.name == t.name
            return bs == bt
        if isinstance(s, Func) and isinstance(t, Func):
            return (s.name == t.name and len(s.args) == len(t.args)
                    and all(term_eq(a, b, ef, eg) for a, b in zip(s.args, t.args)))
        return type(s) is type(t) and s == t

    def go(a: Formula, b: Formula, ef: dict, eg: dict, depth: int) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Atom):
            return (a.pred == b.pred and len(a.args) == len(b.args)
                    and all(term_eq(s, t, ef, eg) for s, t in zip(a.args, b.args)))
        if isinstance(a, Binary):
            return go(a.left, b.left, ef, eg, depth) and go(a.right, b.right, ef, eg, depth)
        if isinstance(a, Box):
            return go(a.body, b.body, ef, eg, depth)
        if isinstance(a, Quant):
            return go(a.body, b.body, {**ef, a.var: depth}, {**eg, b.var: depth}, depth + 1)
        return True

    return go(f, g, {}, {}, 0)


# ---------------------------------------------------------------- printing

def _is_neg(f: Formula) -> bool:
    return isinstance(f, Implies) and isinstance(f.right, Bottom)


def _tight(f: Formula) -> str:
    """Print ``f`` as an operand of a prefix or binary operator."""
    if isinstance(f, (Atom, Bottom, Box)) or _is_neg(f):
        return pretty(f)
    return f"({pretty(f)})"


def pretty(f: Formula) -> str:
    """Print ``f`` in the ASCII grammar.  Nested binary formulas and
    quantifiers in operand position are always parenthesised."""
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(map(str, f.args))})"
    if isinstance(f, Bottom):
        return "_|_"
    if _is_neg(f):
        return "~" + _tight(f.left)
    if isinstance(f, Box):
        return "[j]" + _tight(f.body)
    if isinstance(f, Binary):
        op = {And: "&", Or: "|", Implies: "->"}[type(f)]
        return f"{_tight(f.left)} {op} {_tight(f.right)}"
    if isinstance(f, Quant):
        q = "forall" if isinstance(f, Forall) else "exists"
        return f"{q} {f.var}. {pretty(f.body)}"
    raise TypeError(f)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<bot>_\|_|⊥)
  | (?P<box>\[j\])
  | (?P<arrow>->|→)
  | (?P<turnstile>\|-|⊢)
  | (?P<op>[~¬&∧|∨(),.;])
  | (?P<forall>∀)
  | (?P<exists>∃)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*'*)
""", re.VERBOSE)

_UNICODE = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "⊥": "_|_", "⊢": "|-",
            "∀": "forall", "∃": "exists"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            val = _UNICODE.get(val, val)
            if kind == "ident" and val in ("forall", "exists", "false"):
                kind = val
            elif kind in ("forall", "exists"):
                pass
            elif kind != "ident":
                kind = val
            out.append((kind, val, pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, arities: dict | None = None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.arities = {} if arities is None else arities

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][2]

    def take(self, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            found = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {found!r}", tok[2], self.text)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        if self.peek() in ("forall", "exists"):
            return self.quantifier()
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def quantifier(self) -> Formula:
        kind = self.take()[0]
        _, name, p = self.take("ident")
        if not name[0].islower():
            raise ParseError(f"bound variable {name!r} must be lowercase", p, self.text)
        self.take(".")
        body = self.formula()
        return Forall(name, body) if kind == "forall" else Exists(name, body)

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind = self.peek()
        if kind == "~":
            self.take()
            return Implies(self.unary(), BOTTOM)
        if kind == "[j]":
            self.take()
            return Box(self.unary())
        if kind in ("forall", "exists"):
            return self.quantifier()
        if kind == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if kind in ("_|_", "false"):
            self.take()
            return BOTTOM
        if kind == "ident":
            return self.atom()
        tok = self.toks[self.i]
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2], self.text)

    def _check_arity(self, name: str, n: int, p: int, what: str) -> None:
        key = (what, name)
        seen = self.arities.setdefault(key, n)
        if seen != n:
            raise ParseError(f"{what} {name} used with arity {n}, previously {seen}", p, self.text)

    def atom(self) -> Formula:
        _, name, p = self.take("ident")
        if not name[0].isupper():
            raise ParseError(f"expected a formula, found term {name!r}", p, self.text)
        args: tuple[Term, ...] = ()
        if self.peek() == "(":
            args = self.args()
        self._check_arity(name, len(args), p, "predicate")
        return Atom(name, args)

    def args(self) -> tuple[Term, ...]:
        self.take("(")
        out = [self.term()]
        while self.peek() == ",":
            self.take()
            out.append(self.term())
        self.take(")")
        return tuple(out)

    def term(self) -> Term:
        _, name, p = self.take("ident")
        if name[0].islower():
            return Var(name)
        if self.peek() != "(":
            raise ParseError(f"function symbol {name} needs arguments", p, self.text)
        args = self.args()
        self._check_arity(name, len(args), p, "function")
        return Func(name, args)

    def done(self) -> None:
        if self.peek() != "eof":
            tok = self.toks[self.i]
            raise ParseError(f"trailing input {tok[1]!r}", tok[2], self.text)


def parse(text: str) -> Formula:
    """Parse one formula and normalize its bound variables."""
    p = _Parser(text)
    f = p.formula()
    p.done()
    return normalize(f)


def parse_sequent(text: str) -> Sequent:
    """Parse ``h1; h2 |- c``.  The hypothesis list may be empty; a text
    without ``|-`` is read as a sequent with no hypotheses."""
    p = _Parser(text)
    hyps: list[Formula] = []
    if p.peek() == "|-":
        p.take()
    else:
        first = p.formula()
        if p.peek() == "eof":
            return Sequent((), normalize(first))
        hyps.append(normalize(first))
        while p.peek() == ";":
            p.take()
            hyps.append(normalize(p.formula()))
        p.take("|-")
    concl = normalize(p.formula())
    p.done()
    return Sequent(hyps, concl)


def read_formula_file(lines: Iterable[str]) -> list[Formula]:
    """One formula per line; blank lines and ``#`` comment lines skipped."""
    out = []
    for n, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        try:
            out.append(parse(s))
        except ParseError as e:
            raise ParseError(f"line {n}: {e}", e.pos, s) from None
    return out
