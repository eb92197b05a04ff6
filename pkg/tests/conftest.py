"""Shared hypothesis strategies and independent oracles.

The oracles here are deliberately naive re-implementations (no caching, no
bitmasks, no shared code with the package beyond the AST classes) so that
they can be used to check the package's own evaluators.
"""
from __future__ import annotations

import itertools

from hypothesis import strategies as st

from jtrans.formula import (
    BOTTOM, And, Atom, Bottom, Exists, Forall, Func, Implies, Or, Var,
)

PROP_ATOMS = ["P", "Q", "R"]

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
VARS = ["x", "y", "z"]


def prop_formulas(atoms=PROP_ATOMS, max_leaves=12, bottom=True):
    leaves = [st.sampled_from([Atom(a) for a in atoms])]
    if bottom:
        leaves.append(st.just(BOTTOM))
    return st.recursive(
        st.one_of(*leaves),
        lambda sub: st.one_of(
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def coherent_formulas(atoms=("P", "Q"), max_leaves=8):
    return st.recursive(
        st.one_of(st.sampled_from([Atom(a) for a in atoms]), st.just(BOTTOM)),
        lambda sub: st.one_of(st.builds(And, sub, sub), st.builds(Or, sub, sub)),
        max_leaves=max_leaves,
    )


terms = st.recursive(
    st.builds(Var, st.sampled_from(VARS)),
    lambda sub: st.one_of(st.builds(lambda a: Func("F", (a,)), sub),
                          st.builds(lambda a, b: Func("G", (a, b)), sub, sub)),
    max_leaves=3,
)

fo_atoms = st.one_of(
    st.builds(Atom, st.sampled_from(["P", "Q"])),
    st.builds(lambda t: Atom("R", (t,)), terms),
    st.builds(lambda s, t: Atom("S", (s, t)), terms, terms),
    st.just(BOTTOM),
)


def fo_formulas(max_leaves=10):
    return st.recursive(
        fo_atoms,
        lambda sub: st.one_of(
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub),
            st.builds(Exists, st.sampled_from(VARS), sub),
            st.builds(Forall, st.sampled_from(VARS), sub),
        ),
        max_leaves=max_leaves,
    )


# ---------------------------------------------------------------- oracles

def oracle_truth(f, val) -> bool:
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return val[f.pred]
    if isinstance(f, And):
        return oracle_truth(f.left, val) and oracle_truth(f.right, val)
    if isinstance(f, Or):
        return oracle_truth(f.left, val) or oracle_truth(f.right, val)
    if isinstance(f, Implies):
        return (not oracle_truth(f.left, val)) or oracle_truth(f.right, val)
    raise TypeError(f)


def _prop_atoms(f, acc=None):
    acc = set() if acc is None else acc
    if isinstance(f, Atom):
        acc.add(f.pred)
    elif isinstance(f, (And, Or, Implies)):
        _prop_atoms(f.left, acc)
        _prop_atoms(f.right, acc)
    return acc


def oracle_tautology(hyps, goal) -> bool:
    names = sorted(set().union(*(_prop_atoms(g) for g in [*hyps, goal])))
    for bits in itertools.product([False, True], repeat=len(names)):
        val = dict(zip(names, bits))
        if all(oracle_truth(h, val) for h in hyps) and not oracle_truth(goal, val):
            return False
    return True


def naive_below(worlds, pairs):
    """Reflexive-transitive closure of ``q <= p`` pairs: ``below[p]`` is the
    set of q with q <= p."""
    le = {(w, w) for w in worlds} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(le), repeat=2):
            if b == c and (a, d) not in le:
                le.add((a, d))
                changed = True
    return {p: {q for q in worlds if (q, p) in le} for p in worlds}


def oracle_forces(below, val, p, f, bottom=frozenset()) -> bool:
    """Propositional Kripke forcing, straight from the clauses."""
    if isinstance(f, Bottom):
        return p in bottom
    if isinstance(f, Atom):
        return f.pred in val.get(p, set())
    if isinstance(f, And):
        return oracle_forces(below, val, p, f.left, bottom) and oracle_forces(below, val, p, f.right, bottom)
    if isinstance(f, Or):
        return oracle_forces(below, val, p, f.left, bottom) or oracle_forces(below, val, p, f.right, bottom)
    if isinstance(f, Implies):
        return all(not oracle_forces(below, val, q, f.left, bottom) or oracle_forces(below, val, q, f.right, bottom)
                   for q in below[p])
    raise TypeError(f)


def model_as_oracle_input(m):
    """Convert a package model into (below, val, bottom) for the oracle,
    reading only its raw order pairs and propositional facts."""
    below = naive_below(m.worlds, [(q, p) for (q, p) in m.leq])
    val = {w: set() for w in m.worlds}
    for w, pred, args in m.facts():
        if not args:
            val[w].add(pred)
    return below, val, frozenset(m.bottom)
