import random

import pytest
from hypothesis import given, settings

from jtrans.formula import (
    BOTTOM, And, Atom, Bottom, Box, Exists, Forall, Iff, Implies, Or, Sequent,
    parse, parse_sequent, pretty,
)
from jtrans.nucleus import apply, builtins, dneg, or_a, parse_nucleus, relativized_dneg
from jtrans.prover import GenConfig, decide, random_derivable_sequent
from jtrans.translate import (
    PreconditionError, Scheme, classic_kuroda, gg_translate, kuroda_inner,
    kuroda_translate, translate, translate_sequent,
)

from conftest import coherent_formulas, prop_formulas

DNEG = dneg()


def s(f):
    return pretty(f)


class TestGG:
    def test_atom(self):
        assert s(gg_translate(parse("P"), DNEG)) == "~~P"

    def test_disjunction(self):
        j = or_a("Q")
        assert s(gg_translate(parse("P | R"), j)) == "((P | Q) | (R | Q)) | Q"

    def test_forall(self):
        assert s(gg_translate(parse("forall x. P(x)"), DNEG)) == "forall x. ~~P(x)"

    def test_exists_and_bottom(self):
        assert s(gg_translate(parse("exists x. P(x)"), DNEG)) == "~~(exists x. ~~P(x))"
        assert s(gg_translate(BOTTOM, DNEG)) == "~~_|_"


class TestKuroda:
    def test_inner(self):
        assert s(kuroda_inner(parse("P -> Q"), DNEG)) == "P -> ~~Q"
        assert s(kuroda_inner(parse("forall x. P(x)"), DNEG)) == "forall x. ~~P(x)"
        assert s(kuroda_inner(parse("P | Q"), DNEG)) == "P | Q"
        assert kuroda_inner(BOTTOM, DNEG) == BOTTOM

    def test_full(self):
        assert s(kuroda_translate(parse("P"), DNEG)) == "~~P"
        assert s(kuroda_translate(parse("forall x. P(x)"), DNEG)) == "~~(forall x. ~~P(x))"
        assert s(kuroda_translate(parse("P -> Q"), DNEG)) == "~~(P -> ~~Q)"

    def test_negation_desugars_first(self):
        assert s(kuroda_translate(parse("P | ~P"), DNEG)) == "~~(P | (P -> ~~_|_))"

    def test_classic(self):
        assert s(classic_kuroda(parse("P -> Q"), DNEG)) == "~~(P -> Q)"
        assert s(classic_kuroda(parse("forall x. P(x)"), DNEG)) == "~~(forall x. ~~P(x))"
        assert s(classic_kuroda(parse("P & Q"), DNEG)) == "~~(P & Q)"


class TestGate:
    def test_classic_needs_commutation(self):
        with pytest.raises(PreconditionError):
            translate(parse("P -> Q"), Scheme.CLASSIC_KURODA, DNEG, "mqc")
        assert s(translate(parse("P -> Q"), "classic-kuroda", DNEG, "iqc")) == "~~(P -> Q)"

    def test_classic_needs_logic(self):
        with pytest.raises(PreconditionError):
            translate(parse("P"), "classic-kuroda", DNEG)

    def test_modal_marker_rejected(self):
        with pytest.raises(ValueError):
            gg_translate(Box(Atom("P")), DNEG)


class TestSequents:
    def test_gg(self):
        t = translate_sequent(parse_sequent("P |- Q"), "gg", DNEG)
        assert [s(h) for h in t.hypotheses] == ["~~P"] and s(t.conclusion) == "~~Q"

    def test_kuroda_hypotheses_get_inner_map(self):
        t = translate_sequent(parse_sequent("P -> Q |- Q"), "kuroda", DNEG)
        assert [s(h) for h in t.hypotheses] == ["P -> ~~Q"] and s(t.conclusion) == "~~Q"

    def test_excluded_middle(self):
        t = translate_sequent(parse_sequent("|- P | ~P"), "kuroda", DNEG)
        assert str(t) == "|- ~~(P | (P -> ~~_|_))"


def test_outputs_are_normalized_under_binders():
    j = relativized_dneg("exists x. R(x)")
    f = kuroda_translate(parse("forall x. R(x)"), j)
    names = []

    def walk(g):
        if isinstance(g, (Exists, Forall)):
            names.append(g.var)
            walk(g.body)
        elif isinstance(g, (And, Or, Implies)):
            walk(g.left)
            walk(g.right)
    walk(f)
    assert len(names) == len(set(names))


def test_shape_for_coherent_formulas():
    for text in ["P & (Q | R)", "(P | _|_) & exists x. R(x)"]:
        f = parse(text)
        assert kuroda_translate(f, DNEG) == apply(DNEG, f)


# ---------------------------------------------------------------- properties

@settings(max_examples=60, deadline=None)
@given(prop_formulas(max_leaves=8))
def test_gg_and_kuroda_agree_for_builtins(f):
    for j in builtins("A"):
        for logic in ("mqc", "iqc"):
            v = decide(logic, Sequent((), Iff(gg_translate(f, j), kuroda_translate(f, j))), countermodel=False)
            assert v.derivable, (pretty(f), j.name, logic)


@settings(max_examples=60, deadline=None)
@given(prop_formulas(max_leaves=8))
def test_gg_image_is_j_stable(f):
    for j in builtins("A"):
        g = gg_translate(f, j)
        assert decide("mqc", Sequent((), Iff(apply(j, g), g)), countermodel=False).derivable


@settings(max_examples=100, deadline=None)
@given(coherent_formulas(atoms=("P", "Q", "R")))
def test_kuroda_of_coherent_formula_is_outer_j(f):
    assert kuroda_translate(f, DNEG) == apply(DNEG, f)


def test_preservation_on_generated_sequents():
    rng_cfg = [GenConfig(seed=k, atoms=3, max_depth=3, target="iqc") for k in range(15)]
    for cfg in rng_cfg:
        seq = random_derivable_sequent(cfg)
        for j in builtins("A"):
            for scheme in ("gg", "kuroda"):
                t = translate_sequent(seq, scheme, j)
                assert decide("iqc", t, countermodel=False).derivable, (str(seq), j.name, scheme)


# ---------------------------------------------------------------- mutation tests
# Each broken variant of a translation clause must be caught by the same
# prover-based check that the correct translation passes.

def _gg_without_or_clause(f, j):
    if isinstance(f, (Atom, Bottom)):
        return apply(j, f)
    if isinstance(f, Or):
        return Or(_gg_without_or_clause(f.left, j), _gg_without_or_clause(f.right, j))
    if isinstance(f, (And, Implies)):
        return type(f)(_gg_without_or_clause(f.left, j), _gg_without_or_clause(f.right, j))
    raise TypeError(f)


def _kuroda_without_consequent_j(f, j):
    def inner(g):
        if isinstance(g, (Atom, Bottom)):
            return g
        return type(g)(inner(g.left), inner(g.right))
    return apply(j, inner(f))


def _kuroda_swapped_implication(f, j):
    def inner(g):
        if isinstance(g, (Atom, Bottom)):
            return g
        if isinstance(g, Implies):
            return Implies(apply(j, inner(g.left)), inner(g.right))
        return type(g)(inner(g.left), inner(g.right))
    return apply(j, inner(f))


def _battery(n=60, seed=0):
    from jtrans.prover import random_formula
    rng = random.Random(seed)
    return [random_formula(rng, GenConfig(atoms=3, max_depth=4)) for _ in range(n)]


def _equivalence_failures(gg, kuroda, j, logic):
    bad = 0
    for f in _battery():
        v = decide(logic, Sequent((), Iff(gg(f, j), kuroda(f, j))), countermodel=False)
        bad += not v.derivable
    return bad


def test_correct_translations_pass_equivalence():
    for j in (dneg(), or_a("A"), relativized_dneg("A")):
        assert _equivalence_failures(gg_translate, kuroda_translate, j, "mqc") == 0


@pytest.mark.parametrize("broken", [_kuroda_without_consequent_j, _kuroda_swapped_implication])
def test_broken_kuroda_is_caught(broken):
    assert _equivalence_failures(gg_translate, broken, or_a("A"), "mqc") > 0


def test_broken_gg_is_caught():
    # or[A] already commutes with joins, so only a nucleus like dneg exposes this mutant
    assert _equivalence_failures(_gg_without_or_clause, kuroda_translate, or_a("A"), "mqc") == 0
    assert _equivalence_failures(_gg_without_or_clause, kuroda_translate, dneg(), "iqc") > 0


def test_classic_kuroda_without_gate_breaks_in_mqc():
    j = dneg()
    assert _equivalence_failures(gg_translate, classic_kuroda, j, "mqc") > 0
    assert _equivalence_failures(gg_translate, classic_kuroda, j, "iqc") == 0


def test_scheme_values():
    assert [x.value for x in Scheme] == ["gg", "kuroda", "kuroda-inner", "classic-kuroda"]
    assert parse_nucleus("dneg[A]").name == "dneg[A]"
