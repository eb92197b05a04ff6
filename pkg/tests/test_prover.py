import random

import pytest
from hypothesis import given, settings, strategies as st

from jtrans.formula import Atom, Forall, Sequent, Var, parse, parse_sequent
from jtrans.kripke import KripkeModel, Evaluator, random_model, refuting_world
from jtrans.prover import (
    BudgetExceeded, G4ip, GenConfig, Logic, OutOfFragment, check_equiv, decide,
    random_derivable_sequent, random_formula,
)

from conftest import model_as_oracle_input, oracle_forces, oracle_tautology, prop_formulas

# Standard facts about intuitionistic and minimal propositional logic.
IQC_KNOWN = [
    ("|- P -> P", True),
    ("|- ~~(P | ~P)", True),
    ("|- P | ~P", False),
    ("|- ((P -> Q) -> P) -> P", False),
    ("|- ~~~P -> ~P", True),
    ("|- ~P -> ~~~P", True),
    ("|- (~~P -> P)", False),
    ("|- ~(P & Q) -> (~P | ~Q)", False),
    ("|- (~P | ~Q) -> ~(P & Q)", True),
    ("|- ~(P | Q) <-> (~P & ~Q)", True),
    ("|- (P -> Q) | (Q -> P)", False),
    ("|- ~~(~~P -> P)", True),
    ("|- ((P -> Q) -> Q) -> ((Q -> P) -> P)", False),
    ("P -> Q; Q -> R |- P -> R", True),
    ("P | Q; ~P |- Q", True),
    ("|- _|_ -> P", True),
    ("|- (P -> (Q | R)) -> ((P -> Q) | (P -> R))", False),
    ("|- ~~(P -> Q) <-> (~~P -> ~~Q)", True),
]

MQC_KNOWN = [
    ("|- _|_ -> P", False),
    ("|- ~~(P -> Q) <-> (~~P -> ~~Q)", False),
    ("|- ~~(P -> ~~Q) <-> (~~P -> ~~Q)", True),
    ("|- P -> ~~P", True),
    ("|- ~~~P -> ~P", True),
    ("P | Q; ~P |- Q", False),
    ("|- ~P -> (P -> ~Q)", True),
]


def _parse_known(text):
    # '<->' is sugar available only via parse of each side joined by Iff
    from jtrans.formula import Iff
    hyps, _, concl = text.partition("|-")
    if "<->" in concl:
        a, b = concl.split("<->")
        c = Iff(parse(a), parse(b))
    else:
        c = parse(concl)
    return Sequent([parse(h) for h in hyps.split(";") if h.strip()], c)


@pytest.mark.parametrize("text,expected", IQC_KNOWN)
def test_iqc_known(text, expected):
    assert decide(Logic.IQC, _parse_known(text)).derivable is expected


@pytest.mark.parametrize("text,expected", MQC_KNOWN)
def test_mqc_known(text, expected):
    assert decide(Logic.MQC, _parse_known(text)).derivable is expected


def test_spec_examples():
    assert decide("cqc", parse_sequent("|- P | ~P")).derivable
    v = decide("mqc", parse_sequent("|- _|_ -> P"))
    assert not v.derivable and v.countermodel is not None
    assert decide("iqc", parse_sequent("|- ~~(P | ~P)")).derivable


def test_check_equiv_examples():
    assert check_equiv("iqc", parse("~~~P"), parse("~P"))
    assert check_equiv("mqc", parse("~~(P -> ~~Q)"), parse("~~P -> ~~Q"))
    assert not check_equiv("mqc", parse("~~(P -> Q)"), parse("~~P -> ~~Q"))


def test_mqc_countermodel_forces_falsum():
    v = decide("mqc", parse_sequent("|- _|_ -> P"))
    m = v.countermodel
    assert m.bottom
    assert refuting_world(m, parse_sequent("|- _|_ -> P")) is not None


def test_cqc_countermodel_is_valuation():
    v = decide("cqc", parse_sequent("P |- Q"))
    assert v.countermodel == {"P": True, "Q": False}


def test_quantified_input_is_out_of_fragment():
    with pytest.raises(OutOfFragment):
        decide("iqc", Sequent((), Forall("x", Atom("P", (Var("x"),)))))


def test_budget_is_enforced():
    s = parse_sequent("|- ((P -> Q) -> P) -> P")
    with pytest.raises(BudgetExceeded):
        decide("iqc", s, budget=1)


def test_witness_is_a_proof_trace():
    v = decide("iqc", parse_sequent("P & Q |- Q & P"))
    assert v.derivable and v.witness
    assert all(isinstance(line, str) for line in v.witness)
    assert decide("iqc", parse_sequent("|- P | ~P")).witness is None


def test_generated_derivable_sequents():
    s = random_derivable_sequent(GenConfig(seed=1, atoms=3, max_depth=4, target="iqc"))
    assert decide("iqc", s).derivable
    s = random_derivable_sequent(GenConfig(seed=2, target="cqc"))
    assert decide("cqc", s).derivable
    for seed in range(5):
        s = random_derivable_sequent(GenConfig(seed=seed, target="mqc"))
        assert decide("mqc", s).derivable and decide("iqc", s).derivable


def test_glivenko_instances():
    rng = random.Random(7)
    cfg = GenConfig(atoms=3, max_depth=4)
    found = 0
    while found < 50:
        f = random_formula(rng, cfg)
        if oracle_tautology([], f):
            found += 1
            assert decide("iqc", Sequent((), parse(f"~~({f})"))).derivable


# ---------------------------------------------------------------- properties

@settings(max_examples=300, deadline=None)
@given(st.lists(prop_formulas(max_leaves=6), max_size=2), prop_formulas(max_leaves=8))
def test_cqc_matches_truth_table_oracle(hyps, goal):
    assert decide("cqc", Sequent(hyps, goal)).derivable == oracle_tautology(hyps, goal)


@settings(max_examples=300, deadline=None)
@given(st.lists(prop_formulas(max_leaves=6), max_size=2), prop_formulas(max_leaves=8))
def test_logic_inclusion(hyps, goal):
    s = Sequent(hyps, goal)
    m, i, c = (decide(lg, s, countermodel=False).derivable for lg in ("mqc", "iqc", "cqc"))
    assert (not m or i) and (not i or c)


def _oracle_refutes(m: KripkeModel, s: Sequent) -> bool:
    below, val, bottom = model_as_oracle_input(m)
    return any(all(oracle_forces(below, val, w, h, bottom) for h in s.hypotheses)
               and not oracle_forces(below, val, w, s.conclusion, bottom) for w in m.worlds)


@settings(max_examples=300, deadline=None)
@given(st.lists(prop_formulas(max_leaves=6), max_size=2), prop_formulas(max_leaves=8),
       st.sampled_from(["iqc", "mqc"]))
def test_countermodels_refute_according_to_oracle(hyps, goal, logic):
    s = Sequent(hyps, goal)
    v = decide(logic, s)
    if v.derivable:
        assert v.countermodel is None
    else:
        m = v.countermodel
        if logic == "iqc":
            assert not m.bottom
        assert _oracle_refutes(m, s)


SIG = {"P": 0, "Q": 0, "R": 0}
_MODELS = [random_model(random.Random(i), 5, 1, SIG) for i in range(30)]
_MIN_MODELS = [random_model(random.Random(100 + i), 5, 1, SIG, minimal=True) for i in range(30)]


@settings(max_examples=200, deadline=None)
@given(st.lists(prop_formulas(max_leaves=6), max_size=2), prop_formulas(max_leaves=8))
def test_derivable_sequents_hold_in_every_model(hyps, goal):
    s = Sequent(hyps, goal)
    if decide("iqc", s, countermodel=False).derivable:
        assert not any(_oracle_refutes(m, s) for m in _MODELS)
    if decide("mqc", s, countermodel=False).derivable:
        assert not any(_oracle_refutes(m, s) for m in _MIN_MODELS)


@settings(max_examples=100, deadline=None)
@given(st.lists(prop_formulas(max_leaves=6), max_size=2), prop_formulas(max_leaves=8))
def test_decide_is_deterministic(hyps, goal):
    s = Sequent(hyps, goal)
    a, b = decide("iqc", s), decide("iqc", s, prover=G4ip())
    assert a.derivable == b.derivable and a.witness == b.witness
    if a.countermodel is not None:
        from jtrans.kripke import dumps_model
        assert dumps_model(a.countermodel) == dumps_model(b.countermodel)


def test_evaluator_agrees_with_oracle_on_random_models():
    rng = random.Random(3)
    cfg = GenConfig(atoms=3, max_depth=4)
    for m in _MODELS[:10] + _MIN_MODELS[:10]:
        below, val, bottom = model_as_oracle_input(m)
        ev = Evaluator(m)
        for _ in range(30):
            f = random_formula(rng, cfg)
            for w in m.worlds:
                assert ev.forces(w, f) == oracle_forces(below, val, w, f, bottom)
